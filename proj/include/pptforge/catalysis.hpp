// Catalytic convertibility.  Under PPT with a maximally entangled catalyst
// the criterion is exact: Phi_C x Phi_K -> Phi_C x rho_lambda for some C iff
// S_1/2(lambda) < log K (or lambda = U_K trivially).  The minimal such C is
// found by a linear scan that certifies each verdict, using the rank-one dual
// bound to dispose of infeasible C cheaply and the SDP otherwise.  The LOCC
// catalysis conditions are continua of strict inequalities, so they are only
// screened on grids, never certified.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptforge/spectra.hpp"

namespace pptforge {

struct CatalysisQuery {
  int K = 2;
  SchmidtVector target;
  int c_max = 64;            // search budget for the catalyst rank
  int solver_dim_guard = 32; // largest lifted SDP dimension the scan will solve
};

/// Exact criterion for a maximally entangled catalyst of unbounded rank.
bool ppt_maxent_catalysis_possible(int K, const SchmidtVector& lambda);

/// Common limit of the SDP bounds on T(KC; lambda x U_C): 2^{S_1/2}/K.
double theorem7_limit(const SchmidtVector& lambda, int K);

struct CatalystScanEntry {
  int C = 0;
  double t1 = 0.0;
  std::optional<double> T;  // present when the SDP ran
  std::string verdict;      // Feasible / Infeasible / Boundary / Inconclusive
};

struct CatalystSearchResult {
  bool possible = false;
  double limit_value = 0.0;
  std::optional<int> minimal_c;
  std::vector<CatalystScanEntry> scan;
};

/// Smallest certified C <= c_max with Phi_{KC} ->PPT lambda x U_C, scanning
/// linearly (no monotonicity in C is assumed).  Entries whose SDP dimension
/// exceeds the solver guard are reported Inconclusive rather than decided by
/// conjecture.  Returns no C at all when the asymptotic criterion fails.
CatalystSearchResult minimal_catalyst_rank(const CatalysisQuery& query);

std::string catalyst_result_to_json(const CatalystSearchResult& result);

enum class ScreenOutcome { Pass, Fail, Inconclusive };

struct ScreenResult {
  ScreenOutcome outcome = ScreenOutcome::Inconclusive;
  std::optional<double> witness_t;
};

/// Grid screen of the exact LOCC catalysis conditions
///   S_t(lambda) > S_t(mu) on (0, inf),  f_t(lambda) > f_t(mu) on (-inf, 0].
/// Pass means every sampled comparison held strictly; it is a screen, not a
/// certificate.  Comparisons within 1e-12 come back Inconclusive.
ScreenResult locc_catalysis_screen(const SchmidtVector& lambda,
                                   const SchmidtVector& mu,
                                   const std::vector<double>& s_grid,
                                   const std::vector<double>& f_grid);

/// Screen of the conjectured general PPT catalysis criterion
/// S_t(lambda) > S_t(mu) for t in [1/2, inf); exploratory only.
ScreenResult ppt_catalysis_conjecture_screen(const SchmidtVector& lambda,
                                             const SchmidtVector& mu,
                                             const std::vector<double>& t_grid);

/// Default grids: 64 geometric points on (0, 32] plus {1/2, 1, inf} for S_t;
/// 64 equispaced points on [-32, 0] for f_t; 64 geometric points on [1/2, 32]
/// plus inf for the conjecture screen.
std::vector<double> default_s_grid();
std::vector<double> default_f_grid();
std::vector<double> default_conjecture_grid();

}  // namespace pptforge
