// The semidefinite program T(K; lambda) deciding whether a rank-K maximally
// entangled state converts into the pure state with Schmidt vector lambda
// under PPT operations, in its block-reduced form:
//
//   T(K;lambda) = min  sum_{i>=j} s_ij + sum_{i>j} a_ij
//                 s.t. s_ij >= w_ij/(K+1),  a_ij >= w_ij/(K-1),
//                      s_ij + a_ij >= 0 (i > j),  M(s,a) PSD,
//
// where w_ij = sqrt(lambda_i lambda_j) and M is the d x d symmetric matrix
// with M_ii = s_ii, M_ij = (s_ij - a_ij)/2.  The dual has variables
// (mu, t) with mu_ij <= 1, t_ij <= 1 and the same block structure.
//
// Entries of the triangular tables are stored row-major: s and mu run over
// (i,j) with 0 <= j <= i < d, a and t over 0 <= j < i < d.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "pptforge/spectra.hpp"

namespace pptforge {

inline int tri_index_incl(int i, int j) { return i * (i + 1) / 2 + j; }  // j <= i
inline int tri_index_strict(int i, int j) { return i * (i - 1) / 2 + j; }  // j < i

struct ReducedSdp {
  int K = 0;
  int d = 0;
  std::vector<double> lambda;   // ascending, no zeros
  std::vector<double> w;        // w[tri_index_incl(i,j)] = sqrt(lambda_i lambda_j)
  std::vector<double> s_lower;  // w/(K+1)
  std::vector<double> a_lower;  // w/(K-1), strict triangle
  double s_half_pow = 0.0;      // (sum_i sqrt(lambda_i))^2

  int num_s() const { return d * (d + 1) / 2; }
  int num_a() const { return d * (d - 1) / 2; }
};

enum class SolveStatus { Optimal, MaxIter, Degenerate };

std::string to_string(SolveStatus status);

struct SdpCertificate {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  std::vector<double> s, a;   // primal point
  std::vector<double> mu, t;  // dual point, exactly feasible by construction
  int iterations = 0;
  SolveStatus status = SolveStatus::Degenerate;
  // (primal objective, certified dual bound) per iteration when traced.
  std::vector<std::pair<double, double>> trajectory;
};

struct SolveOptions {
  int max_iter = 200;
  bool trace = false;
};

/// Builds the reduced program.  Requires K >= 2 and a zero-free lambda
/// (strip zeros first; they do not change the state).
ReducedSdp build_reduced(const SchmidtVector& lambda, int K);

/// Interior-point solve of the reduced program.  Deterministic.  At status
/// Optimal the certificate satisfies gap <= 1e-7 relative.
SdpCertificate solve(const ReducedSdp& reduced, const SolveOptions& options = {});

/// The two closed-form dual values bracketing T in the well-behaved regime:
///   lower = (K 2^{S1/2} - 1)/(K^2 - 1)      (dual point mu = t = 0)
///   upper = (2^{S1/2} - 1)/(K - 1)          (dual point mu = 1, t = -1)
/// Both are certified lower bounds on T; `upper` equals T exactly whenever
/// sum_{i<d} sqrt(lambda_i) >= (K-1) sqrt(lambda_d), and only plays the role
/// of an upper bound there.  `consistent` is lower <= upper, equivalently
/// S_1/2 >= log K; inconsistent pairs must be arbitrated by the SDP itself.
struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  bool consistent = false;
};

Bounds bounds(const SchmidtVector& lambda, int K);

/// Objective of an explicit primal-feasible point; a valid upper bound on T
/// for every instance.
double certified_upper_bound(const SchmidtVector& lambda, int K);

/// Max constraint violation of a primal point (0 when feasible).
double primal_violation(const ReducedSdp& reduced, const std::vector<double>& s,
                        const std::vector<double>& a);

/// Max constraint violation of a dual point (mu <= 1, t <= 1, block PSD).
double dual_violation(const ReducedSdp& reduced, const std::vector<double>& mu,
                      const std::vector<double>& t);

/// The dual objective at (mu, t); a lower bound on T whenever the point is
/// dual feasible.
double dual_objective_value(const ReducedSdp& reduced, const std::vector<double>& mu,
                            const std::vector<double>& t);

/// Dimension limit for the unreduced oracle; PPT_FORGE_GUARD_DIM overrides.
int oracle_guard_dim();

/// Solves the unreduced d^2 x d^2 program
///   min Tr P  s.t.  P >= 0,  -(K-1) P^G <= rho_lambda^G <= (K+1) P^G
/// by the generic dense method, as an independent check of the block
/// reduction.  Throws if d exceeds the guard or the solve fails.
double solve_full_oracle(const SchmidtVector& lambda, int K);

// --- explicit operators, used by the oracle and by structural tests ---

/// sigma_ij (i >= j) and alpha_ij (i > j) as d^2 x d^2 matrices, row index
/// encoded as i*d + j.
Eigen::MatrixXd sigma_op(int d, int i, int j);
Eigen::MatrixXd alpha_op(int d, int i, int j);

/// Partial transpose as the index shuffle |ij><kl| -> |il><kj|.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& op, int d);

/// sum_{i>=j} s_ij sigma_ij^G + sum_{i>j} a_ij alpha_ij^G, assembled
/// directly from the index rule.
Eigen::MatrixXd reduced_operator_gamma(int d, const std::vector<double>& s,
                                       const std::vector<double>& a);

/// The d x d block M(s, a) of the reduction.
Eigen::MatrixXd block_matrix(int d, const std::vector<double>& s,
                             const std::vector<double>& a);

/// Certificate serialization; schema documented in the README.
std::string certificate_to_json(const SdpCertificate& cert, const ReducedSdp& reduced);

}  // namespace pptforge
