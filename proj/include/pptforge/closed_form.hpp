// Closed form for T1(K; lambda), the best dual value attainable by a rank-one
// PSD certificate: a search over faces of the hypercuboid |x_i| <= sqrt(l_i)
// for the maximum of the quadratic
//
//   Delta(x) = sum_{i>j} x_i x_j / (K-1)  -  sum_{i>=j} x_i x_j / (K+1),
//
// with T1 = (K 2^{S1/2} - 1)/(K^2 - 1) + max Delta.  The prefix face search
// runs over c in {max(0, 1+d-K), ..., d-1}; when no prefix admits a
// stationary point the maximum sits at the extremal point x = sqrt(lambda)
// and T1 collapses to (2^{S1/2} - 1)/(K - 1).

#pragma once

#include <vector>

#include "pptforge/spectra.hpp"

namespace pptforge {

struct FaceSearchResult {
  int c_star = 0;               // face size; == d when no prefix face qualifies
  double t1_value = 0.0;
  std::vector<double> x_point;  // maximizer of Delta in the hypercuboid
  double delta_value = 0.0;     // Delta at x_point
};

/// Full face search.  Requires lambda zero-free (sorted ascending by
/// construction) and K >= 2.
FaceSearchResult face_search(const SchmidtVector& lambda, int K);

/// Smallest face size c in range whose prefix face carries a stationary
/// point; d when none does.
int c_star(const SchmidtVector& lambda, int K);

/// The rank-one-certificate optimum T1(K; lambda).
double t1_value(const SchmidtVector& lambda, int K);

/// The displayed dual objective correction at face size c (1 <= c <= d used
/// directly; exposed for the identity checks at c = d).
double t1_at_face(const SchmidtVector& lambda, int K, int c);

/// Delta as displayed; throws if x leaves the hypercuboid by more than 1e-9.
double delta(const std::vector<double>& x, const SchmidtVector& lambda, int K);

/// The explicit rank-one dual point at the optimal face: x_i = sqrt(l_i) on
/// the face, the stationary value off it; u_i = x_i / sqrt(l_i);
/// mu_ij = u_i u_j, t_ij = -mu_ij.  Triangular tables row-major as in
/// ppt_sdp.hpp.
struct Rank1DualPoint {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> mu;
  std::vector<double> t;
};

Rank1DualPoint rank1_dual_point(const SchmidtVector& lambda, int K);

/// The swap step of the face-search argument: if C1 = C0 + {n1} carries a
/// stationary point and lambda[n1] > lambda[n2] (n1, n2 outside C0), then
/// C2 = C0 + {n2} does too and Delta_C2 >= Delta_C1.  Returns true iff both
/// checks hold; throws when the preconditions fail.
bool swap_improves(const SchmidtVector& lambda, int K,
                   const std::vector<int>& c0, int n1, int n2);

/// Brute-force maximum of Delta over every face of the hypercuboid (all
/// 2^d subsets plus the extremal point), for d <= 5.  Independent of the
/// prefix search; used as its oracle.
double t1_value_bruteforce(const SchmidtVector& lambda, int K);

/// The explicit primal-optimal point of the rank-three, K = 2 analysis
/// (valid when sqrt(l1) + sqrt(l2) <= sqrt(l3)); tables as in ppt_sdp.hpp.
struct Rank3PrimalPoint {
  std::vector<double> s;
  std::vector<double> a;
};

Rank3PrimalPoint rank3_primal_point(const SchmidtVector& lambda);

}  // namespace pptforge
