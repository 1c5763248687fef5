// Schmidt coefficient vectors and the scalar functionals defined on them:
// Renyi entropies, the f_t family, majorization, tensor products.
//
// All logarithms are base two. Vectors are stored sorted non-decreasing.

#pragma once

#include <string>
#include <vector>

namespace pptforge {

// Components whose sum deviates from one by more than this are rejected.
inline constexpr double kNormalizationTol = 1e-9;
// Components at or below this are treated as exact zeros (rank, f_t branches).
inline constexpr double kZeroThreshold = 1e-15;
// Slack allowed in prefix-sum comparisons, favouring "majorizes" at equality.
inline constexpr double kMajorizationTol = 1e-12;

/// A normalized vector of Schmidt coefficients (probabilities), sorted
/// non-decreasing.  Construction validates non-negativity and normalization,
/// then renormalizes exactly.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> coeffs);

  /// The uniform vector (1/K, ..., 1/K); K >= 1.
  static SchmidtVector uniform(int k);

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  /// Number of components strictly above the zero threshold.
  int rank() const;

  /// Copy with zero components removed (rank() many components remain).
  SchmidtVector stripped() const;

  /// True iff the nonzero part is exactly the uniform vector of size k.
  bool is_uniform(int k) const;

  /// Largest component (last, since sorted ascending).
  double max_coeff() const { return coeffs_.back(); }

  bool operator==(const SchmidtVector& other) const {
    return coeffs_ == other.coeffs_;
  }

 private:
  std::vector<double> coeffs_;
};

/// Renyi entropy S_t in bits, t in [0, inf].  Four branches: power sum for
/// t in (0,1) and (1,inf), log rank at t = 0, Shannon at t = 1, -log of the
/// largest component at t = inf.  Throws std::domain_error for t < 0 or NaN.
double renyi_entropy(const SchmidtVector& lambda, double t);

/// The f_t functional used by the LOCC catalysis criterion:
///   log(sum_i lambda_i^t) / (t - 1)   for t != 0, all components nonzero,
///   sum_i log lambda_i                for t == 0, all components nonzero,
///   -inf                              otherwise.
/// At t == 1 the continuous limit -H(lambda) is returned; at t = +/-inf the
/// limits log(max) and log(min).  Never throws: -inf is a value.
double f_value(const SchmidtVector& lambda, double t);

/// True iff lambda is majorized by mu (all prefix sums of the non-increasing
/// rearrangement of lambda bounded by mu's).  Vectors are zero-padded to a
/// common length.  Equivalently: rho_lambda -> rho_mu is LOCC-feasible.
bool majorizes(const SchmidtVector& lambda, const SchmidtVector& mu);

/// Componentwise products lambda_i * xi_j, re-sorted.
SchmidtVector tensor_product(const SchmidtVector& lambda,
                             const SchmidtVector& xi);

/// Closed-form PPT entanglement monotones of a pure state, in bits.
struct MonotoneReport {
  double e_c;   // entanglement cost           = S_1
  double e_d;   // distillable entanglement    = S_1
  double e_xd;  // exact distillable           = S_inf
  double e_xc;  // exact entanglement cost     = S_1/2
};

MonotoneReport ppt_monotone_report(const SchmidtVector& lambda);

/// 2^{S_1/2} = (sum_i sqrt(lambda_i))^2, used all over the SDP bounds.
double s_half_pow2(const SchmidtVector& lambda);

/// Parses "0.2,0.3,0.5" or "1/20,1/20,18/20" (entries may mix both forms).
SchmidtVector parse_schmidt(const std::string& text);

}  // namespace pptforge
