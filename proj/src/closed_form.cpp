#include "pptforge/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "pptforge/ppt_sdp.hpp"

namespace pptforge {

namespace {

constexpr double kTieTol = 1e-12;

void require_valid(const SchmidtVector& lambda, int K, const char* who) {
  if (K < 2) throw std::domain_error(std::string(who) + ": K must be >= 2");
  if (lambda.size() == 0) throw std::domain_error(std::string(who) + ": empty lambda");
  if (lambda.rank() != static_cast<int>(lambda.size())) {
    throw std::domain_error(std::string(who) + ": strip zero components first");
  }
}

std::vector<double> sqrt_coeffs(const SchmidtVector& lambda) {
  std::vector<double> r(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) r[i] = std::sqrt(lambda[i]);
  return r;
}

double lower_bound_value(const SchmidtVector& lambda, int K) {
  const double p = s_half_pow2(lambda);
  return (K * p - 1.0) / (static_cast<double>(K) * K - 1.0);
}

// Stationary value of Delta on the face fixing x_i = sqrt(l_i) for i in C,
// given sig = sum_{i in C} sqrt(l_i), lam = sum_{i in C} l_i, m = K + |C| - d.
double delta_at_face(int K, int m, double sig, double lam) {
  return K * (sig * sig - m * lam) /
         ((static_cast<double>(K) * K - 1.0) * m);
}

}  // namespace

int c_star(const SchmidtVector& lambda, int K) {
  require_valid(lambda, K, "c_star");
  const int d = static_cast<int>(lambda.size());
  const auto r = sqrt_coeffs(lambda);
  const int c_lo = std::max(0, 1 + d - K);
  double prefix = 0.0;
  for (int i = 0; i < c_lo; ++i) prefix += r[i];
  for (int c = c_lo; c <= d - 1; ++c) {
    const int m = K + c - d;  // >= 1 throughout the range
    if (prefix <= m * r[c] + kTieTol * std::max(1.0, prefix)) {
      return c;
    }
    prefix += r[c];
  }
  return d;
}

double t1_at_face(const SchmidtVector& lambda, int K, int c) {
  require_valid(lambda, K, "t1_at_face");
  const int d = static_cast<int>(lambda.size());
  const int m = K + c - d;
  if (c < 0 || c > d || m < 0 || (m == 0 && c != 0)) {
    throw std::domain_error("t1_at_face: face size out of range");
  }
  double sig = 0.0, lam = 0.0;
  for (int i = 0; i < c; ++i) {
    sig += std::sqrt(lambda[i]);
    lam += lambda[i];
  }
  const double correction = (c == 0) ? 0.0 : delta_at_face(K, m, sig, lam);
  return lower_bound_value(lambda, K) + correction;
}

FaceSearchResult face_search(const SchmidtVector& lambda, int K) {
  require_valid(lambda, K, "face_search");
  const int d = static_cast<int>(lambda.size());
  const auto r = sqrt_coeffs(lambda);
  FaceSearchResult res;
  res.c_star = c_star(lambda, K);
  res.x_point.resize(d);
  if (res.c_star == d) {
    res.x_point = r;
    res.t1_value = (s_half_pow2(lambda) - 1.0) / (K - 1.0);
    res.delta_value = res.t1_value - lower_bound_value(lambda, K);
    return res;
  }
  const int m = K + res.c_star - d;
  double sig = 0.0;
  for (int i = 0; i < res.c_star; ++i) sig += r[i];
  const double y = (res.c_star == 0) ? 0.0 : sig / m;
  for (int i = 0; i < d; ++i) res.x_point[i] = (i < res.c_star) ? r[i] : y;
  res.delta_value = delta(res.x_point, lambda, K);
  res.t1_value = lower_bound_value(lambda, K) + res.delta_value;
  return res;
}

double t1_value(const SchmidtVector& lambda, int K) {
  return face_search(lambda, K).t1_value;
}

double delta(const std::vector<double>& x, const SchmidtVector& lambda, int K) {
  if (K < 2) throw std::domain_error("delta: K must be >= 2");
  if (x.size() != lambda.size()) throw std::domain_error("delta: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::sqrt(lambda[i]) + 1e-9) {
      throw std::domain_error("delta: x outside the hypercuboid");
    }
  }
  double cross = 0.0, full = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) cross += x[i] * x[j];
    for (std::size_t j = 0; j <= i; ++j) full += x[i] * x[j];
  }
  return cross / (K - 1.0) - full / (K + 1.0);
}

Rank1DualPoint rank1_dual_point(const SchmidtVector& lambda, int K) {
  const FaceSearchResult fs = face_search(lambda, K);
  const int d = static_cast<int>(lambda.size());
  Rank1DualPoint p;
  p.x = fs.x_point;
  p.u.resize(d);
  for (int i = 0; i < d; ++i) p.u[i] = p.x[i] / std::sqrt(lambda[i]);
  p.mu.resize(d * (d + 1) / 2);
  p.t.resize(d * (d - 1) / 2);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double m = p.u[i] * p.u[j];
      p.mu[tri_index_incl(i, j)] = m;
      if (j < i) p.t[tri_index_strict(i, j)] = -m;
    }
  }
  return p;
}

bool swap_improves(const SchmidtVector& lambda, int K,
                   const std::vector<int>& c0, int n1, int n2) {
  require_valid(lambda, K, "swap_improves");
  const int d = static_cast<int>(lambda.size());
  const auto r = sqrt_coeffs(lambda);
  std::set<int> base(c0.begin(), c0.end());
  if (base.size() != c0.size()) throw std::domain_error("swap_improves: duplicate indices");
  for (int i : base) {
    if (i < 0 || i >= d) throw std::domain_error("swap_improves: index out of range");
  }
  if (n1 < 0 || n1 >= d || n2 < 0 || n2 >= d || n1 == n2 || base.count(n1) ||
      base.count(n2)) {
    throw std::domain_error("swap_improves: n1, n2 must be distinct and outside C0");
  }
  if (!(lambda[n1] > lambda[n2])) {
    throw std::domain_error("swap_improves: requires lambda[n1] > lambda[n2]");
  }
  const int c = static_cast<int>(base.size()) + 1;
  const int m = K + c - d;
  if (m < 1) throw std::domain_error("swap_improves: face has no interior maximum");

  auto face = [&](int extra) {
    double sig = 0.0, lam = 0.0;
    for (int i : base) {
      sig += r[i];
      lam += lambda[i];
    }
    sig += r[extra];
    lam += lambda[extra];
    double min_out = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
      if (i != extra && !base.count(i)) min_out = std::min(min_out, r[i]);
    }
    const bool admissible = sig / m <= min_out + kTieTol;
    return std::pair<bool, double>{admissible, delta_at_face(K, m, sig, lam)};
  };

  const auto [adm1, d1] = face(n1);
  if (!adm1) {
    throw std::domain_error("swap_improves: C0 + {n1} has no stationary point");
  }
  const auto [adm2, d2] = face(n2);
  return adm2 && d2 >= d1 - kTieTol;
}

double t1_value_bruteforce(const SchmidtVector& lambda, int K) {
  require_valid(lambda, K, "t1_value_bruteforce");
  const int d = static_cast<int>(lambda.size());
  if (d > 5) throw std::domain_error("t1_value_bruteforce: guarded to d <= 5");
  const auto r = sqrt_coeffs(lambda);
  double best = -std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << d); ++mask) {
    const int c = __builtin_popcount(static_cast<unsigned>(mask));
    const int m = K + c - d;
    std::vector<double> x(d);
    if (c == d) {
      x = r;  // extremal point, no stationarity condition
    } else {
      if (m < 1) continue;
      double sig = 0.0;
      double min_out = std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i) {
        if (mask & (1 << i)) {
          sig += r[i];
        } else {
          min_out = std::min(min_out, r[i]);
        }
      }
      const double y = sig / m;
      if (y > min_out + kTieTol) continue;  // no stationary point on this face
      for (int i = 0; i < d; ++i) x[i] = (mask & (1 << i)) ? r[i] : y;
    }
    best = std::max(best, delta(x, lambda, K));
  }
  return lower_bound_value(lambda, K) + best;
}

Rank3PrimalPoint rank3_primal_point(const SchmidtVector& lambda) {
  if (lambda.size() != 3 || lambda.rank() != 3) {
    throw std::domain_error("rank3_primal_point: requires a zero-free rank-3 vector");
  }
  const double l1 = lambda[0], l2 = lambda[1], l3 = lambda[2];
  if (std::sqrt(l1) + std::sqrt(l2) > std::sqrt(l3) + kTieTol) {
    throw std::domain_error(
        "rank3_primal_point: valid only when sqrt(l1)+sqrt(l2) <= sqrt(l3)");
  }
  const double w21 = std::sqrt(l1 * l2);
  const double w31 = std::sqrt(l1 * l3);
  const double w32 = std::sqrt(l2 * l3);
  Rank3PrimalPoint p;
  p.s.resize(6);
  p.a.resize(3);
  p.s[tri_index_incl(0, 0)] = l1 / 3.0 + 4.0 / 9.0 * w21;
  p.s[tri_index_incl(1, 1)] = l2 / 3.0 + 4.0 / 9.0 * w21;
  p.s[tri_index_incl(2, 2)] = l3 / 3.0;
  p.s[tri_index_incl(1, 0)] = (1.0 / 3.0 + 4.0 / 9.0) * w21;
  p.s[tri_index_incl(2, 0)] = w31 / 3.0;
  p.s[tri_index_incl(2, 1)] = w32 / 3.0;
  p.a[tri_index_strict(1, 0)] = w21;
  p.a[tri_index_strict(2, 0)] = w31;
  p.a[tri_index_strict(2, 1)] = w32;
  return p;
}

}  // namespace pptforge
