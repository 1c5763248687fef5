#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pptforge/closed_form.hpp"
#include "pptforge/ppt_sdp.hpp"
#include "pptforge/rng.hpp"
#include "pptforge/spectra.hpp"

using namespace pptforge;

TEST_CASE("c_star on the worked instances") {
  CHECK(c_star(parse_schmidt("1/20,1/20,1/20,4/20,4/20,9/20"), 6) == 1);
  CHECK(c_star(SchmidtVector({0.05, 0.05, 0.9}), 2) == 2);
  CHECK(c_star(SchmidtVector({0.2, 0.3, 0.5}), 2) == 3);  // no face: c* = d
  CHECK(c_star(SchmidtVector::uniform(4), 4) == 1);       // ties accepted
  CHECK_THROWS_AS(c_star(SchmidtVector({0.0, 0.5, 0.5}), 2), std::domain_error);
}

TEST_CASE("t1 closed form on the worked instances") {
  CHECK(t1_value(parse_schmidt("1/20,1/20,1/20,4/20,4/20,9/20"), 6) ==
        doctest::Approx(29.0 / 35.0).epsilon(1e-12));

  const SchmidtVector skew({0.05, 0.05, 0.9});
  const double expected =
      (1.0 + 4.0 * (std::sqrt(0.9 * 0.05) + std::sqrt(0.9 * 0.05)) +
       8.0 * std::sqrt(0.05 * 0.05)) / 3.0;
  CHECK(t1_value(skew, 2) == doctest::Approx(expected).epsilon(1e-12));

  const SchmidtVector broad({0.2, 0.3, 0.5});
  CHECK(t1_value(broad, 2) ==
        doctest::Approx(s_half_pow2(broad) - 1.0).epsilon(1e-12));

  CHECK(t1_value(SchmidtVector::uniform(3), 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("c* = d branch equals the generic face formula at c = d") {
  SplitMix64 rng(31);
  int seen = 0;
  while (seen < 25) {
    const SchmidtVector v = sample_simplex(rng.uniform_int(2, 6), rng);
    const int k = rng.uniform_int(2, 6);
    if (c_star(v, k) != static_cast<int>(v.size())) continue;
    ++seen;
    const double direct = (s_half_pow2(v) - 1.0) / (k - 1.0);
    CHECK(t1_value(v, k) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(t1_at_face(v, k, static_cast<int>(v.size())) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("delta quadratic form") {
  const SchmidtVector u2 = SchmidtVector::uniform(2);
  CHECK(delta({0.0, 0.0}, u2, 2) == doctest::Approx(0.0));
  // single saturated coordinate: only the diagonal term survives
  CHECK(delta({std::sqrt(0.5), 0.0}, u2, 2) == doctest::Approx(-0.5 / 3.0));
  // fully saturated uniform caps: cross and diagonal cancel at K = 2
  CHECK(delta({std::sqrt(0.5), std::sqrt(0.5)}, u2, 2) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(delta({1.0, 1.0}, u2, 2), std::domain_error);
}

TEST_CASE("t1 equals the lower bound plus delta at the face point") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const SchmidtVector v = sample_simplex(rng.uniform_int(2, 7), rng);
    const int k = rng.uniform_int(2, 6);
    const FaceSearchResult fs = face_search(v, k);
    const Bounds b = bounds(v, k);
    CHECK(fs.t1_value ==
          doctest::Approx(b.lower + fs.delta_value).epsilon(1e-12));
    CHECK(fs.delta_value >= -1e-12);      // the face value never dips below mu=t=0
    CHECK(fs.t1_value >= b.lower - 1e-12);
    CHECK(fs.t1_value >= b.upper - 1e-12);  // extremal point is always available
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(std::abs(fs.x_point[i]) <= std::sqrt(v[i]) + 1e-12);
    }
  }
}

TEST_CASE("rank-one dual point: uniform target saturates everything") {
  const Rank1DualPoint p = rank1_dual_point(SchmidtVector::uniform(3), 3);
  for (double u : p.u) CHECK(u == doctest::Approx(1.0).epsilon(1e-12));
  for (double m : p.mu) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  const ReducedSdp red = build_reduced(SchmidtVector::uniform(3), 3);
  CHECK(dual_objective_value(red, p.mu, p.t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rank-one dual point is feasible and attains T1") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const SchmidtVector v = sample_simplex(rng.uniform_int(2, 8), rng);
    const int k = rng.uniform_int(2, 7);
    const Rank1DualPoint p = rank1_dual_point(v, k);
    const ReducedSdp red = build_reduced(v, k);
    CHECK(dual_violation(red, p.mu, p.t) <= 1e-9);
    CHECK(dual_objective_value(red, p.mu, p.t) ==
          doctest::Approx(t1_value(v, k)).epsilon(1e-10));
    CHECK(t1_value(v, k) >= bounds(v, k).lower - 1e-12);
  }
}

TEST_CASE("c* = d dual point has all caps saturated") {
  const Rank1DualPoint p = rank1_dual_point(SchmidtVector({0.2, 0.3, 0.5}), 2);
  for (double m : p.mu) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  for (double t : p.t) CHECK(t == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("face brute force matches the prefix search") {
  SplitMix64 rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(2, 5);
    const SchmidtVector v = sample_simplex(d, rng);
    const int k = rng.uniform_int(2, 7);  // includes K > d, the empty face
    CHECK(t1_value_bruteforce(v, k) ==
          doctest::Approx(t1_value(v, k)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(t1_value_bruteforce(SchmidtVector::uniform(6), 2),
                  std::domain_error);
}

TEST_CASE("K above the rank reduces T1 to the dual-zero value") {
  // With K > d the quadratic is concave and its interior maximum is 0, so the
  // empty face wins; cross-checked against the solver on a worked instance.
  const SchmidtVector half({0.5, 0.5});
  CHECK(c_star(half, 3) == 0);
  CHECK(t1_value(half, 3) == doctest::Approx(0.625).epsilon(1e-12));
  const SdpCertificate cert = solve(build_reduced(half, 3));
  REQUIRE(cert.status == SolveStatus::Optimal);
  CHECK(cert.primal_value == doctest::Approx(0.625).epsilon(1e-7));
}

TEST_CASE("swap lemma predicate") {
  const SchmidtVector v({0.2, 0.3, 0.5});
  // d=3, K=2: singleton faces have K + 1 - d = 0, no interior maximum
  CHECK_THROWS_AS(swap_improves(v, 2, {}, 2, 1), std::domain_error);

  // K=4 puts every singleton in range; exhaustive over ordered pairs
  CHECK(swap_improves(v, 4, {}, 1, 0));
  CHECK(swap_improves(v, 4, {}, 2, 0));
  CHECK(swap_improves(v, 4, {}, 2, 1));

  CHECK_THROWS_AS(swap_improves(SchmidtVector::uniform(3), 4, {}, 1, 0),
                  std::domain_error);  // equal coefficients violate the premise
  CHECK_THROWS_AS(swap_improves(v, 4, {1}, 1, 0), std::domain_error);

  SplitMix64 rng(35);
  int checked = 0;
  int attempts = 0;
  while (checked < 200 && ++attempts < 200000) {
    const int d = rng.uniform_int(3, 6);
    const SchmidtVector w = sample_simplex(d, rng);
    const int k = rng.uniform_int(2, 8);
    const int c = rng.uniform_int(std::max(1, 1 + d - k), d - 1);
    if (k + c - d < 1) continue;
    // pick C0 of size c-1 plus two candidates outside it
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    std::vector<int> c0(perm.begin(), perm.begin() + (c - 1));
    int n1 = perm[c - 1], n2 = perm[c];
    if (w[n1] == w[n2]) continue;
    if (w[n1] < w[n2]) std::swap(n1, n2);
    bool holds = false;
    try {
      holds = swap_improves(w, k, c0, n1, n2);
    } catch (const std::domain_error&) {
      continue;  // C1 had no stationary point; not an admissible triple
    }
    CHECK(holds);
    ++checked;
  }
  REQUIRE(checked == 200);
}

TEST_CASE("borderline targets keep T1 above one") {
  // (a, a, b, b) with sqrt(a) + sqrt(b) = sqrt(3)/sqrt(2)... constructed so
  // 2(sqrt(a)+sqrt(b)) squared = 3, i.e. S_1/2 = log2 3, and the vector is
  // not uniform: T1 must exceed 1.
  const double a = (0.5 - std::sqrt(0.1875)) / 2.0;
  const double b = 0.5 - a;
  const SchmidtVector v({a, a, b, b});
  CHECK(renyi_entropy(v, 0.5) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(t1_value(v, 3) > 1.0 + 1e-6);

  CHECK(t1_value(parse_schmidt("1/20,1/20,1/20,4/20,4/20,9/20"), 5) > 1.0);
}

TEST_CASE("rank-3 explicit primal point is feasible and optimal") {
  SplitMix64 rng(36);
  int seen = 0;
  while (seen < 20) {
    const SchmidtVector v = sample_simplex(3, rng);
    if (std::sqrt(v[0]) + std::sqrt(v[1]) > std::sqrt(v[2])) continue;
    ++seen;
    const Rank3PrimalPoint p = rank3_primal_point(v);
    const ReducedSdp red = build_reduced(v, 2);
    CHECK(primal_violation(red, p.s, p.a) <= 1e-12);
    double obj = 0.0;
    for (double s : p.s) obj += s;
    for (double a2 : p.a) obj += a2;
    CHECK(obj == doctest::Approx(t1_value(v, 2)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rank3_primal_point(SchmidtVector({0.2, 0.3, 0.5})),
                  std::domain_error);
}
