#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "pptforge/rng.hpp"
#include "pptforge/spectra.hpp"

using namespace pptforge;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

SchmidtVector example1() {
  return parse_schmidt("1/20,1/20,1/20,4/20,4/20,9/20");
}
}  // namespace

TEST_CASE("construction validates and normalizes") {
  SchmidtVector v({0.5, 0.2, 0.3});
  CHECK(v[0] == doctest::Approx(0.2));
  CHECK(v[2] == doctest::Approx(0.5));  // sorted ascending
  CHECK(v.rank() == 3);

  CHECK_THROWS_AS(SchmidtVector({0.5, -0.1, 0.6}), std::domain_error);
  CHECK_THROWS_AS(SchmidtVector({0.5, 0.6}), std::domain_error);
  CHECK_THROWS_AS(SchmidtVector(std::vector<double>{}), std::domain_error);

  // within the normalization band, accepted and renormalized exactly
  SchmidtVector w({0.5, 0.5 + 0.5e-9});
  double sum = 0.0;
  for (double c : w.coeffs()) sum += c;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SchmidtVector({0.5, 0.5 + 2e-9}), std::domain_error);
}

TEST_CASE("zero threshold drives rank and stripping") {
  SchmidtVector v({1e-16, 0.4, 0.6 - 1e-16});
  CHECK(v.size() == 3);
  CHECK(v.rank() == 2);
  CHECK(v.stripped().size() == 2);
  CHECK(SchmidtVector::uniform(4).is_uniform(4));
  CHECK_FALSE(SchmidtVector({0.3, 0.7}).is_uniform(2));
}

TEST_CASE("renyi entropy branches") {
  const SchmidtVector ex = example1();
  // S_1/2 = log2 5 exactly for the twentieths vector
  CHECK(renyi_entropy(ex, 0.5) == doctest::Approx(std::log2(5.0)).epsilon(1e-13));
  // S_0 = log2 of the rank
  CHECK(renyi_entropy(ex, 0.0) == doctest::Approx(std::log2(6.0)).epsilon(1e-13));
  // t = inf is -log2 of the top coefficient
  CHECK(renyi_entropy(SchmidtVector({0.9, 0.1}), kInf) ==
        doctest::Approx(-std::log2(0.9)).epsilon(1e-12));
  CHECK(renyi_entropy(SchmidtVector({0.9, 0.1}), 1.0) ==
        doctest::Approx(0.46899559358928122).epsilon(1e-12));

  CHECK_THROWS_AS(renyi_entropy(ex, -0.5), std::domain_error);
  CHECK_THROWS_AS(renyi_entropy(ex, std::nan("")), std::domain_error);
}

TEST_CASE("uniform vectors have entropy log2 K at every t") {
  for (int k = 2; k <= 7; ++k) {
    const SchmidtVector u = SchmidtVector::uniform(k);
    for (double t : {0.0, 0.3, 0.5, 1.0, 2.0, 7.5, kInf}) {
      CHECK(renyi_entropy(u, t) == doctest::Approx(std::log2(k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("entropy is non-increasing in t") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const SchmidtVector v = sample_simplex(rng.uniform_int(2, 7), rng);
    double prev = renyi_entropy(v, 0.0);
    for (double t : {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, 16.0, kInf}) {
      const double cur = renyi_entropy(v, t);
      CHECK(cur <= prev + 1e-10);
      prev = cur;
    }
  }
}

TEST_CASE("s_half_pow2 matches the power sum identity") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const SchmidtVector v = sample_simplex(rng.uniform_int(2, 8), rng);
    CHECK(std::exp2(renyi_entropy(v, 0.5)) ==
          doctest::Approx(s_half_pow2(v)).epsilon(1e-12));
  }
}

TEST_CASE("f_value branches") {
  const SchmidtVector u2 = SchmidtVector::uniform(2);
  CHECK(f_value(u2, 0.0) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(f_value(u2, -1.0) == doctest::Approx(-1.0).epsilon(1e-13));
  // a zero component sends every branch to -inf
  CHECK(f_value(SchmidtVector({0.0, 0.5, 0.5}), 0.0) == -kInf);
  CHECK(f_value(SchmidtVector({0.0, 0.5, 0.5}), -2.0) == -kInf);
  CHECK(f_value(SchmidtVector({0.0, 0.5, 0.5}), 2.0) == -kInf);
}

TEST_CASE("majorization") {
  const SchmidtVector u2 = SchmidtVector::uniform(2);
  CHECK(majorizes(u2, SchmidtVector({0.75, 0.25})));
  CHECK(majorizes(u2, u2));  // reflexive
  CHECK_FALSE(majorizes(u2, SchmidtVector({0.9, 0.05, 0.05})));

  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const SchmidtVector a = sample_simplex(rng.uniform_int(2, 6), rng);
    const SchmidtVector b = sample_simplex(rng.uniform_int(2, 6), rng);
    const SchmidtVector c = sample_simplex(rng.uniform_int(2, 6), rng);
    CHECK(majorizes(a, a));
    if (majorizes(a, b) && majorizes(b, c)) CHECK(majorizes(a, c));
  }
}

TEST_CASE("tensor products") {
  const SchmidtVector v({0.05, 0.05, 0.9});
  CHECK(tensor_product(v, SchmidtVector::uniform(1)) == v);
  CHECK(tensor_product(SchmidtVector::uniform(3), SchmidtVector::uniform(4)) ==
        SchmidtVector::uniform(12));

  const SchmidtVector prod = tensor_product(v, SchmidtVector::uniform(2));
  const std::vector<double> expect{0.025, 0.025, 0.025, 0.025, 0.45, 0.45};
  REQUIRE(prod.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(prod[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  // additivity of S_t over tensor products
  SplitMix64 rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    const SchmidtVector a = sample_simplex(rng.uniform_int(2, 5), rng);
    const SchmidtVector b = sample_simplex(rng.uniform_int(2, 5), rng);
    const SchmidtVector ab = tensor_product(a, b);
    for (double t : {0.0, 0.5, 1.0, 2.0, kInf}) {
      CHECK(renyi_entropy(ab, t) ==
            doctest::Approx(renyi_entropy(a, t) + renyi_entropy(b, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("monotone report") {
  const SchmidtVector ex = example1();
  const MonotoneReport rep = ppt_monotone_report(ex);
  CHECK(rep.e_xc == doctest::Approx(std::log2(5.0)).epsilon(1e-13));
  CHECK(rep.e_c == rep.e_d);

  const MonotoneReport uni = ppt_monotone_report(SchmidtVector::uniform(4));
  CHECK(uni.e_c == doctest::Approx(2.0));
  CHECK(uni.e_d == doctest::Approx(2.0));
  CHECK(uni.e_xd == doctest::Approx(2.0));
  CHECK(uni.e_xc == doctest::Approx(2.0));

  const MonotoneReport r = ppt_monotone_report(SchmidtVector({0.9, 0.1}));
  CHECK(r.e_xd == doctest::Approx(0.152003).epsilon(1e-5));
  CHECK(r.e_c == doctest::Approx(0.468996).epsilon(1e-5));
}

TEST_CASE("parsing") {
  const SchmidtVector ex = example1();
  CHECK(ex[5] == doctest::Approx(0.45));
  const SchmidtVector dec = parse_schmidt("0.5, 0.3,0.2");
  CHECK(dec[0] == doctest::Approx(0.2));
  CHECK_THROWS_AS(parse_schmidt("0.5,abc"), std::domain_error);
  CHECK_THROWS_AS(parse_schmidt("1/0,1"), std::domain_error);
  CHECK_THROWS_AS(parse_schmidt(""), std::domain_error);
  CHECK_THROWS_AS(parse_schmidt("0.5,,0.5"), std::domain_error);
}
