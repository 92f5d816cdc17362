#include <cmath>
#include <random>

#include "doctest.h"
#include "harmonic/complexfn.hpp"
#include "harmonic/error.hpp"
#include "harmonic/power_series.hpp"
#include "oracles.hpp"

using harmonic::Complex;
using harmonic::ErrorCode;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const harmonic::Error& e) {
    return e.code();
  }
  FAIL("expected harmonic::Error");
  return ErrorCode::kUsage;
}

Complex random_in_disk(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * harmonic::kPi * u(rng));
}

}  // namespace

TEST_CASE("hyp2f1 at the origin is one") {
  CHECK(harmonic::hyp2f1(1.0, 2.0, 3.0, 0.0) == Complex(1.0));
  CHECK(harmonic::hyp2f1(-0.3, 7.5, 0.25, 0.0) == Complex(1.0));
}

TEST_CASE("hyp2f1 closed forms") {
  // -log(1-z)/z at z = 1/2
  const Complex v = harmonic::hyp2f1(1, 1, 2, 0.5);
  CHECK(std::abs(v - Complex(2.0 * std::log(2.0))) < 1e-13);
  CHECK(std::abs(v - oracle::hyp2f1_series(1, 1, 2, 0.5)) < 1e-13);

  // -2(z + log(1-z))/z^2 at z = -1, i.e. 2(1 - log 2)
  const Complex w = harmonic::hyp2f1(1, 2, 3, -1.0);
  CHECK(std::abs(w - Complex(2.0 * (1.0 - std::log(2.0)))) < 1e-13);
  CHECK(std::abs(w - Complex(0.6137056388801094)) < 1e-13);
}

TEST_CASE("hyp2f1 frozen values across the disk") {
  // Reference values from a 30-digit evaluation.
  struct Row {
    double a, b, c;
    Complex z, expected;
  };
  const Row rows[] = {
      {3, 1.5, 4, 0.95, 15.738430235570463444},
      {2, 2, 3, {0.9, 0.3}, {0.28786333191873126866, 4.647864244399133699}},
      {2, 2, 3, -1.0, 0.38629436111989061883},
      {3, 2, 4, -1.0, 0.3411169166403281435},
      {2, 1.5, 3, 0.999 * std::polar(1.0, harmonic::kPi / 3), {0.53697048961719090229, 0.92805867068383076801}},
      {1.5, 0.5, 2.5, {0.99, -0.1}, {1.729646169359818244, -0.37422403214173975945}},
      {2, 2, 3, {0.7, 0.7}, {0.083657165743519867582, 1.5410657314499820166}},
      {0.5, 0.5, 1.5, 1.0, 1.5707963267948966192},
      {2, 1.5, 3, {0.0, 1.0}, {0.49771559806868552115, 0.53317093643774411575}},
  };
  for (const Row& row : rows) {
    CAPTURE(row.z);
    const Complex v = harmonic::hyp2f1(row.a, row.b, row.c, row.z);
    CHECK(std::abs(v - row.expected) < 1e-11 * std::max(1.0, std::abs(row.expected)));
  }
}

TEST_CASE("hyp2f1 errors") {
  CHECK(code_of([] { harmonic::hyp2f1(1, 1, 0, 0.3); }) == ErrorCode::kPolynomialPole);
  CHECK(code_of([] { harmonic::hyp2f1(1, 1, -2, 0.3); }) == ErrorCode::kPolynomialPole);
  CHECK(code_of([] { harmonic::hyp2f1(1, 1, 2, 1.0); }) == ErrorCode::kDivergence);
  CHECK(code_of([] { harmonic::hyp2f1(1, 1, 2, 1.5); }) == ErrorCode::kDomain);
  harmonic::Hyp2f1Options tight;
  tight.max_terms = 3;
  CHECK(code_of([&] { harmonic::hyp2f1(1, 1, 2, 0.4, tight); }) == ErrorCode::kNonConvergence);
}

TEST_CASE("hyp2f1 terminating series") {
  // F(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
  const double b = 1.5, c = 2.5;
  const Complex z(0.9, 0.4);
  const Complex expected = 1.0 - 2.0 * b * z / c + b * (b + 1) * z * z / (c * (c + 1));
  CHECK(std::abs(harmonic::hyp2f1(-2, b, c, z) - expected) < 1e-14);
}

TEST_CASE("hyp2f1 property: logarithm identity on |z| <= 0.9") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Complex z = random_in_disk(rng, 0.9);
    if (std::abs(z) < 1e-6) continue;
    CAPTURE(z);
    CHECK(std::abs(harmonic::hyp2f1(1, 1, 2, z) + std::log(1.0 - z) / z) <= 1e-11);
  }
}

TEST_CASE("hyp2f1 property: Euler transformation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> par(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = par(rng), b = par(rng), c = par(rng) + 0.5;
    const Complex z = random_in_disk(rng, 0.9);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(z);
    const Complex lhs = harmonic::hyp2f1(a, b, c, z);
    const Complex rhs = harmonic::principal_pow(1.0 - z, c - a - b) * harmonic::hyp2f1(c - a, c - b, c, z);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("hyp2f1 agrees with plain summation inside |z| <= 0.8") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> par(0.2, 2.5);
  for (int i = 0; i < 100; ++i) {
    const double a = par(rng), b = par(rng), c = par(rng) + 0.3;
    const Complex z = random_in_disk(rng, 0.8);
    const Complex ref = oracle::hyp2f1_series(a, b, c, z);
    CHECK(std::abs(harmonic::hyp2f1(a, b, c, z) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("principal_pow") {
  CHECK(harmonic::principal_pow(1.0, 2.7) == Complex(1.0));
  CHECK(harmonic::principal_pow(4.0, 0.5) == Complex(2.0));

  const Complex w(1.0, -0.5);
  const Complex v = harmonic::principal_pow(w, 2.25);
  CHECK(std::arg(v) == doctest::Approx(2.25 * std::atan2(-0.5, 1.0)).epsilon(1e-14));
  CHECK(std::abs(v - oracle::pow_extended(w, 2.25)) < 1e-14);
  CHECK(std::abs(v - Complex(0.64711532322019629656, -1.1105783887594348072)) < 1e-14);

  CHECK(code_of([] { harmonic::principal_pow(-2.0, 0.5); }) == ErrorCode::kBranchCut);
  CHECK(code_of([] { harmonic::principal_pow(0.0, 0.5); }) == ErrorCode::kBranchCut);
}

TEST_CASE("principal_log stays on (-pi, pi]") {
  CHECK(harmonic::principal_log(Complex(-1.0, 0.0)).imag() == doctest::Approx(harmonic::kPi));
  CHECK(harmonic::principal_log(Complex(-1.0, -0.0)).imag() == doctest::Approx(harmonic::kPi));
  CHECK(harmonic::principal_log(Complex(-1.0, -1e-300)).imag() < 0.0);
}

TEST_CASE("principal_pow property: exponents add on the right half-plane") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(1e-3, 3.0), im(-3.0, 3.0), g(-2.5, 2.5);
  for (int i = 0; i < 500; ++i) {
    const Complex w(re(rng), im(rng));
    const double g1 = g(rng), g2 = g(rng);
    const Complex lhs = harmonic::principal_pow(w, g1 + g2);
    const Complex rhs = harmonic::principal_pow(w, g1) * harmonic::principal_pow(w, g2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("BranchedPower on the disk") {
  const harmonic::BranchedPower p(Complex(0.0, 1.0), -1.5);
  const Complex z(0.3, -0.6);
  CHECK(std::abs(p(z) - harmonic::principal_pow(1.0 - Complex(0.0, 1.0) * z, -1.5)) == 0.0);
  const auto fn = [&](Complex x) { return p(x); };
  CHECK(std::abs(p.derivative(z) - oracle::central_diff(fn, z, 1e-5)) < 1e-8);
  CHECK(code_of([] { harmonic::BranchedPower(Complex(0.5, 0.0), 1.0); }) == ErrorCode::kParameter);
}

TEST_CASE("series basics") {
  using harmonic::PowerSeries;
  const PowerSeries z(std::vector<Complex>{0.0, 1.0});
  const PowerSeries dz = harmonic::series_derive(z);
  CHECK(dz.order() == 0);
  CHECK(dz[0] == Complex(1.0));

  const PowerSeries one_plus(std::vector<Complex>{1.0, 1.0, 0.0});
  const PowerSeries one_minus(std::vector<Complex>{1.0, -1.0, 0.0});
  const PowerSeries prod = harmonic::series_mul(one_plus, one_minus);
  CHECK(prod.order() == 2);
  CHECK(prod[0] == Complex(1.0));
  CHECK(prod[1] == Complex(0.0));
  CHECK(prod[2] == Complex(-1.0));

  const PowerSeries s(std::vector<Complex>{2.5, 1.0, 3.0});
  CHECK(harmonic::series_eval(s, 0.0) == Complex(2.5));
  CHECK(code_of([] { PowerSeries(0).derive(); }) == ErrorCode::kOrderUnderflow);
}

TEST_CASE("integrating the geometric series gives -log(1-z)") {
  const auto geo = harmonic::PowerSeries::binomial(1.0, -1.0, 5);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(geo[k] == Complex(1.0));
  const auto log_series = harmonic::series_integrate(geo);
  REQUIRE(log_series.order() == 6);
  CHECK(log_series[0] == Complex(0.0));
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(std::abs(log_series[k] - Complex(1.0 / static_cast<double>(k))) < 1e-16);
  }
}

TEST_CASE("series invariants") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> ca(12), cb(9);
    for (auto& c : ca) c = {nd(rng), nd(rng)};
    for (auto& c : cb) c = {nd(rng), nd(rng)};
    const harmonic::PowerSeries a(ca), b(cb);

    CHECK(a.derive().order() == a.order() - 1);
    const auto ia = a.integrate();
    CHECK(ia.order() == a.order() + 1);
    CHECK(ia[0] == Complex(0.0));

    // truncated product matches the full Cauchy product up to min order
    const auto p = a * b;
    REQUIRE(p.order() == 8);
    for (std::size_t k = 0; k <= 8; ++k) {
      Complex exact = 0.0;
      for (std::size_t i = 0; i <= k; ++i) exact += ca[i] * cb[k - i];
      CHECK(std::abs(p[k] - exact) < 1e-12);
    }

    // derivative evaluator against a centered difference, O(h^2)
    const Complex z = random_in_disk(rng, 0.6);
    const auto fn = [&](Complex x) { return a.eval(x); };
    const Complex fd1 = oracle::central_diff(fn, z, 1e-3);
    const Complex fd2 = oracle::central_diff(fn, z, 5e-4);
    const Complex exact = a.derive().eval(z);
    const double e1 = std::abs(fd1 - exact), e2 = std::abs(fd2 - exact);
    CHECK(e1 < 1e-3);
    CHECK(e2 <= 0.3 * e1 + 1e-9);
  }
}
