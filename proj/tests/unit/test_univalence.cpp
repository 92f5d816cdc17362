#include <cmath>
#include <vector>

#include "doctest.h"
#include "harmonic/error.hpp"
#include "harmonic/univalence.hpp"

using harmonic::Complex;
using harmonic::ErrorCode;
using harmonic::Verdict;

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

// arg(1 - r e^{i theta}) = -phi  <=>  sin(theta + phi) = sin(phi)/r
double theta_closed_form(double gamma, double r) {
  const double phi = harmonic::kPi / (gamma + 1.0);
  return std::asin(std::sin(phi) / r) - phi;
}

harmonic::ScanOptions scan(int cells, double radius = 0.999) {
  harmonic::ScanOptions o;
  o.cells = cells;
  o.radius = radius;
  return o;
}

void check_collision_verified(const harmonic::HarmonicMapping& f, const harmonic::UnivalenceReport& rep,
                              const harmonic::ScanOptions& o) {
  REQUIRE(rep.verdict == Verdict::kCollision);
  CHECK(std::abs(rep.z1 - rep.z2) >= o.separation_floor);
  CHECK(std::abs(f(rep.z1) - f(rep.z2)) <= o.collision_tol);
  CHECK(std::abs(rep.z1) <= o.radius);
  CHECK(std::abs(rep.z2) <= o.radius);
}

}  // namespace

TEST_CASE("feasibility threshold") {
  CHECK(harmonic::feasibility_threshold(1.25) == doctest::Approx(0.984807753012208).epsilon(1e-14));
  CHECK(harmonic::feasibility_threshold(1.75) == doctest::Approx(0.909631995354518).epsilon(1e-14));
  CHECK(harmonic::feasibility_threshold(1.0 + 1e-9) > 1.0 - 1e-15);
  CHECK(code_of([] { harmonic::feasibility_threshold(1.0); }) == ErrorCode::kParameter);
  CHECK(code_of([] { harmonic::feasibility_threshold(1.8); }) == ErrorCode::kParameter);
}

TEST_CASE("symmetric collision") {
  const auto c = harmonic::find_symmetric_collision({});
  CHECK(c.r0 == doctest::Approx(0.992403876506104).epsilon(1e-14));
  CHECK(c.theta0 == doctest::Approx(theta_closed_form(1.25, c.r0)).epsilon(1e-10));
  CHECK(c.theta0 == doctest::Approx(0.0507262140918356).epsilon(1e-10));
  CHECK(c.z2 == std::conj(c.z1));
  const auto f = harmonic::make_counterexample(1.25);
  CHECK(std::abs(f(c.z1).imag()) < 1e-10);
  CHECK(std::abs(f(c.z1) - f(c.z2)) < 1e-10);
  CHECK(std::abs(c.z1 - c.z2) > 0.05);
  CHECK(std::abs(std::sin(2.25 * std::arg(1.0 - c.z1))) < 1e-10 * 2.25);

  for (double gamma : {1.05, 1.4, 1.75}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double r0 = harmonic::feasibility_threshold(gamma) + frac * (1.0 - harmonic::feasibility_threshold(gamma));
      const auto s = harmonic::find_symmetric_collision({gamma, r0, 1e-10});
      CHECK(s.z2 == std::conj(s.z1));
      CHECK(s.theta0 == doctest::Approx(theta_closed_form(gamma, r0)).epsilon(1e-9));
      const auto fg = harmonic::make_counterexample(gamma);
      CHECK(std::abs(fg(s.z1).imag()) < 1e-10);
    }
  }
  CHECK(code_of([] { harmonic::find_symmetric_collision({1.25, 0.9, 1e-10}); }) == ErrorCode::kInfeasible);
  CHECK(code_of([] { harmonic::find_symmetric_collision({1.25, std::nullopt, 0.0}); }) == ErrorCode::kParameter);
}

TEST_CASE("counterexample imaginary part is odd in theta") {
  const auto f = harmonic::make_counterexample(1.25);
  for (int i = 1; i <= 20; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Complex z = std::polar(0.999 * i / 20, 2.0 * harmonic::kPi * j / 64);
      CHECK(std::abs(f(z).imag() + f(std::conj(z)).imag()) < 1e-14);
    }
  }
}

TEST_CASE("scan verdicts") {
  const auto id = harmonic::univalence_scan(harmonic::make_identity(), scan(128, 0.99));
  CHECK(id.verdict == Verdict::kCertified);
  CHECK(id.jacobian_flags == 0);

  const auto o = scan(256);
  const auto bl = harmonic::make_bshouty_lyzzaik(0.4);
  check_collision_verified(bl, harmonic::univalence_scan(bl, o), o);

  const auto fg = harmonic::make_counterexample(1.25);
  const auto rep = harmonic::univalence_scan(fg, o);
  check_collision_verified(fg, rep, o);
  CHECK(std::abs(rep.z2 - std::conj(rep.z1)) < 1e-6);

  const auto ok = harmonic::make_bshouty_lyzzaik(0.3);
  CHECK(harmonic::univalence_scan(ok, o).verdict == Verdict::kCertified);

  CHECK(code_of([&] { harmonic::univalence_scan(fg, scan(32)); }) == ErrorCode::kParameter);
  CHECK(code_of([&] { harmonic::univalence_scan(fg, scan(128, 1.0)); }) == ErrorCode::kDomain);
}

TEST_CASE("scan flags a sign-changing Jacobian") {
  // g' = 2 z: J = 1 - 4|z|^2 < 0 for |z| > 1/2
  const auto f = harmonic::make_with_dilatation(harmonic::PowerSeries(std::vector<Complex>{0.0, 1.0}), 2.0, 1);
  const auto rep = harmonic::univalence_scan(f, scan(128, 0.9));
  CHECK(rep.jacobian_flags > 0);
  CHECK(rep.verdict != Verdict::kCertified);

  // J vanishes only on |z| = 1/2 and never goes negative inside it
  const auto inner = harmonic::univalence_scan(f, scan(128, 0.45));
  CHECK(inner.jacobian_flags == 0);
  CHECK(inner.verdict == Verdict::kCertified);
}

TEST_CASE("a collision persists when the resolution doubles") {
  const auto fg = harmonic::make_counterexample(1.25);
  for (int c : {128, 256}) {
    const auto coarse = harmonic::univalence_scan(fg, scan(c));
    const auto fine = harmonic::univalence_scan(fg, scan(2 * c));
    REQUIRE(coarse.verdict == Verdict::kCollision);
    check_collision_verified(fg, fine, scan(2 * c));
    CHECK(fine.resolution == 2 * coarse.resolution);
  }
}

TEST_CASE("report JSON") {
  const auto fg = harmonic::make_counterexample(1.25);
  const auto j = harmonic::to_json(harmonic::univalence_scan(fg, scan(128)));
  CHECK(j["verdict"] == "collision");
  CHECK(j["z1"].size() == 2);
  CHECK(j["z2"].size() == 2);
  CHECK(j["image_gap"].is_number());
  CHECK(j["resolution"] == 128);
}

TEST_CASE("winding") {
  const auto id = harmonic::make_identity();
  for (double r : {0.1, 0.5, 0.99}) CHECK(harmonic::winding_check(id, r, 0.0) == 1);
  CHECK(harmonic::winding_check(id, 0.5, 0.7) == 0);

  const auto fg = harmonic::make_counterexample(1.25);
  CHECK(harmonic::winding_check(fg, 0.3, fg(0.1)) == 1);
  CHECK(harmonic::univalence_scan(fg, scan(128, 0.3)).verdict == Verdict::kCertified);

  // two preimages of the collision image inside |z| < 0.999
  const auto c = harmonic::find_symmetric_collision({});
  CHECK(harmonic::winding_check(fg, 0.999, c.image) >= 2);

  CHECK(code_of([&] { harmonic::winding_check(id, 0.5, 0.5); }) == ErrorCode::kOnCurve);
  CHECK(code_of([&] { harmonic::winding_check(id, 0.5, 0.0, 128); }) == ErrorCode::kParameter);
}
