#include <cmath>
#include <vector>

#include "doctest.h"
#include "harmonic/classcheck.hpp"
#include "harmonic/error.hpp"
#include "harmonic/mappings.hpp"

using harmonic::Complex;
using harmonic::DiskGrid;
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

harmonic::AnalyticFn polynomial_h(std::vector<Complex> coeffs) {
  return harmonic::from_series(harmonic::PowerSeries(std::move(coeffs)));
}

}  // namespace

TEST_CASE("DiskGrid") {
  const auto g = DiskGrid::uniform(0.9, 9, 16);
  CHECK(g.radii.size() == 9);
  CHECK(g.radii.back() == doctest::Approx(0.9));
  CHECK_NOTHROW(g.validate());
  const auto b = DiskGrid::toward_boundary(1.0 - 1e-4, 40, 64);
  CHECK(b.radii.back() == doctest::Approx(1.0 - 1e-4).epsilon(1e-14));
  CHECK_NOTHROW(b.validate());

  CHECK(code_of([] { DiskGrid{{0.5, 0.4}, 16}.validate(); }) == ErrorCode::kParameter);
  CHECK(code_of([] { DiskGrid{{0.5, 1.0}, 16}.validate(); }) == ErrorCode::kParameter);
  CHECK(code_of([] { DiskGrid{{0.5}, 4}.validate(); }) == ErrorCode::kParameter);

  const auto r = g.refined();
  CHECK(r.angles_per_circle == 32);
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    bool found = false;
    for (double x : r.radii) found = found || x == g.radii[i];
    CHECK(found);
  }
}

TEST_CASE("curvature") {
  const auto id = harmonic::make_identity();
  CHECK(harmonic::curvature(id, Complex(0.3, -0.7)) == Complex(1.0));

  const double gamma = 1.25;
  const auto f = harmonic::make_counterexample(gamma);
  for (Complex z : {Complex(0.5, 0.1), Complex(-0.9, 0.0), Complex(0.0, 0.99)}) {
    const Complex expected = (1.0 - gamma * z) / (1.0 - z);
    CHECK(std::abs(harmonic::curvature(f, z) - expected) < 1e-13);
  }

  // h' = (1 - z)^(2 alpha - 2): 1 + z h''/h' = 1 + (2 - 2 alpha) z/(1 - z)
  const double alpha = 0.3;
  const auto h = harmonic::convex_kernel(alpha);
  for (double r : {0.5, 0.9, 0.999999}) {
    const double expected = 1.0 - (2.0 - 2.0 * alpha) * r / (1.0 + r);
    CHECK(harmonic::curvature(h, -r).real() == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(std::abs(harmonic::curvature(h, -0.999999).real() - alpha) < 1e-5);

  const auto flat = polynomial_h({0.0, 1.0, -0.5});
  CHECK(code_of([&] { harmonic::curvature(flat, 1.0); }) == ErrorCode::kSingularity);
}

TEST_CASE("curvature extrema") {
  const auto id = harmonic::make_identity();
  const auto rep = harmonic::curvature_extrema(id.analytic_part(), DiskGrid::uniform(0.9, 5, 16));
  CHECK(rep.inf_est == 1.0);
  CHECK(rep.sup_est == 1.0);

  const auto grid = DiskGrid::toward_boundary(1.0 - 1e-4, 60, 720);
  const auto remark = harmonic::curvature_extrema(polynomial_h({0.0, 1.0, -0.3}), grid);
  CHECK(std::abs(remark.sup_est - 11.0 / 8.0) < 1e-3);
  CHECK(remark.inf_est <= remark.sup_est);

  const auto fg = harmonic::make_counterexample(1.25);
  const auto c = harmonic::curvature_extrema(fg.analytic_part(), grid);
  CHECK(std::abs(c.sup_est - 9.0 / 8.0) < 1e-3);
  CHECK(c.sup_est <= 9.0 / 8.0);
}

TEST_CASE("curvature extrema tighten under refinement") {
  const auto h = polynomial_h({0.0, 1.0, -0.3, 0.05});
  DiskGrid grid = DiskGrid::uniform(0.95, 4, 8);
  auto prev = harmonic::curvature_extrema(h, grid);
  for (int i = 0; i < 4; ++i) {
    grid = grid.refined();
    const auto next = harmonic::curvature_extrema(h, grid);
    CHECK(next.inf_est <= prev.inf_est);
    CHECK(next.sup_est >= prev.sup_est);
    prev = next;
  }
}

TEST_CASE("extrema of real-coefficient h are conjugate symmetric") {
  const auto h = polynomial_h({0.0, 1.0, 0.2, -0.1});
  const auto grid = DiskGrid::uniform(0.9, 6, 64);
  const auto rep = harmonic::curvature_extrema(h, grid);
  CHECK(harmonic::curvature(h, std::conj(rep.argmax_z)).real() == doctest::Approx(rep.sup_est).epsilon(1e-14));
  CHECK(harmonic::curvature(h, std::conj(rep.argmin_z)).real() == doctest::Approx(rep.inf_est).epsilon(1e-14));
}

TEST_CASE("check_membership") {
  const auto grid = DiskGrid::toward_boundary(0.999, 30, 128);
  const auto ext = harmonic::make_extremal({{0.5, 0.5, 1}, 1.0});
  const auto ok = harmonic::check_membership(ext, {0.5, 0.5, 1}, grid);
  CHECK(ok.pass);
  CHECK(ok.margin >= 0.0);

  // Re((1 - gamma z)/(1 - z)) > -1/2 holds for |z| < 6/7 only
  const auto fg = harmonic::make_counterexample(1.25);
  const auto inner = DiskGrid::uniform(0.8, 16, 128);
  CHECK(harmonic::check_membership(fg, {-0.5, 1.0, 1}, inner).pass);
  const auto near_boundary = harmonic::check_membership(fg, {-0.5, 1.0, 1}, grid);
  CHECK_FALSE(near_boundary.pass);

  const auto high = harmonic::check_membership(fg, {0.9, 1.0, 1}, inner);
  CHECK_FALSE(high.pass);
  CHECK(high.margin < 0.0);
  REQUIRE(high.witness);

  // wrong dilatation
  const auto wrong = harmonic::check_membership(fg, {-0.5, 0.5, 1}, inner);
  CHECK_FALSE(wrong.pass);
  const auto j = harmonic::to_json(wrong);
  CHECK(j.contains("grid"));
  CHECK(j["check"].is_string());
}

TEST_CASE("check_pbeta") {
  const auto grid = DiskGrid::toward_boundary(1.0 - 1e-4, 40, 256);
  const auto fg = harmonic::make_counterexample(1.25);
  CHECK(harmonic::check_pbeta(fg, {9.0 / 8.0}, grid).pass);
  const auto fail = harmonic::check_pbeta(fg, {1.01}, grid);
  CHECK_FALSE(fail.pass);
  CHECK(fail.margin < 0.0);

  const auto quad = harmonic::make_from_h(harmonic::PowerSeries(std::vector<Complex>{0.0, 1.0}), 1.0, 1);
  CHECK(harmonic::check_pbeta(quad, {1.0001}, grid).pass);

  CHECK(code_of([] { harmonic::PBetaParams{1.0}.validate(); }) == ErrorCode::kParameter);
  CHECK(code_of([] { harmonic::PBetaParams{1.6}.validate(); }) == ErrorCode::kParameter);
}

TEST_CASE("check_theorem_b_condition") {
  const auto fg = harmonic::make_counterexample(1.25);
  const auto inner = DiskGrid::uniform(0.8, 16, 128);
  const auto rep = harmonic::check_theorem_b_condition(fg, 1.0, 1.0, 1, inner);
  CHECK(rep.pass);

  const Complex zeta(0.0, 1.0 / 3.0);
  const auto f = harmonic::make_from_h(harmonic::convex_kernel(-0.25), zeta, 2, "h_alpha");
  CHECK(harmonic::check_theorem_b_condition(f, Complex(0.0, 1.0), 1.0 / 3.0, 2,
                                            DiskGrid::toward_boundary(0.99, 20, 64))
            .pass);

  CHECK(code_of([&] { harmonic::check_theorem_b_condition(f, 1.0, 0.6, 2, inner); }) ==
        ErrorCode::kAdmissibility);
  CHECK(code_of([&] { harmonic::check_theorem_b_condition(f, 0.5, 0.2, 2, inner); }) ==
        ErrorCode::kParameter);
}

TEST_CASE("Kaplan arc integral") {
  const auto id = harmonic::make_identity();
  const auto a = harmonic::kaplan_min_arc_integral(id.analytic_part(), 0.9, 128);
  CHECK(a.min_integral == doctest::Approx(2.0 * harmonic::kPi / 128).epsilon(1e-12));
  CHECK(a.full_circle == doctest::Approx(2.0 * harmonic::kPi).epsilon(1e-13));

  // F' zero-free in the closed disk: full circle integral is 2 pi
  const auto F = polynomial_h({0.0, 1.0, 0.3, -0.1});
  for (double r : {0.5, 0.8, 0.95}) {
    const auto arc = harmonic::kaplan_min_arc_integral(F, r, 512);
    CHECK(arc.full_circle == doctest::Approx(2.0 * harmonic::kPi).epsilon(1e-9));
    CHECK(arc.min_integral <= arc.full_circle);
  }
  // F' = 1 - z/0.8 has a zero inside |z| < 0.9: the winding of F' adds 2 pi
  const auto G = polynomial_h({0.0, 1.0, -1.0 / 1.6});
  CHECK(harmonic::kaplan_min_arc_integral(G, 0.9, 1024).full_circle ==
        doctest::Approx(4.0 * harmonic::kPi).epsilon(1e-6));

  CHECK(code_of([&] { harmonic::kaplan_min_arc_integral(F, 0.5, 32); }) == ErrorCode::kParameter);
  // F' = 1 - 2z vanishes on the node z = 1/2
  const auto flat = polynomial_h({0.0, 1.0, -1.0});
  CHECK(code_of([&] { harmonic::kaplan_min_arc_integral(flat, 0.5, 64); }) ==
        ErrorCode::kSingularity);
}

TEST_CASE("Kaplan condition below the close-to-convexity radius") {
  for (auto [alpha, n] : {std::pair{-0.25, 2}, std::pair{-0.1, 3}, std::pair{-0.4, 2}}) {
    CAPTURE(alpha);
    const double rc = harmonic::cc_radius(alpha, n);
    const auto f = harmonic::make_with_dilatation(harmonic::convex_kernel(alpha), 1.0, n);
    const auto rep = harmonic::check_kaplan(f, 0.95 * rc);
    CHECK(rep.pass);
    CHECK(rep.margin > 0.0);
  }
}

TEST_CASE("cc_radius") {
  CHECK(harmonic::cc_radius(-0.25, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(harmonic::cc_radius(-0.1, 3) == doctest::Approx(std::cbrt(0.8 / 6.8)).epsilon(1e-15));
  CHECK(harmonic::cc_radius(-0.1, 3) == doctest::Approx(0.4899973).epsilon(1e-6));
  CHECK(harmonic::cc_radius(-0.5 + 1e-12, 2) < 1e-5);
  for (double a = -0.45; a < -0.01; a += 0.05) {
    for (int n = 2; n < 8; ++n) {
      const double r = harmonic::cc_radius(a, n);
      CHECK(r > 0.0);
      CHECK(r < 1.0);
      CHECK(harmonic::cc_radius(a + 0.01, n) > r);
      CHECK(harmonic::cc_radius(a, n + 1) > r);
    }
  }
  CHECK(code_of([] { harmonic::cc_radius(-0.5, 2); }) == ErrorCode::kParameter);
  CHECK(code_of([] { harmonic::cc_radius(0.0, 2); }) == ErrorCode::kParameter);
  CHECK(code_of([] { harmonic::cc_radius(-0.2, 1); }) == ErrorCode::kParameter);
}
