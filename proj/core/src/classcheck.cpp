#include "harmonic/classcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "harmonic/error.hpp"

namespace harmonic {

void DiskGrid::validate() const {
  if (angles_per_circle < 8) {
    throw Error(ErrorCode::kParameter, "DiskGrid: angles_per_circle must be >= 8");
  }
  if (radii.empty()) throw Error(ErrorCode::kParameter, "DiskGrid: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorCode::kParameter,
                  "DiskGrid: radii must be strictly increasing inside (0, 1)");
    }
  }
}

Complex DiskGrid::point(std::size_t radius_index, int angle_index) const {
  return std::polar(radii[radius_index], 2.0 * kPi * angle_index / angles_per_circle);
}

DiskGrid DiskGrid::uniform(double max_radius, int count, int angles) {
  DiskGrid g;
  g.angles_per_circle = angles;
  for (int i = 1; i <= count; ++i) g.radii.push_back(max_radius * i / count);
  g.validate();
  return g;
}

DiskGrid DiskGrid::toward_boundary(double max_radius, int count, int angles) {
  DiskGrid g;
  g.angles_per_circle = angles;
  const double gap = 1.0 - max_radius;
  for (int i = 1; i < count; ++i) {
    g.radii.push_back(1.0 - std::pow(gap, static_cast<double>(i) / count));
  }
  g.radii.push_back(max_radius);
  g.validate();
  return g;
}

DiskGrid DiskGrid::refined() const {
  DiskGrid g;
  g.angles_per_circle = 2 * angles_per_circle;
  double prev = 0.0;
  for (double r : radii) {
    g.radii.push_back(0.5 * (prev + r));
    g.radii.push_back(r);
    prev = r;
  }
  return g;
}

Json to_json(const DiskGrid& grid) {
  return {{"radii", grid.radii.size()},
          {"min_radius", grid.radii.front()},
          {"max_radius", grid.radii.back()},
          {"angles_per_circle", grid.angles_per_circle}};
}

Complex curvature(const AnalyticFn& h, Complex z) {
  const Complex d1 = h.d1(z);
  if (std::abs(d1) < 1e-300) {
    throw Error(ErrorCode::kSingularity, "curvature: h'(z) vanishes");
  }
  return 1.0 + z * h.d2(z) / d1;
}

CurvatureReport curvature_extrema(const AnalyticFn& h, const DiskGrid& grid) {
  grid.validate();
  CurvatureReport rep;
  rep.grid = grid;
  rep.inf_est = std::numeric_limits<double>::infinity();
  rep.sup_est = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    for (int j = 0; j < grid.angles_per_circle; ++j) {
      const Complex z = grid.point(i, j);
      const double v = curvature(h, z).real();
      if (v < rep.inf_est) {
        rep.inf_est = v;
        rep.argmin_z = z;
      }
      if (v > rep.sup_est) {
        rep.sup_est = v;
        rep.argmax_z = z;
      }
    }
  }
  return rep;
}

namespace {

struct Residual {
  double value = 0.0;
  Complex z;
};

// max |g' - zeta z^n h'| / max(1, |h'|) over the grid
Residual dilatation_residual(const HarmonicMapping& f, Complex zeta, int n, const DiskGrid& grid) {
  Residual worst;
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    for (int j = 0; j < grid.angles_per_circle; ++j) {
      const Complex z = grid.point(i, j);
      const Complex dh = f.dh(z);
      const double res = std::abs(f.dg(z) - zeta * std::pow(z, n) * dh) / std::max(1.0, std::abs(dh));
      if (res > worst.value) worst = {res, z};
    }
  }
  return worst;
}

}  // namespace

BoundReport check_membership(const HarmonicMapping& f, const ClassParams& params,
                             const DiskGrid& grid, double tol) {
  params.validate();
  const CurvatureReport curv = curvature_extrema(f.analytic_part(), grid);
  const Residual res = dilatation_residual(f, params.zeta, params.n, grid);

  const double curvature_margin = curv.inf_est - (params.alpha - tol);
  const double residual_margin = tol - res.value;

  BoundReport rep;
  rep.check = "membership";
  rep.margin = std::min(curvature_margin, residual_margin);
  rep.pass = curvature_margin >= 0.0 && residual_margin >= 0.0;
  rep.grid = to_json(grid);
  if (curvature_margin <= residual_margin) {
    rep.witness = Witness{curv.argmin_z, curv.inf_est};
  } else {
    rep.witness = Witness{res.z, res.value};
  }
  rep.details = {{"mapping", f.label()},
                 {"alpha", params.alpha},
                 {"zeta", to_json(params.zeta)},
                 {"n", params.n},
                 {"curvature_inf", curv.inf_est},
                 {"curvature_margin", curvature_margin},
                 {"dilatation_residual", res.value},
                 {"residual_margin", residual_margin},
                 {"tol", tol},
                 {"semantics", "certified at grid resolution"}};
  return rep;
}

void PBetaParams::validate() const {
  if (!(beta > 1.0 && beta <= 1.5)) {
    throw Error(ErrorCode::kParameter, "P(beta): beta must lie in (1, 3/2]");
  }
}

BoundReport check_pbeta(const HarmonicMapping& f, const PBetaParams& p, const DiskGrid& grid,
                        double tol) {
  p.validate();
  const CurvatureReport curv = curvature_extrema(f.analytic_part(), grid);
  const Residual res = dilatation_residual(f, 1.0, 1, grid);

  const double curvature_margin = (p.beta + tol) - curv.sup_est;
  const double residual_margin = tol - res.value;

  BoundReport rep;
  rep.check = "pbeta";
  rep.margin = std::min(curvature_margin, residual_margin);
  rep.pass = curvature_margin >= 0.0 && residual_margin >= 0.0;
  rep.grid = to_json(grid);
  if (curvature_margin <= residual_margin) {
    rep.witness = Witness{curv.argmax_z, curv.sup_est};
  } else {
    rep.witness = Witness{res.z, res.value};
  }
  rep.details = {{"mapping", f.label()},
                 {"beta", p.beta},
                 {"curvature_sup", curv.sup_est},
                 {"curvature_margin", curvature_margin},
                 {"dilatation_residual", res.value},
                 {"residual_margin", residual_margin},
                 {"tol", tol},
                 {"semantics", "certified at grid resolution"}};
  return rep;
}

BoundReport check_theorem_b_condition(const HarmonicMapping& f, Complex lambda, double k, int n,
                                      const DiskGrid& grid, double tol) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kParameter, "theorem-b: |lambda| must be 1");
  }
  if (n < 1 || !(k > 0.0) || k > 1.0 / (2.0 * n - 1.0) * (1.0 + 1e-14)) {
    std::ostringstream os;
    os << "theorem-b: k = " << k << " must lie in (0, 1/(2n-1)] for n = " << n;
    throw Error(ErrorCode::kAdmissibility, os.str());
  }
  BoundReport rep = check_membership(f, ClassParams{-0.5, lambda * k, n}, grid, tol);
  rep.check = "theorem-b";
  rep.details["lambda"] = to_json(lambda);
  rep.details["k"] = k;
  return rep;
}

ArcIntegral kaplan_min_arc_integral(const AnalyticFn& F, double r, int M) {
  if (M < 64) throw Error(ErrorCode::kParameter, "kaplan: need M >= 64 nodes");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::kDomain, "kaplan: r must lie in (0, 1)");
  std::vector<double> v(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const Complex z = std::polar(r, 2.0 * kPi * j / M);
    const Complex d1 = F.d1(z);
    if (std::abs(d1) < 1e-12) {
      throw Error(ErrorCode::kSingularity, "kaplan: F' vanishes on the circle");
    }
    v[static_cast<std::size_t>(j)] = (1.0 + z * F.d2(z) / d1).real();
  }
  // prefix[k] = v_0 + ... + v_{k-1} over the doubled circle
  std::vector<double> prefix(2 * static_cast<std::size_t>(M) + 1, 0.0);
  for (std::size_t k = 0; k < 2 * static_cast<std::size_t>(M); ++k) {
    prefix[k + 1] = prefix[k] + v[k % static_cast<std::size_t>(M)];
  }
  const double step = 2.0 * kPi / M;
  ArcIntegral out;
  out.full_circle = step * prefix[static_cast<std::size_t>(M)];
  out.min_integral = std::numeric_limits<double>::infinity();
  for (int len = 1; len < M; ++len) {
    for (int i = 0; i < M; ++i) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(i + len);
      const double trap =
          step * (prefix[b + 1] - prefix[a] - 0.5 * (v[a] + v[b % static_cast<std::size_t>(M)]));
      if (trap < out.min_integral) {
        out.min_integral = trap;
        out.theta1 = step * i;
        out.theta2 = step * (i + len);
      }
    }
  }
  return out;
}

AnalyticFn kaplan_family(const HarmonicMapping& f, Complex lambda) {
  const AnalyticFn h = f.analytic_part();
  const AnalyticFn g = f.coanalytic_part();
  return {[h, g, lambda](Complex z) { return h.value(z) - lambda * g.value(z); },
          [h, g, lambda](Complex z) { return h.d1(z) - lambda * g.d1(z); },
          [h, g, lambda](Complex z) { return h.d2(z) - lambda * g.d2(z); }};
}

BoundReport check_kaplan(const HarmonicMapping& f, double r, int M, int lambdas) {
  BoundReport rep;
  rep.check = "kaplan";
  double worst = std::numeric_limits<double>::infinity();
  Complex worst_lambda;
  ArcIntegral worst_arc;
  for (int k = 0; k < lambdas; ++k) {
    const Complex lambda = std::polar(1.0, 2.0 * kPi * k / lambdas);
    const ArcIntegral arc = kaplan_min_arc_integral(kaplan_family(f, lambda), r, M);
    if (arc.min_integral < worst) {
      worst = arc.min_integral;
      worst_lambda = lambda;
      worst_arc = arc;
    }
  }
  rep.margin = worst + kPi;
  rep.pass = rep.margin > 0.0;
  rep.grid = {{"radius", r}, {"nodes", M}, {"lambdas", lambdas}};
  rep.witness = Witness{std::polar(r, worst_arc.theta1), worst};
  rep.details = {{"mapping", f.label()},
                 {"lambda", to_json(worst_lambda)},
                 {"theta1", worst_arc.theta1},
                 {"theta2", worst_arc.theta2},
                 {"full_circle", worst_arc.full_circle},
                 {"semantics", "lambda sampled on the unit circle"}};
  return rep;
}

double cc_radius(double alpha, int n) {
  if (!(alpha > -0.5 && alpha < 0.0) || n < 2) {
    throw Error(ErrorCode::kParameter, "cc_radius: need -1/2 < alpha < 0 and n >= 2");
  }
  return std::pow((1.0 + 2.0 * alpha) / (1.0 + 2.0 * n + 2.0 * alpha), 1.0 / n);
}

}  // namespace harmonic
