#include "harmonic/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmonic/error.hpp"
#include "harmonic/quadrature.hpp"

namespace harmonic {
namespace {

// Growth, covering and area bounds are only established for 0 <= alpha < 1
// and 0 <= zeta <= 1/(2n-1); anything else is rejected rather than
// extrapolated.
void validate_bound_params(const ClassParams& params, const char* who) {
  params.validate();
  if (params.alpha < 0.0) {
    std::ostringstream os;
    os << who << ": bounds require 0 <= alpha < 1 (got " << params.alpha << ")";
    throw Error(ErrorCode::kParameter, os.str());
  }
}

void validate_radius(double r, const char* who) {
  if (!(r >= 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << who << ": r = " << r << " outside [0, 1)";
    throw Error(ErrorCode::kDomain, os.str());
  }
}

// (x^p - 1)/p with x = 1 + u, stable as p -> 0.
double power_quotient(double u, double p) { return std::expm1(p * std::log1p(u)) / p; }

}  // namespace

double coeff_bound_a(int k, double alpha) {
  if (k < 2) throw Error(ErrorCode::kParameter, "coeff_bound_a: k must be >= 2");
  if (!(alpha >= -0.5 && alpha < 1.0)) {
    throw Error(ErrorCode::kParameter, "coeff_bound_a: alpha outside [-1/2, 1)");
  }
  double prod = 1.0;
  for (int j = 2; j <= k; ++j) prod *= (j - 2.0 * alpha) / j;
  return prod;
}

double coeff_bound_b(int k, int n, double alpha, Complex zeta) {
  if (k < 1) throw Error(ErrorCode::kParameter, "coeff_bound_b: k must be >= 1");
  ClassParams{alpha, zeta, n}.validate();
  const double az = std::abs(zeta);
  if (k == 1) return az / (n + 1.0);
  return az * k * coeff_bound_a(k, alpha) / (k + n);
}

BoundReport verify_coeff_relation(const HarmonicMapping& f, int n, Complex zeta, int K,
                                  double tol) {
  if (K < 1 || n < 1) throw Error(ErrorCode::kParameter, "coeff relation: need K, n >= 1");
  const auto need = static_cast<std::size_t>(K + n);
  if (!f.taylor_h() || !f.taylor_g()) {
    throw Error(ErrorCode::kMissingSeries, "coeff relation: mapping has no Taylor data");
  }
  if (f.taylor_g()->order() < need || f.taylor_h()->order() < static_cast<std::size_t>(K)) {
    throw Error(ErrorCode::kMissingSeries, "coeff relation: Taylor data shorter than K + n");
  }
  const PowerSeries& a = *f.taylor_h();
  const PowerSeries& b = *f.taylor_g();
  double worst = 0.0;
  int worst_k = 1;
  Json residuals = Json::array();
  for (int k = 1; k <= K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double res = std::abs(static_cast<double>(k + n) * b[kk + static_cast<std::size_t>(n)] -
                                zeta * static_cast<double>(k) * a[kk]);
    residuals.push_back(res);
    if (res > worst) {
      worst = res;
      worst_k = k;
    }
  }
  BoundReport rep;
  rep.check = "coeff-relation";
  rep.margin = tol - worst;
  rep.pass = worst <= tol;
  rep.grid = {{"K", K}};
  rep.witness = Witness{Complex(worst_k, 0.0), worst};
  rep.details = {{"mapping", f.label()}, {"n", n}, {"zeta", to_json(zeta)},
                 {"max_residual", worst}, {"worst_k", worst_k}, {"residuals", residuals}};
  return rep;
}

GrowthBounds growth_bounds(double r, const ClassParams& params, GrowthMode mode) {
  validate_bound_params(params, "growth_bounds");
  validate_radius(r, "growth_bounds");
  GrowthBounds out;
  out.r = r;
  out.params = params;
  out.zeta_was_complex = params.zeta.imag() != 0.0 || params.zeta.real() < 0.0;
  const double zeta = std::abs(params.zeta);
  const double alpha = params.alpha;
  const int n = params.n;
  if (r == 0.0) return out;

  if (mode == GrowthMode::kClosedForm) {
    const double rn1 = std::pow(r, n + 1) / (n + 1.0);
    const double b = is_log_branch(alpha) ? 1.0 : 2.0 - 2.0 * alpha;
    const double f_minus = zeta == 0.0 ? 0.0 : hyp2f1(n + 1.0, b, n + 2.0, -r).real();
    const double f_plus = zeta == 0.0 ? 0.0 : hyp2f1(n + 1.0, b, n + 2.0, r).real();
    if (is_log_branch(alpha)) {
      out.phi = std::log1p(r) - zeta * rn1 * f_minus;
      out.psi = -std::log1p(-r) + zeta * rn1 * f_plus;
    } else {
      const double p = 2.0 * alpha - 1.0;
      out.phi = power_quotient(r, p) - zeta * rn1 * f_minus;
      out.psi = -power_quotient(-r, p) + zeta * rn1 * f_plus;
    }
    return out;
  }

  const double e = 2.0 * alpha - 2.0;
  const quad::Options opts{1e-13, 25};
  out.phi = quad::integrate(
                [&](double rho) { return (1.0 - zeta * std::pow(rho, n)) * std::pow(1.0 + rho, e); },
                0.0, r, opts)
                .value;
  out.psi = quad::integrate(
                [&](double rho) { return (1.0 + zeta * std::pow(rho, n)) * std::pow(1.0 - rho, e); },
                0.0, r, opts)
                .value;
  return out;
}

double covering_radius(const ClassParams& params) {
  validate_bound_params(params, "covering_radius");
  const double zeta = std::abs(params.zeta);
  const int n = params.n;
  const double alpha = params.alpha;
  const double b = is_log_branch(alpha) ? 1.0 : 2.0 - 2.0 * alpha;
  const double tail = zeta == 0.0 ? 0.0 : zeta * hyp2f1(n + 1.0, b, n + 2.0, -1.0).real() / (n + 1.0);
  if (is_log_branch(alpha)) return std::log(2.0) - tail;
  return power_quotient(1.0, 2.0 * alpha - 1.0) - tail;
}

AreaEstimate area(const HarmonicMapping& f, double r, const AreaOptions& opts) {
  validate_radius(r, "area");
  AreaEstimate est;
  if (r == 0.0) return est;

  auto tensor = [&](int radial, int angular) {
    const quad::Rule rule = quad::gauss_legendre(radial);
    const double dtheta = 2.0 * kPi / angular;
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = 0.5 * r * (rule.nodes[i] + 1.0);
      double ring = 0.0;
      for (int j = 0; j < angular; ++j) {
        const Complex z = std::polar(rho, dtheta * j);
        ring += std::norm(f.dh(z)) - std::norm(f.dg(z));
      }
      total += rule.weights[i] * 0.5 * r * rho * ring * dtheta;
    }
    return total;
  };

  int radial = opts.radial;
  int angular = opts.angular;
  double coarse = tensor(radial, angular);
  for (int d = 0; d < opts.max_doublings; ++d) {
    const double fine = tensor(2 * radial, 2 * angular);
    radial *= 2;
    angular *= 2;
    est = {fine, std::abs(fine - coarse), radial, angular};
    if (est.error <= opts.rel_tol * std::abs(fine)) return est;
    coarse = fine;
  }
  throw Error(ErrorCode::kNonConvergence, "area: nested estimate did not reach tolerance");
}

AreaBounds area_bounds(const ClassParams& params, double r) {
  validate_bound_params(params, "area_bounds");
  validate_radius(r, "area_bounds");
  AreaBounds out;
  out.r = r;
  out.params = params;
  if (r == 0.0) return out;
  const double z2 = std::norm(params.zeta);
  const int two_n = 2 * params.n;
  const double e = -4.0 * (1.0 - params.alpha);
  const quad::Options opts{1e-13, 25};
  out.lower = 2.0 * kPi *
              quad::integrate(
                  [&](double rho) { return rho * (1.0 - z2 * std::pow(rho, two_n)) * std::pow(1.0 + rho, e); },
                  0.0, r, opts)
                  .value;
  out.upper = 2.0 * kPi *
              quad::integrate(
                  [&](double rho) { return rho * (1.0 - z2 * std::pow(rho, two_n)) * std::pow(1.0 - rho, e); },
                  0.0, r, opts)
                  .value;
  return out;
}

LowerAttainment lower_bound_attainment(int n) {
  // With delta the rotation, f_delta(-r conj(delta)) =
  //   conj(delta) [h_1(-r) + delta^(n+2) g_1(-r)]
  // and the two parts cancel exactly when delta^(n+2) = (-1)^(n+1).
  if (n % 2 == 1) return {1.0, -1.0};
  const Complex delta = std::polar(1.0, kPi / (n + 2));
  return {delta, -std::conj(delta)};
}

BoundReport verify_sharpness(const ClassParams& params, std::span<const double> r_list,
                             double tol) {
  validate_bound_params(params, "verify_sharpness");
  ClassParams real_params = params;
  real_params.zeta = std::abs(params.zeta);
  const LowerAttainment low = lower_bound_attainment(params.n);
  const HarmonicMapping upper_map = make_extremal({real_params, 1.0});
  const HarmonicMapping lower_map = make_extremal({real_params, low.delta});

  BoundReport rep;
  rep.check = "growth-sharpness";
  double worst = 0.0;
  Json rows = Json::array();
  for (double r : r_list) {
    const GrowthBounds gb = growth_bounds(r, real_params);
    double at_plus = 0.0;
    double at_minus = 0.0;
    if (r > 0.0) {
      at_plus = std::abs(evaluate(upper_map, r));
      at_minus = std::abs(evaluate(lower_map, r * low.direction));
    }
    const double dev = std::max(std::abs(at_plus - gb.psi), std::abs(at_minus - gb.phi));
    rows.push_back({{"r", r}, {"phi", gb.phi}, {"psi", gb.psi},
                    {"abs_f_lower", at_minus}, {"abs_f_upper", at_plus}, {"deviation", dev}});
    if (dev >= worst) {
      worst = dev;
      rep.witness = Witness{Complex(r, 0.0), dev};
    }
  }
  rep.margin = tol - worst;
  rep.pass = worst <= tol;
  rep.grid = {{"radii", r_list.size()}};
  rep.details = {{"params", {{"alpha", params.alpha}, {"zeta", to_json(Complex(std::abs(params.zeta)))}, {"n", params.n}}},
                 {"lower_rotation", to_json(low.delta)},
                 {"max_deviation", worst},
                 {"rows", rows}};
  if (params.zeta.imag() != 0.0 || params.zeta.real() < 0.0) {
    rep.details["note"] = "complex zeta replaced by |zeta|";
  }
  return rep;
}

}  // namespace harmonic

namespace harmonic {
namespace {

Json params_json(const ClassParams& p) {
  return {{"alpha", p.alpha}, {"zeta", to_json(p.zeta)}, {"n", p.n}};
}

}  // namespace

BoundReport verify_coeff_attainment(const ClassParams& params, int K, double tol) {
  params.validate();
  const HarmonicMapping f = make_extremal({params, 1.0});
  const PowerSeries& a = *f.taylor_h();
  const PowerSeries& b = *f.taylor_g();
  double worst = 0.0;
  int worst_k = 2;
  for (int k = 2; k <= K; ++k) {
    const double dev = std::abs(std::abs(a[static_cast<std::size_t>(k)]) - coeff_bound_a(k, params.alpha));
    if (dev > worst) {
      worst = dev;
      worst_k = k;
    }
  }
  for (int k = 1; k <= K; ++k) {
    const double dev = std::abs(std::abs(b[static_cast<std::size_t>(k + params.n)]) -
                                coeff_bound_b(k, params.n, params.alpha, params.zeta));
    if (dev > worst) {
      worst = dev;
      worst_k = k + params.n;
    }
  }
  const BoundReport relation = verify_coeff_relation(f, params.n, params.zeta, K);
  const double residual = relation.details["max_residual"].get<double>();

  BoundReport rep;
  rep.check = "coefficient-sharpness";
  rep.margin = std::min(tol - worst, 1e-12 - residual);
  rep.pass = worst <= tol && residual <= 1e-12;
  rep.grid = {{"K", K}};
  rep.witness = Witness{Complex(worst_k, 0.0), worst};
  rep.details = {{"params", params_json(params)}, {"max_deviation", worst}, {"relation_residual", residual}};
  return rep;
}

BoundReport verify_growth_consistency(const ClassParams& params, std::span<const double> r_list,
                                      double tol) {
  double worst = 0.0;
  BoundReport rep;
  rep.check = "growth-consistency";
  for (double r : r_list) {
    const GrowthBounds cf = growth_bounds(r, params, GrowthMode::kClosedForm);
    const GrowthBounds qd = growth_bounds(r, params, GrowthMode::kQuadrature);
    const double dev = std::max(std::abs(cf.phi - qd.phi), std::abs(cf.psi - qd.psi));
    if (dev >= worst) {
      worst = dev;
      rep.witness = Witness{Complex(r, 0.0), dev};
    }
  }
  rep.margin = tol - worst;
  rep.pass = worst <= tol;
  rep.grid = {{"radii", std::vector<double>(r_list.begin(), r_list.end())}};
  rep.details = {{"params", params_json(params)}, {"max_deviation", worst}};
  return rep;
}

BoundReport verify_covering(const ClassParams& params, double tol) {
  const double rc = covering_radius(params);
  const double limit = growth_bounds(1.0 - 1e-6, params).phi;
  const double dev = std::abs(rc - limit);
  BoundReport rep;
  rep.check = "covering-limit";
  rep.margin = tol - dev;
  rep.pass = dev <= tol;
  rep.grid = {{"r", 1.0 - 1e-6}};
  rep.witness = Witness{Complex(1.0 - 1e-6, 0.0), dev};
  rep.details = {{"params", params_json(params)}, {"covering_radius", rc}, {"phi_near_boundary", limit}};
  return rep;
}

BoundReport verify_area_bounds(const HarmonicMapping& f, const ClassParams& params, double r,
                               const AreaOptions& opts) {
  const AreaBounds bounds = area_bounds(params, r);
  const AreaEstimate a = area(f, r, opts);
  const double slack = opts.rel_tol * a.value;
  BoundReport rep;
  rep.check = "area-sandwich";
  rep.margin = std::min(a.value - bounds.lower, bounds.upper - a.value) + slack;
  rep.pass = rep.margin >= 0.0;
  rep.grid = {{"radial", a.radial}, {"angular", a.angular}, {"r", r}};
  rep.witness = Witness{Complex(r, 0.0), a.value};
  rep.details = {{"params", params_json(params)}, {"mapping", f.label()}, {"area", a.value},
                 {"area_error", a.error}, {"lower", bounds.lower}, {"upper", bounds.upper}};
  return rep;
}

}  // namespace harmonic
