#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "harmonic/complexfn.hpp"
#include "harmonic/error.hpp"

namespace harmonic::quad {

struct Options {
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
};

template <typename T>
struct Estimate {
  T value{};
  double error = 0.0;
};

/// Adaptive 30/61-point Gauss-Kronrod on [lo, hi] with dyadic bisection; the
/// error estimate is the embedded Gauss/Kronrod difference. `fn` may return
/// double or Complex. Throws kNonConvergence when the estimate misses
/// rel_tol * max(1, |value|).
template <typename F>
auto integrate(F&& fn, double lo, double hi, const Options& opts = {})
    -> Estimate<decltype(fn(0.0))> {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Boost compares an error estimate taken on [-1, 1] against a tolerance
  // scaled to [lo, hi]; integrating over [0, 1] keeps the two commensurate.
  const double width = hi - lo;
  auto unit = [&](double t) { return fn(lo + width * t) * width; };
  double err = 0.0;
  const auto value = Rule::integrate(unit, 0.0, 1.0, opts.max_depth, opts.rel_tol, &err);
  const double scale = std::max(1.0, static_cast<double>(std::abs(value)));
  if (!(err <= 10.0 * opts.rel_tol * scale)) {
    throw Error(ErrorCode::kNonConvergence,
                "quadrature: error estimate " + std::to_string(err) +
                    " above tolerance");
  }
  return {value, err};
}

struct Rule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule.
Rule gauss_legendre(int n);

}  // namespace harmonic::quad
