#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmonic/complexfn.hpp"
#include "harmonic/error.hpp"

namespace harmonic {
namespace {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::nearbyint(x) == x;
}

[[noreturn]] void fail(ErrorCode code, const char* what, double a, double b,
                       double c, Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "hyp2f1(" << a << ", " << b << ", " << c << ", " << z << "): " << what;
  throw Error(code, os.str());
}

// Plain Gauss series. The tail after term k is bounded by a geometric series
// with ratio max(|next ratio|, |z|): the coefficient ratios are monotone in k
// once they drop below one.
Complex direct_series(double a, double b, double c, Complex z,
                      const Hyp2f1Options& opts) {
  Complex term = 1.0;
  Complex sum = 1.0;
  const double az = std::abs(z);
  for (int k = 0; k < opts.max_terms; ++k) {
    const double coef = (a + k) * (b + k) / ((c + k) * (k + 1.0));
    term *= coef * z;
    sum += term;
    if (term == 0.0) return sum;  // terminating series
    const double next = std::abs((a + k + 1) * (b + k + 1) /
                                 ((c + k + 1) * (k + 2.0))) * az;
    const double q = std::max(next, az);
    if (q < 1.0 && std::abs(term) * q / (1.0 - q) <= 0.1 * opts.tol) {
      return sum;
    }
  }
  fail(ErrorCode::kNonConvergence, "series did not reach tolerance", a, b, c,
       z);
}

// Continues (F, F') from `from` to `to` along a straight segment by
// re-expanding the solution of
//   z(1-z) w'' + [c - (a+b+1) z] w' - ab w = 0
// in Taylor series. Each step stays within half the distance to the nearest
// singular point (0 or 1) so the local series converges like 2^-k.
Complex continue_ode(double a, double b, double c, Complex from, Complex to,
                     Complex w, Complex dw) {
  Complex p = from;
  for (int step = 0; step < 2000; ++step) {
    const Complex remaining = to - p;
    const double dist = std::abs(remaining);
    if (dist == 0.0) return w;
    const double radius = std::min(std::abs(p), std::abs(1.0 - p));
    const double len = std::min(dist, 0.5 * radius);
    const Complex t = remaining * (len / dist);

    const Complex p0 = p * (1.0 - p);
    const Complex p1 = 1.0 - 2.0 * p;
    const Complex q0 = c - (a + b + 1.0) * p;
    const double q1 = -(a + b + 1.0);
    const double r = -a * b;

    Complex ck = w;     // c_k
    Complex ck1 = dw;   // c_{k+1}
    Complex tk = 1.0;   // t^k
    Complex value = ck + ck1 * t;
    Complex deriv = ck1;
    for (int k = 0; k < 400; ++k) {
      const double kk = k;
      const Complex ck2 =
          -((p1 * kk + q0) * (kk + 1.0) * ck1 +
            (-kk * (kk - 1.0) + q1 * kk + r) * ck) /
          (p0 * (kk + 2.0) * (kk + 1.0));
      tk *= t;
      const Complex v_term = ck2 * tk * t;
      const Complex d_term = (kk + 2.0) * ck2 * tk;
      value += v_term;
      deriv += d_term;
      ck = ck1;
      ck1 = ck2;
      if (std::abs(v_term) <= 1e-17 * std::abs(value) &&
          std::abs(d_term) <= 1e-17 * std::abs(deriv) + 1e-300 && k > 4) {
        break;
      }
    }
    w = value;
    dw = deriv;
    p = (len == dist) ? to : p + t;
  }
  throw Error(ErrorCode::kNonConvergence, "hyp2f1: ODE continuation stalled");
}

}  // namespace

Complex hyp2f1(double a, double b, double c, Complex z,
               const Hyp2f1Options& opts) {
  if (is_nonpositive_integer(c)) {
    fail(ErrorCode::kPolynomialPole, "c is a non-positive integer", a, b, c, z);
  }
  const double az = std::abs(z);
  if (az > 1.0 + 1e-15) {
    fail(ErrorCode::kDomain, "|z| > 1", a, b, c, z);
  }
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return direct_series(a, b, c, z, opts);
  }
  if (z == 1.0) {
    if (c - a - b <= 0.0) {
      fail(ErrorCode::kDivergence, "c - a - b <= 0 at z = 1", a, b, c, z);
    }
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
      return 0.0;
    }
    return std::tgamma(c) * std::tgamma(c - a - b) /
           (std::tgamma(c - a) * std::tgamma(c - b));
  }
  if (az <= 0.5) return direct_series(a, b, c, z, opts);

  const Complex w = z / (z - 1.0);
  if (std::abs(w) <= 0.5) {
    // Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1))
    const Complex pref = principal_pow(1.0 - z, -a);
    Hyp2f1Options inner = opts;
    inner.tol = opts.tol / std::max(1.0, std::abs(pref));
    return pref * direct_series(a, c - b, c, w, inner);
  }

  const Complex start = 0.5 * z / az;
  Hyp2f1Options inner = opts;
  inner.tol = 1e-3 * opts.tol;
  const Complex w0 = direct_series(a, b, c, start, inner);
  const Complex dw0 = (a * b / c) * direct_series(a + 1, b + 1, c + 1, start, inner);
  return continue_ode(a, b, c, start, z, w0, dw0);
}

}  // namespace harmonic
