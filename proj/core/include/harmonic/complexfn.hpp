#pragma once

#include <complex>

namespace harmonic {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Principal logarithm, arg in (-pi, pi].
Complex principal_log(Complex w);

// exp(gamma * Log w) on the plane slit along (-inf, 0]. Throws
// ErrorCode::kBranchCut on the cut itself.
Complex principal_pow(Complex w, double gamma);

/// The branched power z -> (1 - delta*z)^exponent on the unit disk, with
/// |delta| = 1. For |z| < 1 the base has positive real part, so the principal
/// branch is analytic there.
class BranchedPower {
 public:
  BranchedPower(Complex delta, double exponent);

  Complex delta() const noexcept { return delta_; }
  double exponent() const noexcept { return exponent_; }

  Complex operator()(Complex z) const;
  /// d/dz (1 - delta z)^p = -delta p (1 - delta z)^(p-1)
  Complex derivative(Complex z) const;

 private:
  Complex delta_;
  double exponent_;
};

struct Hyp2f1Options {
  double tol = 1e-12;
  int max_terms = 10000;
};

/// Gauss hypergeometric function 2F1(a, b; c; z) for real parameters and
/// |z| <= 1.
///
/// |z| <= 1/2 is summed directly. Points with |z/(z-1)| <= 1/2 (which
/// includes z = -1) go through the Pfaff transformation. Anything else,
/// i.e. the lens around z = 1, is reached by Taylor-stepping the
/// hypergeometric ODE outward from |z| = 1/2. z = 1 itself uses Gauss's
/// summation theorem and needs c - a - b > 0.
Complex hyp2f1(double a, double b, double c, Complex z,
               const Hyp2f1Options& opts = {});

}  // namespace harmonic
