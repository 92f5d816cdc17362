#pragma once

#include <span>
#include <vector>

#include "harmonic/classcheck.hpp"
#include "harmonic/mappings.hpp"
#include "harmonic/report.hpp"

namespace harmonic {

/// Sharp bound on |a_k| for h convex of order alpha:
/// (1/k!) prod_{j=2..k} (j - 2 alpha), k >= 2.
double coeff_bound_a(int k, double alpha);

/// Sharp bound on |b_{k+n}|: |zeta|/(n+1) for k = 1, otherwise
/// |zeta| k coeff_bound_a(k, alpha) / (k + n).
double coeff_bound_b(int k, int n, double alpha, Complex zeta);

/// max_{1<=k<=K} |(k+n) b_{k+n} - zeta k a_k| from the mapping's Taylor data.
/// Throws kMissingSeries when the series are absent or shorter than K + n.
BoundReport verify_coeff_relation(const HarmonicMapping& f, int n, Complex zeta, int K,
                                  double tol = 1e-12);

enum class GrowthMode { kClosedForm, kQuadrature };

struct GrowthBounds {
  double phi = 0.0;  // lower bound on |f| over |z| = r
  double psi = 0.0;  // upper bound
  double r = 0.0;
  ClassParams params;
  bool zeta_was_complex = false;  // zeta replaced by |zeta|
};

/// Growth bounds on |z| = r for 0 <= alpha < 1 and |zeta| <= 1/(2n-1).
GrowthBounds growth_bounds(double r, const ClassParams& params,
                           GrowthMode mode = GrowthMode::kClosedForm);

/// Radius of the disk about 0 covered by every f in the class: the r -> 1
/// limit of the growth lower bound.
double covering_radius(const ClassParams& params);

struct AreaOptions {
  double rel_tol = 1e-9;
  int radial = 128;
  int angular = 256;
  int max_doublings = 6;
};

struct AreaEstimate {
  double value = 0.0;
  double error = 0.0;   // |coarse - fine| of the last nested comparison
  int radial = 0;
  int angular = 0;
};

/// Area of f(D_r) as the integral of the Jacobian over |z| < r: Gauss-Legendre
/// in the radius, trapezoid in the angle, both doubled until successive
/// estimates agree to rel_tol.
AreaEstimate area(const HarmonicMapping& f, double r, const AreaOptions& opts = {});

struct AreaBounds {
  double lower = 0.0;
  double upper = 0.0;
  double r = 0.0;
  ClassParams params;
};

AreaBounds area_bounds(const ClassParams& params, double r);

/// Rotation of the extremal mapping and the point where |f| attains the lower
/// growth bound: delta = 1, z = -r for odd n; delta = e^{i pi/(n+2)},
/// z = -r conj(delta) for even n.
struct LowerAttainment {
  Complex delta;
  Complex direction;  // z = r * direction
};
LowerAttainment lower_bound_attainment(int n);

/// Compares |f_extremal(z)| against Phi and Psi at each r; pass iff the
/// largest deviation is <= tol.
BoundReport verify_sharpness(const ClassParams& params, std::span<const double> r_list,
                             double tol = 1e-8);

// Per-theorem reports over one parameter point, as run by the CLI's
// verify-bounds lattice.

/// |coefficients of make_extremal(params, delta = 1)| against coeff_bound_a/b
/// for k <= K, plus the coefficient relation residual (<= 1e-12).
BoundReport verify_coeff_attainment(const ClassParams& params, int K = 12, double tol = 1e-10);

/// Closed-form against quadrature Phi and Psi at each r.
BoundReport verify_growth_consistency(const ClassParams& params, std::span<const double> r_list,
                                      double tol = 1e-9);

/// covering_radius against Phi(1 - 1e-6).
BoundReport verify_covering(const ClassParams& params, double tol = 1e-4);

/// lower <= area(f, r) <= upper, with slack rel_tol on either side.
BoundReport verify_area_bounds(const HarmonicMapping& f, const ClassParams& params, double r,
                               const AreaOptions& opts = {});

}  // namespace harmonic
