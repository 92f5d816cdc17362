#pragma once

#include <vector>

#include "harmonic/complexfn.hpp"
#include "harmonic/mappings.hpp"
#include "harmonic/report.hpp"

namespace harmonic {

/// Polar sample of the disk: every radius in `radii` carries
/// `angles_per_circle` equally spaced points starting at angle 0.
struct DiskGrid {
  std::vector<double> radii;
  int angles_per_circle = 64;

  void validate() const;
  Complex point(std::size_t radius_index, int angle_index) const;

  /// r_i = max_radius * i / count, i = 1..count.
  static DiskGrid uniform(double max_radius, int count, int angles);
  /// Radii with geometrically shrinking distance to the unit circle:
  /// 1 - r_i = (1 - max_radius)^(i/count), so the last circle is max_radius.
  static DiskGrid toward_boundary(double max_radius, int count, int angles);
  /// Doubles the angular resolution and inserts midpoints between radii; the
  /// result contains every point of *this.
  DiskGrid refined() const;
};

Json to_json(const DiskGrid& grid);

struct CurvatureReport {
  double inf_est = 0.0;
  double sup_est = 0.0;
  Complex argmin_z;
  Complex argmax_z;
  DiskGrid grid;
};

/// 1 + z h''(z)/h'(z). Throws kSingularity when |h'(z)| < 1e-300.
Complex curvature(const AnalyticFn& h, Complex z);
inline Complex curvature(const HarmonicMapping& f, Complex z) {
  return curvature(f.analytic_part(), z);
}

/// Extremes of Re curvature over the grid; ties keep the first point in
/// (radius, angle) order.
CurvatureReport curvature_extrema(const AnalyticFn& h, const DiskGrid& grid);

/// Sampled membership in M(alpha, zeta, n): inf Re curvature >= alpha - tol
/// and max |g' - zeta z^n h'| / max(1, |h'|) <= tol.
BoundReport check_membership(const HarmonicMapping& f, const ClassParams& params,
                             const DiskGrid& grid, double tol = 1e-10);

struct PBetaParams {
  double beta = 1.25;  // in (1, 3/2]
  void validate() const;
};

/// Sampled membership in P(beta): g' = z h' and sup Re curvature <= beta.
BoundReport check_pbeta(const HarmonicMapping& f, const PBetaParams& p, const DiskGrid& grid,
                        double tol = 1e-10);

/// Theorem-B style hypothesis g' = lambda k z^n h' with |lambda| = 1,
/// 0 < k <= 1/(2n-1), checked as membership in M(-1/2, lambda k, n).
BoundReport check_theorem_b_condition(const HarmonicMapping& f, Complex lambda, double k, int n,
                                      const DiskGrid& grid, double tol = 1e-10);

struct ArcIntegral {
  double min_integral = 0.0;  // over arcs of 1..M-1 grid steps
  double theta1 = 0.0;
  double theta2 = 0.0;
  double full_circle = 0.0;
};

/// Minimum over discrete arcs theta1 < theta2 < theta1 + 2 pi of the
/// trapezoidal integral of Re(1 + z F''/F') on |z| = r, with M uniform nodes.
/// Arcs span at least one grid step. Throws kSingularity when |F'| < 1e-12 at
/// a node.
ArcIntegral kaplan_min_arc_integral(const AnalyticFn& F, double r, int M);

/// F_lambda = h - lambda g.
AnalyticFn kaplan_family(const HarmonicMapping& f, Complex lambda);

/// Kaplan's condition for F_lambda at radius r over `lambdas` uniform points
/// of the unit circle: pass iff every min arc integral exceeds -pi.
BoundReport check_kaplan(const HarmonicMapping& f, double r, int M = 512, int lambdas = 32);

/// ((1 + 2 alpha)/(1 + 2n + 2 alpha))^(1/n) for -1/2 < alpha < 0, n >= 2.
double cc_radius(double alpha, int n);

}  // namespace harmonic
