#pragma once

#include <optional>

#include "harmonic/complexfn.hpp"
#include "harmonic/mappings.hpp"
#include "harmonic/report.hpp"

namespace harmonic {

/// Infimum of radii r0 for which arg(1 - r0 e^{i theta}) reaches
/// -pi/(gamma+1): sin(pi/(gamma+1)). Requires 1 < gamma <= 7/4.
double feasibility_threshold(double gamma);

struct CollisionSearchParams {
  double gamma = 1.25;
  std::optional<double> r0;  // default: midpoint of (threshold, 1)
  double tol = 1e-10;
};

struct SymmetricCollision {
  double r0 = 0.0;
  double theta0 = 0.0;
  Complex z1;
  Complex z2;         // conj(z1)
  Complex image;      // f(z1)
  double image_gap = 0.0;
  int iterations = 0;
};

/// Finds theta0 in (0, pi) with arg(1 - r0 e^{i theta0}) = -pi/(gamma+1), so
/// that Im f_gamma vanishes at z1 = r0 e^{i theta0} and at conj(z1), making
/// the two points collide. Throws kInfeasible when r0 <= threshold.
SymmetricCollision find_symmetric_collision(const CollisionSearchParams& p);

enum class Verdict { kCertified, kCollision, kDegenerateJacobian };

const char* to_string(Verdict v) noexcept;

struct ScanOptions {
  double radius = 0.999;
  int cells = 512;               // angular samples; radial samples = cells / 4
  double collision_tol = 1e-8;
  double separation_floor = 0.05;
  int max_candidates = 64;       // candidate pairs handed to Newton
};

struct UnivalenceReport {
  Verdict verdict = Verdict::kCertified;
  Complex z1;
  Complex z2;
  double image_gap = 0.0;
  int resolution = 0;
  double scan_radius = 0.0;
  double refinement_residual = 0.0;
  int candidates = 0;        // pairs handed to Newton
  int unconfirmed = 0;       // of those, pairs Newton could not close
  int jacobian_flags = 0;    // grid points with J <= 0
  std::optional<Complex> degenerate_z;
};

Json to_json(const UnivalenceReport& rep);

/// Sampling-based injectivity test on |z| <= radius. Images of a polar grid
/// are bucketed in a uniform spatial hash; preimage-separated pairs whose
/// images land within the local grid spacing are refined by damped
/// minimum-norm Newton on f(z1) - f(z2) = 0.
UnivalenceReport univalence_scan(const HarmonicMapping& f, const ScanOptions& opts = {});

struct NewtonResult {
  bool converged = false;
  Complex z1;
  Complex z2;
  double residual = 0.0;
  int steps = 0;
};

/// Damped Newton for f(z1) = f(z2) with |z1 - z2| >= separation_floor and both
/// points in |z| <= radius. Steps are minimum-norm solutions of the 2x4
/// linearization; rejected steps are halved.
NewtonResult refine_collision(const HarmonicMapping& f, Complex z1, Complex z2, double radius,
                              double separation_floor, double tol, int max_steps = 100);

/// Winding number of theta -> f(r e^{i theta}) - w, accumulated from argument
/// increments; intervals whose increment reaches pi/2 are subdivided.
/// Throws kOnCurve when the curve passes within 1e-9 of w.
int winding_check(const HarmonicMapping& f, double r, Complex w, int M = 1024);

}  // namespace harmonic
