#pragma once

#include <string>
#include <vector>

#include "harmonic/complexfn.hpp"
#include "harmonic/mappings.hpp"
#include "harmonic/report.hpp"

namespace harmonic {

/// Square window in the image plane.
struct Viewport {
  Complex center;
  double half_width = 1.0;

  bool contains(Complex w, double margin = 0.0) const noexcept;
};

/// Bounding box of f(|z| = r) grown by `margin` (relative), as a square.
Viewport fit_viewport(const HarmonicMapping& f, double r, double margin = 0.05, int samples = 4096);

struct SceneSpec {
  std::string mapping;          // family spec, recorded in the SVG metadata
  double radius = 0.999;
  int circles = 12;
  int rays = 24;
  Viewport viewport;
  int samples_per_curve = 256;
  int max_refinement = 10;      // dyadic subdivision depth per sample interval
  int pixels = 800;
  double stroke_px = 0.8;
  double boundary_stroke_px = 1.6;
  std::vector<Complex> markers; // image points drawn as small circles

  void validate() const;
};

Json to_json(const SceneSpec& spec);

/// Image of the polar net (circles |z| = j r / circles, rays arg z =
/// 2 pi k / rays) as SVG 1.1. Polylines carry image coordinates; a single
/// group transform maps them to the canvas. Output bytes depend only on the
/// spec and the mapping.
std::string render_image_domain(const SceneSpec& spec, const HarmonicMapping& f);

/// Single closed polyline theta -> f(r e^{i theta}) with M base samples.
std::string render_boundary_curve(const HarmonicMapping& f, double r, int M,
                                  const Viewport& viewport, const std::string& mapping = {});

/// Parses every polyline "points" attribute of an SVG produced above.
std::vector<std::vector<Complex>> parse_polylines(const std::string& svg);

}  // namespace harmonic
