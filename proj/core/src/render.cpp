#include "harmonic/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <regex>
#include <sstream>

#include "harmonic/error.hpp"

namespace harmonic {
namespace {

std::string num(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// A curve parameterized by an integer k in [0, denom]; the point function is
// built so that mirrored parameters give exactly conjugate preimages.
struct Curve {
  std::int64_t base;
  int depth;
  std::function<Complex(std::int64_t k, std::int64_t denom)> point;
};

Complex circle_point(double rho, std::int64_t k, std::int64_t denom) {
  if (2 * k <= denom) return std::polar(rho, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(denom));
  return std::conj(std::polar(rho, 2.0 * kPi * static_cast<double>(denom - k) / static_cast<double>(denom)));
}

Complex evaluate_for_render(const HarmonicMapping& f, Complex z) {
  try {
    return evaluate(f, z);
  } catch (const Error& e) {
    std::ostringstream os;
    os.precision(17);
    os << "render: evaluation failed at z = (" << z.real() << ", " << z.imag() << "): " << e.what();
    throw Error(e.code(), os.str());
  }
}

// Image points of the curve, with intervals halved while consecutive images
// are farther apart than `spacing`.
std::vector<Complex> sample_curve(const HarmonicMapping& f, const Curve& c, double spacing) {
  const std::int64_t stride = std::int64_t{1} << c.depth;
  const std::int64_t denom = c.base * stride;
  std::vector<Complex> out;
  auto eval = [&](std::int64_t k) { return evaluate_for_render(f, c.point(k, denom)); };
  std::function<void(std::int64_t, std::int64_t, Complex, Complex)> refine =
      [&](std::int64_t ka, std::int64_t kb, Complex wa, Complex wb) {
        if (kb - ka > 1 && std::abs(wb - wa) > spacing) {
          const std::int64_t km = (ka + kb) / 2;
          const Complex wm = eval(km);
          refine(ka, km, wa, wm);
          refine(km, kb, wm, wb);
          return;
        }
        out.push_back(wb);
      };
  Complex prev = eval(0);
  out.push_back(prev);
  for (std::int64_t m = 1; m <= c.base; ++m) {
    const Complex cur = eval(m * stride);
    refine((m - 1) * stride, m * stride, prev, cur);
    prev = cur;
  }
  return out;
}

// Liang-Barsky: clip segment a->b to the viewport square. Returns false when
// nothing remains; otherwise t0 <= t1 are the surviving parameters.
bool clip(const Viewport& vp, Complex a, Complex b, double& t0, double& t1) {
  const Complex d = b - a;
  const double xmin = vp.center.real() - vp.half_width;
  const double xmax = vp.center.real() + vp.half_width;
  const double ymin = vp.center.imag() - vp.half_width;
  const double ymax = vp.center.imag() + vp.half_width;
  t0 = 0.0;
  t1 = 1.0;
  const double p[4] = {-d.real(), d.real(), -d.imag(), d.imag()};
  const double q[4] = {a.real() - xmin, xmax - a.real(), a.imag() - ymin, ymax - a.imag()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  return t0 <= t1;
}

// Splits the sampled curve into the pieces visible in the viewport.
std::vector<std::vector<Complex>> clip_polyline(const Viewport& vp, const std::vector<Complex>& pts) {
  std::vector<std::vector<Complex>> pieces;
  std::vector<Complex> cur;
  auto flush = [&] {
    if (cur.size() >= 2) pieces.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double t0 = 0.0;
    double t1 = 0.0;
    if (!clip(vp, pts[i], pts[i + 1], t0, t1)) {
      flush();
      continue;
    }
    const Complex a = t0 == 0.0 ? pts[i] : pts[i] + t0 * (pts[i + 1] - pts[i]);
    const Complex b = t1 == 1.0 ? pts[i + 1] : pts[i] + t1 * (pts[i + 1] - pts[i]);
    if (cur.empty() || t0 > 0.0) {
      flush();
      cur.push_back(a);
    }
    cur.push_back(b);
    if (t1 < 1.0) flush();
  }
  flush();
  return pieces;
}

void write_polyline(std::ostringstream& os, const char* cls, const std::vector<Complex>& pts) {
  os << "    <polyline class=\"" << cls << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << num(pts[i].real()) << ',' << num(pts[i].imag());
  }
  os << "\"/>\n";
}

std::string xml_comment_safe(std::string s) {
  for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- -");
  return s;
}

void write_header(std::ostringstream& os, const Json& meta, const Viewport& vp, int pixels) {
  const double x0 = vp.center.real() - vp.half_width;
  const double y0 = -(vp.center.imag() + vp.half_width);
  const double w = 2.0 * vp.half_width;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  os << "<!-- scene: " << xml_comment_safe(meta.dump()) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << pixels
     << "\" height=\"" << pixels << "\" viewBox=\"" << num(x0) << ' ' << num(y0) << ' ' << num(w)
     << ' ' << num(w) << "\">\n";
  os << "  <rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(w)
     << "\" height=\"" << num(w) << "\" fill=\"#ffffff\"/>\n";
}

}  // namespace

bool Viewport::contains(Complex w, double margin) const noexcept {
  return std::abs(w.real() - center.real()) <= half_width + margin &&
         std::abs(w.imag() - center.imag()) <= half_width + margin;
}

Viewport fit_viewport(const HarmonicMapping& f, double r, double margin, int samples) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (int k = 0; k < samples; ++k) {
    const Complex w = evaluate_for_render(f, circle_point(r, k, samples));
    xmin = std::min(xmin, w.real());
    xmax = std::max(xmax, w.real());
    ymin = std::min(ymin, w.imag());
    ymax = std::max(ymax, w.imag());
  }
  Viewport vp;
  vp.center = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  // Conjugate-symmetric images give ymin = -ymax up to rounding; snap so the
  // window is mirror symmetric too.
  if (std::abs(vp.center.imag()) <= 1e-12 * std::max(1.0, ymax - ymin)) vp.center.imag(0.0);
  vp.half_width = 0.5 * std::max(xmax - xmin, ymax - ymin) * (1.0 + margin);
  if (!(vp.half_width > 0.0)) vp.half_width = 1.0;
  return vp;
}

void SceneSpec::validate() const {
  if (!(radius > 0.0 && radius < 1.0)) throw Error(ErrorCode::kParameter, "scene: radius must lie in (0, 1)");
  if (samples_per_curve < 128) throw Error(ErrorCode::kParameter, "scene: samples_per_curve must be >= 128");
  if (!(viewport.half_width > 0.0)) throw Error(ErrorCode::kParameter, "scene: viewport half-width must be > 0");
  if (circles < 1 || rays < 1) throw Error(ErrorCode::kParameter, "scene: need at least one circle and one ray");
  if (max_refinement < 0 || max_refinement > 20) throw Error(ErrorCode::kParameter, "scene: max_refinement in [0, 20]");
}

Json to_json(const SceneSpec& spec) {
  Json markers = Json::array();
  for (Complex m : spec.markers) markers.push_back(to_json(m));
  return {{"mapping", spec.mapping},
          {"radius", spec.radius},
          {"circles", spec.circles},
          {"rays", spec.rays},
          {"viewport", {{"center", to_json(spec.viewport.center)}, {"half_width", spec.viewport.half_width}}},
          {"samples_per_curve", spec.samples_per_curve},
          {"max_refinement", spec.max_refinement},
          {"pixels", spec.pixels},
          {"markers", markers}};
}

std::string render_image_domain(const SceneSpec& spec, const HarmonicMapping& f) {
  spec.validate();
  const Viewport& vp = spec.viewport;
  const double spacing = 2.0 * vp.half_width / 200.0;

  std::ostringstream os;
  write_header(os, to_json(spec), vp, spec.pixels);
  os << "  <g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n";

  os << "   <g class=\"net\" stroke=\"#1f4e79\" stroke-width=\"" << num(spec.stroke_px)
     << "\" vector-effect=\"non-scaling-stroke\">\n";
  for (int j = 1; j < spec.circles; ++j) {
    const double rho = spec.radius * j / spec.circles;
    Curve c{spec.samples_per_curve, spec.max_refinement,
            [rho](std::int64_t k, std::int64_t d) { return circle_point(rho, k, d); }};
    for (const auto& piece : clip_polyline(vp, sample_curve(f, c, spacing))) write_polyline(os, "circle", piece);
  }
  for (int k = 0; k < spec.rays; ++k) {
    const Complex dir = circle_point(1.0, k, spec.rays);
    const double radius = spec.radius;
    Curve c{spec.samples_per_curve, spec.max_refinement, [dir, radius](std::int64_t t, std::int64_t d) {
              return (radius * static_cast<double>(t) / static_cast<double>(d)) * dir;
            }};
    for (const auto& piece : clip_polyline(vp, sample_curve(f, c, spacing))) write_polyline(os, "ray", piece);
  }
  os << "   </g>\n";

  os << "   <g class=\"outline\" stroke=\"#b22222\" stroke-width=\"" << num(spec.boundary_stroke_px)
     << "\" vector-effect=\"non-scaling-stroke\">\n";
  {
    const double rho = spec.radius;
    Curve c{spec.samples_per_curve, spec.max_refinement,
            [rho](std::int64_t k, std::int64_t d) { return circle_point(rho, k, d); }};
    for (const auto& piece : clip_polyline(vp, sample_curve(f, c, spacing))) write_polyline(os, "boundary", piece);
  }
  os << "   </g>\n";

  if (!spec.markers.empty()) {
    const double rad = 3.0 * 2.0 * vp.half_width / spec.pixels;
    os << "   <g class=\"markers\" fill=\"#2e8b57\" stroke=\"none\">\n";
    for (Complex m : spec.markers) {
      if (!vp.contains(m)) continue;
      os << "    <circle cx=\"" << num(m.real()) << "\" cy=\"" << num(m.imag()) << "\" r=\"" << num(rad) << "\"/>\n";
    }
    os << "   </g>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

std::string render_boundary_curve(const HarmonicMapping& f, double r, int M, const Viewport& viewport,
                                  const std::string& mapping) {
  if (M < 256) throw Error(ErrorCode::kParameter, "boundary curve: M must be >= 256");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::kParameter, "boundary curve: r must lie in (0, 1)");
  if (!(viewport.half_width > 0.0)) throw Error(ErrorCode::kParameter, "boundary curve: bad viewport");
  const Json meta = {{"mapping", mapping},
                     {"radius", r},
                     {"samples", M},
                     {"viewport", {{"center", to_json(viewport.center)}, {"half_width", viewport.half_width}}}};
  std::ostringstream os;
  write_header(os, meta, viewport, 800);
  os << "  <g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.2\""
        " vector-effect=\"non-scaling-stroke\">\n";
  Curve c{M, 8, [r](std::int64_t k, std::int64_t d) { return circle_point(r, k, d); }};
  for (const auto& piece : clip_polyline(viewport, sample_curve(f, c, 2.0 * viewport.half_width / 200.0))) {
    write_polyline(os, "boundary", piece);
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

std::vector<std::vector<Complex>> parse_polylines(const std::string& svg) {
  static const std::regex attr("points=\"([^\"]*)\"");
  std::vector<std::vector<Complex>> out;
  for (std::sregex_iterator it(svg.begin(), svg.end(), attr), end; it != end; ++it) {
    std::vector<Complex> pts;
    std::istringstream is((*it)[1].str());
    std::string pair;
    while (is >> pair) {
      const auto comma = pair.find(',');
      pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
    }
    out.push_back(std::move(pts));
  }
  return out;
}

}  // namespace harmonic
