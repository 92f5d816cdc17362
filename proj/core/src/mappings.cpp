#include "harmonic/mappings.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "harmonic/error.hpp"
#include "harmonic/quadrature.hpp"

namespace harmonic {
namespace {

std::string fmt_label(const char* family, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(12);
  os << family;
  char sep = ':';
  for (const auto& [k, v] : kv) {
    os << sep << k << '=' << v;
    sep = ',';
  }
  return os.str();
}

[[noreturn]] void bad_param(const std::string& what) {
  throw Error(ErrorCode::kParameter, what);
}

// z^n h'(z) shifted into a coefficient array, times zeta, then integrated.
PowerSeries coanalytic_series(const PowerSeries& h, Complex zeta, int n) {
  const PowerSeries dh = h.order() > 0 ? h.derive() : PowerSeries(0);
  PowerSeries dg(dh.order() + static_cast<std::size_t>(n));
  for (std::size_t k = 0; k <= dh.order(); ++k) {
    dg.coeff(k + static_cast<std::size_t>(n)) = zeta * dh[k];
  }
  return dg.integrate();
}

AnalyticFn dilatation_companion(const AnalyticFn& h, Complex zeta, int n,
                                std::function<Complex(Complex)> value) {
  AnalyticFn g;
  g.value = std::move(value);
  g.d1 = [h, zeta, n](Complex z) { return zeta * std::pow(z, n) * h.d1(z); };
  g.d2 = [h, zeta, n](Complex z) {
    const Complex zn1 = n == 1 ? Complex(1.0) : std::pow(z, n - 1);
    return zeta * (static_cast<double>(n) * zn1 * h.d1(z) + zn1 * z * h.d2(z));
  };
  return g;
}

}  // namespace

AnalyticFn from_series(const PowerSeries& s) {
  auto d1 = s.order() > 0 ? s.derive() : PowerSeries(0);
  auto d2 = d1.order() > 0 ? d1.derive() : PowerSeries(0);
  return {[s](Complex z) { return s.eval(z); },
          [d1](Complex z) { return d1.eval(z); },
          [d2](Complex z) { return d2.eval(z); }};
}

HarmonicMapping::HarmonicMapping(std::string label, AnalyticFn h, AnalyticFn g,
                                 std::optional<PowerSeries> taylor_h,
                                 std::optional<PowerSeries> taylor_g)
    : label_(std::move(label)),
      h_(std::move(h)),
      g_(std::move(g)),
      taylor_h_(std::move(taylor_h)),
      taylor_g_(std::move(taylor_g)) {}

bool ClassParams::admissible() const noexcept {
  return n >= 1 && alpha >= -0.5 && alpha < 1.0 &&
         std::abs(zeta) <= zeta_limit() * (1.0 + 1e-14);
}

void ClassParams::validate() const {
  std::ostringstream os;
  if (n < 1) {
    os << "n = " << n << " must be a positive integer";
  } else if (!(alpha >= -0.5 && alpha < 1.0)) {
    os << "alpha = " << alpha << " outside [-1/2, 1)";
  } else if (!(std::abs(zeta) <= zeta_limit() * (1.0 + 1e-14))) {
    os << "|zeta| = " << std::abs(zeta) << " exceeds 1/(2n-1) = " << zeta_limit();
  } else {
    return;
  }
  throw Error(ErrorCode::kAdmissibility, os.str());
}

void ExtremalSpec::validate() const {
  params.validate();
  if (std::abs(std::abs(delta) - 1.0) > 1e-14) {
    throw Error(ErrorCode::kAdmissibility, "extremal rotation must satisfy |delta| = 1");
  }
}

Complex evaluate(const HarmonicMapping& f, Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(ErrorCode::kDomain, "evaluate: |z| >= 1");
  }
  return f(z);
}

double jacobian(const HarmonicMapping& f, Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(ErrorCode::kDomain, "jacobian: |z| >= 1");
  }
  return std::norm(f.dh(z)) - std::norm(f.dg(z));
}

Complex dilatation(const HarmonicMapping& f, Complex z) {
  const Complex dh = f.dh(z);
  if (std::abs(dh) < 1e-300) {
    throw Error(ErrorCode::kSingularity, "dilatation: h'(z) vanishes");
  }
  return f.dg(z) / dh;
}

bool is_log_branch(double alpha) noexcept { return std::abs(2.0 * alpha - 1.0) < 1e-9; }

AnalyticFn convex_kernel(double alpha, Complex delta) {
  const BranchedPower dh(delta, 2.0 * alpha - 2.0);
  AnalyticFn h;
  if (is_log_branch(alpha)) {
    h.value = [delta](Complex z) { return -std::conj(delta) * principal_log(1.0 - delta * z); };
  } else {
    const double p = 2.0 * alpha - 1.0;
    h.value = [delta, p](Complex z) {
      return (1.0 - principal_pow(1.0 - delta * z, p)) * std::conj(delta) / p;
    };
  }
  h.d1 = dh;
  h.d2 = [delta, alpha](Complex z) {
    return delta * (2.0 - 2.0 * alpha) * principal_pow(1.0 - delta * z, 2.0 * alpha - 3.0);
  };
  return h;
}

HarmonicMapping make_identity() {
  AnalyticFn h{[](Complex z) { return z; }, [](Complex) { return Complex(1.0); },
               [](Complex) { return Complex(0.0); }};
  AnalyticFn g{[](Complex) { return Complex(0.0); }, [](Complex) { return Complex(0.0); },
               [](Complex) { return Complex(0.0); }};
  PowerSeries th = PowerSeries::monomial(1, 1.0, 1);
  return HarmonicMapping("identity", std::move(h), std::move(g), th, PowerSeries(1));
}

HarmonicMapping make_counterexample(double gamma, std::size_t order) {
  if (!(gamma > 1.0 && gamma <= 1.75)) {
    bad_param("counterexample: gamma must lie in (1, 7/4]");
  }
  AnalyticFn h;
  h.value = [gamma](Complex z) { return (1.0 - principal_pow(1.0 - z, gamma)) / gamma; };
  h.d1 = [gamma](Complex z) { return principal_pow(1.0 - z, gamma - 1.0); };
  h.d2 = [gamma](Complex z) { return -(gamma - 1.0) * principal_pow(1.0 - z, gamma - 2.0); };

  AnalyticFn g;
  g.value = [gamma](Complex z) {
    return (1.0 - (1.0 + gamma * z) * principal_pow(1.0 - z, gamma)) / (gamma * (1.0 + gamma));
  };
  g.d1 = [gamma](Complex z) { return z * principal_pow(1.0 - z, gamma - 1.0); };
  g.d2 = [gamma](Complex z) {
    return principal_pow(1.0 - z, gamma - 1.0) -
           (gamma - 1.0) * z * principal_pow(1.0 - z, gamma - 2.0);
  };

  const PowerSeries dh = PowerSeries::binomial(1.0, gamma - 1.0, order - 1);
  PowerSeries th = dh.integrate();
  PowerSeries tg = coanalytic_series(th, 1.0, 1).truncated(order);
  return HarmonicMapping(fmt_label("counterexample", {{"gamma", gamma}}), std::move(h),
                         std::move(g), std::move(th), std::move(tg));
}

HarmonicMapping make_bshouty_lyzzaik(double lambda) {
  if (!(lambda >= 0.0 && lambda < 0.5)) {
    bad_param("bshouty-lyzzaik: lambda must lie in [0, 1/2)");
  }
  PowerSeries th(std::vector<Complex>{0.0, 1.0, -lambda});
  PowerSeries tg(std::vector<Complex>{0.0, 0.0, 0.5, -2.0 * lambda / 3.0});
  AnalyticFn h{[lambda](Complex z) { return z - lambda * z * z; },
               [lambda](Complex z) { return 1.0 - 2.0 * lambda * z; },
               [lambda](Complex) { return Complex(-2.0 * lambda); }};
  AnalyticFn g{[lambda](Complex z) { return z * z * (0.5 - 2.0 * lambda * z / 3.0); },
               [lambda](Complex z) { return z - 2.0 * lambda * z * z; },
               [lambda](Complex z) { return 1.0 - 4.0 * lambda * z; }};
  return HarmonicMapping(fmt_label("bl", {{"lambda", lambda}}), std::move(h), std::move(g),
                         std::move(th), std::move(tg));
}

HarmonicMapping make_extremal(const ExtremalSpec& spec, std::size_t order) {
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParameter, std::string("extremal: ") + e.what());
  }
  const double alpha = spec.params.alpha;
  const Complex zeta = spec.params.zeta;
  const Complex delta = spec.delta;
  const int n = spec.params.n;

  AnalyticFn h = convex_kernel(alpha, delta);
  const double a = n + 1.0;
  const double b = 2.0 - 2.0 * alpha;
  const double c = n + 2.0;
  auto g_value = [zeta, delta, n, a, b, c](Complex z) {
    if (z == 0.0) return Complex(0.0);
    return zeta * std::pow(z, n + 1) * hyp2f1(a, b, c, delta * z) / static_cast<double>(n + 1);
  };
  AnalyticFn g = dilatation_companion(h, zeta, n, g_value);

  PowerSeries th = PowerSeries::binomial(delta, 2.0 * alpha - 2.0, order - 1).integrate();
  PowerSeries tg = coanalytic_series(th, zeta, n).truncated(order);

  std::ostringstream label;
  label.precision(12);
  label << "extremal:alpha=" << alpha << ",zeta=" << zeta.real();
  if (zeta.imag() != 0.0) label << (zeta.imag() > 0 ? "+" : "") << zeta.imag() << "i";
  label << ",n=" << n << ",delta=" << delta.real();
  if (delta.imag() != 0.0) label << (delta.imag() > 0 ? "+" : "") << delta.imag() << "i";
  return HarmonicMapping(label.str(), std::move(h), std::move(g), std::move(th), std::move(tg));
}

HarmonicMapping make_with_dilatation(const PowerSeries& h, Complex zeta, int n,
                                     std::string label) {
  if (n < 1) bad_param("from-h: n must be a positive integer");
  if (h.order() < 1 || std::abs(h[0]) > 1e-14 || std::abs(h[1] - 1.0) > 1e-14) {
    bad_param("from-h: h must satisfy h(0) = 0, h'(0) = 1");
  }
  PowerSeries tg = coanalytic_series(h, zeta, n);
  AnalyticFn hf = from_series(h);
  AnalyticFn gf = from_series(tg);
  return HarmonicMapping(std::move(label), std::move(hf), std::move(gf), h, std::move(tg));
}

HarmonicMapping make_with_dilatation(AnalyticFn h, Complex zeta, int n, std::string label) {
  if (n < 1) bad_param("from-h: n must be a positive integer");
  auto dh = h.d1;
  auto g_value = [dh, zeta, n](Complex z) {
    if (z == 0.0) return Complex(0.0);
    // g(z) = z * int_0^1 zeta (s z)^n h'(s z) ds along the segment [0, z].
    auto integrand = [&](double s) {
      const Complex w = s * z;
      return zeta * std::pow(w, n) * dh(w);
    };
    return z * quad::integrate(integrand, 0.0, 1.0, {1e-13, 20}).value;
  };
  AnalyticFn g = dilatation_companion(h, zeta, n, g_value);
  return HarmonicMapping(std::move(label), std::move(h), std::move(g));
}

HarmonicMapping make_from_h(const PowerSeries& h, Complex zeta, int n) {
  ClassParams{0.0, zeta, n}.validate();
  return make_with_dilatation(h, zeta, n);
}

HarmonicMapping make_from_h(AnalyticFn h, Complex zeta, int n, std::string label) {
  ClassParams{0.0, zeta, n}.validate();
  return make_with_dilatation(std::move(h), zeta, n, std::move(label));
}

double taylor_consistency(const HarmonicMapping& f, double radius, int rings, int angles) {
  if (!f.taylor_h() || !f.taylor_g()) return 0.0;
  double worst = 0.0;
  for (int i = 1; i <= rings; ++i) {
    const double r = radius * i / rings;
    for (int j = 0; j < angles; ++j) {
      const Complex z = std::polar(r, 2.0 * kPi * j / angles);
      worst = std::max(worst, std::abs(f.taylor_h()->eval(z) - f.h(z)));
      worst = std::max(worst, std::abs(f.taylor_g()->eval(z) - f.g(z)));
    }
  }
  return worst;
}

}  // namespace harmonic
