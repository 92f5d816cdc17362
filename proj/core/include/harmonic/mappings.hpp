#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "harmonic/complexfn.hpp"
#include "harmonic/power_series.hpp"

namespace harmonic {

/// An analytic function on the unit disk with its first two derivatives.
struct AnalyticFn {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> d1;
  std::function<Complex(Complex)> d2;
};

/// Evaluators backed by a truncated series (Horner on the series and its
/// formal derivatives).
AnalyticFn from_series(const PowerSeries& s);

/// f = h + conj(g) on the open unit disk. Immutable once built.
class HarmonicMapping {
 public:
  HarmonicMapping(std::string label, AnalyticFn h, AnalyticFn g,
                  std::optional<PowerSeries> taylor_h = std::nullopt,
                  std::optional<PowerSeries> taylor_g = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  const AnalyticFn& analytic_part() const noexcept { return h_; }
  const AnalyticFn& coanalytic_part() const noexcept { return g_; }
  const std::optional<PowerSeries>& taylor_h() const noexcept { return taylor_h_; }
  const std::optional<PowerSeries>& taylor_g() const noexcept { return taylor_g_; }

  // Unchecked evaluators; callers are expected to stay inside |z| < 1.
  Complex h(Complex z) const { return h_.value(z); }
  Complex dh(Complex z) const { return h_.d1(z); }
  Complex d2h(Complex z) const { return h_.d2(z); }
  Complex g(Complex z) const { return g_.value(z); }
  Complex dg(Complex z) const { return g_.d1(z); }
  Complex d2g(Complex z) const { return g_.d2(z); }
  Complex operator()(Complex z) const { return h_.value(z) + std::conj(g_.value(z)); }

 private:
  std::string label_;
  AnalyticFn h_;
  AnalyticFn g_;
  std::optional<PowerSeries> taylor_h_;
  std::optional<PowerSeries> taylor_g_;
};

/// Parameters (alpha, zeta, n) of the class M(alpha, zeta, n):
/// -1/2 <= alpha < 1, |zeta| <= 1/(2n-1), n >= 1.
struct ClassParams {
  double alpha = 0.0;
  Complex zeta = 0.0;
  int n = 1;

  /// 1/(2n-1), the largest admissible |zeta|.
  double zeta_limit() const noexcept { return 1.0 / (2.0 * n - 1.0); }
  bool admissible() const noexcept;
  /// Throws ErrorCode::kAdmissibility with the offending field.
  void validate() const;
};

struct ExtremalSpec {
  ClassParams params;
  Complex delta = 1.0;  // rotation, |delta| = 1

  void validate() const;
};

// Checked evaluation (throw kDomain unless |z| < 1).
Complex evaluate(const HarmonicMapping& f, Complex z);
/// |h'|^2 - |g'|^2
double jacobian(const HarmonicMapping& f, Complex z);
/// g'/h'; throws kSingularity when |h'(z)| < 1e-300.
Complex dilatation(const HarmonicMapping& f, Complex z);

/// True when |2 alpha - 1| is below the branch-selection threshold, i.e. the
/// logarithmic form of the convex kernel applies.
bool is_log_branch(double alpha) noexcept;

/// Convex function of order alpha, h(z) = int_0^z (1 - delta t)^(2 alpha - 2) dt.
AnalyticFn convex_kernel(double alpha, Complex delta = 1.0);

HarmonicMapping make_identity();

/// f_gamma with h = [1 - (1-z)^gamma]/gamma and
/// g = [1 - (1 + gamma z)(1-z)^gamma]/(gamma(1+gamma)), 1 < gamma <= 7/4.
HarmonicMapping make_counterexample(double gamma,
                                    std::size_t order = kDefaultSeriesOrder);

/// h = z - lambda z^2, g = z^2/2 - 2 lambda z^3/3, 0 <= lambda < 1/2.
HarmonicMapping make_bshouty_lyzzaik(double lambda);

/// The sharp member of M(alpha, zeta, n): h is the convex kernel rotated by
/// delta and g = zeta z^(n+1) 2F1(n+1, 2-2alpha; n+2; delta z)/(n+1).
HarmonicMapping make_extremal(const ExtremalSpec& spec,
                              std::size_t order = kDefaultSeriesOrder);

/// Builds g from g' = zeta z^n h' with g(0) = 0. Rejects inadmissible
/// (zeta, n); see make_with_dilatation for the unchecked form.
HarmonicMapping make_from_h(const PowerSeries& h, Complex zeta, int n);
HarmonicMapping make_from_h(AnalyticFn h, Complex zeta, int n,
                            std::string label = "from-h");

/// Same construction without the |zeta| <= 1/(2n-1) check. The series
/// overload integrates formally; the evaluator overload integrates along the
/// segment [0, z].
HarmonicMapping make_with_dilatation(const PowerSeries& h, Complex zeta, int n,
                                     std::string label = "from-h");
HarmonicMapping make_with_dilatation(AnalyticFn h, Complex zeta, int n,
                                     std::string label = "from-h");

/// Largest |series - closed form| over h and g on a polar sample of the disk
/// of the given radius. Zero when the mapping carries no Taylor data.
double taylor_consistency(const HarmonicMapping& f, double radius = 0.5,
                          int rings = 8, int angles = 32);

}  // namespace harmonic
