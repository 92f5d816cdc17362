#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "harmonic/complexfn.hpp"

namespace harmonic {

inline constexpr std::size_t kDefaultSeriesOrder = 64;

/// Truncated Taylor expansion c_0 + c_1 z + ... + c_N z^N about the origin.
class PowerSeries {
 public:
  /// Zero series of the given order.
  explicit PowerSeries(std::size_t order = 0);
  explicit PowerSeries(std::vector<Complex> coeffs);

  static PowerSeries monomial(std::size_t power, Complex coeff, std::size_t order);
  /// (1 - delta z)^exponent, principal branch, truncated at `order`.
  static PowerSeries binomial(Complex delta, double exponent, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^k; zero beyond the truncation order.
  Complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }
  Complex& coeff(std::size_t k) { return coeffs_.at(k); }

  /// Horner evaluation.
  Complex eval(Complex z) const noexcept;

  PowerSeries derive() const;
  PowerSeries integrate() const;
  PowerSeries truncated(std::size_t order) const;

  PowerSeries& operator+=(const PowerSeries& rhs);
  PowerSeries& operator-=(const PowerSeries& rhs);
  PowerSeries& operator*=(Complex scale);

 private:
  std::vector<Complex> coeffs_;
};

PowerSeries operator+(PowerSeries lhs, const PowerSeries& rhs);
PowerSeries operator-(PowerSeries lhs, const PowerSeries& rhs);
PowerSeries operator*(PowerSeries lhs, Complex scale);
PowerSeries operator*(Complex scale, PowerSeries rhs);
/// Cauchy product truncated at min(lhs.order(), rhs.order()).
PowerSeries operator*(const PowerSeries& lhs, const PowerSeries& rhs);

// Free-function spellings of the series operations.
inline PowerSeries series_derive(const PowerSeries& s) { return s.derive(); }
inline PowerSeries series_integrate(const PowerSeries& s) { return s.integrate(); }
inline PowerSeries series_mul(const PowerSeries& s, const PowerSeries& t) { return s * t; }
inline Complex series_eval(const PowerSeries& s, Complex z) { return s.eval(z); }

}  // namespace harmonic
