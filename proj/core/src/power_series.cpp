#include "harmonic/power_series.hpp"

#include <algorithm>
#include <utility>

#include "harmonic/error.hpp"

namespace harmonic {

PowerSeries::PowerSeries(std::size_t order) : coeffs_(order + 1) {}

PowerSeries::PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back();
}

PowerSeries PowerSeries::monomial(std::size_t power, Complex coeff, std::size_t order) {
  PowerSeries s(order);
  if (power <= order) s.coeffs_[power] = coeff;
  return s;
}

PowerSeries PowerSeries::binomial(Complex delta, double exponent, std::size_t order) {
  PowerSeries s(order);
  Complex c = 1.0;
  s.coeffs_[0] = c;
  for (std::size_t k = 1; k <= order; ++k) {
    c *= -delta * ((exponent - static_cast<double>(k) + 1.0) / static_cast<double>(k));
    s.coeffs_[k] = c;
  }
  return s;
}

Complex PowerSeries::eval(Complex z) const noexcept {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries PowerSeries::derive() const {
  if (order() == 0) {
    throw Error(ErrorCode::kOrderUnderflow, "cannot differentiate an order-0 series");
  }
  std::vector<Complex> out(order());
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::integrate() const {
  std::vector<Complex> out(coeffs_.size() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  }
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<Complex> out(order + 1);
  std::copy_n(coeffs_.begin(), std::min(out.size(), coeffs_.size()), out.begin());
  return PowerSeries(std::move(out));
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

PowerSeries& PowerSeries::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

PowerSeries operator+(PowerSeries lhs, const PowerSeries& rhs) { return lhs += rhs; }
PowerSeries operator-(PowerSeries lhs, const PowerSeries& rhs) { return lhs -= rhs; }
PowerSeries operator*(PowerSeries lhs, Complex scale) { return lhs *= scale; }
PowerSeries operator*(Complex scale, PowerSeries rhs) { return rhs *= scale; }

PowerSeries operator*(const PowerSeries& lhs, const PowerSeries& rhs) {
  const std::size_t n = std::min(lhs.order(), rhs.order());
  std::vector<Complex> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const Complex a = lhs[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a * rhs[j];
  }
  return PowerSeries(std::move(out));
}

}  // namespace harmonic
