#include "harmonic/quadrature.hpp"

#include <algorithm>

#include <boost/math/special_functions/legendre.hpp>

namespace harmonic::quad {

Rule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::kParameter, "gauss_legendre: n must be >= 1");
  // legendre_p_zeros returns the non-negative roots in ascending order.
  const auto half = boost::math::legendre_p_zeros<double>(n);
  Rule rule;
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
    rule.weights.push_back(weight(*it));
  }
  for (double x : half) {
    rule.nodes.push_back(x);
    rule.weights.push_back(weight(x));
  }
  return rule;
}

}  // namespace harmonic::quad
