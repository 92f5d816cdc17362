#include "harmonic/complexfn.hpp"

#include <cmath>
#include <sstream>

#include "harmonic/error.hpp"

namespace harmonic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kBranchCut: return "branch-cut";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kAdmissibility: return "admissibility";
    case ErrorCode::kPolynomialPole: return "polynomial-pole";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kOrderUnderflow: return "order-underflow";
    case ErrorCode::kSingularity: return "singularity";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kOnCurve: return "on-curve";
    case ErrorCode::kMissingSeries: return "missing-series";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

Complex principal_log(Complex w) {
  // std::log on a signed zero imaginary part returns arg = -pi; fold it back.
  if (w.imag() == 0.0 && w.real() < 0.0) {
    return {std::log(-w.real()), kPi};
  }
  return std::log(w);
}

Complex principal_pow(Complex w, double gamma) {
  if (w.imag() == 0.0) {
    if (w.real() > 0.0) return std::pow(w.real(), gamma);
    std::ostringstream os;
    os << "principal_pow: base " << w.real() << " lies on the branch cut";
    throw Error(ErrorCode::kBranchCut, os.str());
  }
  return std::exp(gamma * std::log(w));
}

BranchedPower::BranchedPower(Complex delta, double exponent)
    : delta_(delta), exponent_(exponent) {
  if (std::abs(std::abs(delta) - 1.0) > 1e-14) {
    throw Error(ErrorCode::kParameter, "BranchedPower: |delta| must be 1");
  }
}

Complex BranchedPower::operator()(Complex z) const {
  return principal_pow(1.0 - delta_ * z, exponent_);
}

Complex BranchedPower::derivative(Complex z) const {
  return -delta_ * exponent_ * principal_pow(1.0 - delta_ * z, exponent_ - 1.0);
}

}  // namespace harmonic
