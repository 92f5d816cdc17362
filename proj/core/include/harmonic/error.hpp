#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace harmonic {

enum class ErrorCode {
  kDomain,           // point outside the open unit disk
  kBranchCut,        // principal power evaluated on (-inf, 0]
  kParameter,        // family or class parameters out of range
  kAdmissibility,    // |zeta| > 1/(2n-1) and friends
  kPolynomialPole,   // 2F1 with c a non-positive integer
  kDivergence,       // 2F1 on the boundary where the value is infinite
  kNonConvergence,   // iteration cap reached before tolerance
  kOrderUnderflow,   // derivative of an order-0 series
  kSingularity,      // division by a vanishing derivative
  kInfeasible,       // collision search radius below threshold
  kOnCurve,          // winding number about a point on the curve
  kMissingSeries,    // Taylor data absent or too short
  kUsage,            // malformed CLI or family spec
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace harmonic
