#pragma once

#include <map>
#include <string>
#include <string_view>

#include "harmonic/mappings.hpp"

namespace harmonic::cli {

/// `name:key=value,...`. Keys are normalized to ASCII (γ -> gamma, λ -> lambda,
/// α -> alpha, ζ -> zeta, δ -> delta).
struct FamilySpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::string text;
};

FamilySpec parse_family_spec(std::string_view text);

/// Builds the mapping named by the spec. Unknown names or keys, missing
/// required keys and malformed values raise ErrorCode::kUsage; parameter
/// range violations keep the library's codes.
HarmonicMapping build_family(const FamilySpec& spec);

/// Decimal or p/q fraction, e.g. "0.3", "-5/4", "1e-3".
double parse_real(std::string_view text);

/// Real or complex literal: "0.5", "i", "-i", "0.2i", "1/3i", "0.6+0.8i", "1-2i".
Complex parse_complex_literal(std::string_view text);

/// "re,im" pair; a single component is read as a real number.
Complex parse_pair(std::string_view text);

}  // namespace harmonic::cli
