#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "harmonic/complexfn.hpp"

namespace harmonic {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

struct Witness {
  Complex z;
  double value = 0.0;
};

/// Outcome of one numerical check: computed quantity against a bound or a
/// class condition. `margin` is signed; pass implies margin >= 0.
struct BoundReport {
  std::string check;
  bool pass = false;
  double margin = 0.0;
  Json grid = Json::object();
  std::optional<Witness> witness;
  Json details = Json::object();
};

Json to_json(const BoundReport& report);

const char* version_string() noexcept;

}  // namespace harmonic
