#include "harmonic/report.hpp"

#include <cmath>

namespace harmonic {
namespace {

// JSON has no representation for inf/nan; keep the document valid.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const BoundReport& report) {
  Json j;
  j["check"] = report.check;
  j["pass"] = report.pass;
  j["margin"] = finite_or_null(report.margin);
  j["grid"] = report.grid;
  if (report.witness) {
    j["witness"] = {{"z", to_json(report.witness->z)},
                    {"value", finite_or_null(report.witness->value)}};
  } else {
    j["witness"] = nullptr;
  }
  if (!report.details.empty()) j["details"] = report.details;
  return j;
}

const char* version_string() noexcept { return HARMONIC_VERSION_STRING; }

}  // namespace harmonic
