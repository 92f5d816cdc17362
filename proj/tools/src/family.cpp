#include "harmonic_cli/family.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "harmonic/error.hpp"

namespace harmonic::cli {
namespace {

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::kUsage, msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    usage("not a number: '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) usage("not a finite number: '" + std::string(s) + "'");
  return v;
}

std::string normalize_key(std::string_view key) {
  static const std::map<std::string, std::string, std::less<>> greek = {
      {"γ", "gamma"}, {"λ", "lambda"}, {"α", "alpha"}, {"ζ", "zeta"}, {"δ", "delta"}};
  key = trim(key);
  if (auto it = greek.find(key); it != greek.end()) return it->second;
  return std::string(key);
}

const std::string& require(const FamilySpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) usage("family '" + spec.name + "' needs " + key + "=...");
  return it->second;
}

void allow_only(const FamilySpec& spec, std::set<std::string> keys) {
  for (const auto& [k, v] : spec.params) {
    if (!keys.count(k)) usage("family '" + spec.name + "' has no parameter '" + k + "'");
  }
}

int parse_int(const std::string& text) {
  const double v = parse_real(text);
  if (v != static_cast<int>(v)) usage("expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

PowerSeries read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot open coefficient file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    usage("coefficient file '" + path + "': " + e.what());
  }
  if (!j.is_array() || j.empty()) usage("coefficient file must hold a JSON array");
  std::vector<Complex> coeffs;
  for (const auto& c : j) {
    if (c.is_number()) {
      coeffs.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      usage("coefficients must be numbers or [re, im] pairs");
    }
  }
  return PowerSeries(std::move(coeffs));
}

}  // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const double num = parse_decimal(text.substr(0, slash));
  const double den = parse_decimal(text.substr(slash + 1));
  if (den == 0.0) usage("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

Complex parse_complex_literal(std::string_view text) {
  text = trim(text);
  if (text.empty()) usage("empty complex literal");
  if (text.back() != 'i') return parse_real(text);
  std::string_view body = text.substr(0, text.size() - 1);
  // split at the last sign that is not part of an exponent or the leading sign
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

Complex parse_pair(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return parse_complex_literal(text);
  if (text.find(',', comma + 1) != std::string_view::npos) usage("expected 're,im', got '" + std::string(text) + "'");
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  spec.name = std::string(trim(text.substr(0, colon)));
  if (spec.name.empty()) usage("empty family name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) usage("expected key=value in '" + std::string(item) + "'");
    const std::string key = normalize_key(item.substr(0, eq));
    if (key.empty()) usage("empty key in family spec");
    if (!spec.params.emplace(key, std::string(trim(item.substr(eq + 1)))).second) {
      usage("duplicate key '" + key + "'");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return spec;
}

HarmonicMapping build_family(const FamilySpec& spec) {
  const std::string& name = spec.name;
  if (name == "identity") {
    allow_only(spec, {});
    return make_identity();
  }
  if (name == "counterexample") {
    allow_only(spec, {"gamma"});
    return make_counterexample(parse_real(require(spec, "gamma")));
  }
  if (name == "bl" || name == "bshouty-lyzzaik") {
    allow_only(spec, {"lambda"});
    return make_bshouty_lyzzaik(parse_real(require(spec, "lambda")));
  }
  if (name == "extremal") {
    allow_only(spec, {"alpha", "zeta", "n", "delta"});
    ExtremalSpec e;
    e.params.alpha = parse_real(require(spec, "alpha"));
    if (auto it = spec.params.find("zeta"); it != spec.params.end()) e.params.zeta = parse_complex_literal(it->second);
    if (auto it = spec.params.find("n"); it != spec.params.end()) e.params.n = parse_int(it->second);
    if (auto it = spec.params.find("delta"); it != spec.params.end()) e.delta = parse_complex_literal(it->second);
    return make_extremal(e);
  }
  if (name == "from-h") {
    allow_only(spec, {"file", "zeta", "n"});
    const PowerSeries h = read_series(require(spec, "file"));
    const Complex zeta = parse_complex_literal(require(spec, "zeta"));
    const int n = parse_int(require(spec, "n"));
    return make_from_h(h, zeta, n);
  }
  usage("unknown family '" + name + "' (identity, counterexample, bl, extremal, from-h)");
}

}  // namespace harmonic::cli
