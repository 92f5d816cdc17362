#include "harmonic_cli/run.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "harmonic/harmonic.hpp"
#include "harmonic_cli/family.hpp"

namespace harmonic::cli {

using harmonic::to_json;

namespace {

struct Outcome {
  Json doc;
  int exit = kExitPass;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::kUsage, msg); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real(p));
  if (out.empty()) usage("empty list");
  return out;
}

ClassParams parse_class(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) usage("--class expects alpha,zeta,n");
  const double n = parse_real(parts[2]);
  if (n != std::floor(n)) usage("--class: n must be an integer");
  return {parse_real(parts[0]), parse_complex_literal(parts[1]), static_cast<int>(n)};
}

Json params_json(const ClassParams& p) { return {{"alpha", p.alpha}, {"zeta", to_json(p.zeta)}, {"n", p.n}}; }

std::string describe(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// ---- subcommands -----------------------------------------------------------

struct EvalArgs {
  std::string z = "0,0";
};

Outcome cmd_eval(const RunConfig& cfg, const EvalArgs& a) {
  const HarmonicMapping f = build_family(parse_family_spec(cfg.family));
  const Complex z = parse_pair(a.z);
  Json doc;
  doc["mapping"] = f.label();
  doc["z"] = to_json(z);
  doc["f"] = to_json(evaluate(f, z));
  doc["h"] = to_json(f.h(z));
  doc["g"] = to_json(f.g(z));
  doc["jacobian"] = jacobian(f, z);
  try {
    doc["dilatation"] = to_json(dilatation(f, z));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularity) throw;
    doc["dilatation"] = nullptr;
  }
  return {doc, kExitPass};
}

struct CheckArgs {
  std::string klass;
  std::optional<double> pbeta;
  std::string theorem_b;
  std::optional<double> kaplan_r;
  double max_radius = 1.0 - 1e-4;
  int circles = 40;
  int angles = 256;
  int kaplan_nodes = 512;
  int kaplan_lambdas = 32;
};

Outcome cmd_check(const RunConfig& cfg, const CheckArgs& a) {
  const int modes = !a.klass.empty() + a.pbeta.has_value() + !a.theorem_b.empty() + a.kaplan_r.has_value();
  if (modes != 1) usage("check: give exactly one of --class, --pbeta, --theorem-b, --kaplan");
  const HarmonicMapping f = build_family(parse_family_spec(cfg.family));
  const DiskGrid grid = DiskGrid::toward_boundary(a.max_radius, a.circles, a.angles);
  BoundReport rep;
  if (!a.klass.empty()) {
    rep = check_membership(f, parse_class(a.klass), grid, *cfg.tol);
  } else if (a.pbeta) {
    rep = check_pbeta(f, PBetaParams{*a.pbeta}, grid, *cfg.tol);
  } else if (!a.theorem_b.empty()) {
    const auto parts = split(a.theorem_b, ',');
    if (parts.size() != 3) usage("--theorem-b expects lambda,k,n");
    rep = check_theorem_b_condition(f, parse_complex_literal(parts[0]), parse_real(parts[1]),
                                    static_cast<int>(parse_real(parts[2])), grid, *cfg.tol);
  } else {
    rep = check_kaplan(f, *a.kaplan_r, a.kaplan_nodes, a.kaplan_lambdas);
  }
  Json doc = to_json(rep);
  doc["mapping"] = f.label();
  return {doc, rep.pass ? kExitPass : kExitFail};
}

struct BoundsArgs {
  std::string alphas = "0,1/4,1/2,3/4";
  std::string ns = "1,2,3";
  std::string zetas = "0,0.3,max";
  std::string radii = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  double area_r = 0.5;
};

Outcome cmd_verify_bounds(const RunConfig& cfg, const BoundsArgs& a) {
  const std::vector<double> alphas = parse_list(a.alphas);
  const std::vector<double> radii = parse_list(a.radii);
  std::vector<int> ns;
  for (double n : parse_list(a.ns)) {
    if (n != std::floor(n) || n < 1) usage("--n: positive integers expected");
    ns.push_back(static_cast<int>(n));
  }
  Json reports = Json::array();
  int failed = 0;
  auto add = [&](BoundReport rep) {
    failed += !rep.pass;
    reports.push_back(to_json(rep));
  };
  for (int n : ns) {
    const double limit = 1.0 / (2 * n - 1);
    std::vector<double> zetas;
    for (const auto& z : split(a.zetas, ',')) {
      const double v = z == "max" ? 0.99 * limit : parse_real(z);
      if (v >= 0.0 && v <= limit) zetas.push_back(v);
    }
    for (double alpha : alphas) {
      for (double zeta : zetas) {
        const ClassParams p{alpha, zeta, n};
        add(verify_coeff_attainment(p));
        add(verify_growth_consistency(p, radii, *cfg.tol));
        add(verify_sharpness(p, radii));
        add(verify_covering(p));
        add(verify_area_bounds(make_extremal({p, 1.0}), p, a.area_r));
        if (const Complex delta = lower_bound_attainment(n).delta; delta != Complex(1.0)) {
          add(verify_area_bounds(make_extremal({p, delta}), p, a.area_r));
        }
      }
    }
  }
  Json doc;
  doc["pass"] = failed == 0;
  doc["count"] = reports.size();
  doc["failed"] = failed;
  doc["reports"] = std::move(reports);
  return {doc, failed == 0 ? kExitPass : kExitFail};
}

struct UnivalenceArgs {
  double r = 0.999;
  int cells = 512;
  double separation_floor = 0.05;
  int max_candidates = 64;
};

Outcome cmd_univalence(const RunConfig& cfg, const UnivalenceArgs& a) {
  const HarmonicMapping f = build_family(parse_family_spec(cfg.family));
  ScanOptions o;
  o.radius = a.r;
  o.cells = a.cells;
  o.collision_tol = *cfg.tol;
  o.separation_floor = a.separation_floor;
  o.max_candidates = a.max_candidates;
  const UnivalenceReport rep = univalence_scan(f, o);
  Json doc = to_json(rep);
  doc["mapping"] = f.label();
  return {doc, rep.verdict == Verdict::kCertified ? kExitPass : kExitFail};
}

struct CounterexampleArgs {
  std::string gamma = "5/4";
  std::optional<double> r0;
};

Outcome cmd_counterexample(const RunConfig& cfg, const CounterexampleArgs& a) {
  const double gamma = parse_real(a.gamma);
  const HarmonicMapping f = make_counterexample(gamma);
  const SymmetricCollision c = find_symmetric_collision({gamma, a.r0, *cfg.tol});
  const Complex w1 = evaluate(f, c.z1);
  const Complex w2 = evaluate(f, c.z2);
  const double gap = std::abs(w1 - w2);
  const double separation = std::abs(c.z1 - c.z2);
  Json doc;
  doc["gamma"] = gamma;
  doc["threshold"] = feasibility_threshold(gamma);
  doc["r0"] = c.r0;
  doc["theta0"] = c.theta0;
  doc["z1"] = to_json(c.z1);
  doc["z2"] = to_json(c.z2);
  doc["f_z1"] = to_json(w1);
  doc["f_z2"] = to_json(w2);
  doc["image_gap"] = gap;
  doc["separation"] = separation;
  doc["im_f_z1"] = std::abs(w1.imag());
  doc["iterations"] = c.iterations;
  const bool pass = separation > 0.05 && gap < 1e-8 && std::abs(w1.imag()) <= *cfg.tol;
  doc["pass"] = pass;
  return {doc, pass ? kExitPass : kExitFail};
}

struct AreaArgs {
  double r = 0.5;
  std::string klass;
  int mc_samples = 0;
};

Outcome cmd_area(const RunConfig& cfg, const AreaArgs& a) {
  const HarmonicMapping f = build_family(parse_family_spec(cfg.family));
  AreaOptions opts;
  opts.rel_tol = *cfg.tol;
  const AreaEstimate est = area(f, a.r, opts);
  Json doc;
  doc["mapping"] = f.label();
  doc["r"] = a.r;
  doc["area"] = est.value;
  doc["error"] = est.error;
  doc["radial"] = est.radial;
  doc["angular"] = est.angular;
  int exit = kExitPass;
  if (!a.klass.empty()) {
    const ClassParams p = parse_class(a.klass);
    const AreaBounds b = area_bounds(p, a.r);
    const bool pass = b.lower <= est.value * (1 + *cfg.tol) && est.value <= b.upper * (1 + *cfg.tol);
    doc["bounds"] = {{"params", params_json(p)}, {"lower", b.lower}, {"upper", b.upper}, {"pass", pass}};
    exit = pass ? kExitPass : kExitFail;
  }
  if (a.mc_samples > 0) {
    // uniform samples of the bounding square, rejected outside the disk
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-a.r, a.r);
    double sum = 0.0;
    double sum2 = 0.0;
    const double box = 4.0 * a.r * a.r;
    for (int i = 0; i < a.mc_samples; ++i) {
      const Complex z(u(rng), u(rng));
      const double v = std::abs(z) < a.r ? jacobian(f, z) * box : 0.0;
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / a.mc_samples;
    const double sigma = std::sqrt(std::max(0.0, sum2 / a.mc_samples - mean * mean) / a.mc_samples);
    doc["monte_carlo"] = {{"mean", mean}, {"sigma", sigma}, {"samples", a.mc_samples}, {"seed", cfg.seed}};
  }
  return {doc, exit};
}

struct RenderArgs {
  std::string preset = "fig1";
  double r = 0.999;
  int circles = 12;
  int rays = 24;
  int samples = 256;
  int pixels = 800;
  std::string center;
  std::optional<double> half_width;
  std::vector<std::string> markers;
  bool boundary = false;
};

Outcome cmd_render(const RunConfig& cfg, const RenderArgs& a) {
  if (cfg.out.empty()) usage("render: --out FILE.svg is required");
  const FamilySpec fam = parse_family_spec(cfg.family);
  const HarmonicMapping f = build_family(fam);
  SceneSpec s;
  s.mapping = fam.text;
  s.radius = a.r;
  s.circles = a.circles;
  s.rays = a.rays;
  s.samples_per_curve = a.samples;
  s.pixels = a.pixels;
  if (a.preset == "fig1") {
    s.viewport = fit_viewport(f, a.r);
  } else if (a.preset == "fig2") {
    if (fam.name != "counterexample") usage("render: preset fig2 needs the counterexample family");
    const SymmetricCollision c = find_symmetric_collision({parse_real(fam.params.at("gamma")), std::nullopt, 1e-10});
    const Complex w = evaluate(f, c.z1);
    s.viewport = {Complex(w.real(), 0.0), 0.05};
    s.markers.push_back(w);
  } else {
    usage("render: unknown preset '" + a.preset + "' (fig1, fig2)");
  }
  if (!a.center.empty()) s.viewport.center = parse_pair(a.center);
  if (a.half_width) s.viewport.half_width = *a.half_width;
  for (const auto& m : a.markers) s.markers.push_back(parse_pair(m));

  const std::string svg = a.boundary ? render_boundary_curve(f, a.r, std::max(256, a.samples), s.viewport, fam.text)
                                     : render_image_domain(s, f);
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) usage("render: cannot write '" + cfg.out + "'");
  os << svg;
  os.close();
  if (!os) usage("render: write failed for '" + cfg.out + "'");

  const auto lines = parse_polylines(svg);
  std::size_t points = 0;
  for (const auto& l : lines) points += l.size();
  Json doc;
  doc["mapping"] = f.label();
  doc["svg"] = cfg.out;
  doc["bytes"] = svg.size();
  doc["polylines"] = lines.size();
  doc["points"] = points;
  doc["scene"] = to_json(s);
  return {doc, kExitPass};
}

// ---- output ----------------------------------------------------------------

void emit(const Json& doc, const RunConfig& cfg, std::ostream& out) {
  if (cfg.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "harmonic " << version_string() << ' ' << cfg.subcommand << '\n';
    for (const auto& [k, v] : doc.items()) {
      if (k == "config" || k == "version" || k == "command" || k == "reports") continue;
      out << "  " << k << ": " << describe(v) << '\n';
    }
    if (doc.contains("reports")) {
      for (const auto& r : doc["reports"]) {
        const Json params = r.contains("details") ? r["details"].value("params", Json()) : Json();
        out << "  " << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["check"].get<std::string>() << ' '
            << params.dump() << " margin=" << describe(r["margin"]) << '\n';
      }
    }
  }
  if (!cfg.out.empty() && cfg.subcommand != "render") {
    std::ofstream os(cfg.out);
    if (!os) usage("cannot write report to '" + cfg.out + "'");
    os << doc.dump(2) << '\n';
  }
}

}  // namespace

Json to_json(const RunConfig& cfg) {
  return {{"subcommand", cfg.subcommand}, {"family", cfg.family}, {"options", cfg.options},
          {"tol", cfg.tol ? Json(*cfg.tol) : Json()},               {"out", cfg.out},       {"json", cfg.json},
          {"seed", cfg.seed}};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic mappings toolkit: evaluation, class checks, sharp bounds, univalence, rendering",
               "harmonic"};
  app.set_version_flag("--version", std::string(version_string()));
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<double> tol;
  app.add_flag("--json", cfg.json, "Print the report as JSON");
  app.add_option("--tol", tol, "Tolerance of the subcommand's check")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Report path (SVG path for render)");
  app.add_option("--seed", cfg.seed, "Seed for Monte-Carlo estimates");

  std::function<Outcome()> action;
  auto family_opt = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "Family spec, e.g. counterexample:gamma=5/4")->required();
  };

  EvalArgs eval;
  auto* s_eval = app.add_subcommand("eval", "Evaluate f, h, g, dilatation and Jacobian at z");
  family_opt(s_eval);
  s_eval->add_option("--z", eval.z, "Point as re,im or a+bi")->required();
  s_eval->callback([&] {
    cfg.tol = tol;
    cfg.options = {{"z", eval.z}};
    action = [&] { return cmd_eval(cfg, eval); };
  });

  CheckArgs check;
  auto* s_check = app.add_subcommand("check", "Sampled class membership and Kaplan checks");
  family_opt(s_check);
  s_check->add_option("--class", check.klass, "M(alpha, zeta, n) as alpha,zeta,n");
  s_check->add_option("--pbeta", check.pbeta, "P(beta) with beta in (1, 3/2]");
  s_check->add_option("--theorem-b", check.theorem_b, "lambda,k,n for g' = lambda k z^n h'");
  s_check->add_option("--kaplan", check.kaplan_r, "Kaplan condition for h - lambda g on |z| = r");
  s_check->add_option("--max-radius", check.max_radius, "Outermost grid circle")->capture_default_str();
  s_check->add_option("--circles", check.circles, "Grid circles")->capture_default_str();
  s_check->add_option("--angles", check.angles, "Grid points per circle")->capture_default_str();
  s_check->add_option("--nodes", check.kaplan_nodes, "Kaplan quadrature nodes")->capture_default_str();
  s_check->add_option("--lambdas", check.kaplan_lambdas, "Sampled lambda on |lambda| = 1")->capture_default_str();
  s_check->callback([&] {
    cfg.tol = tol.value_or(1e-10);
    cfg.options = {{"class", check.klass},        {"pbeta", check.pbeta ? Json(*check.pbeta) : Json()},
                   {"theorem_b", check.theorem_b}, {"kaplan", check.kaplan_r ? Json(*check.kaplan_r) : Json()},
                   {"max_radius", check.max_radius}, {"circles", check.circles},
                   {"angles", check.angles},        {"nodes", check.kaplan_nodes},
                   {"lambdas", check.kaplan_lambdas}};
    action = [&] { return cmd_check(cfg, check); };
  });

  BoundsArgs bounds;
  auto* s_bounds = app.add_subcommand("verify-bounds", "Coefficient, growth, covering and area bounds on a lattice");
  s_bounds->add_option("--alpha", bounds.alphas, "Comma-separated alpha values")->capture_default_str();
  s_bounds->add_option("--n", bounds.ns, "Comma-separated n values")->capture_default_str();
  s_bounds->add_option("--zeta", bounds.zetas, "Comma-separated zeta values; 'max' is 0.99/(2n-1)")
      ->capture_default_str();
  s_bounds->add_option("--r", bounds.radii, "Comma-separated radii")->capture_default_str();
  s_bounds->add_option("--area-r", bounds.area_r, "Radius of the area check")->capture_default_str();
  s_bounds->callback([&] {
    cfg.tol = tol.value_or(1e-9);
    cfg.options = {{"alpha", bounds.alphas}, {"n", bounds.ns},          {"zeta", bounds.zetas},
                   {"r", bounds.radii},      {"area_r", bounds.area_r}};
    action = [&] { return cmd_verify_bounds(cfg, bounds); };
  });

  UnivalenceArgs uni;
  auto* s_uni = app.add_subcommand("univalence", "Sampling-based injectivity scan");
  family_opt(s_uni);
  s_uni->add_option("--r", uni.r, "Scan radius")->capture_default_str();
  s_uni->add_option("--cells", uni.cells, "Angular resolution")->capture_default_str();
  s_uni->add_option("--separation-floor", uni.separation_floor, "Minimum preimage distance")->capture_default_str();
  s_uni->add_option("--max-candidates", uni.max_candidates, "Pairs handed to Newton")->capture_default_str();
  s_uni->callback([&] {
    cfg.tol = tol.value_or(1e-8);
    cfg.options = {{"r", uni.r},
                   {"cells", uni.cells},
                   {"separation_floor", uni.separation_floor},
                   {"max_candidates", uni.max_candidates}};
    action = [&] { return cmd_univalence(cfg, uni); };
  });

  CounterexampleArgs cex;
  auto* s_cex = app.add_subcommand("counterexample", "Symmetric collision of f_gamma");
  s_cex->add_option("--gamma", cex.gamma, "gamma in (1, 7/4]")->capture_default_str();
  s_cex->add_option("--r0", cex.r0, "Collision radius (default: midpoint above the threshold)");
  s_cex->callback([&] {
    cfg.tol = tol.value_or(1e-10);
    cfg.family = "counterexample:gamma=" + cex.gamma;
    cfg.options = {{"gamma", cex.gamma}, {"r0", cex.r0 ? Json(*cex.r0) : Json()}};
    action = [&] { return cmd_counterexample(cfg, cex); };
  });

  AreaArgs ar;
  auto* s_area = app.add_subcommand("area", "Area of f(|z| < r)");
  family_opt(s_area);
  s_area->add_option("--r", ar.r, "Radius")->capture_default_str();
  s_area->add_option("--class", ar.klass, "Compare with the class bounds for alpha,zeta,n");
  s_area->add_option("--mc-samples", ar.mc_samples, "Monte-Carlo cross-check samples (uses --seed)")
      ->capture_default_str();
  s_area->callback([&] {
    cfg.tol = tol.value_or(1e-9);
    cfg.options = {{"r", ar.r}, {"class", ar.klass}, {"mc_samples", ar.mc_samples}};
    action = [&] { return cmd_area(cfg, ar); };
  });

  RenderArgs rd;
  auto* s_render = app.add_subcommand("render", "SVG of the image of a polar net");
  family_opt(s_render);
  s_render->add_option("--preset", rd.preset, "fig1 (whole image) or fig2 (cusp zoom)")->capture_default_str();
  s_render->add_option("--r", rd.r, "Outer radius")->capture_default_str();
  s_render->add_option("--circles", rd.circles, "Parameter circles")->capture_default_str();
  s_render->add_option("--rays", rd.rays, "Parameter rays")->capture_default_str();
  s_render->add_option("--samples", rd.samples, "Base samples per curve")->capture_default_str();
  s_render->add_option("--pixels", rd.pixels, "Canvas size")->capture_default_str();
  s_render->add_option("--center", rd.center, "Viewport center re,im (overrides the preset)");
  s_render->add_option("--half-width", rd.half_width, "Viewport half-width (overrides the preset)");
  s_render->add_option("--marker", rd.markers, "Image point re,im to mark");
  s_render->add_flag("--boundary", rd.boundary, "Only the curve f(|z| = r)");
  s_render->callback([&] {
    cfg.tol = tol;
    cfg.options = {{"preset", rd.preset}, {"r", rd.r},           {"circles", rd.circles},
                   {"rays", rd.rays},     {"samples", rd.samples}, {"pixels", rd.pixels},
                   {"center", rd.center}, {"half_width", rd.half_width ? Json(*rd.half_width) : Json()},
                   {"markers", rd.markers}, {"boundary", rd.boundary}};
    action = [&] { return cmd_render(cfg, rd); };
  });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  try {
    Outcome res = action();
    Json doc;
    doc["version"] = version_string();
    doc["command"] = cfg.subcommand;
    doc["config"] = to_json(cfg);
    doc.update(res.doc);
    emit(doc, cfg, out);
    return res.exit;
  } catch (const Error& e) {
    err << "harmonic: error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "harmonic: error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace harmonic::cli
