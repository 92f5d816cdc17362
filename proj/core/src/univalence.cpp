#include "harmonic/univalence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "harmonic/error.hpp"

namespace harmonic {

double feasibility_threshold(double gamma) {
  if (!(gamma > 1.0 && gamma <= 1.75)) {
    throw Error(ErrorCode::kParameter, "feasibility_threshold: gamma must lie in (1, 7/4]");
  }
  return std::sin(kPi / (gamma + 1.0));
}

SymmetricCollision find_symmetric_collision(const CollisionSearchParams& p) {
  const double threshold = feasibility_threshold(p.gamma);
  if (!(p.tol > 0.0)) throw Error(ErrorCode::kParameter, "collision search: tol must be > 0");
  const double r0 = p.r0.value_or(0.5 * (threshold + 1.0));
  if (!(r0 > threshold && r0 < 1.0)) {
    std::ostringstream os;
    os.precision(10);
    os << "collision search: r0 = " << r0 << " must lie in (" << threshold
       << ", 1) for gamma = " << p.gamma;
    throw Error(ErrorCode::kInfeasible, os.str());
  }
  const double target = kPi / (p.gamma + 1.0);
  // arg(1 - r0 e^{i theta}) falls monotonically from 0 to -asin(r0) on
  // [0, acos(r0)], so the shifted argument changes sign exactly once there.
  auto shifted_arg = [&](double theta) { return std::arg(1.0 - std::polar(r0, theta)) + target; };
  double lo = 0.0;
  double hi = std::acos(r0);
  int it = 0;
  for (; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (shifted_arg(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (it == 200) {
    throw Error(ErrorCode::kNonConvergence, "collision search: bisection did not converge");
  }

  SymmetricCollision out;
  out.r0 = r0;
  out.theta0 = 0.5 * (lo + hi);
  out.iterations = it;
  out.z1 = std::polar(r0, out.theta0);
  out.z2 = std::conj(out.z1);
  const HarmonicMapping f = make_counterexample(p.gamma);
  out.image = f(out.z1);
  out.image_gap = std::abs(out.image - f(out.z2));
  if (std::abs(out.image.imag()) > p.tol || out.image_gap > 2.0 * p.tol) {
    throw Error(ErrorCode::kNonConvergence, "collision search: root does not meet tolerance");
  }
  return out;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kCertified: return "certified-at-resolution";
    case Verdict::kCollision: return "collision";
    case Verdict::kDegenerateJacobian: return "degenerate-jacobian";
  }
  return "unknown";
}

Json to_json(const UnivalenceReport& rep) {
  Json j;
  j["verdict"] = to_string(rep.verdict);
  if (rep.verdict == Verdict::kCollision) {
    j["z1"] = to_json(rep.z1);
    j["z2"] = to_json(rep.z2);
    j["image_gap"] = rep.image_gap;
  } else {
    j["z1"] = nullptr;
    j["z2"] = nullptr;
    j["image_gap"] = nullptr;
  }
  j["resolution"] = rep.resolution;
  j["scan_radius"] = rep.scan_radius;
  j["refinement_residual"] = rep.refinement_residual;
  j["candidates"] = rep.candidates;
  j["unconfirmed"] = rep.unconfirmed;
  j["jacobian_flags"] = rep.jacobian_flags;
  j["degenerate_z"] = rep.degenerate_z ? to_json(*rep.degenerate_z) : Json(nullptr);
  return j;
}

namespace {

// Real 2x2 Jacobian of f = h + conj(g) at z, column-major: (f_x, f_y).
struct RealJacobian {
  Complex fx;
  Complex fy;
};

RealJacobian real_jacobian(const HarmonicMapping& f, Complex z) {
  const Complex dh = f.dh(z);
  const Complex dg_bar = std::conj(f.dg(z));
  return {dh + dg_bar, Complex(0.0, 1.0) * (dh - dg_bar)};
}

// J^T v for v in R^2 encoded as a complex number.
Complex transpose_apply(const RealJacobian& J, Complex v) {
  return {J.fx.real() * v.real() + J.fx.imag() * v.imag(),
          J.fy.real() * v.real() + J.fy.imag() * v.imag()};
}

// J J^T as a symmetric 2x2: (a b; b d)
struct Sym2 {
  double a = 0.0, b = 0.0, d = 0.0;
};

Sym2 gram(const RealJacobian& J) {
  return {J.fx.real() * J.fx.real() + J.fy.real() * J.fy.real(),
          J.fx.real() * J.fx.imag() + J.fy.real() * J.fy.imag(),
          J.fx.imag() * J.fx.imag() + J.fy.imag() * J.fy.imag()};
}

}  // namespace

NewtonResult refine_collision(const HarmonicMapping& f, Complex z1, Complex z2, double radius,
                              double separation_floor, double tol, int max_steps) {
  NewtonResult res;
  auto admissible = [&](Complex a, Complex b) {
    return std::abs(a) <= radius && std::abs(b) <= radius && std::abs(a - b) >= separation_floor;
  };
  if (!admissible(z1, z2)) return res;
  Complex F = f(z1) - f(z2);
  double norm = std::abs(F);
  int step = 0;
  for (; step < max_steps && norm > 1e-3 * tol; ++step) {
    const RealJacobian J1 = real_jacobian(f, z1);
    const RealJacobian J2 = real_jacobian(f, z2);
    const Sym2 g1 = gram(J1);
    const Sym2 g2 = gram(J2);
    const double a = g1.a + g2.a;
    const double b = g1.b + g2.b;
    const double d = g1.d + g2.d;
    const double det = a * d - b * b;
    if (!(std::abs(det) > 1e-300)) break;
    // y = (J1 J1^T + J2 J2^T)^{-1} F
    const Complex y{(d * F.real() - b * F.imag()) / det, (a * F.imag() - b * F.real()) / det};
    const Complex dz1 = -transpose_apply(J1, y);
    const Complex dz2 = transpose_apply(J2, y);

    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const Complex n1 = z1 + t * dz1;
      const Complex n2 = z2 + t * dz2;
      if (!admissible(n1, n2)) continue;
      const Complex nF = f(n1) - f(n2);
      if (std::abs(nF) < norm) {
        z1 = n1;
        z2 = n2;
        F = nF;
        norm = std::abs(nF);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  res.z1 = z1;
  res.z2 = z2;
  res.residual = norm;
  res.steps = step;
  res.converged = norm <= tol;
  return res;
}

namespace {

struct Candidate {
  double gap;
  std::size_t i;
  std::size_t j;
};

struct CellKey {
  std::int64_t x;
  std::int64_t y;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.x * 73856093LL ^ k.y * 19349663LL);
  }
};

}  // namespace

UnivalenceReport univalence_scan(const HarmonicMapping& f, const ScanOptions& opts) {
  if (!(opts.radius > 0.0 && opts.radius < 1.0)) {
    throw Error(ErrorCode::kDomain, "univalence_scan: radius must lie in (0, 1)");
  }
  if (opts.cells < 64) throw Error(ErrorCode::kParameter, "univalence_scan: cells must be >= 64");

  const int n_theta = opts.cells;
  const int n_r = std::max(16, opts.cells / 4);
  const std::size_t count = static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_r);

  UnivalenceReport rep;
  rep.resolution = opts.cells;
  rep.scan_radius = opts.radius;

  std::vector<Complex> pre(count);
  std::vector<Complex> img(count);
  for (int i = 0; i < n_r; ++i) {
    const double r = opts.radius * (i + 1) / n_r;
    for (int j = 0; j < n_theta; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n_theta + j;
      pre[k] = std::polar(r, 2.0 * kPi * j / n_theta);
      img[k] = f(pre[k]);
      if (jacobian(f, pre[k]) <= 0.0) {
        if (rep.jacobian_flags == 0) rep.degenerate_z = pre[k];
        ++rep.jacobian_flags;
      }
    }
  }
  const Complex center = f(Complex(0.0));

  // Local spacing: farthest image among the four grid neighbours.
  std::vector<double> local(count, 0.0);
  double cell = 0.0;
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_theta; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n_theta + j;
      const std::size_t jn = static_cast<std::size_t>(i) * n_theta + (j + 1) % n_theta;
      const std::size_t jp = static_cast<std::size_t>(i) * n_theta + (j + n_theta - 1) % n_theta;
      double s = std::max(std::abs(img[k] - img[jn]), std::abs(img[k] - img[jp]));
      s = std::max(s, std::abs(img[k] - (i == 0 ? center : img[k - n_theta])));
      if (i + 1 < n_r) s = std::max(s, std::abs(img[k] - img[k + n_theta]));
      local[k] = s;
      cell = std::max(cell, s);
    }
  }
  cell *= 2.0;

  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> buckets;
  auto key_of = [cell](Complex w) {
    return CellKey{static_cast<std::int64_t>(std::floor(w.real() / cell)),
                   static_cast<std::int64_t>(std::floor(w.imag() / cell))};
  };
  for (std::size_t k = 0; k < count; ++k) buckets[key_of(img[k])].push_back(k);

  // Best candidate per coarse preimage pair, so Newton sees distinct regions.
  const double coarse = 0.5 * opts.separation_floor;
  auto coarse_key = [coarse](Complex z) {
    return std::pair{static_cast<std::int64_t>(std::floor(z.real() / coarse)),
                     static_cast<std::int64_t>(std::floor(z.imag() / coarse))};
  };
  std::map<std::array<std::int64_t, 4>, Candidate> best;
  for (std::size_t k = 0; k < count; ++k) {
    const CellKey base = key_of(img[k]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find(CellKey{base.x + dx, base.y + dy});
        if (it == buckets.end()) continue;
        for (std::size_t m : it->second) {
          if (m <= k) continue;
          if (std::abs(pre[k] - pre[m]) < opts.separation_floor) continue;
          const double gap = std::abs(img[k] - img[m]);
          if (gap > local[k] + local[m]) continue;
          const auto a = coarse_key(pre[k]);
          const auto b = coarse_key(pre[m]);
          const std::array<std::int64_t, 4> key{a.first, a.second, b.first, b.second};
          auto [slot, inserted] = best.try_emplace(key, Candidate{gap, k, m});
          if (!inserted && std::tie(gap, k, m) < std::tie(slot->second.gap, slot->second.i, slot->second.j)) {
            slot->second = Candidate{gap, k, m};
          }
        }
      }
    }
  }

  std::vector<Candidate> cands;
  cands.reserve(best.size());
  for (const auto& [key, c] : best) cands.push_back(c);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.gap, a.i, a.j) < std::tie(b.gap, b.i, b.j);
  });
  if (cands.size() > static_cast<std::size_t>(opts.max_candidates)) {
    cands.resize(static_cast<std::size_t>(opts.max_candidates));
  }

  double best_residual = cands.empty() ? 0.0 : cands.front().gap;
  for (const Candidate& c : cands) {
    ++rep.candidates;
    const NewtonResult nr = refine_collision(f, pre[c.i], pre[c.j], opts.radius,
                                             opts.separation_floor, opts.collision_tol);
    if (nr.converged) {
      // Re-verify by direct evaluation before reporting.
      const double gap = std::abs(f(nr.z1) - f(nr.z2));
      if (gap <= opts.collision_tol && std::abs(nr.z1 - nr.z2) >= opts.separation_floor) {
        rep.verdict = Verdict::kCollision;
        const bool ordered = std::pair(nr.z1.real(), nr.z1.imag()) <= std::pair(nr.z2.real(), nr.z2.imag());
        rep.z1 = ordered ? nr.z1 : nr.z2;
        rep.z2 = ordered ? nr.z2 : nr.z1;
        rep.image_gap = gap;
        rep.refinement_residual = nr.residual;
        return rep;
      }
    }
    ++rep.unconfirmed;
    best_residual = std::min(best_residual, nr.residual);
  }
  rep.refinement_residual = best_residual;
  if (rep.jacobian_flags > 0) rep.verdict = Verdict::kDegenerateJacobian;
  return rep;
}

int winding_check(const HarmonicMapping& f, double r, Complex w, int M) {
  if (M < 256) throw Error(ErrorCode::kParameter, "winding_check: M must be >= 256");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::kDomain, "winding_check: r must lie in (0, 1)");
  auto sample = [&](double theta) {
    const Complex u = f(std::polar(r, theta)) - w;
    if (std::abs(u) <= 1e-9) {
      throw Error(ErrorCode::kOnCurve, "winding_check: point lies on the image curve");
    }
    return u;
  };
  // Sum of arg(u_b / u_a) over [ta, tb], halving while the increment is large.
  auto increment = [&](auto&& self, double ta, double tb, Complex ua, Complex ub, int depth) -> double {
    const double d = std::arg(ub / ua);
    if (std::abs(d) < 0.5 * kPi || depth > 40) return d;
    const double tm = 0.5 * (ta + tb);
    const Complex um = sample(tm);
    return self(self, ta, tm, ua, um, depth + 1) + self(self, tm, tb, um, ub, depth + 1);
  };
  const double step = 2.0 * kPi / M;
  const Complex first = sample(0.0);
  Complex prev = first;
  double total = 0.0;
  for (int j = 1; j <= M; ++j) {
    const Complex cur = j == M ? first : sample(step * j);
    total += increment(increment, step * (j - 1), step * j, prev, cur, 0);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace harmonic
