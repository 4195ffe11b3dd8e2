#pragma once

// Randomized invariant suites over seeded sampled bodies plus the corpus.
// Each invariant keeps a pass/fail tally and the first failing case.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "starbody/convergence.hpp"

namespace starbody::checks {

struct Tally {
  std::string name;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what = {}) {
    if (ok) {
      ++pass;
      return;
    }
    if (fail++ == 0) first_failure = what;
  }
};

struct Summary {
  std::string suite;
  std::vector<Tally> tallies;

  Tally& operator[](const std::string& name) {
    for (auto& t : tallies)
      if (t.name == name) return t;
    tallies.push_back({name, 0, 0, {}});
    return tallies.back();
  }
  bool ok() const {
    for (const auto& t : tallies)
      if (t.fail) return false;
    return true;
  }
  void merge(const Summary& other) {
    for (const auto& t : other.tallies) {
      auto& mine = (*this)[t.name];
      mine.pass += t.pass;
      if (t.fail && !mine.fail) mine.first_failure = t.first_failure;
      mine.fail += t.fail;
    }
  }
};

struct Options {
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  int count_2d = 720;
  int count_3d = 600;
};

/// Random bounded body on `grid`. Half of the draws are smooth (a constant
/// plus a few exponential bumps), the rest piecewise constant with jumps;
/// some values touch 0.
inline StarBody random_body(const std::shared_ptr<const SphereGrid>& grid, std::mt19937_64& rng,
                            const std::string& name = "random") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int d = grid->dimension();
  std::vector<XReal> values(grid->size());
  if (unit(rng) < 0.5) {
    const double base = 0.2 + 1.3 * unit(rng);
    const int bumps = 1 + static_cast<int>(4 * unit(rng));
    std::vector<Point> centers;
    std::vector<double> amp, sharp;
    std::normal_distribution<double> gauss;
    for (int b = 0; b < bumps; ++b) {
      Point c(d);
      for (int k = 0; k < d; ++k) c[k] = gauss(rng);
      centers.push_back(c.normalized());
      amp.push_back(1.6 * unit(rng) - 0.6);
      sharp.push_back(1.0 + 8.0 * unit(rng));
    }
    for (std::size_t i = 0; i < grid->size(); ++i) {
      double v = base;
      for (int b = 0; b < bumps; ++b) v += amp[b] * std::exp(sharp[b] * ((*grid)[i].dot(centers[b]) - 1.0));
      values[i] = std::max(0.0, v);
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, grid->size() - 1);
    const int pieces = 2 + static_cast<int>(6 * unit(rng));
    std::vector<std::size_t> anchors;
    std::vector<double> level;
    for (int p = 0; p < pieces; ++p) {
      anchors.push_back(pick(rng));
      level.push_back(unit(rng) < 0.1 ? 0.0 : 2.0 * unit(rng));
    }
    for (std::size_t i = 0; i < grid->size(); ++i) {
      std::size_t best = 0;
      double best_dot = -2.0;
      for (int p = 0; p < pieces; ++p) {
        const double dt = (*grid)[i].dot((*grid)[anchors[p]].coords());
        if (dt > best_dot) best_dot = dt, best = p;
      }
      values[i] = level[best];
    }
  }
  return bodies::sampled(grid, std::move(values), name);
}

/// {lambda r theta : r in {rho(theta), radius}, lambda in {0, 1/2, 1, 1 + 1e-6}} inside radius * B.
inline std::vector<Point> structured_samples(const std::vector<XReal>& rho, const SphereGrid& grid, double radius,
                                             std::size_t stride = 1) {
  static constexpr double lambdas[] = {0.0, 0.5, 1.0, 1.0 + kOutsideFactor};
  std::vector<Point> out;
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    for (double r : {rho[i], radius}) {
      if (!xreal::is_finite(r)) continue;
      for (double l : lambdas)
        if (l * r <= radius) out.push_back(l * r * grid[i].coords());
    }
  }
  return out;
}

/// Corpus members at a few indices plus the catalog bodies.
inline std::vector<StarBody> corpus_bodies(int d) {
  std::vector<StarBody> out = {bodies::ball(d), bodies::ball(d, 2.0), bodies::origin(d),
                               bodies::segment(basis(d, 0)), bodies::symmetric_segment(basis(d, 1))};
  for (const auto& name : corpus_names()) {
    if (name == "truncated_parabolas" && d != 2) continue;
    const auto seq = corpus(name, d);
    for (int n : {1, 3, 10}) out.push_back(seq(n));
  }
  return out;
}

namespace detail {

inline std::shared_ptr<const SphereGrid> suite_grid(int d, const Options& o) {
  return std::make_shared<const SphereGrid>(make_grid(d, d == 2 ? o.count_2d : o.count_3d, o.seed, true));
}

inline std::string trial_tag(int d, std::size_t t) { return "d=" + std::to_string(d) + " trial " + std::to_string(t); }

}  // namespace detail

inline Summary metric_axioms(const Options& o) {
  Summary s{"metric-axioms", {}};
  for (int d : {2, 3}) {
    const auto grid = detail::suite_grid(d, o);
    const double eps_g = grid->resolution();
    std::mt19937_64 rng(o.seed + d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto tag = detail::trial_tag(d, t);
      const auto a = random_body(grid, rng), b = random_body(grid, rng), c = random_body(grid, rng);
      const double ab = radial_metric(a, b, *grid), ba = radial_metric(b, a, *grid);
      const double bc = radial_metric(b, c, *grid), ac = radial_metric(a, c, *grid);
      s["delta symmetry"].record(ab == ba, tag);
      s["delta identity"].record(radial_metric(a, a, *grid) == 0.0, tag);
      s["delta separation"].record((ab > 0.0) == (a.sample(*grid) != b.sample(*grid)), tag);
      s["delta triangle"].record(ac <= ab + bc + 1e-12, tag);

      const auto rab = radial_aw_distance(a, b, *grid), rba = radial_aw_distance(b, a, *grid);
      const auto rbc = radial_aw_distance(b, c, *grid), rac = radial_aw_distance(a, c, *grid);
      s["awr symmetry"].record(rab.value == rba.value, tag);
      s["awr identity"].record(radial_aw_distance(a, a, *grid).value == 0.0, tag);
      s["awr triangle"].record(rac.value <= rab.value + rbc.value + 1e-12, tag);
      s["awr <= 1"].record(rab.value <= 1.0, tag);
      s["awr <= delta"].record(rab.value <= ab + 1e-12, tag);

      const double eps = std::max(1e-3, unit(rng));
      if (std::abs(rab.value - eps) > eps_g)
        s["within_radial_aw agreement"].record(within_radial_aw(a, b, eps, *grid) == (rab.value < eps), tag);
    }
  }
  return s;
}

inline Summary inequalities(const Options& o) {
  Summary s{"inequalities", {}};
  for (int d : {2, 3}) {
    const auto grid = detail::suite_grid(d, o);
    const double eps_g = grid->resolution();
    std::mt19937_64 rng(o.seed + 10 + d);
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto tag = detail::trial_tag(d, t);
      const auto a = random_body(grid, rng), b = random_body(grid, rng);
      const double delta = radial_metric(a, b, *grid);
      s["d_H <= delta"].record(hausdorff(a, b, *grid).value <= delta + eps_g, tag);
      s["d_AW <= d_AW^r"].record(aw_distance(a, b, *grid).value <= radial_aw_distance(a, b, *grid).value + eps_g, tag);
      s["e <= e_r"].record(excess(a, b, *grid) <= radial_excess(a, b, *grid) + eps_g, tag);
      s["delta = max(e_r, e_r')"].record(
          delta == std::max(radial_excess(a, b, *grid), radial_excess(b, a, *grid)), tag);

      // Thinned sample set keeps the O(N) point queries cheap.
      const auto sa = a.sample(*grid);
      const std::size_t stride = std::max<std::size_t>(1, grid->size() / 48);
      bool p4 = true, p2 = true;
      for (const auto& x : structured_samples(sa, *grid, 3.0, stride)) {
        const double dr = radial_distance(x, b);
        p4 = p4 && point_distance(x, b, *grid) <= dr + 1e-12;
        p2 = p2 && ((dr == 0.0) == membership(b, x));
      }
      s["d(x,.) <= d_r(x,.)"].record(p4, tag);
      s["d_r(x,A) = 0 iff x in A"].record(p2, tag);

      const double gap = radial_distance_sup_gap(a, b, 3.0, *grid);
      const double delta3 = starbody::detail::sup_abs_diff_truncated(sa, b.sample(*grid), 3.0);
      s["sup gap on 3B = delta of 3-truncations"].record(std::abs(gap - delta3) <= eps_g, tag);

      const auto mod = phi_modulus_check(bodies::ball(d), a, 0.2, *grid);
      if (mod.precondition_ok) s["Phi modulus"].record(mod.holds, tag);
      const auto bc = ball_containment_check(bodies::ball(d), a, 1, *grid);
      s["ball containment"].record(bc.pass, tag);
    }
  }
  return s;
}

inline Summary duality(const Options& o) {
  Summary s{"duality", {}};
  for (int d : {2, 3}) {
    const auto grid = detail::suite_grid(d, o);
    std::mt19937_64 rng(o.seed + 20 + d);
    std::vector<StarBody> pool = corpus_bodies(d);
    for (std::size_t t = 0; t < o.trials; ++t) pool.push_back(random_body(grid, rng));
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const auto& a = pool[k];
      const auto tag = a.name() + " (" + detail::trial_tag(d, k) + ")";
      s["involution"].record(star_dual(star_dual(a)).sample(*grid) == a.sample(*grid), tag);
      const auto inv = inversion_check(a, *grid, 7);
      s["inversion identity"].record(inv.violations == 0, tag);
    }
    s["Phi(B) = B"].record(star_dual(bodies::ball(d)).sample(*grid) == bodies::ball(d).sample(*grid));
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto a = random_body(grid, rng);
      const auto b = radial_sum(a, random_body(grid, rng));
      const auto fa = star_dual(a).sample(*grid), fb = star_dual(b).sample(*grid);
      bool ok = true;
      for (std::size_t i = 0; i < grid->size(); ++i) ok = ok && fb[i] <= fa[i];
      s["order reversal"].record(ok, detail::trial_tag(d, t));
    }
    std::vector<ConvexSeed> seeds = {seeds::ball(d, 1.5), seeds::segment(basis(d, 0)), seeds::embedded_strip(d),
                                     seeds::wedge(4, d)};
    if (d == 2) seeds.push_back(seeds::square());
    for (const auto& k : seeds) {
      const auto p = polar(k, *grid);
      bool ok = true;
      for (const auto& theta : *grid) {
        const XReal h = k.support(theta);
        if (xreal::is_finite(h) && h > 0.0) ok = ok && std::abs(p.radial(theta) * h - 1.0) <= 4e-16;
      }
      s["polar decomposition"].record(ok, k.name());
    }
  }
  return s;
}

inline Summary truncation(const Options& o) {
  Summary s{"truncation", {}};
  for (int d : {2, 3}) {
    const auto grid = detail::suite_grid(d, o);
    const double eps_g = grid->resolution();
    std::mt19937_64 rng(o.seed + 30 + d);
    std::vector<StarBody> pool = corpus_bodies(d);
    for (std::size_t t = 0; t < o.trials / 4 + 1; ++t) pool.push_back(random_body(grid, rng));
    const std::size_t stride = std::max<std::size_t>(1, grid->size() / 32);
    for (const auto& a : pool) {
      const auto sa = a.sample(*grid);
      for (double eta : {0.5, 1.0, 2.5}) {
        const auto at = truncate(a, eta);
        bool radial_ok = true, euclid_ok = true;
        for (const auto& x : structured_samples(sa, *grid, eta, stride)) {
          if (x.norm() > eta) continue;
          radial_ok = radial_ok && radial_distance(x, at) == radial_distance(x, a);
          if (a.hints().is_closed_claim.value_or(true))
            euclid_ok = euclid_ok && std::abs(point_distance(x, at, *grid) - point_distance(x, a, *grid)) <= eps_g;
        }
        s["d_r(x, A n eta B) = d_r(x, A)"].record(radial_ok, a.name());
        s["d(x, A n eta B) = d(x, A)"].record(euclid_ok, a.name());
      }
    }
    for (std::size_t t = 0; t + 1 < pool.size(); t += 3) {
      const auto& a = pool[t];
      const auto& b = pool[t + 1];
      for (const auto& r : {radial_aw_distance(a, b, *grid), aw_distance(a, b, *grid)}) {
        bool mono = true;
        for (std::size_t k = 1; k < r.terms.size(); ++k) mono = mono && r.terms[k].delta_j >= r.terms[k - 1].delta_j;
        s["j -> delta_j nondecreasing"].record(mono, a.name() + " vs " + b.name());
      }
    }
  }
  return s;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"metric-axioms", "inequalities", "duality", "truncation", "all"};
  return n;
}

inline Summary run(const std::string& suite, const Options& o) {
  if (suite == "metric-axioms") return metric_axioms(o);
  if (suite == "inequalities") return inequalities(o);
  if (suite == "duality") return duality(o);
  if (suite == "truncation") return truncation(o);
  if (suite == "all") {
    Summary s{"all", {}};
    for (auto* f : {metric_axioms, inequalities, duality, truncation}) s.merge(f(o));
    return s;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace starbody::checks
