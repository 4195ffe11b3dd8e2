#pragma once

// Star duality Phi (rho -> 1/rho), flowers (rho_{K clubs} = h_K), polars
// (K polar = Phi(K clubs)) and the numerical checks around them.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starbody/convex_seed.hpp"
#include "starbody/euclidean_metrics.hpp"
#include "starbody/radial_metrics.hpp"

namespace starbody {

/// Phi(A): rho_{Phi(A)} = 1/rho_A with 1/0 = inf, 1/inf = 0. Phi(Phi(A)) returns A's profile.
inline StarBody star_dual(const StarBody& a) {
  BodyHints h;
  if (a.hints().analytic_inf) {
    h.analytic_sup = xreal::reciprocal(*a.hints().analytic_inf);
    h.is_bounded = xreal::is_finite(*h.analytic_sup);
  }
  if (a.hints().analytic_sup) h.analytic_inf = xreal::reciprocal(*a.hints().analytic_sup);
  h.atoms = a.hints().atoms;
  std::string name = a.name().rfind("Phi(", 0) == 0 && a.name().back() == ')'
                         ? a.name().substr(4, a.name().size() - 5)
                         : "Phi(" + a.name() + ")";
  return StarBody(a.dimension(), RadialProfile::reciprocal(a.profile()), std::move(name), h);
}

/// Spherical inversion x -> x / |x|^2.
inline Point spherical_inversion(const Point& x) { return x / x.squaredNorm(); }

struct InversionReport {
  std::size_t checked = 0;
  std::size_t skipped_boundary = 0;
  std::size_t violations = 0;
  std::vector<std::string> examples;  // first few violations, human readable
};

inline constexpr double kLadderMin = 1e-3;
inline constexpr double kLadderMax = 1e3;
inline constexpr double kBoundarySlack = 1e-9;

/// Checks Phi(A) = rc(R^d \ i(A)) along every grid ray: lambda theta lies
/// outside i(A \ {0}) (tested by inverting the point and asking A) exactly when
/// lambda <= rho_{Phi(A)}(theta), away from the boundary lambda = 1/rho_A(theta).
inline InversionReport inversion_check(const StarBody& a, const SphereGrid& grid, int samples_per_direction) {
  if (samples_per_direction < 3) throw std::invalid_argument("inversion_check needs >= 3 samples per direction");
  const EvaluationGrid g(grid, {&a});
  const StarBody phi = star_dual(a);
  const double log_lo = std::log(kLadderMin), log_hi = std::log(kLadderMax);
  InversionReport rep;
  for (const auto& theta : *g) {
    const XReal boundary = phi.radial(theta);
    for (int k = 0; k < samples_per_direction; ++k) {
      const double lambda = std::exp(log_lo + (log_hi - log_lo) * k / (samples_per_direction - 1));
      if (xreal::is_finite(boundary) && std::abs(lambda - boundary) <= kBoundarySlack * std::max(1.0, lambda)) {
        ++rep.skipped_boundary;
        continue;
      }
      const Point x = lambda * theta.coords();
      const bool in_inverted = membership(a, spherical_inversion(x));
      const bool in_phi = membership(phi, x);
      ++rep.checked;
      if (in_inverted == in_phi) {
        ++rep.violations;
        if (rep.examples.size() < 5)
          rep.examples.push_back("lambda=" + std::to_string(lambda) + " rho_Phi=" + std::to_string(boundary));
      }
    }
  }
  return rep;
}

inline XReal support(const ConvexSeed& k, const Direction& theta) { return k.support(theta); }

/// K clubs, the star body with radial function h_K, with its seed attached.
struct FlowerBody {
  StarBody body;
  std::optional<ConvexSeed> seed;
};

class FlowerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_origin_in_seed(const ConvexSeed& k, const SphereGrid& grid) {
  if (grid.dimension() != k.dimension()) throw DimensionMismatch("grid dimension does not match seed");
  for (const auto& theta : grid)
    if (k.support(theta) < 0.0)
      throw FlowerError("seed '" + k.name() + "' does not contain the origin (negative support)");
}

/// Grid used to validate seeds when the caller does not supply one.
inline SphereGrid seed_check_grid(int d) { return make_grid(d, d == 2 ? 256 : 512, 0, true); }

inline FlowerBody flower(const ConvexSeed& k, const SphereGrid& grid) {
  require_origin_in_seed(k, grid);
  BodyHints h;
  h.is_bounded = k.is_bounded();
  h.is_closed_claim = k.is_bounded();
  const auto support_fn = [k](const Direction& t) { return k.support(t); };
  StarBody body(k.dimension(), RadialProfile::closed_form("flower", {}, support_fn), k.name() + "^clubs", h);
  return FlowerBody{std::move(body), k};
}

inline FlowerBody flower(const ConvexSeed& k) { return flower(k, seed_check_grid(k.dimension())); }

/// K polar = Phi(K clubs): rho = 1 / h_K.
inline StarBody polar(const ConvexSeed& k, const SphereGrid& grid) {
  return star_dual(flower(k, grid).body).renamed(k.name() + "^o");
}

inline StarBody polar(const ConvexSeed& k) { return polar(k, seed_check_grid(k.dimension())); }

struct UnionCheckReport {
  /// max over grid of h_K(theta) - sup_x <x,theta>_+ (finite h only).
  double max_gap = 0.0;
  /// max over grid of the reverse violation sup_x <x,theta>_+ - h_K(theta); must be <= 0.
  double max_overshoot = 0.0;
  /// Gap trace for growing prefixes of the sample list (sizes 1, 2, 4, ...).
  std::vector<std::pair<std::size_t, double>> gap_by_prefix;
  bool monotone = true;
};

/// Compares h_K with the radial function of the union of the balls B_x
/// (diameter [0, x]), rho_{B_x}(theta) = <x, theta>_+, over samples x in K.
inline UnionCheckReport flower_union_check(const ConvexSeed& k, const SphereGrid& grid,
                                           const std::vector<Point>& point_samples) {
  if (grid.dimension() != k.dimension()) throw DimensionMismatch("grid dimension does not match seed");
  for (const auto& x : point_samples) {
    if (x.size() != k.dimension()) throw DimensionMismatch("sample dimension does not match seed");
    if (!k.contains(x, 1e-9)) throw std::invalid_argument("flower_union_check: sample point outside the seed");
  }
  std::vector<XReal> hk;
  hk.reserve(grid.size());
  for (const auto& t : grid) hk.push_back(k.support(t));

  auto gap_for = [&](std::size_t m, double* overshoot) {
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double u = 0.0;
      for (std::size_t s = 0; s < m; ++s) u = std::max(u, grid[i].dot(point_samples[s]));
      if (xreal::is_finite(hk[i])) gap = std::max(gap, hk[i] - u);
      if (overshoot) *overshoot = std::max(*overshoot, u - hk[i]);
    }
    return gap;
  };

  UnionCheckReport rep;
  rep.max_overshoot = -kInf;
  rep.max_gap = gap_for(point_samples.size(), &rep.max_overshoot);
  if (point_samples.empty()) rep.max_overshoot = 0.0;
  for (std::size_t m = 1; m < point_samples.size(); m *= 2) rep.gap_by_prefix.emplace_back(m, gap_for(m, nullptr));
  if (!point_samples.empty()) rep.gap_by_prefix.emplace_back(point_samples.size(), rep.max_gap);
  for (std::size_t i = 1; i < rep.gap_by_prefix.size(); ++i)
    rep.monotone = rep.monotone && rep.gap_by_prefix[i].second <= rep.gap_by_prefix[i - 1].second;
  return rep;
}

/// d_clubs(F1, F2) = d_AW(K1, K2), through the seeds.
inline double flower_distance(const FlowerBody& f1, const FlowerBody& f2, const SphereGrid& grid,
                              int j_max = kDefaultJMax) {
  if (!f1.seed || !f2.seed) throw FlowerError("flower_distance needs the seed of both flowers");
  return aw_distance(f1.seed->body(), f2.seed->body(), grid, j_max).value;
}

struct PhiModulusReport {
  double lhs = 0.0;  // delta(Phi(A), Phi(X))
  double rhs = 0.0;  // 2 delta(A, X) / r0^2
  double delta = 0.0;
  bool holds = false;
  bool precondition_ok = false;
  std::vector<std::string> notes;
};

/// delta(Phi(A), Phi(X)) <= 2 delta(A, X) / r0^2 for bounded A, X with rho >= r0.
/// The hypothesis delta(A, X) < r0/2 is recorded, not enforced.
inline PhiModulusReport phi_modulus_check(const StarBody& a, const StarBody& x, double r0, const SphereGrid& grid) {
  require_same_dimension(a, x);
  if (!(r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  PhiModulusReport rep;
  const EvaluationGrid g(grid, {&a, &x});
  const auto sa = a.sample(*g), sx = x.sample(*g);
  bool ok = true;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (!xreal::is_finite(sa[i]) || !xreal::is_finite(sx[i])) {
      ok = false;
      rep.notes.push_back("unbounded body");
      break;
    }
    if (sa[i] < r0 || sx[i] < r0) {
      ok = false;
      rep.notes.push_back("rho below r0 on the grid");
      break;
    }
  }
  rep.delta = detail::sup_abs_diff(sa, sx);
  if (!(rep.delta < r0 / 2)) {
    ok = false;
    rep.notes.push_back("delta(A,X) >= r0/2");
  }
  rep.precondition_ok = ok;
  rep.lhs = radial_metric(star_dual(a), star_dual(x), grid);
  rep.rhs = 2.0 * rep.delta / (r0 * r0);
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

struct BallContainmentReport {
  bool precondition_ok = false;  // (1/j0) B inside A on the grid
  double awr = 0.0;
  bool triggered = false;  // awr < 1/(2 j0)
  double min_rho_x = 0.0;
  bool pass = false;
};

/// If (1/j0) B is inside A and d_AW^r(A, X) < 1/(2 j0), then (1/(2 j0)) B is inside X.
inline BallContainmentReport ball_containment_check(const StarBody& a, const StarBody& x, int j0,
                                                    const SphereGrid& grid, int j_max = kDefaultJMax) {
  require_same_dimension(a, x);
  if (j0 < 1) throw std::invalid_argument("j0 must be >= 1");
  BallContainmentReport rep;
  const EvaluationGrid g(grid, {&a, &x});
  const auto sa = a.sample(*g), sx = x.sample(*g);
  rep.precondition_ok = *std::min_element(sa.begin(), sa.end()) >= 1.0 / j0;
  rep.min_rho_x = *std::min_element(sx.begin(), sx.end());
  rep.awr = radial_aw_distance(a, x, grid, j_max).value;
  rep.triggered = rep.awr < 1.0 / (2.0 * j0);
  rep.pass = !rep.precondition_ok || !rep.triggered || rep.min_rho_x > 1.0 / (2.0 * j0);
  return rep;
}

}  // namespace starbody
