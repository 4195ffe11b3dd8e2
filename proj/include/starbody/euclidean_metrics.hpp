#pragma once

// Classical distance functional, excess, Hausdorff and Attouch-Wets distances
// for star bodies, computed from their radial representation.
//
// A star body is the union of the segments [0, rho(phi) phi]; on a grid it is
// approximated from inside by the segments at grid directions. The distance
// from x to the body is then the minimum of exact point-to-segment distances,
// so the angular grid is the only error source and every computed distance
// is an upper bound of the true one.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "starbody/radial_metrics.hpp"

namespace starbody {

struct Witness {
  std::optional<Direction> direction;
  XReal distance = 0.0;
};

struct HausdorffResult {
  XReal value = 0.0;
  Witness witness_forward;   // sup over A1 of d(., A2)
  Witness witness_backward;  // sup over A2 of d(., A1)
};

namespace detail {

/// Distance from x to [0, rho u] (the ray when rho = inf).
inline double segment_distance(const Point& x, double x_norm, const Direction& u, XReal rho) {
  const double t = u.dot(x);
  if (t <= 0.0 || rho == 0.0) return x_norm;
  if (xreal::is_finite(rho) && t >= rho) return (x - rho * u.coords()).norm();
  return std::sqrt(std::max(0.0, x_norm * x_norm - t * t));
}

/// min over grid directions of the distance from x to [0, rho_i theta_i].
/// `hint` is the index of a direction close to theta_x (used to order the 2D walk).
inline double grid_point_distance(const Point& x, const std::vector<XReal>& rho, const SphereGrid& grid,
                                  std::size_t hint) {
  const double xn = x.norm();
  if (xn == 0.0) return 0.0;
  double best = xn;
  const std::size_t n = grid.size();

  if (!grid.angular_order()) {
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, segment_distance(x, xn, grid[i], rho[i]));
    return best;
  }

  // Planar grids in angle order: walk outward from the hint. A direction at angle alpha from
  // x is at distance >= |x| sin(alpha) for alpha < pi/2 and exactly |x|
  // beyond, so each side stops once that bound reaches the best value.
  const Direction theta = *Direction::of(x);
  best = std::min(best, segment_distance(x, xn, grid[hint], rho[hint]));
  bool left_done = false, right_done = false;
  for (std::size_t k = 1; k <= n / 2 && !(left_done && right_done); ++k) {
    for (int side = 0; side < 2; ++side) {
      bool& done = side == 0 ? right_done : left_done;
      if (done) continue;
      const std::size_t i = side == 0 ? (hint + k) % n : (hint + n - k) % n;
      const double c = grid[i].dot(theta.coords());
      if (c <= 0.0 || xn * std::sqrt(std::max(0.0, 1.0 - c * c)) >= best) {
        done = true;
        continue;
      }
      best = std::min(best, segment_distance(x, xn, grid[i], rho[i]));
    }
  }
  return best;
}

struct DirectedExcess {
  XReal value = 0.0;
  std::size_t index = 0;
};

/// sup over grid theta of d(rho_1(theta) theta, A2).
///
/// Restricting to radial endpoints is exact for star targets: if b realizes
/// d(x, A2) then t b lies in A2, so d(t x, A2) <= t d(x, A2) for t in [0, 1].
/// Rays (rho_1 = inf) contribute 0 when A2 contains the same ray and +inf otherwise.
inline DirectedExcess directed_excess(const std::vector<XReal>& rho1, const std::vector<XReal>& rho2,
                                      const SphereGrid& grid) {
  DirectedExcess out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double d = 0.0;
    if (xreal::is_inf(rho1[i])) {
      d = xreal::is_inf(rho2[i]) ? 0.0 : kInf;
    } else if (rho1[i] > rho2[i] && rho1[i] > 0.0) {
      d = grid_point_distance(rho1[i] * grid[i].coords(), rho2, grid, i);
    }
    if (d > out.value) {
      out.value = d;
      out.index = i;
    }
  }
  return out;
}

inline HausdorffResult hausdorff_sampled(const std::vector<XReal>& rho1, const std::vector<XReal>& rho2,
                                         const SphereGrid& grid) {
  const auto fwd = directed_excess(rho1, rho2, grid);
  const auto bwd = directed_excess(rho2, rho1, grid);
  HausdorffResult r;
  r.witness_forward = {grid[fwd.index], fwd.value};
  r.witness_backward = {grid[bwd.index], bwd.value};
  r.value = std::max(fwd.value, bwd.value);
  return r;
}

}  // namespace detail

/// d(x, A) approximated over grid directions plus theta_x itself (evaluated exactly).
inline XReal point_distance(const Point& x, const StarBody& a, const SphereGrid& grid) {
  const EvaluationGrid g(grid, {&a});
  if (membership(a, x)) return 0.0;
  const auto theta = *Direction::of(x);
  const double xn = x.norm();
  const auto rho = a.sample(*g);
  const double own = detail::segment_distance(x, xn, theta, a.radial(theta));
  return std::min(own, detail::grid_point_distance(x, rho, *g, g->nearest(theta)));
}

/// e(A1, A2) = sup_{x in A1} d(x, A2).
inline XReal excess(const StarBody& a1, const StarBody& a2, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  return detail::directed_excess(a1.sample(*g), a2.sample(*g), *g).value;
}

inline HausdorffResult hausdorff(const StarBody& a1, const StarBody& a2, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  return detail::hausdorff_sampled(a1.sample(*g), a2.sample(*g), *g);
}

/// d_AW(A1, A2) = sup_j min{1/j, d_H(A1 n jB, A2 n jB)}. The truncation formula
/// needs closed inputs; bodies not claimed closed are computed anyway and flagged.
inline AWRResult aw_distance(const StarBody& a1, const StarBody& a2, const SphereGrid& grid,
                             int j_max = kDefaultJMax) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  const auto s1 = a1.sample(*g);
  const auto s2 = a2.sample(*g);
  auto truncated = [](const std::vector<XReal>& s, double j) {
    std::vector<XReal> out(s.size());
    std::transform(s.begin(), s.end(), out.begin(), [j](XReal v) { return xreal::truncate(v, j); });
    return out;
  };
  auto r = detail::truncated_sup(
      [&](int j) { return detail::hausdorff_sampled(truncated(s1, j), truncated(s2, j), *g).value; }, j_max);
  r.closedness_unverified =
      !(a1.hints().is_closed_claim.value_or(false) && a2.hints().is_closed_claim.value_or(false));
  return r;
}

}  // namespace starbody
