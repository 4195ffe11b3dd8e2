#pragma once

// Radial distance functional d_r(x, A) and the metrics built from it.
//
// d_r(x, A) = 0 for x in A and |x| - rho_A(theta_x) otherwise. The radial
// excess, the radial metric delta and the radial Attouch-Wets distance all
// reduce to sup-norm computations on radial functions, which is what the grid
// routines below evaluate.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "starbody/star_body.hpp"

namespace starbody {

inline constexpr int kDefaultJMax = 64;

/// One j of the truncated sup: delta_j = distance between the j-truncations,
/// term = min(1/j, delta_j).
struct AWTerm {
  int j;
  double delta_j;
  double term;
};

/// Result of sup_j min{1/j, D(A1 n jB, A2 n jB)} for D = delta or d_H.
struct AWRResult {
  double value = 0.0;
  int attained_j = 0;
  std::vector<AWTerm> terms;
  /// Last j evaluated.
  int truncated_at = 0;
  /// True when the loop ran up to J_max instead of stopping on 1/(j+1) <= value.
  bool hit_cap = false;
  /// Set by aw_distance when either input is not known to be closed.
  bool closedness_unverified = false;
};

inline XReal radial_distance(const Point& x, const StarBody& a) {
  if (x.size() != a.dimension()) throw DimensionMismatch("point dimension does not match body");
  const auto theta = Direction::of(x);
  if (!theta) return 0.0;
  const double r = x.norm();
  const XReal rho = a.radial(*theta);
  return r <= rho ? 0.0 : r - rho;
}

namespace detail {

inline XReal sup_excess(const std::vector<XReal>& a, const std::vector<XReal>& b) {
  XReal best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, xreal::excess(a[i], b[i]));
  return best;
}

inline XReal sup_abs_diff(const std::vector<XReal>& a, const std::vector<XReal>& b) {
  XReal best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, xreal::abs_diff(a[i], b[i]));
  return best;
}

inline double sup_abs_diff_truncated(const std::vector<XReal>& a, const std::vector<XReal>& b, double j) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    best = std::max(best, std::abs(xreal::truncate(a[i], j) - xreal::truncate(b[i], j)));
  return best;
}

/// Shared j-loop for the radial and classical Attouch-Wets distances. Later
/// terms are bounded by 1/j', so the loop stops once 1/(j+1) <= best.
template <class DistanceAtJ>
AWRResult truncated_sup(DistanceAtJ&& distance_at, int j_max) {
  if (j_max < 1) throw std::invalid_argument("J_max must be >= 1");
  AWRResult r;
  for (int j = 1; j <= j_max; ++j) {
    const double dj = distance_at(j);
    const double term = std::min(1.0 / j, dj);
    r.terms.push_back({j, dj, term});
    if (term > r.value) {
      r.value = term;
      r.attained_j = j;
    }
    r.truncated_at = j;
    if (1.0 / (j + 1) <= r.value) return r;
  }
  r.hit_cap = true;
  if (r.attained_j == 0) r.attained_j = r.truncated_at;
  return r;
}

}  // namespace detail

/// e_r(A1, A2) = sup_{a in A1} d_r(a, A2), reduced to directions:
/// sup_theta (rho_A1(theta) - rho_A2(theta))_+ with inf - c = inf.
inline XReal radial_excess(const StarBody& a1, const StarBody& a2, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  return detail::sup_excess(a1.sample(*g), a2.sample(*g));
}

/// delta(A1, A2) = sup_theta |rho_A1 - rho_A2|, with |inf - inf| = 0.
inline XReal radial_metric(const StarBody& a1, const StarBody& a2, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  return detail::sup_abs_diff(a1.sample(*g), a2.sample(*g));
}

/// d_AW^r(A1, A2) = sup_j min{1/j, delta(A1 n jB, A2 n jB)}.
inline AWRResult radial_aw_distance(const StarBody& a1, const StarBody& a2, const SphereGrid& grid,
                                    int j_max = kDefaultJMax) {
  require_same_dimension(a1, a2);
  const EvaluationGrid g(grid, {&a1, &a2});
  const auto s1 = a1.sample(*g);
  const auto s2 = a2.sample(*g);
  return detail::truncated_sup([&](int j) { return detail::sup_abs_diff_truncated(s1, s2, j); }, j_max);
}

/// The j with eps in (1/(j+1), 1/j].
inline int aw_index_for(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps must lie in (0, 1]");
  int j = static_cast<int>(std::floor(1.0 / eps));
  j = std::max(j, 1);
  while (eps > 1.0 / j) --j;
  while (eps <= 1.0 / (j + 1)) ++j;
  return j;
}

/// d_AW^r(A1, A2) < eps, decided through the single truncation j with eps in (1/(j+1), 1/j].
inline bool within_radial_aw(const StarBody& a1, const StarBody& a2, double eps, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  const int j = aw_index_for(eps);
  const EvaluationGrid g(grid, {&a1, &a2});
  return detail::sup_abs_diff_truncated(a1.sample(*g), a2.sample(*g), j) < eps;
}

/// Relative overshoot used for the "just outside the boundary" sample points.
inline constexpr double kOutsideFactor = 1e-6;

/// sup |d_r(x, A1) - d_r(x, A2)| over the structured samples
/// {lambda r theta : theta in grid, r in {rho_A1(theta), rho_A2(theta), radius},
///  lambda in {0, 1/2, 1, 1 + 1e-6}} that lie in radius * B.
inline XReal radial_distance_sup_gap(const StarBody& a1, const StarBody& a2, double radius, const SphereGrid& grid) {
  require_same_dimension(a1, a2);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const EvaluationGrid eval(grid, {&a1, &a2});
  const SphereGrid& g = *eval;
  const auto s1 = a1.sample(g);
  const auto s2 = a2.sample(g);
  static constexpr double lambdas[] = {0.0, 0.5, 1.0, 1.0 + kOutsideFactor};
  double best = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double reach[] = {s1[i], s2[i], radius};
    for (double r : reach) {
      if (!xreal::is_finite(r)) continue;
      for (double lambda : lambdas) {
        const double t = lambda * r;
        if (t > radius) continue;
        const Point x = t * g[i].coords();
        best = std::max(best, std::abs(radial_distance(x, a1) - radial_distance(x, a2)));
      }
    }
  }
  return best;
}

}  // namespace starbody
