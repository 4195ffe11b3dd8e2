#pragma once

// Brute-force reference computations used to cross-check the library.
// Nothing here calls into starbody's metric or profile code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Vec = Eigen::VectorXd;

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Largest lambda in [0, cap] with member(lambda * u), assuming the members
/// near the top form an interval: scan down from cap, then bisect.
inline double ray_reach(const std::function<bool(const Vec&)>& member, const Vec& u, double cap, int steps = 20000) {
  if (member(cap * u)) return cap;
  double hi = cap;
  double lo = -1.0;
  for (int k = steps - 1; k >= 0; --k) {
    const double l = cap * k / steps;
    if (member(l * u)) {
      lo = l;
      break;
    }
    hi = l;
  }
  if (lo < 0.0) return 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (member(mid * u) ? lo : hi) = mid;
  }
  return lo;
}

/// Distance from x to the segment [a, b].
inline double point_segment(const Vec& x, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

/// max of t exp(-t) over [0, hi] by dense scan.
inline double spike_peak(double hi = 50.0, int steps = 5000000) {
  double best = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = hi * k / steps;
    best = std::max(best, t * std::exp(-t));
  }
  return best;
}

/// closure(B \ conv(C_n)) where C_n is the cone from a = e_d/4 through the
/// (d-2)-sphere of the unit sphere at height 1 - 1/(n+1). The half angle is
/// read off an explicit point of that sphere.
struct MoszynskaSet {
  int d;
  Vec apex, rim_point;
  double cos_half_angle;

  MoszynskaSet(int dim, int n) : d(dim), apex(Vec::Zero(dim)), rim_point(Vec::Zero(dim)) {
    apex[d - 1] = 0.25;
    const double h = 1.0 - 1.0 / (n + 1.0);
    rim_point[0] = std::sqrt(1.0 - h * h);
    rim_point[d - 1] = h;
    const Vec v = rim_point - apex;
    cos_half_angle = v[d - 1] / v.norm();
  }
  bool in_open_cone(const Vec& z) const {
    const Vec w = z - apex;
    const double r = w.norm();
    return r > 0.0 && w[d - 1] > r * cos_half_angle;
  }
  bool contains(const Vec& z) const { return z.norm() <= 1.0 && !in_open_cone(z); }
  double radial(const Vec& u) const {
    return ray_reach([this](const Vec& z) { return contains(z); }, u, 1.0);
  }
};

/// P_n = {(x, y) : -1 <= x <= 1, 0 <= y <= x^2 / n}.
inline bool parabola_contains(int n, double x, double y) { return std::abs(x) <= 1.0 && y >= 0.0 && n * y <= x * x; }

/// sup{lambda : lambda (c, s) in P_n} by scanning lambda over [0, 2].
inline double parabola_radial(int n, double c, double s) {
  Vec u(2);
  u << c, s;
  return ray_reach([n](const Vec& z) { return parabola_contains(n, z[0], z[1]); }, u, 2.0, 200000);
}

/// Polar of conv(points) + cone(rays): y with <y, p> <= 1 and <y, r> <= 0.
struct Generators {
  std::vector<Vec> points, rays;
  bool polar_contains(const Vec& y) const {
    for (const auto& p : points)
      if (y.dot(p) > 1.0) return false;
    for (const auto& r : rays)
      if (y.dot(r) > 0.0) return false;
    return true;
  }
};

/// Radial function of {y : member(y)} along u by doubling then bisection; inf past 1e8.
inline double convex_reach(const std::function<bool(const Vec&)>& member, const Vec& u) {
  double lo = 0.0, hi = 1.0;
  while (member(hi * u)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) return inf;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (member(mid * u) ? lo : hi) = mid;
  }
  return lo;
}

/// Polar of rB: sup over |x| <= r of <y, x> is r |y|.
inline bool ball_polar_contains(double r, const Vec& y) { return r * y.norm() <= 1.0; }

inline Vec planar(double phi) {
  Vec u(2);
  u << std::cos(phi), std::sin(phi);
  return u;
}

}  // namespace oracle
