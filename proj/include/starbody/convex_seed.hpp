#pragma once

// Convex sets containing the origin, carried as a pair (radial function,
// support function). Seeds are the inputs of the flower map and of the polar.
//
// Polyhedral seeds are given by generators: K = conv(points) + cone(rays).
// The support function is exact in every dimension. The radial function is
// exact for planar generator sets (any d, through the (e_1, e_2) embedding):
// rho_K(theta) = min over supporting half-planes <x,n> <= h_K(n) with
// <n,theta> > 0 of h_K(n) / <n,theta>. Every edge of a planar polyhedron is
// spanned by two generators, so the candidate normals built from generator
// pairs include every facet normal.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starbody/star_body.hpp"

namespace starbody {

/// Inner products with ray generators above this count as positive.
inline constexpr double kRayTolerance = 1e-12;

class ConvexSeed {
 public:
  enum class Kind { Ball, Polyhedral };
  using Support = std::function<XReal(const Direction&)>;

  ConvexSeed(int dimension, RadialProfile radial, Support support, std::string name, Kind kind,
             std::vector<Point> points = {}, std::vector<Point> rays = {}, bool radial_exact = true,
             std::optional<bool> bounded = std::nullopt)
      : dimension_(dimension),
        radial_(std::move(radial)),
        support_(std::move(support)),
        name_(std::move(name)),
        kind_(kind),
        points_(std::move(points)),
        rays_(std::move(rays)),
        radial_exact_(radial_exact),
        bounded_(bounded) {}

  int dimension() const { return dimension_; }
  const RadialProfile& radial() const { return radial_; }
  XReal support(const Direction& theta) const { return support_(theta); }
  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Point>& rays() const { return rays_; }
  bool radial_exact() const { return radial_exact_; }
  bool is_bounded() const { return bounded_.value_or(rays_.empty()); }

  /// The seed as a star body (its own radial function).
  StarBody body() const {
    BodyHints h;
    h.is_bounded = is_bounded();
    h.is_closed_claim = true;
    for (const auto* gens : {&points_, &rays_})
      for (const auto& g : *gens)
        if (auto u = Direction::of(g)) h.atoms.push_back(*u);
    return StarBody(dimension_, radial_, name_, h);
  }

  /// Membership through the radial function (closed convex set containing 0).
  bool contains(const Point& x, double tol = 1e-12) const {
    const auto t = Direction::of(x);
    if (!t) return true;
    return x.norm() <= radial_(*t) + tol;
  }

 private:
  int dimension_;
  RadialProfile radial_;
  Support support_;
  std::string name_;
  Kind kind_;
  std::vector<Point> points_;
  std::vector<Point> rays_;
  bool radial_exact_;
  std::optional<bool> bounded_;
};

namespace detail {

inline XReal generator_support(const std::vector<Point>& points, const std::vector<Point>& rays,
                               const Direction& theta) {
  for (const auto& r : rays)
    if (theta.dot(r) > kRayTolerance * r.norm()) return kInf;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::max(best, theta.dot(p));
  return best;
}

struct HalfPlane {
  Eigen::Vector2d normal;
  double offset;
};

inline std::vector<HalfPlane> planar_halfplanes(const std::vector<Point>& points, const std::vector<Point>& rays) {
  std::vector<Eigen::Vector2d> candidates;
  auto add_pair = [&](Eigen::Vector2d v) {
    const double n = v.norm();
    if (!(n > 0.0)) return;
    v /= n;
    const Eigen::Vector2d perp(-v.y(), v.x());
    candidates.push_back(perp);
    candidates.push_back(-perp);
    candidates.push_back(v);
    candidates.push_back(-v);
  };
  auto planar = [](const Point& p) { return Eigen::Vector2d(p[0], p[1]); };
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) add_pair(planar(points[j]) - planar(points[i]));
  for (const auto& r : rays) add_pair(planar(r));
  for (const auto& p : points) add_pair(planar(p));

  std::vector<HalfPlane> out;
  for (const auto& n : candidates) {
    bool unbounded = false;
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& r : rays)
      if (n.dot(planar(r)) > kRayTolerance * r.norm()) unbounded = true;
    if (unbounded) continue;
    for (const auto& p : points) h = std::max(h, n.dot(planar(p)));
    out.push_back({n, h});
  }
  return out;
}

inline XReal planar_radial(const std::vector<HalfPlane>& planes, double c, double s) {
  XReal rho = kInf;
  for (const auto& hp : planes) {
    const double a = hp.normal.x() * c + hp.normal.y() * s;
    if (a > 0.0) rho = std::min(rho, std::max(0.0, hp.offset) / a);
  }
  return rho;
}

inline bool is_planar(const std::vector<Point>& gens) {
  for (const auto& g : gens)
    for (Eigen::Index k = 2; k < g.size(); ++k)
      if (g[k] != 0.0) return false;
  return true;
}

inline void check_dimensions(int d, const std::vector<Point>& gens) {
  for (const auto& g : gens)
    if (g.size() != d) throw std::invalid_argument("generator dimension does not match seed dimension");
}

}  // namespace detail

namespace seeds {

inline ConvexSeed ball(int d, double r = 1.0) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  return ConvexSeed(d, bodies::ball(d, r).profile(), [r](const Direction&) { return r; },
                    r == 1.0 ? "B" : std::to_string(r) + "B", ConvexSeed::Kind::Ball, {}, {}, true, true);
}

/// K = conv(points) + cone(rays); 0 must belong to K.
inline ConvexSeed vrep(int d, std::vector<Point> points, std::vector<Point> rays, std::string name = "vrep") {
  if (d < 2) throw std::invalid_argument("seed dimension must be >= 2");
  if (points.empty()) throw std::invalid_argument("vrep seed needs at least one point");
  detail::check_dimensions(d, points);
  detail::check_dimensions(d, rays);

  auto support = [points, rays](const Direction& t) { return detail::generator_support(points, rays, t); };

  const bool planar = detail::is_planar(points) && detail::is_planar(rays);
  RadialProfile radial = [&] {
    std::vector<double> params;
    params.push_back(static_cast<double>(points.size()));
    params.push_back(static_cast<double>(rays.size()));
    if (planar) {
      auto planes = detail::planar_halfplanes(points, rays);
      return RadialProfile::closed_form(name, params, [planes = std::move(planes), d](const Direction& t) -> XReal {
        double off = 0.0;
        for (int k = 2; k < d; ++k) off += t[k] * t[k];
        if (std::sqrt(off) > kDirectionMatch) return 0.0;
        const double n = std::hypot(t[0], t[1]);
        return detail::planar_radial(planes, t[0] / n, t[1] / n);
      });
    }
    // Star hull of the generators: a lower bound on rho_K.
    return RadialProfile::closed_form(name, params, [points, rays](const Direction& t) -> XReal {
      XReal best = 0.0;
      for (const auto& r : rays)
        if (auto u = Direction::of(r); u && same_direction(*u, t)) return kInf;
      for (const auto& p : points)
        if (auto u = Direction::of(p); u && same_direction(*u, t)) best = std::max(best, p.norm());
      return best;
    });
  }();
  return ConvexSeed(d, std::move(radial), std::move(support), std::move(name), ConvexSeed::Kind::Polyhedral,
                    std::move(points), std::move(rays), planar, std::nullopt);
}

/// [0, x].
inline ConvexSeed segment(const Point& x) {
  const int d = static_cast<int>(x.size());
  return ConvexSeed(d, bodies::segment(x).profile(), [x](const Direction& t) { return std::max(0.0, t.dot(x)); },
                    "[0,x]", ConvexSeed::Kind::Polyhedral, {Point::Zero(d), x}, {}, true, true);
}

/// R_u = {t u : t >= 0}.
inline ConvexSeed ray(const Point& u) {
  const int d = static_cast<int>(u.size());
  return ConvexSeed(d, bodies::ray(u).profile(),
                    [u](const Direction& t) -> XReal { return t.dot(u) > kRayTolerance * u.norm() ? kInf : 0.0; },
                    "R_u", ConvexSeed::Kind::Polyhedral, {Point::Zero(d)}, {u}, true, false);
}

/// Convex polygon in the plane given by its vertices; must contain the origin.
inline ConvexSeed polygon(std::vector<Point> vertices, std::string name = "polygon") {
  if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least three vertices");
  for (const auto& v : vertices)
    if (v.size() != 2) throw std::invalid_argument("polygon vertices must be planar");
  auto seed = vrep(2, std::move(vertices), {}, std::move(name));
  for (int k = 0; k < 64; ++k) {
    const auto t = Direction::planar(2, 2.0 * std::numbers::pi * k / 64);
    if (seed.support(t) < -1e-12) throw std::invalid_argument("polygon does not contain the origin");
  }
  return seed;
}

/// [-s, s]^2.
inline ConvexSeed square(double s = 1.0) {
  return polygon({make_point({s, s}), make_point({-s, s}), make_point({-s, -s}), make_point({s, -s})}, "square");
}

/// [0,1] x [0, inf).
inline ConvexSeed strip() {
  return vrep(2, {make_point({0, 0}), make_point({1, 0})}, {make_point({0, 1})}, "strip");
}

/// K_n = [0,1] x [0,inf) union {(x,y) : x >= 1, y >= n(x-1)}, embedded in R^d.
inline ConvexSeed wedge(int n, int d = 2) {
  auto embed = [d](double x, double y) {
    Point p = Point::Zero(d);
    p[0] = x;
    p[1] = y;
    return p;
  };
  return vrep(d, {embed(0, 0), embed(1, 0)}, {embed(0, 1), embed(1, n)}, "K_" + std::to_string(n));
}

inline ConvexSeed embedded_strip(int d) {
  Point o = Point::Zero(d), x = Point::Zero(d), y = Point::Zero(d);
  x[0] = 1;
  y[1] = 1;
  return vrep(d, {o, x}, {y}, "strip");
}

}  // namespace seeds
}  // namespace starbody
