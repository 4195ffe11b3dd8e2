#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace starbody {

using Point = Eigen::VectorXd;

inline constexpr double kUnitTolerance = 1e-12;

inline Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p[i++] = c;
  return p;
}

/// Canonical basis vector e_{axis+1} in R^d (axis is zero based).
inline Point basis(int d, int axis) {
  Point p = Point::Zero(d);
  p[axis] = 1.0;
  return p;
}

/// Unit vector of R^d, d >= 2.
class Direction {
 public:
  /// Accepts a vector already on the sphere; rejects anything off by more than 1e-12.
  static Direction from_unit(Point coords) {
    if (coords.size() < 2) throw std::invalid_argument("direction dimension must be >= 2");
    if (std::abs(coords.norm() - 1.0) > kUnitTolerance)
      throw std::invalid_argument("direction is not a unit vector (norm " + std::to_string(coords.norm()) + ")");
    return Direction(std::move(coords));
  }

  /// theta_x = x / |x|; undefined at the origin.
  static std::optional<Direction> of(const Point& x) {
    const double n = x.norm();
    if (x.size() < 2 || !(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    Point u = x / n;
    // One renormalization pass brings |u| within a couple of ulps of 1.
    u /= u.norm();
    return Direction(std::move(u));
  }

  static Direction axis(int d, int axis) { return Direction(basis(d, axis)); }

  /// Unit vector at angle phi in the (e_1, e_2) plane, embedded in R^d.
  static Direction planar(int d, double phi) {
    Point p = Point::Zero(d);
    p[0] = std::cos(phi);
    p[1] = std::sin(phi);
    return Direction(std::move(p));
  }

  const Point& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  double dot(const Point& x) const { return coords_.dot(x); }
  Direction operator-() const { return Direction(-coords_); }

  friend bool operator==(const Direction& a, const Direction& b) { return a.coords_ == b.coords_; }

 private:
  explicit Direction(Point coords) : coords_(std::move(coords)) {}
  Point coords_;
};

/// Angle between two unit directions, clamped against rounding.
inline double angle_between(const Direction& a, const Direction& b) {
  const double c = std::clamp(a.coords().dot(b.coords()), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace starbody
