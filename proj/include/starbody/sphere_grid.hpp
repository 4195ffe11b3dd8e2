#pragma once

// Deterministic direction sets on S^{d-1}. Every sup/inf over the sphere in
// this library is evaluated over one of these grids.
//
//   d = 2   N equally spaced angles 2*pi*k/N, k = 0..N-1; covering radius pi/N.
//   d = 3   Fibonacci lattice; covering radius estimated as 3.5 / sqrt(N).
//   d >= 4  Halton points with a seeded Cranley-Patterson shift, pushed to the
//           sphere through the normal quantile; covering radius estimated as
//           5.0 * N^(-1/(d-1)).
//
// The d >= 3 constants are upper bounds on covering radii measured by random
// probing (Fibonacci ~2.7, Halton d=4..6 at most ~3.4), padded for safety.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "starbody/direction.hpp"

namespace starbody {

/// Angular: planar directions sorted by angle but not equally spaced (a
/// refined equal-angle grid).
enum class GridLayout { EqualAngle, Angular, Fibonacci, Halton };

inline constexpr double kFibonacciCoveringConstant = 3.5;
inline constexpr double kHaltonCoveringConstant = 5.0;

class SphereGrid {
 public:
  SphereGrid(int dimension, std::vector<Direction> directions, double resolution, std::uint64_t seed,
             bool symmetric, GridLayout layout)
      : dimension_(dimension),
        directions_(std::move(directions)),
        resolution_(resolution),
        seed_(seed),
        symmetric_(symmetric),
        layout_(layout) {
    if (dimension_ == 2) {
      angles_.reserve(directions_.size());
      for (const auto& t : directions_) angles_.push_back(angle_of(t));
    }
  }

  int dimension() const { return dimension_; }
  std::size_t size() const { return directions_.size(); }
  const std::vector<Direction>& directions() const { return directions_; }
  const Direction& operator[](std::size_t i) const { return directions_[i]; }
  auto begin() const { return directions_.begin(); }
  auto end() const { return directions_.end(); }

  /// Upper bound on the angular covering radius.
  double resolution() const { return resolution_; }
  std::uint64_t seed() const { return seed_; }
  bool symmetric() const { return symmetric_; }
  GridLayout layout() const { return layout_; }
  /// True for planar grids listed in increasing angle.
  bool angular_order() const { return layout_ == GridLayout::EqualAngle || layout_ == GridLayout::Angular; }

  /// This grid plus the directions of `extra` it does not already contain
  /// (within `match`). Planar grids stay sorted by angle; otherwise the new
  /// directions are appended. Resolution is unchanged.
  SphereGrid refined(const std::vector<Direction>& extra, double match = 1e-12) const {
    std::vector<Direction> missing;
    for (const auto& t : extra) {
      if (t.dim() != dimension_) throw std::invalid_argument("refined: direction dimension does not match grid");
      const bool present = (directions_[nearest(t)].coords() - t.coords()).norm() <= match;
      bool dup = false;
      for (const auto& m : missing) dup = dup || (m.coords() - t.coords()).norm() <= match;
      if (!present && !dup) missing.push_back(t);
    }
    if (missing.empty()) return *this;
    std::vector<Direction> dirs = directions_;
    dirs.insert(dirs.end(), missing.begin(), missing.end());
    GridLayout layout = layout_;
    if (angular_order()) {
      std::stable_sort(dirs.begin(), dirs.end(),
                       [](const Direction& a, const Direction& b) { return angle_of(a) < angle_of(b); });
      layout = GridLayout::Angular;
    }
    return SphereGrid(dimension_, std::move(dirs), resolution_, seed_, symmetric_, layout);
  }

  /// Polar angle in [0, 2 pi) of a planar direction.
  static double angle_of(const Direction& t) {
    double phi = std::atan2(t[1], t[0]);
    if (phi < 0) phi += 2.0 * std::numbers::pi;
    return phi;
  }

  /// Index of the grid direction closest to theta; ties go to the lowest index.
  std::size_t nearest(const Direction& theta) const {
    if (layout_ == GridLayout::EqualAngle) return nearest_equal_angle(theta);
    if (layout_ == GridLayout::Angular) return nearest_angular(theta);
    std::size_t best = 0;
    double best_dot = -2.0;
    for (std::size_t i = 0; i < directions_.size(); ++i) {
      const double c = directions_[i].coords().dot(theta.coords());
      if (c > best_dot) {
        best_dot = c;
        best = i;
      }
    }
    return best;
  }

 private:
  std::size_t nearest_equal_angle(const Direction& theta) const {
    const auto n = directions_.size();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    double phi = std::atan2(theta[1], theta[0]);
    if (phi < 0) phi += 2.0 * std::numbers::pi;
    const auto lo = static_cast<std::size_t>(std::floor(phi / step)) % n;
    const auto hi = (lo + 1) % n;
    const double dlo = angle_between(directions_[lo], theta);
    const double dhi = angle_between(directions_[hi], theta);
    if (dlo < dhi) return lo;
    if (dhi < dlo) return hi;
    return std::min(lo, hi);
  }

  std::size_t nearest_angular(const Direction& theta) const {
    const auto n = directions_.size();
    const auto it = std::lower_bound(angles_.begin(), angles_.end(), angle_of(theta));
    const std::size_t hi = static_cast<std::size_t>(it - angles_.begin()) % n;
    const std::size_t lo = (hi + n - 1) % n;
    const double dlo = angle_between(directions_[lo], theta);
    const double dhi = angle_between(directions_[hi], theta);
    if (dlo < dhi) return lo;
    if (dhi < dlo) return hi;
    return std::min(lo, hi);
  }

  int dimension_;
  std::vector<Direction> directions_;
  std::vector<double> angles_;
  double resolution_;
  std::uint64_t seed_;
  bool symmetric_;
  GridLayout layout_;
};

namespace detail {

inline double snap(double v) {
  if (std::abs(v) < 1e-15) return 0.0;
  if (std::abs(std::abs(v) - 1.0) < 1e-15) return v > 0 ? 1.0 : -1.0;
  return v;
}

inline std::vector<Direction> equal_angles(int count) {
  std::vector<Direction> out;
  out.reserve(count);
  const double step = 2.0 * std::numbers::pi / count;
  for (int k = 0; k < count; ++k) {
    Point p(2);
    p << snap(std::cos(k * step)), snap(std::sin(k * step));
    out.push_back(*Direction::of(p));
  }
  return out;
}

inline std::vector<Direction> fibonacci(int count) {
  std::vector<Direction> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    Point p(3);
    p << r * std::cos(phi), r * std::sin(phi), z;
    out.push_back(*Direction::of(p));
  }
  return out;
}

inline double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

inline unsigned nth_prime(int k) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                        59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
  if (k >= static_cast<int>(std::size(primes))) throw std::invalid_argument("grid dimension too large");
  return primes[k];
}

inline std::vector<Direction> halton(int d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(d);
  for (auto& s : shift) s = unif(rng);
  const boost::math::normal_distribution<double> normal;

  std::vector<Direction> out;
  out.reserve(count);
  for (std::uint64_t i = 1; static_cast<int>(out.size()) < count; ++i) {
    Point p(d);
    for (int k = 0; k < d; ++k) {
      double u = radical_inverse(i, nth_prime(k)) + shift[k];
      u -= std::floor(u);
      u = std::clamp(u, 1e-12, 1.0 - 1e-12);
      p[k] = boost::math::quantile(normal, u);
    }
    if (auto dir = Direction::of(p)) out.push_back(*dir);
  }
  return out;
}

}  // namespace detail

/// Builds the deterministic grid for (d, count, seed). With `symmetric`, the
/// grid is closed under antipodes; count must then be even.
inline SphereGrid make_grid(int d, int count, std::uint64_t seed = 0, bool symmetric = false) {
  if (d < 2) throw std::invalid_argument("make_grid: dimension must be >= 2, got " + std::to_string(d));
  if (count < 4) throw std::invalid_argument("make_grid: count must be >= 4, got " + std::to_string(count));
  if (symmetric && count % 2 != 0) throw std::invalid_argument("make_grid: symmetric grids need an even count");

  if (d == 2) {
    return SphereGrid(2, detail::equal_angles(count), std::numbers::pi / count, seed, symmetric,
                      GridLayout::EqualAngle);
  }

  const int base_count = symmetric ? count / 2 : count;
  std::vector<Direction> dirs = d == 3 ? detail::fibonacci(base_count) : detail::halton(d, base_count, seed);
  if (symmetric) {
    dirs.reserve(count);
    for (int i = 0; i < base_count; ++i) dirs.push_back(-dirs[i]);
  }
  const double c = d == 3 ? kFibonacciCoveringConstant : kHaltonCoveringConstant;
  const double resolution = c * std::pow(static_cast<double>(count), -1.0 / (d - 1));
  return SphereGrid(d, std::move(dirs), resolution, seed, symmetric,
                    d == 3 ? GridLayout::Fibonacci : GridLayout::Halton);
}

/// Default grid sizes used by the CLI and the convergence analyzer.
inline int default_grid_count(int d) { return d == 2 ? 2048 : 4096; }

}  // namespace starbody
