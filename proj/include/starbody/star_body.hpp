#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starbody/radial_profile.hpp"

namespace starbody {

/// Optional analytic facts about a body. They never change computed values;
/// tests use them to pick tolerances and the analyzer uses them to skip
/// notions that need bounded inputs.
struct BodyHints {
  std::optional<bool> is_bounded;
  std::optional<bool> is_closed_claim;
  std::optional<double> analytic_sup;
  std::optional<double> analytic_inf;
  /// Lipschitz bound of the profile in the angle, used for grid slack.
  std::optional<double> lipschitz;
  /// Isolated directions carrying mass a sphere grid can miss (segments,
  /// rays). Pairwise metrics add them to the evaluation grid.
  std::vector<Direction> atoms;
};

/// A radially closed star body: {0} together with every x != 0 with |x| <= rho(theta_x).
class StarBody {
 public:
  StarBody(int dimension, RadialProfile profile, std::string name = {}, BodyHints hints = {})
      : dimension_(dimension), profile_(std::move(profile)), name_(std::move(name)), hints_(std::move(hints)) {
    if (dimension_ < 2) throw std::invalid_argument("star body dimension must be >= 2");
  }

  int dimension() const { return dimension_; }
  const RadialProfile& profile() const { return profile_; }
  const std::string& name() const { return name_; }
  const BodyHints& hints() const { return hints_; }

  XReal radial(const Direction& theta) const { return profile_(theta); }
  XReal operator()(const Direction& theta) const { return profile_(theta); }

  std::vector<XReal> sample(const SphereGrid& grid) const {
    check_grid(grid);
    return profile_.sample(grid);
  }

  void check_grid(const SphereGrid& grid) const {
    if (grid.dimension() != dimension_)
      throw std::invalid_argument("grid dimension " + std::to_string(grid.dimension()) + " does not match body '" +
                                  name_ + "' of dimension " + std::to_string(dimension_));
  }

  StarBody renamed(std::string name) const { return StarBody(dimension_, profile_, std::move(name), hints_); }
  StarBody with_hints(BodyHints hints) const { return StarBody(dimension_, profile_, name_, std::move(hints)); }

 private:
  int dimension_;
  RadialProfile profile_;
  std::string name_;
  BodyHints hints_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_same_dimension(const StarBody& a, const StarBody& b) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("dimension mismatch: '" + a.name() + "' is " + std::to_string(a.dimension()) +
                            "-dimensional, '" + b.name() + "' is " + std::to_string(b.dimension()) + "-dimensional");
}

inline XReal eval_radial(const StarBody& a, const Direction& theta) { return a.radial(theta); }

inline bool membership(const StarBody& a, const Point& x) {
  if (x.size() != a.dimension()) throw DimensionMismatch("point dimension does not match body");
  const auto theta = Direction::of(x);
  if (!theta) return true;
  return x.norm() <= a.radial(*theta);
}

/// Radial sum: rho_A + rho_B pointwise, inf + c = inf.
inline StarBody radial_sum(const StarBody& a, const StarBody& b) {
  require_same_dimension(a, b);
  BodyHints h;
  if (a.hints().is_bounded && b.hints().is_bounded) h.is_bounded = *a.hints().is_bounded && *b.hints().is_bounded;
  h.atoms = a.hints().atoms;
  h.atoms.insert(h.atoms.end(), b.hints().atoms.begin(), b.hints().atoms.end());
  return StarBody(a.dimension(), RadialProfile::sum(a.profile(), b.profile()), a.name() + "+~" + b.name(), h);
}

inline StarBody scale(const StarBody& a, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale: lambda must be positive");
  BodyHints h = a.hints();
  if (h.analytic_sup) *h.analytic_sup *= lambda;
  if (h.analytic_inf) *h.analytic_inf *= lambda;
  if (h.lipschitz) *h.lipschitz *= lambda;
  return StarBody(a.dimension(), RadialProfile::scaled(a.profile(), lambda),
                  std::to_string(lambda) + "*" + a.name(), h);
}

/// A intersected with eta*B: profile min(rho_A, eta). Always bounded.
inline StarBody truncate(const StarBody& a, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("truncate: eta must be positive and finite");
  BodyHints h;
  h.is_bounded = true;
  h.is_closed_claim = a.hints().is_closed_claim;
  h.lipschitz = a.hints().lipschitz;
  h.atoms = a.hints().atoms;
  if (a.hints().analytic_sup) h.analytic_sup = std::min(*a.hints().analytic_sup, eta);
  if (a.hints().analytic_inf) h.analytic_inf = std::min(*a.hints().analytic_inf, eta);
  return StarBody(a.dimension(), RadialProfile::min_constant(a.profile(), eta), a.name() + "^" + std::to_string(eta),
                  h);
}

/// True when the body is finite at every grid direction.
inline bool bounded_on(const StarBody& a, const SphereGrid& grid) {
  for (XReal v : a.sample(grid))
    if (xreal::is_inf(v)) return false;
  return true;
}

inline constexpr double kDirectionMatch = 1e-12;

inline bool same_direction(const Direction& a, const Direction& b) {
  return (a.coords() - b.coords()).norm() <= kDirectionMatch;
}

/// `grid` refined by the atoms of the given bodies; holds the refined copy
/// only when one is needed.
class EvaluationGrid {
 public:
  EvaluationGrid(const SphereGrid& grid, std::initializer_list<const StarBody*> bodies) : grid_(&grid) {
    std::vector<Direction> atoms;
    for (const StarBody* b : bodies) {
      b->check_grid(grid);
      atoms.insert(atoms.end(), b->hints().atoms.begin(), b->hints().atoms.end());
    }
    if (atoms.empty()) return;
    own_.emplace(grid.refined(atoms));
    if (own_->size() == grid.size()) own_.reset();
    else grid_ = &*own_;
  }
  EvaluationGrid(const EvaluationGrid&) = delete;
  EvaluationGrid& operator=(const EvaluationGrid&) = delete;

  const SphereGrid& operator*() const { return *grid_; }
  const SphereGrid* operator->() const { return grid_; }

 private:
  std::optional<SphereGrid> own_;
  const SphereGrid* grid_;
};

/// Named star bodies used across the library and its tests.
namespace bodies {

inline StarBody ball(int d, double r = 1.0) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  BodyHints h{true, true, r, r, 0.0, {}};
  return StarBody(d, RadialProfile::closed_form("ball", {r}, [r](const Direction&) { return r; }),
                  r == 1.0 ? "B" : std::to_string(r) + "B", h);
}

inline StarBody origin(int d) {
  BodyHints h{true, true, 0.0, 0.0, 0.0, {}};
  return StarBody(d, RadialProfile::closed_form("origin", {}, [](const Direction&) { return 0.0; }), "{0}", h);
}

inline StarBody whole_space(int d) {
  BodyHints h{false, true, kInf, kInf, 0.0, {}};
  return StarBody(d, RadialProfile::closed_form("whole_space", {}, [](const Direction&) { return kInf; }), "R^d", h);
}

/// [0, x] for x != 0.
inline StarBody segment(const Point& x) {
  const auto u = Direction::of(x);
  if (!u) throw std::invalid_argument("segment endpoint must be nonzero");
  const double len = x.norm();
  BodyHints h{true, true, len, 0.0, std::nullopt, {*u}};
  std::vector<double> params(x.data(), x.data() + x.size());
  return StarBody(static_cast<int>(x.size()),
                  RadialProfile::closed_form("segment", params,
                                             [u = *u, len](const Direction& t) { return same_direction(t, u) ? len : 0.0; }),
                  "[0,x]", h);
}

/// [-x, x].
inline StarBody symmetric_segment(const Point& x) {
  const auto u = Direction::of(x);
  if (!u) throw std::invalid_argument("segment endpoint must be nonzero");
  const double len = x.norm();
  BodyHints h{true, true, len, 0.0, std::nullopt, {*u, -*u}};
  std::vector<double> params(x.data(), x.data() + x.size());
  return StarBody(static_cast<int>(x.size()),
                  RadialProfile::closed_form("symmetric_segment", params,
                                             [u = *u, len](const Direction& t) {
                                               return same_direction(t, u) || same_direction(t, -u) ? len : 0.0;
                                             }),
                  "[-x,x]", h);
}

/// R_u = {t u : t >= 0}.
inline StarBody ray(const Point& u_in) {
  const auto u = Direction::of(u_in);
  if (!u) throw std::invalid_argument("ray direction must be nonzero");
  BodyHints h{false, true, kInf, 0.0, std::nullopt, {*u}};
  std::vector<double> params(u->coords().data(), u->coords().data() + u->dim());
  return StarBody(u->dim(),
                  RadialProfile::closed_form("ray", params,
                                             [u = *u](const Direction& t) { return same_direction(t, u) ? kInf : 0.0; }),
                  "R_u", h);
}

/// {z : <z,u> <= 0}.
inline StarBody closed_halfspace(const Point& u_in) {
  const auto u = Direction::of(u_in);
  if (!u) throw std::invalid_argument("half-space normal must be nonzero");
  BodyHints h{false, true, kInf, 0.0, std::nullopt, {}};
  std::vector<double> params(u->coords().data(), u->coords().data() + u->dim());
  return StarBody(u->dim(),
                  RadialProfile::closed_form("closed_halfspace", params,
                                             [u = *u](const Direction& t) { return t.dot(u.coords()) <= 0.0 ? kInf : 0.0; }),
                  "H", h);
}

/// {z : <z,u> > 0} together with the origin; radially closed but not closed.
inline StarBody open_halfspace_with_origin(const Point& u_in) {
  const auto u = Direction::of(u_in);
  if (!u) throw std::invalid_argument("half-space normal must be nonzero");
  BodyHints h{false, false, kInf, 0.0, std::nullopt, {}};
  std::vector<double> params(u->coords().data(), u->coords().data() + u->dim());
  return StarBody(u->dim(),
                  RadialProfile::closed_form("open_halfspace_with_origin", params,
                                             [u = *u](const Direction& t) { return t.dot(u.coords()) > 0.0 ? kInf : 0.0; }),
                  "H_u^+ u {0}", h);
}

inline StarBody sampled(std::shared_ptr<const SphereGrid> grid, std::vector<XReal> values, std::string name = "sampled") {
  const int d = grid->dimension();
  BodyHints h;
  bool finite = true;
  for (XReal v : values) finite = finite && xreal::is_finite(v);
  h.is_bounded = finite;
  return StarBody(d, RadialProfile::sampled(std::move(grid), std::move(values)), std::move(name), h);
}

}  // namespace bodies
}  // namespace starbody
