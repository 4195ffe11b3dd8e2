#pragma once

// Closed-form sequences of star bodies that separate the convergence notions,
// each with the candidate limits it is analyzed against.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starbody/convex_seed.hpp"

namespace starbody {

struct CandidateLimit {
  std::string tag;
  StarBody body;
  /// "stated" when the limit is the one asserted for the example, "derived" otherwise.
  std::string source;
  std::string note;
  std::optional<ConvexSeed> seed;
};

struct SequenceSpec {
  std::string name;
  int dimension = 2;
  int first_index = 1;
  std::function<StarBody(int)> generator;
  std::function<ConvexSeed(int)> seed_generator;  // flower corpus only
  std::vector<CandidateLimit> candidates;

  StarBody operator()(int n) const {
    if (n < first_index) throw std::out_of_range(name + ": index " + std::to_string(n) + " out of range");
    return generator(n);
  }
  const CandidateLimit& candidate(const std::string& tag) const {
    for (const auto& c : candidates)
      if (c.tag == tag) return c;
    throw std::invalid_argument(name + ": no candidate limit '" + tag + "'");
  }
};

class UnknownCorpus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"moszynska_cones",     "en_spikes",          "xn_powers",
                                                 "rotating_segments",   "tilting_halfspaces", "truncated_parabolas",
                                                 "flower_wedge"};
  return names;
}

namespace shapes {

/// theta_n = (1/n, sqrt(1 - 1/n^2)) embedded in R^d.
inline Point tilted_unit(int d, int n) {
  Point p = Point::Zero(d);
  const double inv = 1.0 / n;
  p[0] = inv;
  p[1] = std::sqrt(1.0 - inv * inv);
  return p;
}

/// Geometry of A_n = closure(B \ conv(C_n)): C_n is the cone with apex e_d/4
/// through the (d-2)-sphere S_n of the unit sphere at height h = 1 - 1/(n+1).
struct MoszynskaCone {
  double height;  // h
  double radius;  // radius of S_n, sqrt(1 - h^2)
  double cot;     // (h - 1/4) / radius: the cone is {z : z_d >= 1/4 + cot * |z'|}

  explicit MoszynskaCone(int n)
      : height(1.0 - 1.0 / (n + 1.0)), radius(std::sqrt(1.0 - height * height)), cot((height - 0.25) / radius) {}

  /// A ray t theta enters the cone at t = 1 / (4 (theta_d - cot |theta'|)) when
  /// that denominator is positive and never otherwise; rho = min(1, entry).
  XReal radial(const Direction& t) const {
    const int d = t.dim();
    double lateral = 0.0;
    for (int k = 0; k < d - 1; ++k) lateral += t[k] * t[k];
    const double den = t[d - 1] - cot * std::sqrt(lateral);
    if (den <= 0.0) return 1.0;
    return std::min(1.0, 1.0 / (4.0 * den));
  }

  /// |d rho / d angle| <= 4 sqrt(1 + cot^2) where rho <= 1.
  double lipschitz() const { return 4.0 * std::sqrt(1.0 + cot * cot); }
};

inline StarBody moszynska_cone(int d, int n) {
  const MoszynskaCone cone(n);
  BodyHints h{true, true, 1.0, 0.25, cone.lipschitz(), {}};
  return StarBody(d, RadialProfile::closed_form("moszynska_cone", {static_cast<double>(n)},
                                                [cone](const Direction& t) { return cone.radial(t); }),
                  "A_" + std::to_string(n), h);
}

/// rho(theta) = n |theta_1| exp(-n |theta_1|).
inline StarBody en_spike(int d, int n) {
  BodyHints h{true, true, std::exp(-1.0), 0.0, static_cast<double>(n), {}};
  return StarBody(d, RadialProfile::closed_form("en_spike", {static_cast<double>(n)},
                                                [n](const Direction& t) {
                                                  const double s = n * std::abs(t[0]);
                                                  return s * std::exp(-s);
                                                }),
                  "E_" + std::to_string(n), h);
}

/// rho(theta) = |theta_1|^n.
inline StarBody xn_power(int d, int n) {
  BodyHints h{true, true, 1.0, 0.0, static_cast<double>(n), {}};
  return StarBody(d, RadialProfile::closed_form("xn_power", {static_cast<double>(n)},
                                                [n](const Direction& t) { return std::pow(std::abs(t[0]), n); }),
                  "X_" + std::to_string(n), h);
}

/// sup{lambda >= 0 : lambda theta in P_n} for
/// P_n = {(x, y) : -1 <= x <= 1, 0 <= y <= x^2 / n}.
/// On the horizontal axis the reach is 1. For theta_2 > 0 the ray meets P_n
/// for lambda in [n s / c^2, 1/|c|], which is nonempty iff n s <= |c|.
inline XReal truncated_parabola_radial(int n, double c, double s) {
  if (s < 0.0) return 0.0;
  const double ac = std::abs(c);
  if (s == 0.0) return 1.0 / ac;
  if (ac == 0.0 || n * s > ac) return 0.0;
  return 1.0 / ac;
}

inline bool truncated_parabola_contains(int n, double x, double y) {
  return -1.0 <= x && x <= 1.0 && 0.0 <= y && y <= x * x / n;
}

inline StarBody truncated_parabola(int n) {
  const double sup = std::sqrt(1.0 + 1.0 / (static_cast<double>(n) * n));
  BodyHints h{true, true, sup, 0.0, std::nullopt, {}};
  return StarBody(2, RadialProfile::closed_form("truncated_parabola", {static_cast<double>(n)},
                                                [n](const Direction& t) { return truncated_parabola_radial(n, t[0], t[1]); }),
                  "P_" + std::to_string(n), h);
}

/// Pointwise limit of the half-spaces {<z, theta_n> <= 0}: inf where
/// theta_2 < 0, or theta_2 = 0 and theta_1 <= 0; 0 elsewhere. Not closed.
inline StarBody tilting_halfspace_limit(int d) {
  BodyHints h{false, false, kInf, 0.0, std::nullopt, {}};
  return StarBody(d, RadialProfile::closed_form("halfspace_limit", {},
                                                [](const Direction& t) -> XReal {
                                                  if (t[1] < 0.0) return kInf;
                                                  if (t[1] == 0.0 && t[0] <= 0.0) return kInf;
                                                  return 0.0;
                                                }),
                  "{z_2<0} u {z_2=0, z_1<=0}", h);
}

}  // namespace shapes

namespace detail {

inline void require_planar_corpus(const std::string& name, int d) {
  if (d != 2) throw std::invalid_argument("corpus '" + name + "' is only defined for d = 2 (got d = " + std::to_string(d) + ")");
}

}  // namespace detail

/// Corpus sequence by name.
inline SequenceSpec corpus(const std::string& name, int d) {
  if (d < 2) throw std::invalid_argument("corpus dimension must be >= 2");
  SequenceSpec spec;
  spec.name = name;
  spec.dimension = d;
  const Point e1 = basis(d, 0), e2 = basis(d, 1);

  if (name == "moszynska_cones") {
    spec.generator = [d](int n) { return shapes::moszynska_cone(d, n); };
    spec.candidates.push_back({"unit-ball", bodies::ball(d), "stated", "Hausdorff limit of A_n", std::nullopt});
  } else if (name == "en_spikes") {
    spec.generator = [d](int n) { return shapes::en_spike(d, n); };
    spec.candidates.push_back({"origin", bodies::origin(d), "stated", "pointwise radial limit of E_n", std::nullopt});
  } else if (name == "xn_powers") {
    spec.generator = [d](int n) { return shapes::xn_power(d, n); };
    spec.candidates.push_back(
        {"segment-pm-e1", bodies::symmetric_segment(e1), "stated", "pointwise radial limit [-e_1, e_1]", std::nullopt});
  } else if (name == "rotating_segments") {
    spec.generator = [d](int n) { return bodies::segment(shapes::tilted_unit(d, n)).renamed("[0,theta_" + std::to_string(n) + "]"); };
    spec.candidates.push_back({"segment-e2", bodies::segment(e2).renamed("[0,e_2]"), "derived",
                               "theta_n -> e_2, so [0, theta_n] -> [0, e_2] in d_H", std::nullopt});
    spec.candidates.push_back({"segment-e1", bodies::segment(e1).renamed("[0,e_1]"), "stated",
                               "fixed segment [0, e_1]; delta([0,e_1],[0,theta_n]) = 1", std::nullopt});
  } else if (name == "tilting_halfspaces") {
    spec.generator = [d](int n) {
      return bodies::closed_halfspace(shapes::tilted_unit(d, n)).renamed("H_" + std::to_string(n));
    };
    spec.candidates.push_back({"halfspace-limit", shapes::tilting_halfspace_limit(d), "stated",
                               "non-closed pointwise radial limit", std::nullopt});
    spec.candidates.push_back({"closed-halfspace", bodies::closed_halfspace(e2).renamed("{z_2<=0}"), "derived",
                               "closure of the pointwise limit", std::nullopt});
  } else if (name == "truncated_parabolas") {
    detail::require_planar_corpus(name, d);
    spec.generator = [](int n) { return shapes::truncated_parabola(n); };
    spec.candidates.push_back({"origin", bodies::origin(2), "stated", "stated radial Wijsman limit {0}", std::nullopt});
    spec.candidates.push_back({"segment-pm-e1", bodies::symmetric_segment(e1).renamed("[-e_1,e_1]"), "derived",
                               "rho_{P_n}(+-e_1) = 1 for every n", std::nullopt});
  } else if (name == "flower_wedge") {
    spec.generator = [d](int n) { return seeds::wedge(n, d).body(); };
    spec.seed_generator = [d](int n) { return seeds::wedge(n, d); };
    const auto k = seeds::embedded_strip(d);
    spec.candidates.push_back({"strip", k.body().renamed("K"), "stated", "K = [0,1] x [0,inf)", k});
  } else {
    std::string valid;
    for (const auto& n : corpus_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UnknownCorpus("unknown corpus '" + name + "'; valid names: " + valid);
  }
  return spec;
}

}  // namespace starbody
