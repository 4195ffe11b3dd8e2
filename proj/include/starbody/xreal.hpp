#pragma once

// Extended nonnegative reals [0, +inf] carried in a plain double.
//
// Radial functions take values in [0, +inf]; +inf is the native IEEE infinity
// so ordering, min/max and truncation work without special cases. The helpers
// below cover the few operations where the extended semantics differ from
// IEEE arithmetic (reciprocal of 0, inf - inf, products with 0).

#include <cmath>
#include <limits>
#include <stdexcept>

namespace starbody {

using XReal = double;

inline constexpr XReal kInf = std::numeric_limits<double>::infinity();

namespace xreal {

inline bool is_inf(XReal a) { return std::isinf(a); }
inline bool is_finite(XReal a) { return std::isfinite(a); }

inline bool is_valid(XReal a) { return !std::isnan(a) && a >= 0.0; }

/// 1/0 = inf, 1/inf = 0.
inline XReal reciprocal(XReal a) {
  if (a == 0.0) return kInf;
  if (is_inf(a)) return 0.0;
  return 1.0 / a;
}

/// Pointwise extended sum; inf + c = inf.
inline XReal add(XReal a, XReal b) { return a + b; }

/// Scalar multiple with lambda > 0; lambda * inf = inf.
inline XReal scale(XReal a, double lambda) { return is_inf(a) ? kInf : lambda * a; }

/// min(a, c) for finite c is always finite.
inline XReal truncate(XReal a, double c) { return a < c ? a : c; }

/// a - b for finite operands only.
inline double sub(XReal a, XReal b) {
  if (!is_finite(a) || !is_finite(b))
    throw std::domain_error("xreal::sub requires finite operands");
  return a - b;
}

/// Extended positive part of a - b: 0 when a <= b, inf when a = inf > b.
inline XReal excess(XReal a, XReal b) {
  if (a <= b) return 0.0;
  if (is_inf(a)) return kInf;
  return a - b;
}

/// |a - b| with |inf - inf| = 0 and |inf - c| = inf.
inline XReal abs_diff(XReal a, XReal b) {
  if (a == b) return 0.0;
  if (is_inf(a) || is_inf(b)) return kInf;
  return std::abs(a - b);
}

}  // namespace xreal
}  // namespace starbody
