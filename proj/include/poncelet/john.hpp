#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "poncelet/curve.hpp"

namespace poncelet {

enum class Parity { NextVertical, NextHorizontal };

struct JohnState {
  double x = 0;
  double y = 0;
  Parity parity = Parity::NextVertical;
  /// Set when the last involution hit a double root.
  bool tangent = false;
};

/// Below this |y| (resp. |x|) the other root comes from the Vieta sum.
inline constexpr double kVietaSwitch = 1e-6;
/// Relative residual beyond which an input point counts as off the curve.
inline constexpr double kOnCurveTolerance = 1e-6;

namespace detail {

template <class Curve>
void require_on_curve(const Curve& c, double x, double y) {
  const double r = std::fabs(eval_curve(c, x, y)) / curve_scale(c, x, y);
  if (!(r <= kOnCurveTolerance)) throw std::domain_error("John involution: point is not on the curve");
}

/// Other root of q(t) = 0 given the root t, followed by one Newton step on q.
inline double other_root(const Quadratic& q, double t, bool& tangent) {
  if (q.A == 0.0) throw std::domain_error("John involution: chord meets the curve once (leading coefficient 0)");
  double r = (std::fabs(t) > kVietaSwitch) ? q.C / (q.A * t) : -q.B / q.A - t;
  const double d = 2.0 * q.A * r + q.B;
  const double scale = std::fabs(q.B) + std::fabs(q.A * r) + std::sqrt(std::fabs(q.A * q.C));
  tangent = std::fabs(d) <= 1e-9 * scale;
  if (!tangent) {
    const double step = (q.A * r * r + q.B * r + q.C) / d;
    if (std::fabs(step) < 1e-3 * (1.0 + std::fabs(r))) r -= step;
  }
  return r;
}

}  // namespace detail

/// I1: (x, y) -> (x, y') along the vertical chord.
template <class Curve>
JohnState involution_vertical(const Curve& c, const JohnState& s) {
  detail::require_on_curve(c, s.x, s.y);
  JohnState r{s.x, 0.0, Parity::NextHorizontal, false};
  r.y = detail::other_root(quad_in_y(c, s.x), s.y, r.tangent);
  return r;
}

/// I2: (x, y) -> (x', y) along the horizontal chord.
template <class Curve>
JohnState involution_horizontal(const Curve& c, const JohnState& s) {
  detail::require_on_curve(c, s.x, s.y);
  JohnState r{0.0, s.y, Parity::NextVertical, false};
  r.x = detail::other_root(quad_in_x(c, s.y), s.x, r.tangent);
  return r;
}

/// The half step selected by the state's parity.
template <class Curve>
JohnState half_step(const Curve& c, const JohnState& s) {
  return s.parity == Parity::NextVertical ? involution_vertical(c, s) : involution_horizontal(c, s);
}

/// T = I2 ∘ I1.
template <class Curve>
JohnState john_map(const Curve& c, const JohnState& s) {
  const JohnState m = involution_vertical(c, s);
  JohnState r = involution_horizontal(c, m);
  r.tangent = r.tangent || m.tangent;
  return r;
}

/// T⁻¹ = I1 ∘ I2.
template <class Curve>
JohnState john_map_inverse(const Curve& c, const JohnState& s) {
  const JohnState m = involution_horizontal(c, s);
  JohnState r = involution_vertical(c, m);
  r.tangent = r.tangent || m.tangent;
  r.parity = Parity::NextVertical;
  return r;
}

inline double state_distance(const JohnState& p, const JohnState& q) { return std::hypot(p.x - q.x, p.y - q.y); }

struct PeriodResult {
  bool closed = false;
  /// Period of T; 0 when open.
  int N = 0;
  /// Number of involutions in one period, 2N.
  int half_steps = 0;
  double return_distance = std::numeric_limits<double>::infinity();
  double min_distance = std::numeric_limits<double>::infinity();
  /// Orbit passed through a tangency point; excluded from period statistics.
  bool tangent = false;
};

/// Smallest N <= Nmax with |TⁿM - M| < tol.
template <class Curve>
PeriodResult detect_period(const Curve& c, const JohnState& seed, int Nmax, double tol = 1e-8) {
  if (Nmax < 1) throw std::invalid_argument("detect_period: Nmax must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("detect_period: tol must be positive");
  PeriodResult r;
  JohnState s = seed;
  s.parity = Parity::NextVertical;
  for (int n = 1; n <= Nmax; ++n) {
    s = john_map(c, s);
    r.tangent = r.tangent || s.tangent;
    const double d = state_distance(s, seed);
    r.min_distance = std::min(r.min_distance, d);
    if (d < tol) {
      r.closed = true;
      r.N = n;
      r.half_steps = 2 * n;
      r.return_distance = d;
      return r;
    }
  }
  return r;
}

struct OrbitRecord {
  /// M1, M2, ... one entry per involution.
  std::vector<JohnState> states;
  PeriodResult closure;
  double max_residual = 0;
  bool tangent = false;
};

/// Half-step orbit of `half_steps` involutions from the seed, with closure
/// detected over the first half_steps/2 applications of T.
template <class Curve>
OrbitRecord generate_orbit(const Curve& c, const JohnState& seed, std::size_t half_steps, double tol = 1e-8) {
  OrbitRecord rec;
  rec.states.reserve(half_steps + 1);
  JohnState s = seed;
  rec.states.push_back(s);
  auto residual = [&](const JohnState& p) { return std::fabs(eval_curve(c, p.x, p.y)) / curve_scale(c, p.x, p.y); };
  rec.max_residual = residual(s);
  for (std::size_t i = 0; i < half_steps; ++i) {
    s = half_step(c, s);
    rec.tangent = rec.tangent || s.tangent;
    rec.max_residual = std::max(rec.max_residual, residual(s));
    rec.states.push_back(s);
  }
  const int full = static_cast<int>(half_steps / 2);
  if (full >= 1 && seed.parity == Parity::NextVertical) {
    rec.closure.min_distance = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= full; ++n) {
      const double d = state_distance(rec.states[static_cast<std::size_t>(2 * n)], seed);
      rec.closure.min_distance = std::min(rec.closure.min_distance, d);
      if (d < tol) {
        rec.closure.closed = true;
        rec.closure.N = n;
        rec.closure.half_steps = 2 * n;
        rec.closure.return_distance = d;
        break;
      }
    }
  }
  rec.closure.tangent = rec.tangent;
  return rec;
}

/// CSV rows n,x,y,u,v with (u, v) the V-image.
inline void write_orbit_csv(std::ostream& os, const OrbitRecord& rec) {
  const auto old_precision = os.precision(17);
  os << "n,x,y,u,v\n";
  for (std::size_t n = 0; n < rec.states.size(); ++n) {
    const auto& s = rec.states[n];
    const auto [u, v] = v_transform(s.x, s.y);
    os << n << ',' << s.x << ',' << s.y << ',' << u << ',' << v << '\n';
  }
  os.precision(old_precision);
}

/// A point on the upper (larger |y|) or lower branch above x. Throws when
/// x is outside the oval's x-extent.
inline JohnState point_on_curve(const EulerBaxterCurve& c, double x, bool larger_root = true) {
  const auto [r1, r2] = solve_y(c, x);
  if (std::isnan(r1)) throw std::domain_error("point_on_curve: no real point above x");
  const double y = (std::fabs(r1) >= std::fabs(r2)) == larger_root ? r1 : r2;
  return {x, y, Parity::NextVertical, false};
}

/// Maps t in [0, 1] across the oval's x-extent (endpoints excluded by a
/// small margin to stay off the vertical tangents).
inline JohnState oval_point(const EulerBaxterCurve& c, double t, bool larger_root = true) {
  const auto [lo, hi] = oval_x_range(c);
  const double margin = 1e-6 * (hi - lo);
  const double x = lo + margin + std::clamp(t, 0.0, 1.0) * (hi - lo - 2 * margin);
  return point_on_curve(c, x, larger_root);
}

}  // namespace poncelet
