#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poncelet/curve.hpp"
#include "poncelet/john.hpp"

namespace poncelet {

using Point3 = Vec3<double>;
using Line3 = Vec3<double>;

inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }

inline Point3 normalized(const Point3& p) {
  const double n = norm(p);
  if (n == 0.0) throw std::domain_error("normalized: zero projective vector");
  return {p[0] / n, p[1] / n, p[2] / n};
}

/// Distance between projective points: min(|p - q|, |p + q|) after
/// normalization to the unit sphere.
inline double chordal_distance(const Point3& p, const Point3& q) {
  const Point3 a = normalized(p), b = normalized(q);
  double dm = 0, dp = 0;
  for (int i = 0; i < 3; ++i) {
    dm += (a[i] - b[i]) * (a[i] - b[i]);
    dp += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(dm, dp));
}

inline Point3 affine_point(double u, double v) { return {1.0, u, v}; }

/// (u, v) of a projective point with ξ0 != 0.
inline std::pair<double, double> affine(const Point3& p) {
  if (p[0] == 0.0) throw std::domain_error("affine: point at infinity");
  return {p[1] / p[0], p[2] / p[0]};
}

/// The tangent v = x0 u - x0² of the parabola v = u²/4.
inline Line3 parabola_tangent(double x0) { return {x0 * x0, -x0, 1.0}; }

struct TangentPair {
  Line3 first{};
  Line3 second{};
  /// P lies on the conic: both tangents coincide.
  bool on_conic = false;
};

/// The two lines through P tangent to D, from the dual conic adj(D).
inline TangentPair tangents_from(const Point3& P, const Conic& D) {
  const Mat3<double> dual = adjugate(D.M);
  // two independent lines through P: P × e_i for the axes other than P's largest component
  int big = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(P[i]) > std::fabs(P[big])) big = i;
  }
  Point3 e1{}, e2{};
  e1[(big + 1) % 3] = 1.0;
  e2[(big + 2) % 3] = 1.0;
  const Line3 l1 = cross(P, e1), l2 = cross(P, e2);
  // (s l1 + t l2)ᵀ dual (s l1 + t l2) = α s² + 2β s t + γ t²
  const double alpha = quadratic_form(dual, l1, l1);
  const double beta = quadratic_form(dual, l1, l2);
  const double gamma = quadratic_form(dual, l2, l2);
  const double disc = beta * beta - alpha * gamma;
  const double scale = beta * beta + std::fabs(alpha * gamma);
  TangentPair out;
  if (disc < -1e-12 * scale) throw std::domain_error("tangents_from: point is inside the conic, no real tangents");
  out.on_conic = disc <= 1e-12 * scale;
  const double root = std::sqrt(std::max(disc, 0.0));
  // roots of α s² + 2β s t + γ t² in (s : t), chosen to avoid cancellation
  auto line = [&](double s, double t) {
    Line3 l{};
    for (int i = 0; i < 3; ++i) l[i] = s * l1[i] + t * l2[i];
    return normalized(l);
  };
  const double w = -beta - std::copysign(root, beta);
  if (w == 0.0) {
    // β = 0 and αγ = 0: one basis line is itself tangent
    out.first = out.second = alpha == 0.0 ? line(1.0, 0.0) : line(0.0, 1.0);
  } else {
    // s/t = w/α, and the other root from the product γ/α
    out.first = line(w, alpha);
    out.second = line(gamma, w);
  }
  return out;
}

/// Point of contact of a tangent line with D: the pole adj(D)·ℓ.
inline Point3 tangency_point(const Line3& l, const Conic& D) { return mat_vec(adjugate(D.M), l); }

struct PonceletState {
  Point3 point{};
  /// Tangent used to arrive at `point`; empty for an initial state.
  std::optional<Line3> incoming;
  /// The chord through the last step touched B (double intersection).
  bool chord_tangent = false;
};

/// Next vertex: leave `point` along the tangent other than `incoming` (for an
/// initial state, `branch` 0 or 1 picks one) and return the second
/// intersection with B.
inline PonceletState poncelet_step(const PonceletState& s, const ConicPencil& pencil, int branch = 0) {
  const TangentPair tp = tangents_from(s.point, pencil.A);
  Line3 chosen;
  if (s.incoming) {
    chosen = chordal_distance(tp.first, *s.incoming) >= chordal_distance(tp.second, *s.incoming) ? tp.first : tp.second;
  } else {
    chosen = branch == 0 ? tp.first : tp.second;
  }
  const Point3 P = normalized(s.point);
  const Point3 R = cross(chosen, P);  // a second point on the chosen line
  const double bpr = quadratic_form(pencil.B.M, P, R);
  const double brr = quadratic_form(pencil.B.M, R, R);
  PonceletState out;
  out.incoming = chosen;
  Point3 next{};
  for (int i = 0; i < 3; ++i) next[i] = brr * P[i] - 2.0 * bpr * R[i];
  if (norm(next) <= 1e-14 * (std::fabs(brr) + std::fabs(bpr))) {
    out.chord_tangent = true;
    next = P;
  }
  out.point = normalized(next);
  return out;
}

/// Initial Poncelet state matching a John state: the point is V(x, y) and the
/// incoming line is the tangent the next John move does not travel along.
inline PonceletState from_john(const JohnState& s) {
  const auto [u, v] = v_transform(s.x, s.y);
  PonceletState p;
  p.point = normalized(affine_point(u, v));
  // a vertical move keeps x, so it travels along the tangent of x and arrives along that of y
  p.incoming = normalized(parabola_tangent(s.parity == Parity::NextVertical ? s.y : s.x));
  return p;
}

struct ClosureResult {
  bool closed = false;
  /// Poncelet period N_P; 0 when open.
  int N = 0;
  double return_distance = std::numeric_limits<double>::infinity();
  double min_distance = std::numeric_limits<double>::infinity();
  bool chord_tangent = false;
};

/// Smallest N_P <= Nmax with chordal distance between M_{N_P+1} and M_1 below tol.
inline ClosureResult detect_closure(const PonceletState& seed, const ConicPencil& pencil, int Nmax, double tol = 1e-8,
                                    int branch = 0) {
  if (Nmax < 1) throw std::invalid_argument("detect_closure: Nmax must be >= 1");
  ClosureResult r;
  PonceletState s = seed;
  for (int n = 1; n <= Nmax; ++n) {
    s = poncelet_step(s, pencil, branch);
    r.chord_tangent = r.chord_tangent || s.chord_tangent;
    const double d = chordal_distance(s.point, seed.point);
    r.min_distance = std::min(r.min_distance, d);
    if (d < tol) {
      r.closed = true;
      r.N = n;
      r.return_distance = d;
      return r;
    }
  }
  return r;
}

/// John period implied by a Poncelet period: odd N_P maps to itself,
/// N_P = 2N maps to N.
inline int john_period_from_poncelet(int NP) { return NP % 2 == 1 ? NP : NP / 2; }

inline std::vector<PonceletState> poncelet_trajectory(const PonceletState& seed, const ConicPencil& pencil,
                                                      std::size_t steps, int branch = 0) {
  std::vector<PonceletState> out;
  out.reserve(steps + 1);
  out.push_back(seed);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(poncelet_step(out.back(), pencil, branch));
  return out;
}

/// CSV rows n,u,v,line0,line1,line2 (line empty for the initial state).
inline void write_trajectory_csv(std::ostream& os, const std::vector<PonceletState>& traj) {
  const auto old_precision = os.precision(17);
  os << "n,u,v,line0,line1,line2\n";
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const auto [u, v] = affine(traj[n].point);
    os << n << ',' << u << ',' << v;
    if (traj[n].incoming) {
      const Line3& l = *traj[n].incoming;
      os << ',' << l[0] << ',' << l[1] << ',' << l[2] << '\n';
    } else {
      os << ",,,\n";
    }
  }
  os.precision(old_precision);
}

}  // namespace poncelet
