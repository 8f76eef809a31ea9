#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "poncelet/curve.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/hankel.hpp"
#include "poncelet/john.hpp"

namespace poncelet {

struct PropagationReport {
  bool closed = false;
  int period = 0;
  /// Closed orbit: position plus value mismatch when the loop returns to the seed.
  double loop_defect = 0;
  /// Distinct x values on which f is pinned.
  std::size_t pinned = 0;
  /// Largest gap between pinned x values across the oval's x-extent.
  double max_x_gap = 0;
  /// Open orbit whose pinned set is a net of width `net`: f is forced constant.
  bool forced_constant = false;
  bool tangent = false;
};

/// Pins f(x0) = 1 and propagates f(x) + g(y) = 0 along the John orbit: a
/// vertical move shares x and pins g at the new y, a horizontal move shares y
/// and pins f at the new x.
inline PropagationReport propagate_boundary_values(const EulerBaxterCurve& c, const JohnState& seed,
                                                   std::size_t steps, double tol = 1e-9, double net = 1e-2) {
  PropagationReport rep;
  std::vector<double> xs{seed.x};
  JohnState s = seed;
  s.parity = Parity::NextVertical;
  double f_val = 1.0, g_val = -f_val;
  for (std::size_t n = 1; n <= steps; ++n) {
    s = involution_vertical(c, s);
    g_val = -f_val;
    s = involution_horizontal(c, s);
    f_val = -g_val;
    rep.tangent = rep.tangent || s.tangent;
    const double d = state_distance(s, seed);
    if (d < tol) {
      rep.closed = true;
      rep.period = static_cast<int>(n);
      rep.loop_defect = d + std::fabs(f_val - 1.0);
      break;
    }
    xs.push_back(s.x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> distinct;
  for (double x : xs) {
    if (distinct.empty() || x - distinct.back() > tol) distinct.push_back(x);
  }
  rep.pinned = distinct.size();
  auto [lo, hi] = oval_x_range(c);
  if (seed.x < 0) std::tie(lo, hi) = std::pair{-hi, -lo};
  double gap = distinct.front() - lo;
  for (std::size_t i = 1; i < distinct.size(); ++i) gap = std::max(gap, distinct[i] - distinct[i - 1]);
  gap = std::max(gap, hi - distinct.back());
  rep.max_x_gap = gap;
  rep.forced_constant = !rep.closed && gap < net;
  return rep;
}

/// Φ(x, y) = f(x) + g(y) with f(w(s)) = h(s), g(±w(s + η)) = g_factor · h(s),
/// h(s) = cos(π m N s / K'). g_factor is -1 for the Dirichlet solution and +1
/// for its Neumann partner Ψ = f - g.
struct SeparableSolution {
  EllipticParams params;
  int N = 0;
  int m = 0;
  double g_factor = -1.0;
  double boundary_residual = 0;
  double interior_magnitude = 0;
  /// Only for Neumann partners: max |conormal trace| on the boundary.
  double conormal_trace = 0;
  /// max - min of the solution over the interior grid.
  double interior_variation = 0;
};

namespace detail {

inline double harmonic(const SeparableSolution& s, double t) {
  return std::cos(std::numbers::pi * s.m * s.N * t / s.params.Kprime);
}
inline double harmonic_prime(const SeparableSolution& s, double t) {
  const double w = std::numbers::pi * s.m * s.N / s.params.Kprime;
  return -w * std::sin(w * t);
}

/// d/dx h(s(x) - shift) at s(x) = t in [0, K'], with the fold limits
/// h''/w'' where w'(t) = 0 (h(· - shift) is even about both folds).
inline double fold_ratio(const SeparableSolution& s, double t, double shift) {
  const double k = s.params.k, Kp = s.params.Kprime;
  const double kp = complementary_modulus(k);
  const double w = std::numbers::pi * s.m * s.N / Kp;
  if (std::fabs(t) < 1e-7) return -w * w * std::cos(w * shift) / (std::sqrt(k) * kp * kp);
  if (std::fabs(t - Kp) < 1e-7) return -w * w * std::cos(w * (Kp - shift)) / (-std::sqrt(k) * kp * kp / k);
  return harmonic_prime(s, t - shift) / oval_w_prime(t, k);
}

inline int oval_quadrant_y(const SeparableSolution& s) { return params_b_sign(s.params) < 0 ? 1 : -1; }

}  // namespace detail

inline double solution_f(const SeparableSolution& s, double x) {
  return detail::harmonic(s, oval_s(std::fabs(x), s.params.k));
}

inline double solution_g(const SeparableSolution& s, double y) {
  return s.g_factor * detail::harmonic(s, oval_s(std::fabs(y), s.params.k) - params_eta(s.params));
}

inline double solution_value(const SeparableSolution& s, double x, double y) {
  return solution_f(s, x) + solution_g(s, y);
}

struct InteriorGrid {
  std::vector<double> x, y;
};

/// Grid points of the oval's bounding box with F(x, y) < 0.
inline InteriorGrid interior_grid(const EulerBaxterCurve& c, int n) {
  const auto [lo, hi] = oval_x_range(c);
  const double ysign = c.b < 0 ? 1.0 : -1.0;
  InteriorGrid g;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double y = ysign * (lo + (hi - lo) * (j + 0.5) / n);
      if (eval_curve(c, x, y) < 0) {
        g.x.push_back(x);
        g.y.push_back(y);
      }
    }
  }
  return g;
}

/// Boundary samples: for x across the oval, both roots y of the curve.
inline std::vector<std::pair<double, double>> boundary_samples(const EulerBaxterCurve& c, int n) {
  const auto [lo, hi] = oval_x_range(c);
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    auto [y1, y2] = solve_y(c, x);
    if (std::isnan(y1)) {
      // rounding at the fold: both roots collapse to -B/(2A)
      const Quadratic q = quad_in_y(c, x);
      y1 = y2 = -q.B / (2 * q.A);
    }
    out.emplace_back(x, y1);
    out.emplace_back(x, y2);
  }
  return out;
}

inline void measure_solution(SeparableSolution& s, const EulerBaxterCurve& c, int samples = 400) {
  double res = 0;
  for (const auto& [x, y] : boundary_samples(c, samples)) res = std::max(res, std::fabs(solution_value(s, x, y)));
  s.boundary_residual = res;
  const InteriorGrid g = interior_grid(c, 60);
  double mag = 0, mn = INFINITY, mx = -INFINITY;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double v = solution_value(s, g.x[i], g.y[i]);
    mag = std::max(mag, std::fabs(v));
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  s.interior_magnitude = mag;
  s.interior_variation = g.x.empty() ? 0.0 : mx - mn;
}

/// Dirichlet solution for harmonic m on a curve with lattice period N. h
/// is even with period 2K'/N, which is exactly what makes f and g single
/// valued under both folds of the double cover. ‖h‖∞ = 1.
inline SeparableSolution build_nontrivial_solution(const EllipticParams& p, int m, int Nmax = 1000) {
  if (m < 1) throw std::invalid_argument("build_nontrivial_solution: harmonic index must be >= 1");
  const LatticeResult lat = lattice_period_test(p, Nmax);
  if (!lat.rational) throw std::domain_error("build_nontrivial_solution: parameters are not periodic (transitive curve)");
  SeparableSolution s;
  s.params = p;
  s.N = lat.N;
  s.m = m;
  s.g_factor = -1.0;
  measure_solution(s, construct_curve(p.k, p.q));
  return s;
}

/// Interior-sample Gram determinant of unit-normalized solutions.
inline double gram_determinant(const std::vector<SeparableSolution>& sols, const EulerBaxterCurve& c, int grid = 60) {
  const InteriorGrid g = interior_grid(c, grid);
  std::vector<std::vector<double>> v;
  for (const auto& s : sols) {
    std::vector<double> col;
    double n2 = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      col.push_back(solution_value(s, g.x[i], g.y[i]));
      n2 += col.back() * col.back();
    }
    const double n = std::sqrt(n2);
    if (n > 0) {
      for (double& x : col) x /= n;
    }
    v.push_back(std::move(col));
  }
  SquareMatrix<double> G(sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    for (std::size_t j = 0; j < sols.size(); ++j) {
      double d = 0;
      for (std::size_t t = 0; t < g.x.size(); ++t) d += v[i][t] * v[j][t];
      G(i, j) = d;
    }
  }
  return determinant(G);
}

/// Max over the boundary of Φ_x n2 + Φ_y n1 = f'(x) x'(t) - g'(y) y'(t),
/// n = (-y', x'), sampled along the oval parameter t.
inline double conormal_trace(const SeparableSolution& s, int samples = 2000) {
  const double k = s.params.k, Kp = s.params.Kprime;
  const double eta = params_eta(s.params);
  const double ys = detail::oval_quadrant_y(s);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * Kp * (i + 0.25) / samples;
    const double x = oval_w(t, k), y = ys * oval_w(t + eta, k);
    const double xt = oval_w_prime(t, k), yt = ys * oval_w_prime(t + eta, k);
    const double fp = detail::fold_ratio(s, oval_s(x, k), 0.0);
    const double gp = s.g_factor * ys * detail::fold_ratio(s, oval_s(std::fabs(y), k), eta);
    worst = std::max(worst, std::fabs(fp * xt - gp * yt));
  }
  return worst;
}

/// Ψ = f - g. Along the boundary f'x' = -g'y', so the conormal trace of Ψ
/// vanishes. Throws when the input's Dirichlet residual is not small or Ψ is
/// constant.
inline SeparableSolution dirichlet_to_neumann(const SeparableSolution& s, double residual_gate = 1e-8) {
  if (!(s.boundary_residual < residual_gate)) {
    throw std::domain_error("dirichlet_to_neumann: input does not satisfy the Dirichlet condition");
  }
  SeparableSolution out = s;
  out.g_factor = -s.g_factor;
  const EulerBaxterCurve c = construct_curve(s.params.k, s.params.q);
  measure_solution(out, c);
  out.boundary_residual = s.boundary_residual;
  out.conormal_trace = conormal_trace(out);
  if (!(out.interior_variation > 0.1)) throw std::domain_error("dirichlet_to_neumann: Ψ is constant");
  return out;
}

/// CSV rows x,y,phi over the interior grid.
inline void write_solution_csv(std::ostream& os, const SeparableSolution& s, const EulerBaxterCurve& c, int grid = 60) {
  const auto old_precision = os.precision(17);
  os << "x,y,phi\n";
  const InteriorGrid g = interior_grid(c, grid);
  for (std::size_t i = 0; i < g.x.size(); ++i) os << g.x[i] << ',' << g.y[i] << ',' << solution_value(s, g.x[i], g.y[i]) << '\n';
  os.precision(old_precision);
}

}  // namespace poncelet
