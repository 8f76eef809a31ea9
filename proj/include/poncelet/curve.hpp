#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "poncelet/polynomial.hpp"
#include "poncelet/rational.hpp"

namespace poncelet {

/// x²y² + 1 + a(x²+y²) + 2bxy = 0.
template <class T>
struct EulerBaxter {
  T a{};
  T b{};

  bool bounded() const { return a > T(0); }
  /// (|b| - a)² > 1.
  bool nonvanishing() const {
    const T d = abs_value(b) - a;
    return d * d > T(1);
  }
  bool valid() const { return bounded() && nonvanishing(); }
  /// For a > 0 the real locus is nonempty iff |b| > a + 1.
  bool has_real_oval() const { return bounded() && abs_value(b) > a + T(1); }

  /// Name of the first violated predicate, empty when valid.
  std::string violated_predicate() const {
    if (!bounded()) return "a > 0";
    if (!nonvanishing()) return "(|b| - a)^2 > 1";
    return {};
  }
};

using EulerBaxterCurve = EulerBaxter<double>;
using ExactCurve = EulerBaxter<Rational>;

inline EulerBaxterCurve to_double(const ExactCurve& c) { return {c.a.to_double(), c.b.to_double()}; }

template <class T>
T eval_curve(const EulerBaxter<T>& c, const T& x, const T& y) {
  return x * x * y * y + T(1) + c.a * (x * x + y * y) + T(2) * c.b * x * y;
}

/// Sum of the absolute values of the terms, the natural scale for residuals.
inline double curve_scale(const EulerBaxterCurve& c, double x, double y) {
  return x * x * y * y + 1.0 + std::fabs(c.a) * (x * x + y * y) + 2.0 * std::fabs(c.b * x * y);
}

/// Coefficients (A, B, C) of A t² + B t + C.
struct Quadratic {
  double A = 0, B = 0, C = 0;
};

/// The curve as a quadratic in y at fixed x.
inline Quadratic quad_in_y(const EulerBaxterCurve& c, double x) {
  return {x * x + c.a, 2.0 * c.b * x, 1.0 + c.a * x * x};
}
inline Quadratic quad_in_x(const EulerBaxterCurve& c, double y) { return quad_in_y(c, y); }

inline std::pair<double, double> gradient(const EulerBaxterCurve& c, double x, double y) {
  return {2.0 * x * y * y + 2.0 * c.a * x + 2.0 * c.b * y, 2.0 * x * x * y + 2.0 * c.a * y + 2.0 * c.b * x};
}

/// Σ a_ik x^i y^k with 0 <= i, k <= 2.
struct GeneralBiquadratic {
  std::array<std::array<double, 3>, 3> coeff{};

  static GeneralBiquadratic from(const EulerBaxterCurve& c) {
    GeneralBiquadratic g;
    g.coeff[0][0] = 1.0;
    g.coeff[2][0] = c.a;
    g.coeff[0][2] = c.a;
    g.coeff[1][1] = 2.0 * c.b;
    g.coeff[2][2] = 1.0;
    return g;
  }

  bool valid() const {
    bool any = false, quad_x = false, quad_y = false;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        if (coeff[i][k] != 0.0) any = true;
      }
      if (coeff[2][i] != 0.0) quad_x = true;
      if (coeff[i][2] != 0.0) quad_y = true;
    }
    return any && quad_x && quad_y;
  }
};

inline double eval_curve(const GeneralBiquadratic& g, double x, double y) {
  const double xs[3] = {1.0, x, x * x}, ys[3] = {1.0, y, y * y};
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) s += g.coeff[i][k] * xs[i] * ys[k];
  }
  return s;
}

inline double curve_scale(const GeneralBiquadratic& g, double x, double y) {
  const double xs[3] = {1.0, std::fabs(x), x * x}, ys[3] = {1.0, std::fabs(y), y * y};
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) s += std::fabs(g.coeff[i][k]) * xs[i] * ys[k];
  }
  return s;
}

inline Quadratic quad_in_y(const GeneralBiquadratic& g, double x) {
  const double xs[3] = {1.0, x, x * x};
  Quadratic q;
  for (int i = 0; i < 3; ++i) {
    q.C += g.coeff[i][0] * xs[i];
    q.B += g.coeff[i][1] * xs[i];
    q.A += g.coeff[i][2] * xs[i];
  }
  return q;
}

inline Quadratic quad_in_x(const GeneralBiquadratic& g, double y) {
  const double ys[3] = {1.0, y, y * y};
  Quadratic q;
  for (int k = 0; k < 3; ++k) {
    q.C += g.coeff[0][k] * ys[k];
    q.B += g.coeff[1][k] * ys[k];
    q.A += g.coeff[2][k] * ys[k];
  }
  return q;
}

inline std::pair<double, double> gradient(const GeneralBiquadratic& g, double x, double y) {
  const Quadratic qy = quad_in_y(g, x), qx = quad_in_x(g, y);
  return {2.0 * qx.A * x + qx.B, 2.0 * qy.A * y + qy.B};
}

/// (x, y) -> (x + y, xy).
inline std::pair<double, double> v_transform(double x, double y) { return {x + y, x * y}; }

/// x-extent [sqrt(k), 1/sqrt(k)] of the oval in the quadrant it occupies,
/// k = σ - sqrt(σ² - 1), σ = (b² - a² - 1)/(2a). Requires has_real_oval().
inline std::pair<double, double> oval_x_range(const EulerBaxterCurve& c) {
  if (!c.has_real_oval()) throw std::domain_error("oval_x_range: curve has no real oval");
  const double sigma = (c.b * c.b - c.a * c.a - 1.0) / (2.0 * c.a);
  const double k = sigma - std::sqrt(sigma * sigma - 1.0);
  return {std::sqrt(k), 1.0 / std::sqrt(k)};
}

/// The two y with (x, y) on the curve; NaN pair when x is outside the oval.
inline std::pair<double, double> solve_y(const EulerBaxterCurve& c, double x) {
  const Quadratic q = quad_in_y(c, x);
  const double disc = q.B * q.B - 4.0 * q.A * q.C;
  if (disc < 0) return {std::nan(""), std::nan("")};
  // stable pair: larger-magnitude root by the sum, the other by the product
  const double r1 = (-q.B - std::copysign(std::sqrt(disc), q.B)) / (2.0 * q.A);
  const double r2 = (r1 != 0.0) ? q.C / (q.A * r1) : 0.0;
  return {r1, r2};
}

// ---------------------------------------------------------------------------
// Projective conics over (ξ0, ξ1, ξ2) = (1, u, v).

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
T dot(const Vec3<T>& p, const Vec3<T>& q) {
  return p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& p, const Vec3<T>& q) {
  return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

template <class T>
Vec3<T> mat_vec(const Mat3<T>& m, const Vec3<T>& p) {
  Vec3<T> r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2];
  return r;
}

template <class T>
T quadratic_form(const Mat3<T>& m, const Vec3<T>& p, const Vec3<T>& q) {
  return dot(p, mat_vec(m, q));
}

template <class T>
T det3(const Mat3<T>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Adjugate (transposed cofactor matrix); for a conic this is its dual.
template <class T>
Mat3<T> adjugate(const Mat3<T>& m) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
    }
  }
  return r;
}

template <class T>
struct BasicConic {
  Mat3<T> M{};

  bool symmetric() const {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (!(M[i][j] == M[j][i])) return false;
      }
    }
    return true;
  }
  T determinant() const { return det3(M); }
};

using Conic = BasicConic<double>;

template <class T>
BasicConic<double> to_double(const BasicConic<T>& c) {
  BasicConic<double> r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.M[i][j] = to_double(c.M[i][j]);
  }
  return r;
}

/// ξ1² - 4 ξ0 ξ2 = 0, the parabola v = u²/4.
template <class T>
BasicConic<T> parabola_conic() {
  BasicConic<T> c;
  c.M[0][2] = c.M[2][0] = T(-2);
  c.M[1][1] = T(1);
  return c;
}

template <class T>
struct QuadricImage {
  BasicConic<T> conic;
  /// (b - a)² - 1 < 0 with a > 0: sum of squares equal to a negative number.
  bool real_empty = false;
};

/// v² + a u² + 2(b - a) v + 1 = 0.
template <class T>
QuadricImage<T> image_quadric(const EulerBaxter<T>& c) {
  if (!c.bounded()) throw std::domain_error("image_quadric: curve violates a > 0");
  QuadricImage<T> q;
  const T d = c.b - c.a;
  q.conic.M = Mat3<T>{{{T(1), T(0), d}, {T(0), c.a, T(0)}, {d, T(0), T(1)}}};
  q.real_empty = d * d - T(1) < T(0);
  return q;
}

template <class T>
struct BasicPencil {
  BasicConic<T> A;  // parabola
  BasicConic<T> B;  // image quadric
  Polynomial<T> f;  // det(A - λB)
  bool real_empty = false;
};

using ConicPencil = BasicPencil<double>;
using ExactPencil = BasicPencil<Rational>;

/// det(A - λB) expanded as a polynomial in λ.
template <class T>
Polynomial<T> pencil_determinant(const Mat3<T>& A, const Mat3<T>& B) {
  Mat3<Polynomial<T>> m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = Polynomial<T>{A[i][j], -B[i][j]};
  }
  return det3(m);
}

template <class T>
BasicPencil<T> build_pencil(const EulerBaxter<T>& c) {
  const QuadricImage<T> q = image_quadric(c);
  BasicPencil<T> p;
  p.A = parabola_conic<T>();
  p.B = q.conic;
  p.f = pencil_determinant(p.A.M, p.B.M);
  p.real_empty = q.real_empty;
  return p;
}

inline ConicPencil to_double(const ExactPencil& p) {
  return {to_double(p.A), to_double(p.B), to_double(p.f), p.real_empty};
}

}  // namespace poncelet
