#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poncelet/curve.hpp"
#include "poncelet/hankel.hpp"
#include "poncelet/polynomial.hpp"
#include "poncelet/power_series.hpp"
#include "poncelet/rational.hpp"

namespace poncelet {

struct CayleyVerdict {
  int N = 0;
  /// H^(1)_{N/2} or H^(2)_{(N-1)/2} of the normalized series.
  Rational det;
  /// Exact vanishing.
  bool zero = false;
  /// det / sqrt|H_{N-2} H_{N+2}| within the same parity family; a
  /// scale-free size of the determinant, 0 when det is exactly 0.
  double nu = 0;
};

struct CayleyReport {
  Polynomial<Rational> f;
  PowerSeries<Rational> normalized_series;
  std::vector<CayleyVerdict> verdicts;
  /// Repeated root or deg f < 3: criterion inapplicable, no verdicts.
  bool degenerate = false;
  /// Smallest N with an exactly vanishing determinant.
  std::optional<int> exact_period;
  /// Smallest N with |nu| < tol.
  std::optional<int> numeric_period;
  double tol = 1e-8;
};

/// Discriminant of c3 λ³ + c2 λ² + c1 λ + c0.
inline Rational cubic_discriminant(const Polynomial<Rational>& f) {
  const Rational a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
  return Rational(18) * a * b * c * d - Rational(4) * b * b * b * d + b * b * c * c - Rational(4) * a * c * c * c -
         Rational(27) * a * a * d * d;
}

/// Truncation order serving determinants up to N = Nmax + 2 (nu needs the
/// next member of each family).
inline int cayley_truncation_order(int Nmax) { return std::max(2 * (Nmax / 2) + 1, Nmax + 1); }

/// Hankel ladder of √(f/f(0)) for N = 3..Nmax.
inline CayleyReport cayley_classify(const Polynomial<Rational>& f, int Nmax, double tol = 1e-8) {
  if (Nmax < 3) throw std::invalid_argument("cayley_classify: Nmax must be >= 3");
  if (f.coeff(0).is_zero()) throw std::domain_error("cayley_classify: f(0) = 0, cannot normalize");
  CayleyReport rep;
  rep.f = f;
  rep.tol = tol;
  rep.degenerate = f.degree() < 3 || cubic_discriminant(f).is_zero();
  if (rep.degenerate) return rep;

  const int order = cayley_truncation_order(Nmax);
  const Polynomial<Rational> g = f * (Rational(1) / f.coeff(0));
  rep.normalized_series = series_sqrt(PowerSeries<Rational>::from_polynomial(g, order), order);

  std::vector<Rational> H(static_cast<std::size_t>(Nmax) + 3);
  for (int N = 1; N <= Nmax + 2; ++N) H[static_cast<std::size_t>(N)] = closure_determinant(rep.normalized_series, N);

  for (int N = 3; N <= Nmax; ++N) {
    CayleyVerdict v;
    v.N = N;
    v.det = H[static_cast<std::size_t>(N)];
    v.zero = v.det.is_zero();
    if (!v.zero) {
      const Rational den = abs_value(H[static_cast<std::size_t>(N - 2)] * H[static_cast<std::size_t>(N + 2)]);
      // ratio formed exactly so tiny determinants do not underflow
      const double mag = den.is_zero() ? std::numeric_limits<double>::infinity()
                                       : std::sqrt((v.det * v.det / den).to_double());
      v.nu = v.det.sign() * mag;
    }
    if (v.zero && !rep.exact_period) rep.exact_period = N;
    if (std::fabs(v.nu) < tol && !rep.numeric_period) rep.numeric_period = N;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

inline CayleyReport cayley_classify(const ExactCurve& c, int Nmax, double tol = 1e-8) {
  return cayley_classify(build_pencil(c).f, Nmax, tol);
}

/// Float curves are converted exactly to rationals after snapping each
/// parameter to the simplest rational within `snap` (default 1e-12).
inline ExactCurve rationalize_curve(const EulerBaxterCurve& c, double snap = 1e-12) {
  return {rationalize(c.a, snap), rationalize(c.b, snap)};
}

inline CayleyReport cayley_classify(const EulerBaxterCurve& c, int Nmax, double tol = 1e-8) {
  return cayley_classify(rationalize_curve(c), Nmax, tol);
}

/// Period reported by a ladder: the exact one when present, else the numeric one.
inline std::optional<int> cayley_period(const CayleyReport& r) {
  return r.exact_period ? r.exact_period : r.numeric_period;
}

/// The N-th determinant of the normalized series for curve (a, b).
inline Rational cayley_determinant(const ExactCurve& c, int N) {
  const Polynomial<Rational> f = build_pencil(c).f;
  const Polynomial<Rational> g = f * (Rational(1) / f.coeff(0));
  const int order = std::max(N, 2);
  return closure_determinant(series_sqrt(PowerSeries<Rational>::from_polynomial(g, order), order), N);
}

/// A curve on which the N-th determinant changes sign, bracketed in b.
struct ZeroBracket {
  Rational a;
  Rational b_lo;
  Rational b_hi;
  ExactCurve curve;  // at the bracket midpoint
};

/// Scans each row b_values at fixed a for sign changes of the N-th
/// determinant between neighbours (cells with an invalid curve are skipped)
/// and bisects each change in b down to `width`.
inline std::vector<ZeroBracket> cayley_zero_set_scan(const std::vector<Rational>& a_values,
                                                     const std::vector<Rational>& b_values, int N,
                                                     double width = 1e-12) {
  std::vector<ZeroBracket> out;
  for (const Rational& a : a_values) {
    std::optional<Rational> prev_b;
    int prev_sign = 0;
    for (const Rational& b : b_values) {
      const ExactCurve c{a, b};
      if (!c.valid()) {
        prev_b.reset();
        continue;
      }
      const int sign = cayley_determinant(c, N).sign();
      if (sign == 0) {
        out.push_back({a, b, b, c});
        prev_b.reset();
        continue;
      }
      if (prev_b && sign != prev_sign) {
        Rational lo = *prev_b, hi = b;
        int lo_sign = prev_sign;
        const Rational half(1, 2);
        bool exact = false;
        while (abs_value(hi - lo).to_double() > width) {
          const Rational mid = (lo + hi) * half;
          const int s = cayley_determinant(ExactCurve{a, mid}, N).sign();
          if (s == 0) {
            lo = hi = mid;
            exact = true;
            break;
          }
          if (s == lo_sign) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        const Rational mid = exact ? lo : (lo + hi) * half;
        out.push_back({a, lo < hi ? lo : hi, lo < hi ? hi : lo, ExactCurve{a, mid}});
      }
      prev_b = b;
      prev_sign = sign;
    }
  }
  return out;
}

}  // namespace poncelet
