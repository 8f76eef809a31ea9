#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poncelet/curve.hpp"

namespace poncelet {

using Complex = std::complex<double>;

struct KResult {
  double value = 0;
  int iterations = 0;
};

/// K(k) = π / (2 AGM(1, √(1 - k²))).
inline KResult complete_K_agm(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("complete_K: modulus must satisfy 0 <= k < 1");
  double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k));
  int it = 0;
  while (std::fabs(a - b) > 1e-15 * a && it < 64) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    ++it;
  }
  return {std::numbers::pi / (2.0 * a), it};
}

inline double complete_K(double k) { return complete_K_agm(k).value; }

inline double complementary_modulus(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

/// F(φ, k) by the AGM with Landen angle doubling,
/// φ_{n+1} = φ_n + atan2(b_n sin φ_n, a_n cos φ_n) (unwrapped),
/// F = φ_N / (2^N a_N).
inline double incomplete_F(double phi, double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("incomplete_F: modulus must satisfy 0 <= k < 1");
  double a = 1.0, b = complementary_modulus(k);
  double ph = phi;
  double two_n = 1.0;
  for (int it = 0; it < 64 && std::fabs(a - b) > 1e-15 * a; ++it) {
    double d = std::atan2(b * std::sin(ph), a * std::cos(ph));
    d += 2.0 * std::numbers::pi * std::round((ph - d) / (2.0 * std::numbers::pi));
    ph += d;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    two_n *= 2.0;
  }
  return ph / (two_n * a);
}

template <class T>
struct SnCnDn {
  T sn{}, cn{}, dn{};
  /// |denominator| of the complex addition formula fell below 1e-300.
  bool near_pole = false;
};

/// Real argument, 0 <= k <= 1, by descending Landen transformation.
inline SnCnDn<double> jacobi_sn_cn_dn(double u, double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::domain_error("jacobi_sn_cn_dn: modulus must lie in [0, 1]");
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0, false};
  if (k == 1.0) {
    const double s = 1.0 / std::cosh(u);
    return {std::tanh(u), s, s, false};
  }
  // a_n, c_n of the AGM sequence
  std::array<double, 64> a{}, c{};
  a[0] = 1.0;
  double b = complementary_modulus(k);
  c[0] = k;
  int n = 0;
  while (std::fabs(c[n]) > 1e-15 * a[n] && n < 62) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  const double sn = std::sin(phi), cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - k * k * sn * sn), false};
}

/// Complex argument u = x + iy from the real-argument values at x (modulus k)
/// and y (modulus k') by the addition formulas.
inline SnCnDn<Complex> jacobi_sn_cn_dn(Complex u, double k) {
  if (!(k > 0.0 && k < 1.0)) {
    if (u.imag() == 0.0) {
      const auto r = jacobi_sn_cn_dn(u.real(), k);
      return {r.sn, r.cn, r.dn, false};
    }
    throw std::domain_error("jacobi_sn_cn_dn: complex argument needs 0 < k < 1");
  }
  const double kp = complementary_modulus(k);
  const double K = complete_K(k), Kp = complete_K(kp);
  // every function has periods 4K and 4iK'
  const double x = u.real() - 4.0 * K * std::floor(u.real() / (4.0 * K));
  const double y = u.imag() - 4.0 * Kp * std::floor(u.imag() / (4.0 * Kp));
  const auto r = jacobi_sn_cn_dn(x, k);
  const auto i = jacobi_sn_cn_dn(y, kp);
  const double s = r.sn, c = r.cn, d = r.dn;
  const double s1 = i.sn, c1 = i.cn, d1 = i.dn;
  const double den = c1 * c1 + k * k * s * s * s1 * s1;
  SnCnDn<Complex> out;
  if (std::fabs(den) < 1e-300) {
    out.near_pole = true;
    return out;
  }
  out.sn = Complex(s * d1, c * d * s1 * c1) / den;
  out.cn = Complex(c * c1, -s * d * s1 * d1) / den;
  out.dn = Complex(d * c1 * d1, -k * k * s * c * s1) / den;
  out.near_pole = std::fabs(den) < 1e-12;
  return out;
}

/// Parameters of x_n = √k sn(q(n - n0), k), y_n = √k sn(q(n - n0 + 1/2), k).
struct EllipticParams {
  double k = 0;
  Complex q;
  Complex n0;
  double K = 0;
  double Kprime = 0;
};

/// Step q for the bounded class: iθ for b < 0, 4K + iθ for b > 0 (the
/// half-period 2K of the half shift flips the sign of y).
inline Complex family_step(double K, double theta, int b_sign) {
  return b_sign < 0 ? Complex(0.0, theta) : Complex(4.0 * K, theta);
}

/// n0 placing index 0 at argument K + i s0, i.e. x_0 = √k nd(s0, k').
inline Complex phase_for(const Complex& q, double K, double s0) { return -Complex(K, s0) / q; }

/// The oval as x = w(s) = √k nd(s, k') = √k sn(K + is, k).
inline double oval_w(double s, double k) {
  return std::sqrt(k) / jacobi_sn_cn_dn(s, complementary_modulus(k)).dn;
}

/// dw/ds = √k k'² sn cn / dn² (functions of modulus k').
inline double oval_w_prime(double s, double k) {
  const double kp = complementary_modulus(k);
  const auto r = jacobi_sn_cn_dn(s, kp);
  return std::sqrt(k) * kp * kp * r.sn * r.cn / (r.dn * r.dn);
}

/// s in [0, K'] with w(s) = x, x in [√k, 1/√k] (clamped).
inline double oval_s(double x, double k) {
  const double kp = complementary_modulus(k);
  double sn2 = (1.0 - k / (x * x)) / (kp * kp);
  sn2 = std::clamp(sn2, 0.0, 1.0);
  return incomplete_F(std::asin(std::sqrt(sn2)), kp);
}

/// Inverse construction. Requires Re q ≡ 0 (mod 4K) and Im q ≢ 0 (mod 2K');
/// Re q ≡ 0 (mod 8K) gives b < 0, Re q ≡ 4K (mod 8K) gives b > 0.
inline EulerBaxterCurve construct_curve(double k, Complex q) {
  if (!(k > 0.0 && k < 1.0)) throw std::domain_error("construct_curve: modulus must satisfy 0 < k < 1");
  const double kp = complementary_modulus(k);
  const double K = complete_K(k), Kp = complete_K(kp);
  const double re_units = q.real() / (4.0 * K);
  const double re_int = std::round(re_units);
  if (std::fabs(re_units - re_int) > 1e-9) {
    throw std::domain_error("construct_curve: Re q must be a multiple of 4K (real steps do not give the bounded class)");
  }
  const int b_sign = (static_cast<long long>(re_int) % 2 == 0) ? -1 : 1;
  // η = θ/2 reduced to (0, K'); η and 2K' - η give the same curve
  double eta = std::fmod(std::fabs(q.imag()) / 2.0, 2.0 * Kp);
  if (eta > Kp) eta = 2.0 * Kp - eta;
  if (!(eta > 1e-12 * Kp && eta < Kp * (1.0 - 1e-12))) {
    throw std::domain_error("construct_curve: Im q must not be a multiple of 2K' (degenerate step)");
  }
  const double dn = jacobi_sn_cn_dn(eta / 2.0, kp).dn;
  const double T = k / (dn * dn);
  const double rho = 0.5 * (T + 1.0 / T);
  const double sigma = 0.5 * (k + 1.0 / k);
  const double a = (rho * rho - 1.0) / (2.0 * (sigma - rho));
  const double b = b_sign < 0 ? -(rho + a) : rho + a;
  return {a, b};
}

/// Parameters with John rotation number m/N: θ = 2K' m / N.
inline EllipticParams periodic_params(double k, int m, int N, int b_sign = -1) {
  if (N < 1 || m < 1) throw std::invalid_argument("periodic_params: need m, N >= 1");
  EllipticParams p;
  p.k = k;
  p.K = complete_K(k);
  p.Kprime = complete_K(complementary_modulus(k));
  p.q = family_step(p.K, 2.0 * p.Kprime * m / N, b_sign);
  p.n0 = phase_for(p.q, p.K, 0.0);
  return p;
}

/// (k, q) from (a, b). With ρ = |b| - a and T = ρ - √(ρ² - 1):
/// k = σ - √(σ² - 1), σ = (b² - a² - 1)/(2a), and dn(η/2, k') = √(k/T), θ = 2η.
inline EllipticParams fit_params(const EulerBaxterCurve& c) {
  if (!c.valid()) throw std::domain_error("fit_params: curve violates " + c.violated_predicate());
  if (!c.has_real_oval()) throw std::domain_error("fit_params: curve has no real oval (|b| <= a + 1)");
  EllipticParams p;
  const double sigma = (c.b * c.b - c.a * c.a - 1.0) / (2.0 * c.a);
  p.k = sigma - std::sqrt(sigma * sigma - 1.0);
  const double kp = complementary_modulus(p.k);
  p.K = complete_K(p.k);
  p.Kprime = complete_K(kp);
  const double rho = std::fabs(c.b) - c.a;
  const double T = rho - std::sqrt(rho * rho - 1.0);
  double sin2 = (1.0 - p.k / T) / (kp * kp);
  sin2 = std::clamp(sin2, 0.0, 1.0);
  const double half_eta = incomplete_F(std::asin(std::sqrt(sin2)), kp);
  p.q = family_step(p.K, 4.0 * half_eta, c.b < 0 ? -1 : 1);
  p.n0 = phase_for(p.q, p.K, 0.0);
  return p;
}

/// b sign encoded by the step.
inline int params_b_sign(const EllipticParams& p) {
  const long long re = std::llround(p.q.real() / (4.0 * p.K));
  return re % 2 == 0 ? -1 : 1;
}

/// Half shift η = θ/2 reduced to [0, K'].
inline double params_eta(const EllipticParams& p) {
  double eta = std::fmod(std::fabs(p.q.imag()) / 2.0, 2.0 * p.Kprime);
  return eta > p.Kprime ? 2.0 * p.Kprime - eta : eta;
}

struct SequencePoint {
  long n = 0;
  double x = 0;
  double y = 0;
  /// Largest imaginary part dropped from the complex evaluation.
  double imag = 0;
  bool near_pole = false;
};

inline SequencePoint sequence_point(const EllipticParams& p, double n) {
  const double sk = std::sqrt(p.k);
  const auto xv = jacobi_sn_cn_dn(p.q * (Complex(n, 0.0) - p.n0), p.k);
  const auto yv = jacobi_sn_cn_dn(p.q * (Complex(n + 0.5, 0.0) - p.n0), p.k);
  SequencePoint out;
  out.x = sk * xv.sn.real();
  out.y = sk * yv.sn.real();
  out.imag = sk * std::max(std::fabs(xv.sn.imag()), std::fabs(yv.sn.imag()));
  out.near_pole = xv.near_pole || yv.near_pole;
  return out;
}

/// (x_n, y_n) for n in [n_begin, n_end).
inline std::vector<SequencePoint> generate_sequence(const EllipticParams& p, long n_begin, long n_end) {
  std::vector<SequencePoint> out;
  for (long n = n_begin; n < n_end; ++n) {
    SequencePoint s = sequence_point(p, static_cast<double>(n));
    s.n = n;
    out.push_back(s);
  }
  return out;
}

/// Sets n0 so that (x_0, y_0) is the oval point (x0, y0).
inline EllipticParams align_phase(EllipticParams p, double x0, double y0) {
  const double s = oval_s(std::fabs(x0), p.k);
  const double eta = params_eta(p);
  const int sign = params_b_sign(p);
  // w is even: x0 fixes s0 up to sign, y0 = ±w(s0 + η) picks it
  const double cand[2] = {s, -s};
  double best = cand[0], best_err = INFINITY;
  for (double s0 : cand) {
    const double y = (sign < 0 ? 1.0 : -1.0) * oval_w(s0 + eta, p.k);
    const double err = std::fabs(y - y0);
    if (err < best_err) {
      best_err = err;
      best = s0;
    }
  }
  p.n0 = phase_for(p.q, p.K, best);
  return p;
}

struct LatticeResult {
  bool rational = false;
  int N = 0;
  long m1 = 0;
  long m2 = 0;
  /// Smallest max(|m1 - round m1|, |m2 - round m2|) seen; the best
  /// approximation when irrational.
  double best_deviation = INFINITY;
  int best_N = 0;
};

/// Smallest N <= Nmax with qN = 4K m1 + 2iK' m2 for integers m1, m2.
inline LatticeResult lattice_period_test(const EllipticParams& p, int Nmax, double tol = 1e-9) {
  if (Nmax < 1) throw std::invalid_argument("lattice_period_test: Nmax must be >= 1");
  LatticeResult r;
  const double u1 = p.q.real() / (4.0 * p.K), u2 = p.q.imag() / (2.0 * p.Kprime);
  for (int N = 1; N <= Nmax; ++N) {
    const double x1 = u1 * N, x2 = u2 * N;
    const double dev = std::max(std::fabs(x1 - std::round(x1)) / std::max(1.0, std::fabs(x1)),
                                std::fabs(x2 - std::round(x2)) / std::max(1.0, std::fabs(x2)));
    if (dev < r.best_deviation) {
      r.best_deviation = dev;
      r.best_N = N;
    }
    if (dev < tol) {
      r.rational = true;
      r.N = N;
      r.m1 = std::lround(x1);
      r.m2 = std::lround(x2);
      return r;
    }
  }
  return r;
}

}  // namespace poncelet
