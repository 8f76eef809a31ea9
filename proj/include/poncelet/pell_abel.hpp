#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poncelet/cayley.hpp"
#include "poncelet/polynomial.hpp"
#include "poncelet/rational.hpp"

namespace poncelet {

/// Minus: A² - f̃B² = 1. Plus: A² + f̃B² = 1.
enum class PellSign { Minus, Plus };

struct PellAbelInstance {
  Polynomial<double> f_tilde;
  std::optional<Polynomial<Rational>> exact_f_tilde;
  /// The pencil cubic f with f̃(λ) = λ⁴ f(1/λ), when linked.
  std::optional<Polynomial<Rational>> linked_cubic;
  PellSign sign = PellSign::Minus;
  /// deg f̃ != 4.
  bool degenerate = false;

  static PellAbelInstance from_exact(Polynomial<Rational> f_tilde, PellSign sign = PellSign::Minus) {
    PellAbelInstance inst;
    inst.f_tilde = to_double(f_tilde);
    inst.degenerate = f_tilde.degree() != 4;
    inst.exact_f_tilde = std::move(f_tilde);
    inst.sign = sign;
    return inst;
  }

  static PellAbelInstance from_float(Polynomial<double> f_tilde, PellSign sign = PellSign::Minus) {
    PellAbelInstance inst;
    inst.degenerate = f_tilde.degree() != 4;
    inst.f_tilde = std::move(f_tilde);
    inst.sign = sign;
    return inst;
  }

  /// D with the equation written as A² - D B² = 1.
  Polynomial<double> operative() const { return sign == PellSign::Minus ? f_tilde : -f_tilde; }
  std::optional<Polynomial<Rational>> exact_operative() const {
    if (!exact_f_tilde) return std::nullopt;
    return sign == PellSign::Minus ? *exact_f_tilde : -*exact_f_tilde;
  }
};

/// f̃(λ) = λ⁴ f(1/λ). The linked equation takes the printed form A² + f̃B² = 1:
/// f̃ has leading coefficient f(0) = det(parabola) < 0, so the minus form has
/// no real solution.
inline PellAbelInstance reverse_link(const Polynomial<Rational>& f) {
  if (f.degree() > 3) throw std::invalid_argument("reverse_link: deg f must be <= 3");
  PellAbelInstance inst = PellAbelInstance::from_exact(f.reversed(4), PellSign::Plus);
  inst.linked_cubic = f;
  return inst;
}

template <class T>
struct PellAbelSolution {
  Polynomial<T> A;
  Polynomial<T> B;
  /// max-norm of A² ∓ f̃B² - 1.
  double residual = 0;
};

struct PellConstructResult {
  bool found = false;
  PellAbelSolution<double> solution;
  /// Set when rational reconstruction of (A, B) verified exactly.
  std::optional<PellAbelSolution<Rational>> exact;
  /// Number of continued-fraction steps taken.
  int steps = 0;
};

namespace detail {

inline double max_abs(const Polynomial<double>& p) {
  double m = 0;
  for (double c : p.coefficients()) m = std::max(m, std::fabs(c));
  return m;
}

template <class T>
Polynomial<T> pell_defect(const Polynomial<T>& D, const Polynomial<T>& A, const Polynomial<T>& B) {
  return A * A - D * (B * B) - Polynomial<T>::constant(T(1));
}

inline std::optional<Polynomial<Rational>> rationalize_poly(const Polynomial<double>& p, double tol) {
  std::vector<Rational> c;
  for (double x : p.coefficients()) {
    const Rational r = rationalize(x, tol);
    // small denominators only; otherwise the float solution stands
    if (mpz_sizeinbase(r.denominator().get_mpz_t(), 2) > 40) return std::nullopt;
    c.push_back(r);
  }
  return Polynomial<Rational>(std::move(c));
}

}  // namespace detail

/// Continued-fraction expansion of √D for deg D = 4 in floating point. The
/// genus-1 structure is enforced at every step: P_n = ⌊√D⌋ + δ_n and
/// deg Q_n <= 1. A convergent p/q satisfies p² - D q² = (-1)^{n+1} Q_{n+1};
/// when Q_{n+1} is a constant c the pair (p, q)/√|c| (squared first if the
/// sign is wrong) is a candidate, accepted if its residual is below tol.
inline PellConstructResult pell_construct(const PellAbelInstance& inst, int Dmax = 32, double tol = 1e-8) {
  if (inst.degenerate) throw std::invalid_argument("pell_construct: deg f~ must be 4");
  const Polynomial<double> D = inst.operative();
  PellConstructResult res;
  const double lc = D.leading();
  if (!(lc > 0)) return res;  // no real polynomial part of √D

  const double s = std::sqrt(lc);
  const double b1 = D.coeff(3) / (2 * s);
  const double b0 = (D.coeff(2) - b1 * b1) / (2 * s);
  const Polynomial<double> a0{b0, b1, s};

  auto remainder = [&](double delta) {
    // D - (a0 + δ)², keeping degree <= 2 (higher terms cancel by construction)
    const Polynomial<double> P = a0 + Polynomial<double>::constant(delta);
    const Polynomial<double> R = D - P * P;
    return Polynomial<double>{R.coeff(0), R.coeff(1), R.coeff(2)};
  };
  auto as_linear = [](const Polynomial<double>& p) { return Polynomial<double>{p.coeff(0), p.coeff(1)}; };

  double delta = 0.0;
  Polynomial<double> Q = as_linear(remainder(0.0));
  Polynomial<double> p_prev = Polynomial<double>::constant(1.0), p = a0;
  Polynomial<double> q_prev, q = Polynomial<double>::constant(1.0);
  const double scale = std::max(1.0, detail::max_abs(D));

  for (int n = 0; p.degree() <= Dmax && n < 4 * Dmax + 8; ++n) {
    res.steps = n;
    if (Q.is_zero()) break;  // D is a perfect square
    const double alpha = Q.coeff(1), beta = Q.coeff(0);
    if (std::fabs(alpha) < 1e-6 * (std::fabs(alpha) + std::fabs(beta))) {
      double c = (n % 2 == 0) ? -beta : beta;
      Polynomial<double> A = p, B = q;
      if (c < 0) {
        // (p² + D q²)² - D (2pq)² = (p² - D q²)²
        const Polynomial<double> A2 = A * A + D * (B * B);
        B = 2.0 * (A * B);
        A = A2;
        c = c * c;
      }
      const double root = std::sqrt(c);
      A *= 1.0 / root;
      B *= 1.0 / root;
      const double r = detail::max_abs(detail::pell_defect(D, A, B)) / scale;
      if (r < tol && A.degree() <= Dmax) {
        if (A.leading() < 0) {
          A = -A;
        }
        if (B.leading() < 0) B = -B;
        res.found = true;
        res.solution = {A, B, detail::max_abs(detail::pell_defect(D, A, B))};
        if (auto exactD = inst.exact_operative()) {
          auto rA = detail::rationalize_poly(A, 1e-9), rB = detail::rationalize_poly(B, 1e-9);
          if (rA && rB && detail::pell_defect(*exactD, *rA, *rB).is_zero()) {
            res.exact = PellAbelSolution<Rational>{*rA, *rB, 0.0};
            res.solution.residual = 0.0;
          }
        }
        return res;
      }
    }
    // a_n = polynomial part of (a0 + P_n)/Q_n with P_n = a0 + δ
    Polynomial<double> num = 2.0 * a0 + Polynomial<double>::constant(delta);
    const Polynomial<double> an = divrem(num, Q).first;
    const Polynomial<double> P_next = an * Q - (a0 + Polynomial<double>::constant(delta));
    const double delta_next = P_next.coeff(0) - a0.coeff(0);
    const Polynomial<double> Q_next = as_linear(divrem(remainder(delta_next), Q).first);
    Polynomial<double> np = an * p + p_prev, nq = an * q + q_prev;
    p_prev = std::move(p);
    p = std::move(np);
    q_prev = std::move(q);
    q = std::move(nq);
    delta = delta_next;
    Q = Q_next;
  }
  return res;
}

enum class PellVerdict { Solvable, Unsolvable, Degenerate };

struct PellSolvability {
  PellVerdict verdict = PellVerdict::Unsolvable;
  /// Smallest vanishing Cayley index when solvable.
  int N = 0;
  /// Smallest vanishing index overall (odd values make the verdict Unsolvable).
  std::optional<int> smallest_period;
};

/// Solvable iff the smallest vanishing verdict of the linked pencil has even N.
inline PellSolvability pell_solvable(const PellAbelInstance& inst, int Nmax, double tol = 1e-8) {
  if (!inst.linked_cubic) throw std::invalid_argument("pell_solvable: instance has no linked pencil cubic");
  PellSolvability out;
  if (inst.degenerate || inst.linked_cubic->coeff(0).is_zero()) {
    out.verdict = PellVerdict::Degenerate;
    return out;
  }
  const CayleyReport rep = cayley_classify(*inst.linked_cubic, Nmax, tol);
  if (rep.degenerate) {
    out.verdict = PellVerdict::Degenerate;
    return out;
  }
  out.smallest_period = cayley_period(rep);
  if (out.smallest_period && *out.smallest_period % 2 == 0) {
    out.verdict = PellVerdict::Solvable;
    out.N = *out.smallest_period;
  }
  return out;
}

}  // namespace poncelet
