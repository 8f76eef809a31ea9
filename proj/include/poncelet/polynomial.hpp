#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poncelet/rational.hpp"

namespace poncelet {

/// Dense univariate polynomial; coefficient i multiplies λ^i. The zero
/// polynomial has no coefficients, otherwise the leading one is nonzero.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial monomial(T c, std::size_t degree) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// λ^n p(1/λ); requires n >= degree().
  Polynomial reversed(std::size_t n) const {
    if (degree() > static_cast<int>(n)) throw std::invalid_argument("Polynomial::reversed: degree exceeds n");
    std::vector<T> r(n + 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
    return Polynomial(std::move(r));
  }

  template <class U, class F>
  Polynomial<U> map(F&& f) const {
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return Polynomial<U>(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && ::poncelet::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Euclidean division: returns (Q, R) with A = Q·B + R and deg R < deg B.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divrem(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw std::domain_error("divrem: division by the zero polynomial");
  std::vector<T> rem = a.coefficients();
  const auto& d = b.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<T>{}, a};
  std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const T factor = rem[static_cast<std::size_t>(k + db)] / d.back();
    q[static_cast<std::size_t>(k)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= factor * d[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + db)] = T(0);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<T>(std::move(q)), Polynomial<T>(std::move(rem))};
}

inline Polynomial<double> to_double(const Polynomial<Rational>& p) {
  return p.map<double>([](const Rational& r) { return r.to_double(); });
}

/// "[c0, c1, ...]" with exact rationals as "p/q".
template <class T>
std::string to_string(const Polynomial<T>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_same_v<T, Rational>) {
      s += p.coefficients()[i].to_string();
    } else {
      s += std::to_string(p.coefficients()[i]);
    }
  }
  return s + "]";
}

}  // namespace poncelet
