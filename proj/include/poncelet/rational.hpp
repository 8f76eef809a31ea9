#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poncelet {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      v_ = static_cast<signed long>(n);
    } else {
      v_ = static_cast<unsigned long>(n);
    }
  }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    Rational r;
    r.v_ = mpq_class(x);
    r.v_.canonicalize();
    return r;
  }

  /// Parses "p/q", an integer, or a decimal literal such as "-0.25" or
  /// "1.5e-3". Decimal input is converted exactly (0.1 -> 1/10).
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  /// Terminating decimal ("-3.95") when the denominator is 2^i 5^j, else "p/q".
  std::string to_decimal_string() const {
    mpz_class den = v_.get_den();
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2, ++twos;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5, ++fives;
    if (den != 1) return to_string();
    const unsigned long digits = std::max(twos, fives);
    if (digits == 0) return to_string();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    const mpz_class scaled = abs(v_.get_num()) * scale / v_.get_den();
    std::string s = scaled.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (sgn(v_) < 0 ? "-" : "") + s;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class v_{0};
};

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty input");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    trim(num);
    trim(den);
    if (num.starts_with('+')) num.erase(0, 1);
    mpz_class n, d;
    if (num.empty() || den.empty() || n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
      throw std::invalid_argument("Rational::parse: malformed fraction '" + s + "'");
    }
    return Rational(n, d);
  }

  // decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) throw std::invalid_argument("Rational::parse: malformed number '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational::parse: malformed exponent '" + s + "'");
    }
    if (used == 0 || e > 4096 || e < -4096) {
      throw std::invalid_argument("Rational::parse: exponent out of range '" + s + "'");
    }
    i += used;
    exponent += e;
  }
  if (i != s.size()) throw std::invalid_argument("Rational::parse: trailing characters in '" + s + "'");

  mpz_class n(digits, 10);
  if (negative) n = -n;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(n, p10) : Rational(n * p10, mpz_class(1));
}

/// Best rational approximation of x with |x - p/q| <= tol, found by walking
/// the continued-fraction convergents.
inline Rational rationalize(double x, double tol) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite input");
  if (!(tol > 0)) throw std::invalid_argument("rationalize: tol must be positive");
  const Rational exact = Rational::from_double(x);
  // h_prev/k_prev hold convergent n-1, h/k convergent n-2
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  mpq_class rest = exact.raw();
  for (int iter = 0; iter < 128; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h_next = a * h_prev + h;
    mpz_class k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    Rational candidate(h_prev, k_prev);
    if (std::abs((candidate - exact).to_double()) <= tol) return candidate;
    mpq_class frac = rest - mpq_class(a);
    if (frac == 0) return candidate;
    rest = 1 / frac;
  }
  return exact;
}

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }
inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace poncelet
