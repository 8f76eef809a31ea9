#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poncelet/power_series.hpp"
#include "poncelet/rational.hpp"

namespace poncelet {

/// Row-major square matrix.
template <class T>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n = 0) : n_(n), d_(n * n, T(0)) {}
  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<T> d_;
};

/// Fraction-free Bareiss elimination over the integers. Every division is
/// exact; the last pivot is the determinant.
inline mpz_class bareiss_determinant(SquareMatrix<mpz_class> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline Rational determinant(const SquareMatrix<Rational>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  mpz_class common = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    }
  }
  SquareMatrix<mpz_class> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      scaled(i, j) = m(i, j).numerator() * (common / m(i, j).denominator());
    }
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(bareiss_determinant(std::move(scaled)), den);
}

/// LU with partial pivoting.
inline double determinant(SquareMatrix<double> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(m(i, k)) > std::fabs(m(piv, k))) piv = i;
    }
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// size x size Hankel matrix with entry (i, j) = c_{offset + i + j}.
template <class T>
SquareMatrix<T> hankel_matrix(const PowerSeries<T>& c, std::size_t offset, std::size_t size) {
  if (size > 0 && offset + 2 * (size - 1) > static_cast<std::size_t>(c.order())) {
    throw std::invalid_argument("hankel: series truncation order too small for the requested determinant");
  }
  SquareMatrix<T> m(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) m(i, j) = c[offset + i + j];
  }
  return m;
}

/// H^(1)_p: (p-1)x(p-1) Hankel determinant, top-left c_3, bottom-right c_{2p-1}.
template <class T>
T hankel_h1(const PowerSeries<T>& c, int p) {
  if (p < 2) throw std::invalid_argument("hankel_h1: p must be >= 2");
  if (c.order() < 2 * p - 1) throw std::invalid_argument("hankel_h1: series needs coefficients through c_{2p-1}");
  return determinant(hankel_matrix(c, 3, static_cast<std::size_t>(p - 1)));
}

/// H^(2)_p: p x p Hankel determinant, top-left c_2, bottom-right c_{2p}.
template <class T>
T hankel_h2(const PowerSeries<T>& c, int p) {
  if (p < 1) throw std::invalid_argument("hankel_h2: p must be >= 1");
  if (c.order() < 2 * p) throw std::invalid_argument("hankel_h2: series needs coefficients through c_{2p}");
  return determinant(hankel_matrix(c, 2, static_cast<std::size_t>(p)));
}

/// The determinant the closure criterion attaches to period N:
/// H^(1)_{N/2} for even N, H^(2)_{(N-1)/2} for odd N. Sizes 0 (N = 1, 2)
/// evaluate to 1.
template <class T>
T closure_determinant(const PowerSeries<T>& c, int N) {
  if (N < 1) throw std::invalid_argument("closure_determinant: N must be >= 1");
  if (N <= 2) return T(1);
  return (N % 2 == 0) ? hankel_h1(c, N / 2) : hankel_h2(c, N / 2);
}

}  // namespace poncelet
