#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poncelet/polynomial.hpp"

namespace poncelet {

/// Truncated power series c_0 + c_1 λ + ... + c_T λ^T.
template <class T>
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(std::vector<T> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative truncation order");
    c_.resize(static_cast<std::size_t>(order) + 1, T(0));
  }

  static PowerSeries from_polynomial(const Polynomial<T>& p, int order) {
    std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
    for (int i = 0; i <= order; ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
    return PowerSeries(std::move(c), order);
  }

  int order() const { return order_; }
  const T& operator[](std::size_t i) const {
    if (i > static_cast<std::size_t>(order_)) throw std::out_of_range("PowerSeries: index beyond truncation order");
    return c_[i];
  }
  const std::vector<T>& coefficients() const { return c_; }

  /// Product truncated at the smaller of the two orders.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int order = std::min(a.order_, b.order_);
    std::vector<T> r(static_cast<std::size_t>(order) + 1, T(0));
    for (int n = 0; n <= order; ++n) {
      for (int i = 0; i <= n; ++i) r[static_cast<std::size_t>(n)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(n - i)];
    }
    return PowerSeries(std::move(r), order);
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

 private:
  std::vector<T> c_;
  int order_ = 0;
};

/// Square root of a series with constant term exactly 1, branch c_0 = +1:
/// c_n = (g_n - Σ_{i=1}^{n-1} c_i c_{n-i}) / 2.
template <class T>
PowerSeries<T> series_sqrt(const PowerSeries<T>& g, int order) {
  if (order < 1) throw std::invalid_argument("series_sqrt: truncation order must be >= 1");
  if (!(g[0] == T(1))) throw std::invalid_argument("series_sqrt: constant term must be exactly 1");
  if (order > g.order()) throw std::invalid_argument("series_sqrt: requested order exceeds the input truncation");
  std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
  c[0] = T(1);
  for (int n = 1; n <= order; ++n) {
    T acc = g[static_cast<std::size_t>(n)];
    for (int i = 1; i < n; ++i) acc -= c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(n - i)];
    c[static_cast<std::size_t>(n)] = acc / T(2);
  }
  return PowerSeries<T>(std::move(c), order);
}

template <class T>
PowerSeries<T> series_sqrt(const PowerSeries<T>& g) {
  return series_sqrt(g, g.order());
}

}  // namespace poncelet
