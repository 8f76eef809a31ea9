#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "poncelet/hankel.hpp"
#include "poncelet/polynomial.hpp"
#include "poncelet/power_series.hpp"
#include "poncelet/rational.hpp"

namespace {

using poncelet::Polynomial;
using poncelet::PowerSeries;
using poncelet::Rational;
using Q = Rational;
using QPoly = Polynomial<Rational>;

Q frac(long p, long q) { return Q(p) / Q(q); }

// Generalized binomial coefficient C(1/2, n), computed directly.
Q binom_half(int n) {
  Q r = 1;
  for (int i = 0; i < n; ++i) r = r * (frac(1, 2) - Q(i)) / Q(i + 1);
  return r;
}

PowerSeries<Q> sqrt_one_plus_lambda(int order) {
  return poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(QPoly{1, 1}, order), order);
}

// Leibniz expansion over all permutations.
Q leibniz(const std::vector<std::vector<Q>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Q total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Q term = inversions % 2 ? Q(-1) : Q(1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(Q::parse("3/6"), frac(1, 2));
  EXPECT_EQ(Q::parse("-7"), Q(-7));
  EXPECT_EQ(Q::parse("0.1"), frac(1, 10));
  EXPECT_EQ(Q::parse("-3.95"), frac(-79, 20));
  EXPECT_EQ(Q::parse("1.5e-3"), frac(3, 2000));
  EXPECT_EQ(Q::parse("-0"), Q(0));
  EXPECT_THROW(Q::parse("1/0"), std::domain_error);
  EXPECT_THROW(Q::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Q::parse("1.2.3"), std::invalid_argument);
}

TEST(Rational, DecimalStringRoundTrips) {
  for (const char* s : {"0.5", "-3.95", "2", "-0.05", "0.125"}) EXPECT_EQ(Q::parse(s).to_decimal_string(), s);
  EXPECT_EQ(frac(1, 3).to_decimal_string(), "1/3");
}

TEST(Rational, RationalizeFindsShortConvergent) {
  EXPECT_EQ(poncelet::rationalize(0.3333333333333333, 1e-12), frac(1, 3));
  EXPECT_EQ(poncelet::rationalize(-2.75, 1e-15), frac(-11, 4));
  const Q pi = poncelet::rationalize(3.141592653589793, 1e-6);
  EXPECT_EQ(pi, frac(355, 113));
}

TEST(Polynomial, ArithmeticExamples) {
  EXPECT_EQ((QPoly{1, 1} * QPoly{-1, 1}), (QPoly{-1, 0, 1}));
  const auto [q, r] = poncelet::divrem(QPoly{0, 0, 0, 1}, QPoly{0, 0, 1});
  EXPECT_EQ(q, (QPoly{0, 1}));
  EXPECT_EQ(r.degree(), -1);
  EXPECT_EQ((QPoly{1, 2} - QPoly{1, 2}).degree(), -1);
}

TEST(Polynomial, DivremReconstructsDividend) {
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Q> a(7), b(3);
    for (auto& x : a) x = Q(d(gen));
    for (auto& x : b) x = Q(d(gen));
    b.back() = Q(d(gen) | 1);
    const QPoly A(a), B(b);
    const auto [q, r] = poncelet::divrem(A, B);
    EXPECT_EQ(q * B + r, A);
    EXPECT_LT(r.degree(), B.degree());
  }
}

TEST(Polynomial, PellIdentityHoldsExactly) {
  const QPoly A{-1, 0, 2}, B{1}, f{0, 0, -4, 0, 4};
  EXPECT_EQ(A * A - f * B * B, QPoly{1});
}

TEST(PowerSeries, SqrtOfOnePlusLambdaIsBinomialSeries) {
  const auto c = sqrt_one_plus_lambda(3);
  EXPECT_EQ(c[0], Q(1));
  EXPECT_EQ(c[1], frac(1, 2));
  EXPECT_EQ(c[2], frac(-1, 8));
  EXPECT_EQ(c[3], frac(1, 16));
  const auto longer = sqrt_one_plus_lambda(20);
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(longer[static_cast<std::size_t>(n)], binom_half(n)) << n;
}

TEST(PowerSeries, SqrtOfOneAndOfPerfectSquare) {
  const auto one = poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(QPoly{1}, 6), 6);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(one[static_cast<std::size_t>(n)], Q(0));
  const QPoly lin{1, frac(1, 3)};
  const auto sq = poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(lin * lin, 4), 4);
  EXPECT_EQ(sq, PowerSeries<Q>({1, frac(1, 3), 0, 0, 0}, 4));
}

TEST(PowerSeries, SqrtSquaresBack) {
  const QPoly g{1, frac(-5, 4), frac(31, 4), frac(-15, 4)};
  const auto c = poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(g, 12), 12);
  const auto sq = c * c;
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(sq[static_cast<std::size_t>(n)], g.coeff(static_cast<std::size_t>(n)));
}

TEST(PowerSeries, SqrtRejectsNonUnitConstant) {
  EXPECT_THROW(poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(QPoly{4, 1}, 3), 3), std::invalid_argument);
}

TEST(Hankel, H1StartsAtC3AndEndsAtC2pMinus1) {
  const auto c = sqrt_one_plus_lambda(5);
  EXPECT_EQ(poncelet::hankel_h1(c, 2), c[3]);
  // the first 2x2 case, c3 c5 - c4^2 = 7/4096 - 25/16384
  EXPECT_EQ(poncelet::hankel_h1(c, 3), c[3] * c[5] - c[4] * c[4]);
  EXPECT_EQ(poncelet::hankel_h1(c, 3), frac(3, 16384));
  const auto zero = PowerSeries<Q>({1, 0, 0, 0, 0, 0}, 5);
  EXPECT_EQ(poncelet::hankel_h1(zero, 2), Q(0));
  EXPECT_EQ(poncelet::hankel_h1(zero, 3), Q(0));
  EXPECT_THROW(poncelet::hankel_h1(c, 4), std::invalid_argument);
}

TEST(Hankel, H2AtPOneIsC2) {
  const auto c = sqrt_one_plus_lambda(3);
  EXPECT_EQ(poncelet::hankel_h2(c, 1), frac(-1, 8));
  const auto square = poncelet::series_sqrt(PowerSeries<Q>::from_polynomial(QPoly{1, 2, 1}, 4), 4);
  EXPECT_EQ(poncelet::hankel_h2(square, 1), Q(0));
}

TEST(Hankel, ClosureDeterminantDispatchesOnParity) {
  const auto c = sqrt_one_plus_lambda(12);
  EXPECT_EQ(poncelet::closure_determinant(c, 3), poncelet::hankel_h2(c, 1));
  EXPECT_EQ(poncelet::closure_determinant(c, 4), poncelet::hankel_h1(c, 2));
  EXPECT_EQ(poncelet::closure_determinant(c, 7), poncelet::hankel_h2(c, 3));
  EXPECT_EQ(poncelet::closure_determinant(c, 10), poncelet::hankel_h1(c, 5));
}

TEST(Hankel, RationalDeterminantMatchesLeibniz) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      poncelet::SquareMatrix<Q> m(n);
      std::vector<std::vector<Q>> rows(n, std::vector<Q>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j] = frac(num(gen), den(gen));
      }
      EXPECT_EQ(poncelet::determinant(m), leibniz(rows));
    }
  }
}

TEST(Hankel, SingularAndPivotingCases) {
  poncelet::SquareMatrix<Q> m(3);
  // zero leading entry forces a row swap
  const int vals[3][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 9}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = Q(vals[i][j]);
  }
  EXPECT_EQ(poncelet::determinant(m), Q(-3));
  m(2, 2) = Q(8);
  EXPECT_EQ(poncelet::determinant(m), Q(0));
  poncelet::SquareMatrix<double> d(2);
  d(0, 0) = 0, d(0, 1) = 2, d(1, 0) = 3, d(1, 1) = 1;
  EXPECT_DOUBLE_EQ(poncelet::determinant(d), -6.0);
}

}  // namespace
