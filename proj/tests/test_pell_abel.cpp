#include <gtest/gtest.h>

#include <random>

#include "poncelet/elliptic.hpp"
#include "poncelet/pell_abel.hpp"

namespace {

using namespace poncelet;
using Q = Rational;
using QPoly = Polynomial<Q>;

const QPoly kFourFour{0, 0, -4, 0, 4};  // 4λ⁴ - 4λ²

PellAbelInstance linked(const EulerBaxterCurve& c) { return reverse_link(build_pencil(rationalize_curve(c)).f); }

EulerBaxterCurve constructed(double k, int m, int N) {
  const EllipticParams p = periodic_params(k, m, N);
  return construct_curve(p.k, p.q);
}

// A² ∓ f̃B² evaluated exactly.
QPoly pell_lhs(const QPoly& ft, PellSign sign, const QPoly& A, const QPoly& B) {
  return sign == PellSign::Minus ? A * A - ft * B * B : A * A + ft * B * B;
}

TEST(PellConstruct, FourFourHasTheObviousSolution) {
  const PellConstructResult r = pell_construct(PellAbelInstance::from_exact(kFourFour), 32);
  ASSERT_TRUE(r.found);
  ASSERT_TRUE(r.exact.has_value());
  const QPoly A = r.exact->A, B = r.exact->B;
  EXPECT_TRUE(A == (QPoly{-1, 0, 2}) || A == (QPoly{1, 0, -2}));
  EXPECT_TRUE(B == QPoly{1} || B == QPoly{-1});
  EXPECT_EQ(pell_lhs(kFourFour, PellSign::Minus, A, B), QPoly{1});
}

TEST(PellConstruct, SquaringGivesTheNextSolution) {
  // (A + B√f)² = (2A² - 1) + 2AB√f
  const QPoly A{-1, 0, 2}, B{1};
  const QPoly A2 = Q(2) * A * A - QPoly{1}, B2 = Q(2) * A * B;
  EXPECT_EQ(A2, (QPoly{1, 0, -8, 0, 8}));
  EXPECT_EQ(pell_lhs(kFourFour, PellSign::Minus, A2, B2), QPoly{1});
}

TEST(PellConstruct, LambdaFourPlusOne) {
  const QPoly f{1, 0, 0, 0, 1};
  const PellConstructResult minus = pell_construct(PellAbelInstance::from_exact(f), 8);
  ASSERT_TRUE(minus.found);
  ASSERT_TRUE(minus.exact.has_value());
  EXPECT_EQ(minus.exact->A.degree(), 4);
  EXPECT_EQ(pell_lhs(f, PellSign::Minus, minus.exact->A, minus.exact->B), QPoly{1});
  EXPECT_FALSE(pell_construct(PellAbelInstance::from_exact(f, PellSign::Plus), 8).found);
}

TEST(ReverseLink, ReferenceCurve) {
  const PellAbelInstance inst = reverse_link(build_pencil(ExactCurve{1, -3}).f);
  EXPECT_EQ(*inst.exact_f_tilde, (QPoly{0, 15, -31, 20, -4}));
  EXPECT_EQ(inst.sign, PellSign::Plus);
  EXPECT_FALSE(inst.degenerate);
  EXPECT_EQ(inst.exact_f_tilde->coeff(0), Q(0));
}

TEST(ReverseLink, MonomialIsDegenerate) {
  const PellAbelInstance inst = reverse_link(QPoly{0, 0, 0, 1});
  EXPECT_EQ(*inst.exact_f_tilde, (QPoly{0, 1}));
  EXPECT_TRUE(inst.degenerate);
  EXPECT_THROW(reverse_link(QPoly{1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST(ReverseLink, DoubleReversalRoundTrips) {
  std::mt19937 gen(2);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int i = 0; i < 100; ++i) {
    const QPoly f{Q(d(gen) | 1), Q(d(gen)), Q(d(gen)), Q(d(gen) | 1)};
    EXPECT_EQ(reverse_link(f).exact_f_tilde->reversed(4), f);
  }
}

TEST(PellAbel, ReferenceCurveIsSolvableAtDegreeTwo) {
  const PellAbelInstance inst = reverse_link(build_pencil(ExactCurve{1, -3}).f);
  const PellSolvability s = pell_solvable(inst, 16);
  EXPECT_EQ(s.verdict, PellVerdict::Solvable);
  EXPECT_EQ(s.N, 4);
  const PellConstructResult r = pell_construct(inst, 32);
  ASSERT_TRUE(r.found);
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_EQ(r.exact->A.degree(), 2);
  EXPECT_EQ(pell_lhs(*inst.exact_f_tilde, PellSign::Plus, r.exact->A, r.exact->B), QPoly{1});
}

TEST(PellAbel, EvenPoncelet4IsSolvable) {
  for (double k : {0.2, 0.5, 0.8}) {
    const PellAbelInstance inst = linked(constructed(k, 1, 2));
    const PellSolvability s = pell_solvable(inst, 16);
    EXPECT_EQ(s.verdict, PellVerdict::Solvable) << k;
    EXPECT_EQ(s.N, 4);
    const PellConstructResult r = pell_construct(inst, 32);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.solution.A.degree(), 2);
    EXPECT_LT(r.solution.residual, 1e-8);
  }
}

TEST(PellAbel, EvenPonceletPeriodsGiveDegreeN) {
  for (int N = 3; N <= 8; ++N) {
    const PellAbelInstance inst = linked(constructed(0.45, 1, N));
    const PellSolvability s = pell_solvable(inst, 24);
    EXPECT_EQ(s.verdict, PellVerdict::Solvable) << N;
    EXPECT_EQ(s.N, 2 * N);
    const PellConstructResult r = pell_construct(inst, 32);
    ASSERT_TRUE(r.found) << N;
    EXPECT_EQ(r.solution.A.degree(), N);
    EXPECT_LT(r.solution.residual, 1e-8);
  }
}

TEST(PellAbel, OddPonceletPeriodIsUnsolvableByCayley) {
  const PellAbelInstance inst = linked(constructed(0.6, 2, 5));
  const PellSolvability s = pell_solvable(inst, 24);
  EXPECT_EQ(s.verdict, PellVerdict::Unsolvable);
  EXPECT_EQ(s.smallest_period, 5);
  // the doubled polygon (10 sides) still satisfies the degree-5 Pell condition
  const PellConstructResult r = pell_construct(inst, 32);
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.solution.A.degree(), 5);
}

TEST(PellAbel, GenericCurveIsUnsolvable) {
  const PellAbelInstance inst = reverse_link(build_pencil(ExactCurve{Q(1) / Q(3), Q(-7) / Q(5)}).f);
  EXPECT_EQ(pell_solvable(inst, 24).verdict, PellVerdict::Unsolvable);
  EXPECT_FALSE(pell_construct(inst, 32).found);
}

TEST(PellAbel, DegenerateInstances) {
  const PellAbelInstance inst = reverse_link(QPoly{0, 0, 0, 1});
  EXPECT_EQ(pell_solvable(inst, 8).verdict, PellVerdict::Degenerate);
  EXPECT_THROW(pell_construct(inst, 8), std::invalid_argument);
  EXPECT_THROW(pell_solvable(PellAbelInstance::from_exact(kFourFour), 8), std::invalid_argument);
}

}  // namespace
