#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "poncelet/elliptic.hpp"
#include "poncelet/john.hpp"
#include "poncelet/tangent_chord.hpp"

namespace {

using namespace poncelet;

const Conic kParabola = parabola_conic<double>();

ConicPencil pencil_for(const EulerBaxterCurve& c) {
  return to_double(build_pencil(ExactCurve{Rational::from_double(c.a), Rational::from_double(c.b)}));
}

EulerBaxterCurve constructed(double k, int m, int N) {
  const EllipticParams p = periodic_params(k, m, N);
  return construct_curve(p.k, p.q);
}

// Both lines in the pair match the expected tangents, in either order.
void expect_tangents(const TangentPair& tp, double x1, double x2) {
  const Line3 a = parabola_tangent(x1), b = parabola_tangent(x2);
  const double direct = std::max(chordal_distance(tp.first, a), chordal_distance(tp.second, b));
  const double swapped = std::max(chordal_distance(tp.first, b), chordal_distance(tp.second, a));
  EXPECT_LT(std::min(direct, swapped), 1e-12);
}

TEST(Tangents, FromPointBelowParabola) {
  expect_tangents(tangents_from(affine_point(0.0, -1.0), kParabola), 1.0, -1.0);
  // x0² - u0 x0 + v0 = 0 with u0 = 3, v0 = 2 has roots 1 and 2
  expect_tangents(tangents_from(affine_point(3.0, 2.0), kParabola), 1.0, 2.0);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> r(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double x = r(gen), y = r(gen);
    const auto [u, v] = v_transform(x, y);
    expect_tangents(tangents_from(affine_point(u, v), kParabola), x, y);
  }
}

TEST(Tangents, PointOnParabolaIsFlagged) {
  const TangentPair tp = tangents_from(affine_point(2.0, 1.0), kParabola);
  EXPECT_TRUE(tp.on_conic);
  EXPECT_LT(chordal_distance(tp.first, parabola_tangent(1.0)), 1e-7);
  EXPECT_THROW(tangents_from(affine_point(0.0, 1.0), kParabola), std::domain_error);
}

TEST(Tangents, TangencyPointLiesOnTheParabola) {
  for (double x0 : {-2.0, 0.5, 3.0}) {
    const auto [u, v] = affine(tangency_point(parabola_tangent(x0), kParabola));
    EXPECT_NEAR(u, 2.0 * x0, 1e-12);
    EXPECT_NEAR(v, x0 * x0, 1e-12);
  }
}

TEST(PonceletStep, ReversingTheBranchReturnsToTheStart) {
  const EulerBaxterCurve c{0.9, -2.7};
  const ConicPencil pencil = pencil_for(c);
  const PonceletState s0 = from_john(oval_point(c, 0.3));
  const PonceletState s1 = poncelet_step(s0, pencil);
  const TangentPair tp = tangents_from(s1.point, pencil.A);
  // leave s1 along the chord it arrived on
  PonceletState back{s1.point, {}, false};
  back.incoming = chordal_distance(tp.first, *s1.incoming) < chordal_distance(tp.second, *s1.incoming) ? tp.second
                                                                                                         : tp.first;
  EXPECT_LT(chordal_distance(poncelet_step(back, pencil).point, s0.point), 1e-12);
}

TEST(PonceletStep, LockstepWithJohnHalfSteps) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0), ua(0.2, 3.0), ub(1.05, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = ua(gen);
    const EulerBaxterCurve c{a, (trial % 2 ? 1.0 : -1.0) * (a + ub(gen))};
    const JohnState seed = oval_point(c, u(gen));
    const OrbitRecord rec = generate_orbit(c, seed, 1000);
    const auto traj = poncelet_trajectory(from_john(seed), pencil_for(c), 1000);
    double worst = 0;
    for (std::size_t n = 0; n < traj.size(); ++n) {
      const auto [uu, vv] = v_transform(rec.states[n].x, rec.states[n].y);
      worst = std::max(worst, chordal_distance(traj[n].point, affine_point(uu, vv)));
    }
    EXPECT_LT(worst, 1e-9) << "a=" << c.a << " b=" << c.b;
  }
}

TEST(Closure, ReferenceCurveHasPeriodFour) {
  const EulerBaxterCurve c{1.0, -3.0};
  const ClosureResult r = detect_closure(from_john(point_on_curve(c, 1.1)), pencil_for(c), 64, 1e-10);
  EXPECT_TRUE(r.closed);
  EXPECT_EQ(r.N, 4);
  EXPECT_EQ(john_period_from_poncelet(r.N), 2);
}

TEST(Closure, PeriodParityRule) {
  // m odd: the Poncelet polygon goes around twice, N_P = 2N
  const EulerBaxterCurve odd_m = constructed(0.6, 1, 5);
  const ClosureResult r1 = detect_closure(from_john(oval_point(odd_m, 0.4)), pencil_for(odd_m), 64);
  EXPECT_EQ(r1.N, 10);
  EXPECT_EQ(john_period_from_poncelet(r1.N), 5);
  // m even: odd N_P equals the John period
  const EulerBaxterCurve even_m = constructed(0.6, 2, 5);
  const ClosureResult r2 = detect_closure(from_john(oval_point(even_m, 0.4)), pencil_for(even_m), 64);
  EXPECT_EQ(r2.N, 5);
  EXPECT_EQ(detect_period(even_m, oval_point(even_m, 0.4), 64).N, 5);
}

TEST(Closure, PeriodIsIndependentOfTheSeed) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const EulerBaxterCurve c = constructed(0.35, 3, 7);
  const ConicPencil pencil = pencil_for(c);
  std::set<int> periods;
  for (int i = 0; i < 100; ++i) periods.insert(detect_closure(from_john(oval_point(c, u(gen), i % 2)), pencil, 64).N);
  EXPECT_EQ(periods, std::set<int>{14});
}

TEST(Closure, TangencyPointsCloseWithTheVertices) {
  const EulerBaxterCurve c = constructed(0.5, 1, 4);
  const ConicPencil pencil = pencil_for(c);
  const PonceletState seed = from_john(oval_point(c, 0.7));
  const ClosureResult r = detect_closure(seed, pencil, 64);
  ASSERT_TRUE(r.closed);
  const auto traj = poncelet_trajectory(seed, pencil, static_cast<std::size_t>(r.N) + 1);
  const Point3 first = tangency_point(*traj[1].incoming, pencil.A);
  const Point3 again = tangency_point(*traj[static_cast<std::size_t>(r.N) + 1].incoming, pencil.A);
  EXPECT_LT(chordal_distance(first, again), 1e-9);
}

TEST(Closure, GenericCurveStaysOpen) {
  const EulerBaxterCurve c{1.0 / 3.0, -1.4};
  const ClosureResult r = detect_closure(from_john(oval_point(c, 0.2)), pencil_for(c), 2000, 1e-8);
  EXPECT_FALSE(r.closed);
  EXPECT_THROW(detect_closure(from_john(oval_point(c, 0.2)), pencil_for(c), 0), std::invalid_argument);
}

}  // namespace
