#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <sstream>

#include "poncelet/boundary.hpp"

namespace {

using namespace poncelet;

EllipticParams period5() { return periodic_params(0.6, 1, 5); }

EulerBaxterCurve curve_of(const EllipticParams& p) { return construct_curve(p.k, p.q); }

// Max |dΦ/dt| along the boundary by central differences in the oval parameter.
double tangential_derivative(const SeparableSolution& s, int samples = 400, double h = 1e-5) {
  const double k = s.params.k, Kp = s.params.Kprime, eta = params_eta(s.params);
  const double ys = params_b_sign(s.params) < 0 ? 1.0 : -1.0;
  auto phi = [&](double t) { return solution_value(s, oval_w(t, k), ys * oval_w(t + eta, k)); };
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * Kp * (i + 0.5) / samples;
    worst = std::max(worst, std::fabs(phi(t + h) - phi(t - h)) / (2 * h));
  }
  return worst;
}

TEST(Propagation, PeriodicCurveClosesConsistently) {
  const EulerBaxterCurve c = curve_of(period5());
  const PropagationReport r = propagate_boundary_values(c, oval_point(c, 0.3), 10000);
  EXPECT_TRUE(r.closed);
  EXPECT_EQ(r.period, 5);
  EXPECT_LT(r.loop_defect, 1e-9);
  EXPECT_FALSE(r.forced_constant);
}

TEST(Propagation, IsDeterministicAndSeedIndependentInPeriod) {
  const EulerBaxterCurve c = curve_of(period5());
  const PropagationReport a = propagate_boundary_values(c, oval_point(c, 0.3), 10000);
  const PropagationReport b = propagate_boundary_values(c, oval_point(c, 0.3), 10000);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.loop_defect), std::bit_cast<std::uint64_t>(b.loop_defect));
  EXPECT_EQ(propagate_boundary_values(c, oval_point(c, 0.8), 10000).period, a.period);
}

TEST(Propagation, GenericCurveForcesConstancy) {
  for (const EulerBaxterCurve c : {EulerBaxterCurve{1.0 / 3.0, -1.4}, EulerBaxterCurve{0.9, -2.7},
                                   EulerBaxterCurve{2.2, 3.5}}) {
    const PropagationReport r = propagate_boundary_values(c, oval_point(c, 0.45), 10000);
    EXPECT_FALSE(r.closed);
    EXPECT_TRUE(r.forced_constant) << c.a << " " << c.b;
    EXPECT_LT(r.max_x_gap, 1e-2);
  }
}

TEST(Separable, AnnihilatedByTheMixedDerivative) {
  const SeparableSolution s = build_nontrivial_solution(period5(), 1);
  for (double x1 : {0.8, 1.0}) {
    for (double y1 : {0.9, 1.2}) {
      const double x2 = x1 + 0.1, y2 = y1 + 0.07;
      const double mixed = solution_value(s, x1, y1) - solution_value(s, x1, y2) - solution_value(s, x2, y1) +
                           solution_value(s, x2, y2);
      EXPECT_NEAR(mixed, 0.0, 1e-14);
    }
  }
}

TEST(Separable, PeriodFiveDirichletSolution) {
  const SeparableSolution s = build_nontrivial_solution(period5(), 1);
  EXPECT_EQ(s.N, 5);
  EXPECT_EQ(s.m, 1);
  EXPECT_LT(s.boundary_residual, 1e-8);
  EXPECT_GT(s.interior_magnitude, 0.1);
  EXPECT_LE(s.interior_magnitude, 2.0 + 1e-12);
}

TEST(Separable, DistinctHarmonicsAreIndependent) {
  const EllipticParams p = period5();
  std::vector<SeparableSolution> sols;
  for (int m = 1; m <= 3; ++m) {
    sols.push_back(build_nontrivial_solution(p, m));
    EXPECT_LT(sols.back().boundary_residual, 1e-8) << m;
  }
  EXPECT_GT(gram_determinant(sols, curve_of(p)), 1e-6);
  // a repeated harmonic makes the Gram matrix singular
  EXPECT_LT(std::fabs(gram_determinant({sols[0], sols[0]}, curve_of(p))), 1e-12);
}

TEST(Separable, RejectsTransitiveParamsAndBadHarmonics) {
  const EllipticParams generic = fit_params(EulerBaxterCurve{1.0 / 3.0, -1.4});
  EXPECT_THROW(build_nontrivial_solution(generic, 1), std::domain_error);
  EXPECT_THROW(build_nontrivial_solution(period5(), 0), std::invalid_argument);
}

TEST(Separable, InteriorGridIsInsideTheOval) {
  const EulerBaxterCurve c = curve_of(period5());
  const InteriorGrid g = interior_grid(c, 40);
  ASSERT_GT(g.x.size(), 100u);
  for (std::size_t i = 0; i < g.x.size(); ++i) EXPECT_LT(eval_curve(c, g.x[i], g.y[i]), 0.0);
}

TEST(Neumann, ConormalTraceVanishesAndPsiIsNonconstant) {
  for (int N : {3, 5, 8}) {
    const EllipticParams p = periodic_params(0.4, 1, N);
    const SeparableSolution phi = build_nontrivial_solution(p, 1);
    const SeparableSolution psi = dirichlet_to_neumann(phi);
    EXPECT_LT(psi.conormal_trace, 1e-7) << N;
    EXPECT_GT(psi.interior_variation, 0.1);
    EXPECT_EQ(psi.g_factor, 1.0);
    EXPECT_LE(psi.conormal_trace, 10.0 * std::max(tangential_derivative(phi), 1e-12));
  }
}

TEST(Neumann, GateAndInvolution) {
  SeparableSolution phi = build_nontrivial_solution(period5(), 2);
  const SeparableSolution twice = dirichlet_to_neumann(dirichlet_to_neumann(phi));
  EXPECT_EQ(twice.g_factor, phi.g_factor);
  EXPECT_EQ(solution_value(twice, 0.9, 1.1), solution_value(phi, 0.9, 1.1));
  phi.boundary_residual = 1e-3;
  EXPECT_THROW(dirichlet_to_neumann(phi), std::domain_error);
}

TEST(Neumann, CsvExport) {
  const EllipticParams p = period5();
  std::ostringstream os;
  write_solution_csv(os, build_nontrivial_solution(p, 1), curve_of(p), 10);
  EXPECT_EQ(os.str().substr(0, 8), "x,y,phi\n");
}

}  // namespace
