#pragma once

#include <array>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "poncelet/boundary.hpp"
#include "poncelet/cayley.hpp"
#include "poncelet/curve.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/john.hpp"
#include "poncelet/pell_abel.hpp"
#include "poncelet/tangent_chord.hpp"

namespace poncelet {

/// mt19937_64 output is fixed by the standard; the distributions are not,
/// so the unit interval map is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

struct AnalysisConfig {
  int max_period = 64;
  double tol = 1e-8;
  int cayley_max = 24;
  int pell_dmax = 32;
  int harmonic = 1;
  std::uint64_t seed = 1;
  std::size_t boundary_steps = 100000;
};

enum class Criterion { John, Poncelet, Cayley, PellAbel, Elliptic, Dirichlet };
inline constexpr std::array<Criterion, 6> kCriteria = {Criterion::John,     Criterion::Poncelet, Criterion::Cayley,
                                                        Criterion::PellAbel, Criterion::Elliptic, Criterion::Dirichlet};

inline const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::John: return "john";
    case Criterion::Poncelet: return "poncelet";
    case Criterion::Cayley: return "cayley";
    case Criterion::PellAbel: return "pell_abel";
    case Criterion::Elliptic: return "elliptic";
    case Criterion::Dirichlet: return "dirichlet";
  }
  return "?";
}

/// One criterion's answer translated to the John period it implies.
struct CriterionVerdict {
  /// "periodic", "open", "degenerate" or "error".
  std::string status = "open";
  /// Period in the criterion's own counting (Poncelet/Cayley count chords).
  int native_period = 0;
  /// Implied John period, when periodic.
  std::optional<int> john_period;
  /// John periods up to this value would have been detected.
  int horizon = 0;
  std::string message;
};

struct AnalysisReport {
  ExactCurve exact_curve;
  EulerBaxterCurve curve;
  bool valid = false;
  std::string violated_predicate;
  JohnState seed;

  PeriodResult john;
  ClosureResult poncelet;
  std::optional<CayleyReport> cayley;
  std::optional<PellConstructResult> pell;
  std::optional<PellSolvability> pell_solvable_verdict;
  std::optional<EllipticParams> elliptic;
  std::optional<LatticeResult> lattice;
  double elliptic_fit_residual = 0;
  std::optional<SeparableSolution> dirichlet;
  std::optional<SeparableSolution> neumann;
  std::optional<PropagationReport> propagation;

  std::array<CriterionVerdict, 6> verdicts;
  std::array<std::array<bool, 6>, 6> agreement{};
  bool all_agree = true;
};

/// Two verdicts agree when both are periodic with the same implied John
/// period, both are open, or one is open and the other's period lies beyond
/// the open one's horizon. Degenerate and error verdicts agree only with
/// themselves.
inline bool verdicts_agree(const CriterionVerdict& u, const CriterionVerdict& v) {
  const bool up = u.john_period.has_value(), vp = v.john_period.has_value();
  if (up && vp) return *u.john_period == *v.john_period;
  if (u.status == "open" && v.status == "open") return true;
  if (u.status == "open" && vp) return *v.john_period > u.horizon;
  if (v.status == "open" && up) return *u.john_period > v.horizon;
  return u.status == v.status;
}

inline std::array<std::array<bool, 6>, 6> agreement_matrix(const std::array<CriterionVerdict, 6>& v) {
  std::array<std::array<bool, 6>, 6> m{};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) m[i][j] = verdicts_agree(v[i], v[j]);
  }
  return m;
}

/// Max relative curve residual of the fitted sequence over n in [0, count).
inline double fit_residual(const EllipticParams& p, const EulerBaxterCurve& c, long count = 1000) {
  double worst = 0;
  for (const auto& s : generate_sequence(p, 0, count)) {
    worst = std::max(worst, std::fabs(eval_curve(c, s.x, s.y)) / curve_scale(c, s.x, s.y));
  }
  return worst;
}

/// Runs every criterion on the curve. Each stage records its own failure;
/// later stages still run.
inline AnalysisReport analyze_curve(const ExactCurve& exact, const AnalysisConfig& cfg) {
  AnalysisReport r;
  r.exact_curve = exact;
  r.curve = to_double(exact);
  r.valid = exact.valid();
  r.violated_predicate = exact.violated_predicate();
  auto fail = [](CriterionVerdict& v, const std::exception& e) {
    v.status = "error";
    v.message = e.what();
  };
  auto& V = r.verdicts;

  Rng rng(cfg.seed);
  try {
    r.seed = oval_point(r.curve, rng.uniform(0.05, 0.95));
  } catch (const std::exception& e) {
    for (auto& v : V) fail(v, e);
    r.agreement = agreement_matrix(V);
    r.all_agree = false;
    return r;
  }

  auto& john = V[static_cast<int>(Criterion::John)];
  try {
    r.john = detect_period(r.curve, r.seed, cfg.max_period, cfg.tol);
    john.horizon = cfg.max_period;
    if (r.john.closed) {
      john.status = "periodic";
      john.native_period = r.john.N;
      john.john_period = r.john.N;
    }
  } catch (const std::exception& e) {
    fail(john, e);
  }

  auto& ponc = V[static_cast<int>(Criterion::Poncelet)];
  try {
    const ConicPencil pencil = to_double(build_pencil(exact));
    r.poncelet = detect_closure(from_john(r.seed), pencil, 2 * cfg.max_period, cfg.tol);
    ponc.horizon = cfg.max_period;
    if (r.poncelet.closed) {
      ponc.status = "periodic";
      ponc.native_period = r.poncelet.N;
      ponc.john_period = john_period_from_poncelet(r.poncelet.N);
    }
  } catch (const std::exception& e) {
    fail(ponc, e);
  }

  auto& cay = V[static_cast<int>(Criterion::Cayley)];
  try {
    r.cayley = cayley_classify(exact, cfg.cayley_max, cfg.tol);
    cay.horizon = cfg.cayley_max / 2;
    if (r.cayley->degenerate) {
      cay.status = "degenerate";
    } else if (auto np = cayley_period(*r.cayley)) {
      cay.status = "periodic";
      cay.native_period = *np;
      cay.john_period = john_period_from_poncelet(*np);
    }
  } catch (const std::exception& e) {
    fail(cay, e);
  }

  auto& pell = V[static_cast<int>(Criterion::PellAbel)];
  try {
    const PellAbelInstance inst = reverse_link(build_pencil(exact).f);
    pell.horizon = cfg.pell_dmax;
    if (inst.degenerate) {
      pell.status = "degenerate";
    } else {
      r.pell = pell_construct(inst, cfg.pell_dmax, cfg.tol);
      if (r.pell->found) {
        pell.status = "periodic";
        pell.native_period = r.pell->solution.A.degree();
        pell.john_period = pell.native_period;
      }
      r.pell_solvable_verdict = pell_solvable(inst, cfg.cayley_max, cfg.tol);
    }
  } catch (const std::exception& e) {
    fail(pell, e);
  }

  auto& ell = V[static_cast<int>(Criterion::Elliptic)];
  try {
    r.elliptic = align_phase(fit_params(r.curve), r.seed.x, r.seed.y);
    r.elliptic_fit_residual = fit_residual(*r.elliptic, r.curve);
    r.lattice = lattice_period_test(*r.elliptic, cfg.max_period);
    ell.horizon = cfg.max_period;
    if (r.lattice->rational) {
      ell.status = "periodic";
      ell.native_period = r.lattice->N;
      ell.john_period = r.lattice->N;
    }
  } catch (const std::exception& e) {
    fail(ell, e);
  }

  auto& dir = V[static_cast<int>(Criterion::Dirichlet)];
  try {
    dir.horizon = cfg.max_period;
    if (r.lattice && r.lattice->rational) {
      // the certificate lives on the exact lattice point nearest the fit
      EllipticParams p = periodic_params(r.elliptic->k, static_cast<int>(std::labs(r.lattice->m2)), r.lattice->N,
                                         params_b_sign(*r.elliptic));
      r.dirichlet = build_nontrivial_solution(p, cfg.harmonic, cfg.max_period);
      if (r.dirichlet->boundary_residual < 1e-8 && r.dirichlet->interior_magnitude > 0.1) {
        dir.status = "periodic";
        dir.native_period = r.dirichlet->N;
        dir.john_period = r.dirichlet->N;
        r.neumann = dirichlet_to_neumann(*r.dirichlet);
      } else {
        dir.message = "separable solution failed the residual or magnitude gate";
      }
    } else {
      r.propagation = propagate_boundary_values(r.curve, r.seed, cfg.boundary_steps, 1e-9);
      if (r.propagation->closed) {
        dir.status = "periodic";
        dir.native_period = r.propagation->period;
        dir.john_period = r.propagation->period;
      } else if (!r.propagation->forced_constant) {
        dir.message = "orbit neither closed nor dense at the 1e-2 net";
      }
    }
  } catch (const std::exception& e) {
    fail(dir, e);
  }

  r.agreement = agreement_matrix(V);
  for (const auto& row : r.agreement) {
    for (bool b : row) r.all_agree = r.all_agree && b;
  }
  return r;
}

}  // namespace poncelet
