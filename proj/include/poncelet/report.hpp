#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "poncelet/analysis.hpp"

namespace poncelet {

using Json = nlohmann::ordered_json;

/// Non-finite doubles become null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
Json poly_json(const Polynomial<T>& p) {
  Json arr = Json::array();
  for (const auto& c : p.coefficients()) {
    if constexpr (std::is_same_v<T, Rational>) {
      arr.push_back(c.to_string());
    } else {
      arr.push_back(number(c));
    }
  }
  return arr;
}

inline Json to_json(const ExactCurve& c) { return {{"a", c.a.to_string()}, {"b", c.b.to_string()}}; }
inline Json to_json(const EulerBaxterCurve& c) { return {{"a", c.a}, {"b", c.b}}; }

/// {"closure": "closed"|"open", "N", "max_residual"}.
inline Json orbit_summary(const OrbitRecord& rec) {
  return {{"closure", rec.closure.closed ? "closed" : "open"},
          {"N", rec.closure.N},
          {"half_steps", rec.closure.half_steps},
          {"max_residual", number(rec.max_residual)},
          {"tangent", rec.tangent}};
}

inline Json to_json(const PeriodResult& p) {
  return {{"closure", p.closed ? "closed" : "open"},
          {"N", p.N},
          {"half_steps", p.half_steps},
          {"return_distance", number(p.return_distance)},
          {"min_distance", number(p.min_distance)},
          {"tangent", p.tangent}};
}

inline Json to_json(const ClosureResult& p) {
  return {{"closure", p.closed ? "closed" : "open"},
          {"N", p.N},
          {"return_distance", number(p.return_distance)},
          {"min_distance", number(p.min_distance)}};
}

/// {"f": [...], "verdicts": [{"N", "det", "zero", "nu"}], ...}.
inline Json to_json(const CayleyReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"N", v.N}, {"det", v.det.to_string()}, {"zero", v.zero}, {"nu", number(v.nu)}});
  }
  Json j = {{"f", poly_json(r.f)}, {"verdicts", verdicts}, {"degenerate", r.degenerate}};
  j["exact_period"] = r.exact_period ? Json(*r.exact_period) : Json(nullptr);
  j["numeric_period"] = r.numeric_period ? Json(*r.numeric_period) : Json(nullptr);
  return j;
}

/// {"A": [...], "B": [...], "residual": number or "0"}.
inline Json to_json(const PellConstructResult& r) {
  Json j = {{"found", r.found}};
  if (!r.found) return j;
  if (r.exact) {
    j["A"] = poly_json(r.exact->A);
    j["B"] = poly_json(r.exact->B);
    j["residual"] = "0";
  } else {
    j["A"] = poly_json(r.solution.A);
    j["B"] = poly_json(r.solution.B);
    j["residual"] = number(r.solution.residual);
  }
  return j;
}

inline Json complex_json(const Complex& z) { return Json::array({number(z.real()), number(z.imag())}); }

/// {"k", "q", "n0", "K", "Kprime"}; complex values as [re, im].
inline Json to_json(const EllipticParams& p) {
  return {{"k", number(p.k)}, {"q", complex_json(p.q)}, {"n0", complex_json(p.n0)}, {"K", number(p.K)},
          {"Kprime", number(p.Kprime)}};
}

/// {"boundary_residual", "interior_magnitude", "N", "m"}.
inline Json to_json(const SeparableSolution& s) {
  return {{"boundary_residual", number(s.boundary_residual)},
          {"interior_magnitude", number(s.interior_magnitude)},
          {"N", s.N},
          {"m", s.m},
          {"conormal_trace", number(s.conormal_trace)}};
}

inline Json to_json(const PropagationReport& p) {
  return {{"closed", p.closed},         {"period", p.period},
          {"loop_defect", number(p.loop_defect)}, {"pinned", p.pinned},
          {"max_x_gap", number(p.max_x_gap)},     {"forced_constant", p.forced_constant}};
}

inline Json to_json(const CriterionVerdict& v) {
  Json j = {{"status", v.status}, {"native_period", v.native_period}};
  j["john_period"] = v.john_period ? Json(*v.john_period) : Json(nullptr);
  j["horizon"] = v.horizon;
  if (!v.message.empty()) j["message"] = v.message;
  return j;
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["curve"] = to_json(r.exact_curve);
  j["valid"] = r.valid;
  if (!r.valid) j["violated_predicate"] = r.violated_predicate;
  j["seed"] = {{"x", number(r.seed.x)}, {"y", number(r.seed.y)}};
  Json verdicts;
  for (Criterion c : kCriteria) verdicts[criterion_name(c)] = to_json(r.verdicts[static_cast<int>(c)]);
  j["verdicts"] = verdicts;
  Json details;
  details["john"] = to_json(r.john);
  details["poncelet"] = to_json(r.poncelet);
  if (r.cayley) details["cayley"] = to_json(*r.cayley);
  if (r.pell) details["pell_abel"] = to_json(*r.pell);
  if (r.pell_solvable_verdict) {
    const auto& s = *r.pell_solvable_verdict;
    details["pell_solvable"] = {
        {"verdict", s.verdict == PellVerdict::Solvable ? "solvable"
                    : s.verdict == PellVerdict::Degenerate ? "degenerate"
                                                           : "unsolvable"},
        {"N", s.N}};
  }
  if (r.elliptic) {
    Json e = to_json(*r.elliptic);
    e["fit_residual"] = number(r.elliptic_fit_residual);
    if (r.lattice) {
      e["lattice"] = {{"rational", r.lattice->rational}, {"N", r.lattice->N},   {"m1", r.lattice->m1},
                      {"m2", r.lattice->m2},             {"best_N", r.lattice->best_N},
                      {"best_deviation", number(r.lattice->best_deviation)}};
    }
    details["elliptic"] = e;
  }
  if (r.dirichlet) details["dirichlet"] = to_json(*r.dirichlet);
  if (r.neumann) details["neumann"] = to_json(*r.neumann);
  if (r.propagation) details["propagation"] = to_json(*r.propagation);
  j["details"] = details;
  Json names = Json::array();
  for (Criterion c : kCriteria) names.push_back(criterion_name(c));
  Json rows = Json::array();
  for (const auto& row : r.agreement) rows.push_back(Json(std::vector<bool>(row.begin(), row.end())));
  j["agreement"] = {{"criteria", names}, {"matrix", rows}};
  j["all_agree"] = r.all_agree;
  return j;
}

/// Plain-text rendering; disagreements are listed last, in capitals.
inline void write_text(std::ostream& os, const AnalysisReport& r) {
  os << "curve a=" << r.exact_curve.a << " b=" << r.exact_curve.b << (r.valid ? "" : " (invalid: " + r.violated_predicate + ")")
     << "\n";
  for (Criterion c : kCriteria) {
    const auto& v = r.verdicts[static_cast<int>(c)];
    os << "  " << criterion_name(c) << ": " << v.status;
    if (v.john_period) os << " john_period=" << *v.john_period << " native=" << v.native_period;
    if (!v.john_period && v.status == "open") os << " (horizon " << v.horizon << ")";
    if (!v.message.empty()) os << " [" << v.message << "]";
    os << "\n";
  }
  if (r.all_agree) {
    os << "all criteria agree\n";
    return;
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      if (!r.agreement[i][j]) {
        os << "DISAGREEMENT: " << criterion_name(kCriteria[i]) << " vs " << criterion_name(kCriteria[j]) << "\n";
      }
    }
  }
}

}  // namespace poncelet
