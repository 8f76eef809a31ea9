// poncelet: periodicity analysis of Euler-Baxter curves.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "poncelet/analysis.hpp"
#include "poncelet/report.hpp"

namespace {

using namespace poncelet;

constexpr int kExitAgree = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDisagree = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

/// "lo:hi:step" as exact rationals, hi inclusive.
std::vector<Rational> parse_range(const std::string& flag, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError(flag + ": expected lo:hi:step");
  const Rational lo = parse_rational(flag, parts[0]), hi = parse_rational(flag, parts[1]),
                 step = parse_rational(flag, parts[2]);
  if (step.sign() <= 0) throw UsageError(flag + ": step must be positive");
  if (hi < lo) throw UsageError(flag + ": hi must be >= lo");
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

/// Comma-separated coefficients, highest degree first.
Polynomial<Rational> parse_poly(const std::string& text) {
  std::vector<Rational> hi_to_lo;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) hi_to_lo.push_back(parse_rational("--poly", part));
  if (hi_to_lo.empty()) throw UsageError("--poly: no coefficients");
  std::reverse(hi_to_lo.begin(), hi_to_lo.end());
  return Polynomial<Rational>(std::move(hi_to_lo));
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct CurveFlags {
  std::string a, b;
  std::optional<double> k;
  int period = 0;
  int m = 1;
  bool construct = false;
  bool positive_b = false;
};

void add_curve_flags(CLI::App* cmd, CurveFlags& f) {
  cmd->add_option("--a", f.a, "curve parameter a (decimal or p/q, exact)");
  cmd->add_option("--b", f.b, "curve parameter b (decimal or p/q, exact)");
  cmd->add_option("--k", f.k, "elliptic modulus for --construct");
  cmd->add_option("--period", f.period, "John period for --construct");
  cmd->add_option("--m", f.m, "rotation numerator for --construct (gcd(m, period) = 1)");
  cmd->add_flag("--construct", f.construct, "build the periodic curve from --k, --period, --m");
  cmd->add_flag("--positive-b", f.positive_b, "construct the b > 0 member of the family");
}

ExactCurve resolve_curve(const CurveFlags& f) {
  if (f.construct) {
    if (!f.k || f.period < 1) throw UsageError("--construct needs --k and --period");
    if (!(*f.k > 0 && *f.k < 1)) throw UsageError("--k must lie in (0, 1)");
    if (f.m < 1 || std::gcd(f.m, f.period) != 1) throw UsageError("--m must be >= 1 and coprime to --period");
    const EllipticParams p = periodic_params(*f.k, f.m, f.period, f.positive_b ? 1 : -1);
    return rationalize_curve(construct_curve(p.k, p.q));
  }
  if (f.a.empty() || f.b.empty()) throw UsageError("need --a and --b, or --construct with --k and --period");
  return {parse_rational("--a", f.a), parse_rational("--b", f.b)};
}

int cmd_analyze(const CurveFlags& cf, const AnalysisConfig& cfg, bool force, const std::string& format) {
  const ExactCurve curve = resolve_curve(cf);
  if (!curve.valid() && !force) throw UsageError("invalid curve: violates " + curve.violated_predicate());
  if (!curve.has_real_oval() && !force) throw UsageError("curve has no real oval: requires |b| > a + 1");
  const AnalysisReport r = analyze_curve(curve, cfg);
  if (format == "json") {
    print_json(to_json(r));
  } else {
    write_text(std::cout, r);
  }
  return r.all_agree ? kExitAgree : kExitDisagree;
}

int cmd_orbit(const CurveFlags& cf, std::size_t steps, const std::string& out, const std::string& poncelet_out,
              std::uint64_t seed, double tol) {
  const ExactCurve exact = resolve_curve(cf);
  if (!exact.has_real_oval()) throw UsageError("curve has no real oval: requires a > 0 and |b| > a + 1");
  const EulerBaxterCurve c = to_double(exact);
  Rng rng(seed);
  const JohnState s0 = oval_point(c, rng.uniform(0.05, 0.95));
  const OrbitRecord rec = generate_orbit(c, s0, steps, tol);
  {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    write_orbit_csv(os, rec);
  }
  if (!poncelet_out.empty()) {
    const auto traj = poncelet_trajectory(from_john(s0), to_double(build_pencil(exact)), steps);
    std::ofstream os(poncelet_out);
    if (!os) throw std::runtime_error("cannot write " + poncelet_out);
    write_trajectory_csv(os, traj);
  }
  print_json(orbit_summary(rec));
  return kExitAgree;
}

int cmd_sweep(const std::string& a_range, const std::string& b_range, int max_period, double tol,
              const std::string& out) {
  const auto as = parse_range("--a-range", a_range), bs = parse_range("--b-range", b_range);
  if (max_period < 3) throw UsageError("--max-period must be >= 3");
  struct Row {
    std::string verdict;
    int N = 0;
  };
  std::vector<Row> rows(as.size() * bs.size());
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PONCELET_THREADS")) threads = std::max(1, std::atoi(env));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      const ExactCurve c{as[i / bs.size()], bs[i % bs.size()]};
      Row& row = rows[i];
      if (!c.valid()) {
        row.verdict = "invalid";
        continue;
      }
      const CayleyReport rep = cayley_classify(c, max_period, tol);
      if (rep.degenerate) {
        row.verdict = "degenerate";
      } else if (auto np = cayley_period(rep)) {
        row.verdict = "periodic";
        row.N = *np;
      } else {
        row.verdict = "open";
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "a,b,verdict,N\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << as[i / bs.size()].to_decimal_string() << ',' << bs[i % bs.size()].to_decimal_string() << ',' << rows[i].verdict << ',' << rows[i].N << '\n';
  }
  return kExitAgree;
}

int cmd_pell(const std::string& poly, const std::string& sign, int dmax, double tol) {
  const Polynomial<Rational> f = parse_poly(poly);
  if (f.degree() != 4) throw UsageError("--poly: the quartic must have degree exactly 4");
  if (sign != "minus" && sign != "plus") throw UsageError("--sign must be minus or plus");
  const auto inst = PellAbelInstance::from_exact(f, sign == "minus" ? PellSign::Minus : PellSign::Plus);
  print_json(to_json(pell_construct(inst, dmax, tol)));
  return kExitAgree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodicity of Euler-Baxter curves x^2y^2 + 1 + a(x^2+y^2) + 2bxy = 0"};
  app.require_subcommand(1);

  CurveFlags analyze_curve_flags;
  AnalysisConfig cfg;
  bool force = false;
  std::string format = "text";
  auto* analyze = app.add_subcommand("analyze", "run every criterion and compare the verdicts");
  add_curve_flags(analyze, analyze_curve_flags);
  analyze->add_option("--max-period", cfg.max_period, "largest John period searched")->check(CLI::Range(1, 100000));
  analyze->add_option("--tol", cfg.tol, "closure tolerance")->check(CLI::PositiveNumber);
  analyze->add_option("--cayley-max", cfg.cayley_max, "largest Hankel index N")->check(CLI::Range(3, 200));
  analyze->add_option("--pell-dmax", cfg.pell_dmax, "degree bound for Pell-Abel")->check(CLI::Range(1, 1000));
  analyze->add_option("--harmonic", cfg.harmonic, "harmonic index of the boundary certificate")->check(CLI::Range(1, 1000));
  analyze->add_option("--seed", cfg.seed, "seed for the initial orbit point");
  analyze->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  analyze->add_flag("--force", force, "analyze even when the curve predicates fail");

  CurveFlags orbit_curve_flags;
  std::size_t steps = 1000;
  std::string out = "orbit.csv", poncelet_out;
  std::uint64_t orbit_seed = 1;
  double orbit_tol = 1e-8;
  auto* orbit = app.add_subcommand("orbit", "export a John orbit (and optionally the Poncelet trajectory) as CSV");
  add_curve_flags(orbit, orbit_curve_flags);
  orbit->add_option("--steps", steps, "number of involutions");
  orbit->add_option("--out", out, "John orbit CSV path");
  orbit->add_option("--poncelet-out", poncelet_out, "Poncelet trajectory CSV path");
  orbit->add_option("--seed", orbit_seed, "seed for the initial point");
  orbit->add_option("--tol", orbit_tol, "closure tolerance")->check(CLI::PositiveNumber);

  std::string a_range, b_range, sweep_out;
  int sweep_max = 12;
  double sweep_tol = 1e-8;
  auto* sweep = app.add_subcommand("sweep", "Cayley classification over an (a, b) grid as CSV");
  sweep->add_option("--a-range", a_range, "lo:hi:step")->required();
  sweep->add_option("--b-range", b_range, "lo:hi:step")->required();
  sweep->add_option("--max-period", sweep_max, "largest Hankel index N");
  sweep->add_option("--tol", sweep_tol, "threshold on the normalized determinant")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "CSV path (stdout when omitted)");

  std::string poly, sign = "minus";
  int dmax = 32;
  double pell_tol = 1e-8;
  auto* pell = app.add_subcommand("pell", "solve A^2 -+ f B^2 = 1 for a quartic f");
  pell->add_option("--poly", poly, "coefficients, highest degree first")->required();
  pell->add_option("--sign", sign, "minus (A^2 - fB^2) or plus (A^2 + fB^2)");
  pell->add_option("--dmax", dmax, "degree bound on A");
  pell->add_option("--tol", pell_tol, "residual tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_curve_flags, cfg, force, format);
    if (*orbit) return cmd_orbit(orbit_curve_flags, steps, out, poncelet_out, orbit_seed, orbit_tol);
    if (*sweep) return cmd_sweep(a_range, b_range, sweep_max, sweep_tol, sweep_out);
    if (*pell) return cmd_pell(poly, sign, dmax, pell_tol);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
