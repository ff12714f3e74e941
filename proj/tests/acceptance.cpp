// Acceptance harness: twelve go/no-go checks covering the numerical claims
// this toolkit exists to verify.  Each criterion prints exactly one
// [PASS]/[FAIL] line; the process exits 0 only when every criterion holds.
//
// Scenario-based criteria run in-process (threads=8, deterministic) and gate
// on the pass booleans the scenario itself computes against its pinned
// tolerances.  The final criterion shells out to the installed CLI to prove
// end-to-end byte determinism across thread counts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "radon/curve.hpp"
#include "radon/errors.hpp"
#include "radon/grassmann.hpp"
#include "radon/lorentz.hpp"
#include "radon/math_util.hpp"
#include "radon/profiles.hpp"
#include "radon/report.hpp"
#include "radon/rng.hpp"
#include "radon/scenarios.hpp"

using namespace radon;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!ok) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int g_failures = 0;

void report_line(int number, const char* name, const Outcome& out) {
  if (!out.ok) ++g_failures;
  std::printf("[%s] criterion %d: %s%s%s\n", out.ok ? "PASS" : "FAIL", number,
              name, out.detail.empty() ? "" : " — ", out.detail.c_str());
  std::fflush(stdout);
}

ScenarioConfig base_cfg(const std::string& name, int n, int d, int k = 0) {
  ScenarioConfig cfg;
  cfg.scenario = name;
  cfg.n = n;
  cfg.d = d;
  cfg.k = k;
  cfg.seed = 1;
  cfg.threads = 8;
  cfg.deterministic = true;
  return cfg;
}

// Requires every listed pass flag to exist and hold in the scenario report.
void require_pass(Outcome& out, const RatioReport& rep,
                  std::initializer_list<const char*> keys,
                  const std::string& label) {
  for (const char* key : keys) {
    auto it = rep.pass.find(key);
    if (it == rep.pass.end())
      out.fail(label + ": missing pass flag '" + key + "'");
    else if (!it->second)
      out.fail(label + ": '" + key + "' failed");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return in ? buf.str() : std::string();
}

// ---------------------------------------------------------------------- 1
// Closed-form step transform vs adaptive quadrature on seeded families.
Outcome criterion_closed_vs_quadrature() {
  Outcome out;
  const double t_start = now_seconds();
  const int geoms[5][3] = {{3, 2, 0}, {4, 2, 0}, {4, 3, 1}, {5, 3, 0},
                           {6, 4, 2}};
  std::vector<double> grid(50);
  for (int j = 0; j < 50; ++j) grid[j] = 4.5 * j / 49.0;
  double worst_rel = 0.0, worst_abs = 0.0;
  long long checked = 0;
  for (int g = 0; g < 5; ++g) {
    GrassmannGeometry geom(geoms[g][0], geoms[g][1], geoms[g][2]);
    for (int i = 0; i < 100; ++i) {
      StepProfile profile = random_step_profile(
          derive_seed(1000 + static_cast<std::uint64_t>(g), i), 1 + i % 8,
          0.0, 4.0);
      TransformCurve curve = abel_numeric(geom, profile, grid);
      for (int j = 0; j < 50; ++j) {
        const double exact = abel_step_closed(geom, profile, grid[j]);
        const double num = curve.samples()[j].value;
        const double diff = std::abs(num - exact);
        ++checked;
        if (std::abs(exact) > 1e-12) {
          worst_rel = std::max(worst_rel, diff / std::abs(exact));
          if (diff / std::abs(exact) > 1e-8)
            out.fail(geom.tag() + " profile " + std::to_string(i) + " s=" +
                     fmt(grid[j]) + " rel err " + fmt(diff / std::abs(exact)));
        } else {
          worst_abs = std::max(worst_abs, diff);
          if (diff > 1e-10)
            out.fail(geom.tag() + " profile " + std::to_string(i) + " s=" +
                     fmt(grid[j]) + " abs err " + fmt(diff));
        }
        if (!out.ok) return out;
      }
    }
  }
  const double elapsed = now_seconds() - t_start;
  if (elapsed > 120.0) out.fail("runtime " + fmt(elapsed) + "s > 120s");
  out.note(std::to_string(checked) + " comparisons, worst rel " +
           fmt(worst_rel) + ", worst abs " + fmt(worst_abs) + ", " +
           fmt(elapsed) + "s");
  return out;
}

// ---------------------------------------------------------------------- 2
// The two Lorentz-norm expressions agree; indicator norms are exact.
Outcome criterion_lorentz_identity() {
  Outcome out;
  const RadialMeasure lebesgue = RadialMeasure::lebesgue();
  const RadialMeasure flat3 = RadialMeasure::power(4.0 * kPi, 2.0);
  const double ps[4] = {1.0, 1.5, 2.0, 3.0};
  const double inf = std::numeric_limits<double>::infinity();
  double worst_route = 0.0, worst_ind = 0.0;
  long long norms = 0;
  for (int i = 0; i < 1000; ++i) {
    CounterRng rng(derive_seed(4000, static_cast<std::uint64_t>(i)));
    const int count = 1 + static_cast<int>(rng.bits(0) % 8);
    std::vector<double> cuts(2 * static_cast<std::size_t>(count));
    for (std::size_t j = 0; j < cuts.size(); ++j)
      cuts[j] = rng.uniform(10 + j, 0.0, 4.0);
    std::sort(cuts.begin(), cuts.end());
    bool distinct = true;
    for (std::size_t j = 1; j < cuts.size(); ++j)
      distinct = distinct && cuts[j - 1] < cuts[j];
    if (!distinct) continue;  // measure-zero tie; skip the draw
    std::vector<Interval> intervals(static_cast<std::size_t>(count));
    std::vector<double> heights(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) {
      intervals[static_cast<std::size_t>(c)] = {cuts[2 * c], cuts[2 * c + 1]};
      heights[static_cast<std::size_t>(c)] =
          rng.uniform(100 + static_cast<std::uint64_t>(c), 0.1, 5.0);
    }
    StepProfile profile(intervals, heights);
    StepProfile ind = StepProfile::indicator(intervals);
    for (const RadialMeasure* meas : {&lebesgue, &flat3}) {
      for (double p : ps) {
        for (double q : {1.0, 2.0, p, inf}) {
          LorentzIndex index(p, q);
          const double a = lorentz_norm(profile, *meas, index);
          const double b = lorentz_norm_via_distribution(profile, *meas,
                                                         index);
          const double rel = std::abs(a - b) / std::max(a, 1e-300);
          worst_route = std::max(worst_route, rel);
          ++norms;
          if (rel > 1e-9) {
            out.fail("route mismatch " + fmt(rel) + " at profile " +
                     std::to_string(i) + " p=" + fmt(p) + " q=" + fmt(q));
            return out;
          }
        }
        const double n1 = lorentz_norm(ind, *meas, LorentzIndex(p, 1.0));
        const double exact = std::pow(weighted_measure(ind, *meas), 1.0 / p);
        const double rel = std::abs(n1 - exact) / exact;
        worst_ind = std::max(worst_ind, rel);
        if (rel > 1e-12) {
          out.fail("indicator norm off by " + fmt(rel) + " at profile " +
                   std::to_string(i) + " p=" + fmt(p));
          return out;
        }
      }
    }
  }
  out.note(std::to_string(norms) + " norm pairs, worst route diff " +
           fmt(worst_route) + ", worst indicator diff " + fmt(worst_ind));
  return out;
}

// ---------------------------------------------------------------------- 3
Outcome criterion_superadditivity() {
  Outcome out;
  ScenarioConfig cfg = base_cfg("lemma21", 3, 2);
  cfg.tuple_count = 10000;
  RatioReport rep = run_scenario(cfg);
  require_pass(out, rep, {"no_violations"}, "lemma21");
  out.note("10000 tuples, 0 violations");
  return out;
}

// ---------------------------------------------------------------------- 4
Outcome criterion_flat_endpoint() {
  Outcome out;
  const int geoms[4][3] = {{3, 2, 0}, {4, 2, 0}, {4, 3, 1}, {5, 3, 0}};
  double sup = 0.0, max_slope = -1e300;
  for (const auto& g : geoms) {
    ScenarioConfig cfg = base_cfg("endpoint-grassmann", g[0], g[1], g[2]);
    RatioReport rep = run_scenario(cfg);
    const std::string label = rep.parameters.at("geometry").get<std::string>();
    require_pass(out, rep, {"finite_sup", "slope", "accuracy_budget"}, label);
    if (g[0] == 3 && g[1] == 2 && g[2] == 0)
      require_pass(out, rep, {"fixture"}, label);
    sup = std::max(sup, rep.sup_ratio);
    max_slope = std::max(max_slope, rep.trend.slope);
  }
  out.note("4 geometries, sup " + fmt(sup) + ", max slope " + fmt(max_slope));
  return out;
}

// ---------------------------------------------------------------------- 5
Outcome criterion_hyperbolic_endpoint() {
  Outcome out;
  const int geoms[4][2] = {{3, 2}, {4, 2}, {4, 3}, {5, 3}};
  double sup = 0.0, max_slope = -1e300;
  for (const auto& g : geoms) {
    ScenarioConfig cfg = base_cfg("endpoint-hyperbolic", g[0], g[1]);
    RatioReport rep = run_scenario(cfg);
    const std::string label = rep.parameters.at("geometry").get<std::string>();
    require_pass(out, rep,
                 {"finite_sup", "slope", "slope_lorentz", "chain",
                  "accuracy_budget"},
                 label);
    if (g[0] == 3 && g[1] == 2) require_pass(out, rep, {"fixture"}, label);
    sup = std::max(sup, rep.sup_ratio);
    max_slope = std::max(max_slope, rep.trend.slope);
  }
  out.note("4 geometries, chain everywhere, sup " + fmt(sup) +
           ", max slope " + fmt(max_slope));
  return out;
}

// ---------------------------------------------------------------------- 6
Outcome criterion_weak_type() {
  Outcome out;
  for (const char* name : {"weak-hyperbolic", "weak-sphere"}) {
    const double t0 = now_seconds();
    ScenarioConfig cfg = base_cfg(name, 3, 2);
    RatioReport rep = run_scenario(cfg);
    const double elapsed = now_seconds() - t0;
    require_pass(out, rep,
                 {"finite_sup", "slope", "witness", "accuracy_budget"}, name);
    if (elapsed > 60.0)
      out.fail(std::string(name) + " runtime " + fmt(elapsed) + "s > 60s");
    out.note(std::string(name) + " sup " + fmt(rep.sup_ratio) + " in " +
             fmt(elapsed) + "s");
  }
  return out;
}

// ---------------------------------------------------------------------- 7
Outcome criterion_divergence_probe() {
  Outcome out;
  ScenarioConfig cfg = base_cfg("divergence-probe", 3, 2);
  RatioReport rep = run_scenario(cfg);
  require_pass(out, rep, {"log_growth", "subcritical_cauchy"},
               "divergence-probe");
  out.note("critical growth log-linear, subcritical tail Cauchy");
  return out;
}

// ---------------------------------------------------------------------- 8
Outcome criterion_flat_caps() {
  Outcome out;
  const int geoms[2][2] = {{2, 1}, {3, 2}};
  for (const auto& g : geoms) {
    ScenarioConfig cfg = base_cfg("counterexample-flat", g[0], g[1]);
    RatioReport rep = run_scenario(cfg);
    const std::string label = rep.parameters.at("geometry").get<std::string>();
    require_pass(out, rep, {"sup_exact", "norm_vanishes", "norm_monotone"},
                 label);
  }
  out.note("2 geometries, sup pinned at 1, norms below 1e-2 by step 20");
  return out;
}

// ---------------------------------------------------------------------- 9
Outcome criterion_cap_rates() {
  Outcome out;
  const double t0 = now_seconds();
  struct Row {
    int n, d;
    double p;
  };
  for (const Row& r : {Row{2, 1, 1.0}, Row{3, 2, 1.0}, Row{4, 2, 1.5}}) {
    ScenarioConfig cfg = base_cfg("counterexample-cap", r.n, r.d);
    cfg.p = r.p;
    RatioReport rep = run_scenario(cfg);
    const std::string label = rep.parameters.at("geometry").get<std::string>() +
                              " p=" + fmt(r.p);
    require_pass(out, rep, {"norm_slope", "lower_slope"}, label);
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed > 180.0) out.fail("runtime " + fmt(elapsed) + "s > 180s");
  out.note("3 exponent triples, " + fmt(elapsed) + "s");
  return out;
}

// --------------------------------------------------------------------- 10
Outcome criterion_lp_lq() {
  Outcome out;
  for (int g = 0; g < 2; ++g) {
    ScenarioConfig cfg = base_cfg("lp-lq-grassmann", g == 0 ? 3 : 4, 2, 0);
    RatioReport rep = run_scenario(cfg);
    const std::string label = rep.parameters.at("geometry").get<std::string>();
    require_pass(out, rep,
                 {"finite_sup", "slope", "dilation", "accuracy_budget"},
                 label);
  }
  {
    ScenarioConfig cfg = base_cfg("lp-lq-hyperbolic", 3, 2);
    RatioReport rep = run_scenario(cfg);
    require_pass(out, rep, {"finite_sup", "slope", "accuracy_budget"},
                 "lp-lq-hyperbolic");
  }
  {
    ScenarioConfig cfg = base_cfg("lp-lq-sphere", 3, 2);
    RatioReport rep = run_scenario(cfg);
    require_pass(out, rep,
                 {"finite_sup", "slope", "slope_weighted", "accuracy_budget"},
                 "lp-lq-sphere");
  }
  {
    ScenarioConfig cfg = base_cfg("interp-kappa", 3, 2);
    RatioReport rep = run_scenario(cfg);
    require_pass(out, rep, {"finite_sup", "slope_kappa", "accuracy_budget"},
                 "interp-kappa");
  }
  out.note("dilation invariant, all families bounded, kappa sweep bounded");
  return out;
}

// --------------------------------------------------------------------- 11
Outcome criterion_monte_carlo() {
  Outcome out;
  for (int d : {2, 3}) {
    ScenarioConfig cfg = base_cfg("catalan", d + 1, d);
    cfg.mc_samples = 1000000;
    RatioReport rep = run_scenario(cfg);
    require_pass(out, rep, {"three_sigma"}, "catalan d=" + std::to_string(d));
  }
  out.note("d=2 and d=3, every moment within 3 standard errors at N=1e6");
  return out;
}

// --------------------------------------------------------------------- 12
Outcome criterion_cli_determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.fail("no --cli path supplied");
    return out;
  }
  const std::string f1 = "/tmp/radon_accept_threads1.json";
  const std::string f8 = "/tmp/radon_accept_threads8.json";
  std::remove(f1.c_str());
  std::remove(f8.c_str());
  auto run = [&](int threads, const std::string& file) {
    const std::string cmd = "\"" + cli +
                            "\" verify --scenario endpoint-grassmann --seed 1"
                            " --deterministic --threads " +
                            std::to_string(threads) + " --out " + file +
                            " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  if (run(1, f1) != 0) out.fail("CLI run with 1 thread did not pass");
  if (run(8, f8) != 0) out.fail("CLI run with 8 threads did not pass");
  const std::string bytes1 = read_bytes(f1);
  const std::string bytes8 = read_bytes(f8);
  if (bytes1.empty() || bytes8.empty())
    out.fail("report files missing or empty");
  else if (bytes1 != bytes8)
    out.fail("reports differ between 1 and 8 threads");
  else
    out.note(std::to_string(bytes1.size()) +
             " byte report identical at 1 and 8 threads");
  std::remove(f1.c_str());
  std::remove(f8.c_str());
  return out;
}

Outcome guarded(Outcome (*fn)()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    Outcome out;
    out.fail(std::string("exception: ") + e.what());
    return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  report_line(1, "flat-space transform: closed form matches quadrature",
              guarded(criterion_closed_vs_quadrature));
  report_line(2, "Lorentz norm routes agree; indicator norms exact",
              guarded(criterion_lorentz_identity));
  report_line(3, "stacked-interval superadditivity holds on random tuples",
              guarded(criterion_superadditivity));
  report_line(4, "flat-space endpoint ratios uniform in the annulus count",
              guarded(criterion_flat_endpoint));
  report_line(5, "hyperbolic endpoint ratios uniform; norm chain ordered",
              guarded(criterion_hyperbolic_endpoint));
  report_line(6, "weak-type ratios bounded; witness curves match oracles",
              guarded(criterion_weak_type));
  report_line(7, "critical-exponent integral grows like log T",
              guarded(criterion_divergence_probe));
  report_line(8, "spherical flat caps: sup stays 1 while norms vanish",
              guarded(criterion_flat_caps));
  report_line(9, "spherical cap norms decay at the predicted rates",
              guarded(criterion_cap_rates));
  report_line(10, "strong-type families bounded; dilation and kappa sweeps",
              guarded(criterion_lp_lq));
  report_line(11, "Monte Carlo plane averages match 1-D quadrature",
              guarded(criterion_monte_carlo));
  {
    Outcome out;
    try {
      out = criterion_cli_determinism(cli);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    report_line(12, "CLI reports byte-identical across thread counts", out);
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 12 criteria FAILED\n", g_failures);
  return 1;
}
