// radon: totally geodesic Radon transforms of radial functions on the
// affine Grassmannian, real hyperbolic space, and the sphere.
//
//   radon transform  sample the transform of a profile to a curve CSV
//   radon norm       Lorentz norm of a profile under the domain measure
//   radon verify     run a named verification scenario, emit a report
//
// Profile coordinate conventions (see README):
//   grassmann   functions of the distance r >= 0
//   hyperbolic  step intervals in t = cosh(r) >= 1; tables in r >= 0
//   sphere      functions of u = cos(r) in [0, 1]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "radon/curve.hpp"
#include "radon/errors.hpp"
#include "radon/grassmann.hpp"
#include "radon/hyperbolic.hpp"
#include "radon/lorentz.hpp"
#include "radon/math_util.hpp"
#include "radon/profiles.hpp"
#include "radon/report.hpp"
#include "radon/scenarios.hpp"
#include "radon/sphere.hpp"

namespace {

using namespace radon;

std::vector<double> make_grid(double lo, double hi, int points) {
  if (points < 2) throw ArgumentError("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

double profile_support_upper(const AnyProfile& profile) {
  return std::visit([](const auto& p) { return p.support_upper(); }, profile);
}

int run_transform(const std::string& geometry, int n, int d, int k,
                  const std::string& profile_path, int grid, double s_max,
                  const std::string& out) {
  AnyProfile profile = load_profile(profile_path);
  const double b = profile_support_upper(profile);
  TransformCurve curve("unset", {{0.0, 0.0, 0.0}});
  if (geometry == "grassmann") {
    GrassmannGeometry geom(n, d, k);
    double hi = s_max > 0.0
                    ? s_max
                    : (std::isfinite(b) ? std::max(4.0, 1.5 * b) : 8.0);
    std::vector<double> s = make_grid(0.0, hi, grid);
    curve = std::visit(
        [&](const auto& p) { return abel_numeric(geom, p, s); }, profile);
  } else if (geometry == "hyperbolic") {
    HyperbolicGeometry geom(n, d);
    double hi;
    if (s_max > 0.0)
      hi = s_max;
    else if (std::holds_alternative<StepProfile>(profile))
      hi = std::max(3.0, 1.2 * std::acosh(std::max(b, 1.0)));
    else
      hi = std::isfinite(b) ? std::max(3.0, 1.2 * b) : 8.0;
    std::vector<double> s = make_grid(0.0, hi, grid);
    curve = std::visit(
        [&](const auto& p) { return abel_numeric(geom, p, s); }, profile);
  } else if (geometry == "sphere") {
    SphereGeometry geom(n, d);
    double hi = s_max > 0.0 ? std::min(s_max, kPi / 2.0) : kPi / 2.0;
    std::vector<double> s = make_grid(0.0, hi, grid);
    curve = std::visit(
        [&](const auto& p) { return abel_numeric(geom, p, s); }, profile);
  } else {
    throw ArgumentError("unknown geometry '" + geometry + "'");
  }
  emit_curve_csv(curve, out);
  std::printf("wrote %s: %zu samples, sup value %.17g\n", out.c_str(),
              curve.size(), curve.max_value());
  if (!curve.all_finite())
    std::printf("note: some grid points were flagged divergent (+inf)\n");
  return 0;
}

int run_norm(const std::string& geometry, int n, int d, int k, double p,
             double q, const std::string& profile_path, int grid) {
  AnyProfile profile = load_profile(profile_path);
  LorentzIndex index(p, q);
  auto to_step = [&](const char* what) -> StepProfile {
    if (const StepProfile* s = std::get_if<StepProfile>(&profile)) return *s;
    const RadialProfile& r = std::get<RadialProfile>(profile);
    std::optional<StepProfile> qp = quantize_profile(r, grid);
    if (!qp)
      throw ArgumentError(std::string("profile vanishes on the ") + what +
                          " grid; its norm is 0");
    return *qp;
  };
  double value = 0.0;
  if (geometry == "grassmann") {
    GrassmannGeometry geom(n, d, k);
    value = domain_lorentz_norm(geom, to_step("quantization"), index);
  } else if (geometry == "hyperbolic") {
    HyperbolicGeometry geom(n, d);
    if (std::holds_alternative<StepProfile>(profile)) {
      value = hn_lorentz_norm(std::get<StepProfile>(profile), geom, index);
    } else {
      // Tables are functions of r; quantize there, then map annuli to t.
      value = hn_lorentz_norm(hyperbolic_step_from_r(to_step("quantization")),
                              geom, index);
    }
  } else if (geometry == "sphere") {
    SphereGeometry geom(n, d);
    value = sphere_lorentz_norm(to_step("quantization"), geom, index);
  } else {
    throw ArgumentError("unknown geometry '" + geometry + "'");
  }
  std::printf("%.17g\n", value);
  return 0;
}

int run_verify(const ScenarioConfig& cfg, const std::string& out) {
  RatioReport rep = run_scenario(cfg);
  std::printf("scenario %s (seed %llu)\n", rep.scenario.c_str(),
              static_cast<unsigned long long>(rep.seed));
  for (const auto& [key, ok] : rep.pass)
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", key.c_str());
  std::printf("sup_ratio %.17g\n", rep.sup_ratio);
  std::printf("trend slope %.6g +/- %.6g\n", rep.trend.slope,
              rep.trend.stderr_slope);
  std::printf("accuracy errors %d\n", rep.accuracy_errors);
  if (!out.empty()) {
    emit_report(rep, out);
    std::printf("report written to %s\n", out.c_str());
  }
  return report_all_pass(rep) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerics for totally geodesic Radon transforms of radial functions"};
  app.require_subcommand(1);

  std::string geometry, profile_path, out_path, config_path, scenario;
  int n = 3, d = 2, k = 0, grid = 256, norm_grid = 16384, threads = 1;
  double p = 1.0, q = 1.0, s_max = 0.0;
  std::uint64_t seed = 1;
  bool deterministic = false;

  CLI::App* t = app.add_subcommand(
      "transform", "sample the transform of a radial profile to CSV");
  t->add_option("--geometry", geometry, "grassmann | hyperbolic | sphere")
      ->required();
  t->add_option("--n", n, "ambient dimension")->required();
  t->add_option("--d", d, "plane dimension")->required();
  t->add_option("--k", k, "radial symmetry dimension (grassmann only)");
  t->add_option("--profile", profile_path, "profile JSON file")->required();
  t->add_option("--grid", grid, "number of output grid points (default 256)");
  t->add_option("--s-max", s_max, "upper end of the s grid (default: auto)");
  t->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* m = app.add_subcommand(
      "norm", "Lorentz norm of a profile under the domain measure");
  m->add_option("--geometry", geometry, "grassmann | hyperbolic | sphere")
      ->required();
  m->add_option("--n", n, "ambient dimension")->required();
  m->add_option("--d", d, "plane dimension")->required();
  m->add_option("--k", k, "radial symmetry dimension (grassmann only)");
  m->add_option("--p", p, "first Lorentz exponent")->required();
  m->add_option("--q", q, "second Lorentz exponent (inf for weak)")
      ->required();
  m->add_option("--profile", profile_path, "profile JSON file")->required();
  m->add_option("--grid", norm_grid,
                "quantization resolution for table profiles (default 16384)");

  CLI::App* v = app.add_subcommand(
      "verify", "run a named verification scenario and report pass/fail");
  auto* vs = v->add_option("--scenario", scenario, "scenario name");
  auto* vc = v->add_option("--config", config_path,
                           "JSON config file (CLI flags override it)");
  auto* vseed = v->add_option("--seed", seed, "family seed");
  v->add_option("--out", out_path, "report JSON path");
  auto* vdet = v->add_flag("--deterministic", deterministic,
                           "exclude wall time so reports are byte-stable");
  auto* vthr = v->add_option("--threads", threads, "worker thread count");
  auto* vn = v->add_option("--n", n, "ambient dimension");
  auto* vd = v->add_option("--d", d, "plane dimension");
  auto* vk = v->add_option("--k", k, "radial symmetry dimension");
  auto* vp = v->add_option("--p", p, "Lebesgue exponent (scenario default 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (t->parsed())
      return run_transform(geometry, n, d, k, profile_path, grid, s_max,
                           out_path);
    if (m->parsed())
      return run_norm(geometry, n, d, k, p, q, profile_path, norm_grid);
    if (v->parsed()) {
      ScenarioConfig cfg;
      if (vc->count() > 0) {
        std::ifstream in(config_path);
        if (!in)
          throw IoError("cannot open config file '" + config_path + "'");
        nlohmann::ordered_json j;
        try {
          j = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw ConfigError("config file '" + config_path +
                            "': " + std::string(e.what()));
        }
        cfg = config_from_json(j);
      }
      if (vs->count() > 0) cfg.scenario = scenario;
      if (vseed->count() > 0) cfg.seed = seed;
      if (vdet->count() > 0) cfg.deterministic = deterministic;
      if (vthr->count() > 0) cfg.threads = threads;
      if (vn->count() > 0) cfg.n = n;
      if (vd->count() > 0) cfg.d = d;
      if (vk->count() > 0) cfg.k = k;
      if (vp->count() > 0) cfg.p = p;
      if (cfg.scenario.empty())
        throw ConfigError("no scenario given (use --scenario or --config)");
      return run_verify(cfg, out_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
