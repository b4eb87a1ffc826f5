#include "kostlan/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "kostlan/acceptance.hpp"
#include "kostlan/constants.hpp"
#include "kostlan/energy.hpp"
#include "kostlan/error.hpp"
#include "kostlan/io.hpp"
#include "kostlan/kacrice.hpp"
#include "kostlan/manifest.hpp"
#include "kostlan/minimizer.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/roots.hpp"
#include "kostlan/sphere.hpp"
#include "kostlan/stats.hpp"

namespace kostlan {

namespace {

using json = nlohmann::ordered_json;

class Run {
 public:
  explicit Run(const AppConfig& cfg) : cfg_(cfg), manifest_(start_manifest(cfg)) {
    ensure_directory(cfg.out.value);
  }

  std::string path(const std::string& name) const {
    return (std::filesystem::path(cfg_.out.value) / name).string();
  }

  void track(const std::string& p) { written_.push_back(p); }

  void write_json(const std::string& name, const json& j) {
    const auto p = path(name);
    std::ofstream f(p);
    if (!f) throw Error("cannot write " + p);
    f << j.dump(2) << '\n';
    if (!f) throw Error("write failed for " + p);
    track(p);
  }

  void finish() {
    manifest_.finished_at = utc_timestamp();
    for (const auto& p : written_) manifest_.outputs.push_back(describe_output(p));
    write_manifest(path("manifest.json"), manifest_);
  }

 private:
  const AppConfig& cfg_;
  ExperimentManifest manifest_;
  std::vector<std::string> written_;
};

json estimate_json(const Estimate& e) { return json{{"value", e.value}, {"error", e.error}}; }

int cmd_sample(const AppConfig& cfg, Run& run, std::ostream& out) {
  const int n = cfg.n.value;
  const auto p = sample_elliptic(n, cfg.seed.value, 0);
  const auto rs = find_roots(p);
  const auto diag = validate_roots(p, rs);
  const auto br = decomposition_check(p, rs);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto sp = project(ExtendedComplex(rs.roots[i]));
    rows.push_back({double(i), rs.roots[i].real(), rs.roots[i].imag(), sp.cartesian[0],
                    sp.cartesian[1], sp.cartesian[2], rs.residuals[i]});
  }
  const auto roots_csv = run.path("roots.csv");
  write_table_csv(roots_csv, {"index", "re", "im", "x", "y", "z", "residual"}, rows);
  run.track(roots_csv);

  std::vector<std::vector<double>> coeff_rows;
  for (int j = 0; j <= n; ++j) {
    const cplx a = p.weighted_coeffs()[j];
    coeff_rows.push_back({double(j), a.real(), a.imag()});
  }
  const auto coeff_csv = run.path("coefficients.csv");
  write_table_csv(coeff_csv, {"j", "re", "im"}, coeff_rows);
  run.track(coeff_csv);

  json j{{"n", n},
         {"seed", cfg.seed.value},
         {"iterations", rs.iterations},
         {"used_fallback", rs.used_fallback},
         {"max_residual", rs.max_residual()},
         {"vieta_ok", diag.passed},
         {"e_n", br.e_n},
         {"i_n", br.i_n},
         {"s_n", br.s_n},
         {"identity_residual", br.identity_residual},
         {"expected_energy", expected_energy(n)}};
  run.write_json("sample.json", j);
  out << fmt::format("n = {}  E_n = {:.10f}  expected {:.10f}  max residual {:.2e}\n", n, br.e_n,
                     expected_energy(n), rs.max_residual());
  return 0;
}

void write_plotdata(Run& run, const std::vector<double>& standardized) {
  std::vector<std::vector<double>> hist;
  for (const auto& b : histogram(standardized, 40))
    hist.push_back({b.lo, b.hi, static_cast<double>(b.count)});
  const auto hist_csv = run.path("energy_histogram.csv");
  write_table_csv(hist_csv, {"lo", "hi", "count"}, hist);
  run.track(hist_csv);

  std::vector<std::vector<double>> qq;
  for (const auto& [t, s] : normal_qq(standardized)) qq.push_back({t, s});
  const auto qq_csv = run.path("energy_qq.csv");
  write_table_csv(qq_csv, {"theoretical", "sample"}, qq);
  run.track(qq_csv);
}

json tails_json(const std::vector<TailRow>& tails) {
  json arr = json::array();
  for (const auto& t : tails) {
    arr.push_back({{"t", t.t},
                   {"count", t.count},
                   {"total", t.total},
                   {"fraction", t.fraction},
                   {"ci", {t.ci.lo, t.ci.hi}},
                   {"gaussian", t.gaussian_reference}});
  }
  return arr;
}

int cmd_mc(const AppConfig& cfg, Run& run, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  rc.n = cfg.n.value;
  rc.samples = cfg.samples.value;
  rc.master_seed = cfg.seed.value;
  rc.threads = cfg.threads.value;
  rc.record_timing = cfg.record_timing.value;
  std::size_t last = 0;
  const auto records = run_monte_carlo(rc, [&](std::size_t done, std::size_t total) {
    if (done * 10 / total != last * 10 / total || done == total) {
      err << fmt::format("\r{} / {}", done, total) << (done == total ? "\n" : "") << std::flush;
    }
    last = done;
  });
  const auto csv = run.path("records.csv");
  write_records_csv(csv, records);
  run.track(csv);

  const double c_star = compute_constants().c_star.value;
  const std::vector<double> t_grid{0.3, 0.6, 0.9};
  const auto s = summarize(records, rc.n, c_star, t_grid);
  const auto e = energies_of(records);
  if (e.size() >= 2) write_plotdata(run, standardize(e, s.energy.k1, std::sqrt(s.energy.k2)));

  json j{{"n", rc.n},
         {"samples", s.total},
         {"failures", s.failures},
         {"expected_energy", expected_energy(rc.n)},
         {"k1", {s.energy.k1, s.energy.se1}},
         {"k2", {s.energy.k2, s.energy.se2}},
         {"k3", {s.energy.k3, s.energy.se3}},
         {"k4", {s.energy.k4, s.energy.se4}},
         {"k2_over_n", s.energy.k2 / rc.n},
         {"c_star", c_star},
         {"ks_sample", {{"statistic", s.ks_sample.statistic}, {"p", s.ks_sample.p_value}}},
         {"ks_analytic", {{"statistic", s.ks_analytic.statistic}, {"p", s.ks_analytic.p_value}}},
         {"i_over_n", {s.mean_i_over_n, s.se_i_over_n}},
         {"s_over_n", {s.mean_s_over_n, s.se_s_over_n}},
         {"covariance_split",
          {{"var_i", s.split.var_i}, {"var_s", s.split.var_s}, {"cov_is", s.split.cov_is}}},
         {"tails", tails_json(s.tails)},
         {"max_identity_residual", s.max_identity_residual}};
  run.write_json("summary.json", j);
  out << fmt::format("n = {}  M = {}  mean {:.6f} (expected {:.6f})  k2/n {:.6f}  failures {}\n",
                     rc.n, s.total, s.energy.k1, expected_energy(rc.n), s.energy.k2 / rc.n,
                     s.failures);
  return 0;
}

int cmd_constants(const AppConfig&, Run& run, std::ostream& out) {
  const auto c = compute_constants();
  json bounds = json::array();
  for (const auto& b : c.bounds) {
    bounds.push_back({{"name", b.name},
                      {"value", b.value},
                      {"reference", b.reference},
                      {"passed", b.passed},
                      {"detail", b.detail}});
  }
  json j{{"c1", estimate_json(c.c1)},
         {"c2", estimate_json(c.c2)},
         {"c3", estimate_json(c.c3)},
         {"c_star", estimate_json(c.c_star)},
         {"c_star_lower_bound", c.c_star_lower_bound},
         {"j1", estimate_json(c.j1)},
         {"i1", estimate_json(c.i1)},
         {"i2", estimate_json(c.i2)},
         {"i3", estimate_json(c.i3)},
         {"c1_integral", estimate_json(c.c1_integral)},
         {"alpha", c.coefficients.alpha},
         {"beta", c.coefficients.beta},
         {"bounds", bounds},
         {"seconds", c.seconds}};
  run.write_json("constants.json", j);
  out << fmt::format("c1 = {:.10f}\nc2 = {:.10f}\nc3 = {:.10f}\nc* = {:.10f}\n", c.c1.value,
                     c.c2.value, c.c3.value, c.c_star.value);
  return 0;
}

int cmd_kacrice(const AppConfig& cfg, Run& run, std::ostream& out) {
  const int n = cfg.n.value;
  const auto rep = clustering_gap(n, cfg.grid_points.value, 5.0, 50.0, 1.9, 8, cfg.seed.value);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.distances.size(); ++i)
    rows.push_back({rep.distances[i], rep.x[i], rep.log_gap[i]});
  const auto cl_csv = run.path("clustering.csv");
  write_table_csv(cl_csv, {"d", "n_d2", "log_gap"}, rows);
  run.track(cl_csv);

  std::vector<std::vector<double>> grid;
  const int pts = std::max(cfg.grid_points.value, 2) * 5;
  for (int i = 1; i <= pts; ++i) {
    const double d = 2.0 * i / (pts + 1);
    grid.push_back({d, n * d * d, rho_2_by_distance(n, d)});
  }
  const auto grid_csv = run.path("rho2_grid.csv");
  write_table_csv(grid_csv, {"d", "n_d2", "rho2_over_n2"}, grid);
  run.track(grid_csv);

  const double step = 2.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::pair<double, double>> bands;
  for (double lo = 0.0; lo < 2.0 - 1e-12; lo += step) bands.emplace_back(lo, std::min(lo + step, 2.0));
  const auto counts =
      annulus_pair_counts(n, cfg.samples.value, cfg.seed.value, bands, cfg.threads.value);
  std::vector<std::vector<double>> crow;
  for (const auto& a : counts)
    crow.push_back({a.d1, a.d2, a.expected, a.observed_mean, a.observed_se});
  const auto ann_csv = run.path("annulus_counts.csv");
  write_table_csv(ann_csv, {"d1", "d2", "expected", "observed_mean", "observed_se"}, crow);
  run.track(ann_csv);

  json j{{"n", n},
         {"slope", rep.slope},
         {"intercept", rep.intercept},
         {"family_max_discrepancy", rep.family_max_discrepancy},
         {"pair_integral", rho_2_pair_integral(n, 0.0, 2.0)},
         {"pair_integral_target", n * (n - 1.0)},
         {"annulus_samples", cfg.samples.value}};
  run.write_json("kacrice.json", j);
  out << fmt::format("n = {}  clustering slope {:.5f}  (threshold -1/32)\n", n, rep.slope);
  return 0;
}

int cmd_minimize(const AppConfig& cfg, Run& run, std::ostream& out) {
  DescentOptions opts;
  opts.max_iterations = cfg.max_iterations.value;
  const auto rep = pipeline(cfg.n.value, cfg.seed.value, opts);
  std::vector<std::vector<double>> rows;
  for (const auto& t : rep.descent.trajectory)
    rows.push_back({double(t.iteration), t.energy, t.grad_norm, t.step});
  const auto traj = run.path("trajectory.csv");
  write_table_csv(traj, {"iteration", "energy", "grad_norm", "step"}, rows);
  run.track(traj);

  std::vector<std::vector<double>> pts;
  for (const auto& p : rep.descent.final_state.config.points)
    pts.push_back({p.cartesian[0], p.cartesian[1], p.cartesian[2]});
  const auto pts_csv = run.path("final_points.csv");
  write_table_csv(pts_csv, {"x", "y", "z"}, pts);
  run.track(pts_csv);

  json j{{"n", rep.n},
         {"seed", rep.seed},
         {"start_energy", rep.start_energy},
         {"end_energy", rep.end_energy},
         {"iterations", rep.descent.final_state.iteration},
         {"grad_norm", rep.descent.final_state.grad_norm},
         {"converged", rep.descent.converged},
         {"stagnated", rep.descent.stagnated},
         {"max_norm_drift", rep.descent.max_norm_drift},
         {"reference",
          {{"min_lower", rep.reference.min_lower},
           {"min_upper", rep.reference.min_upper},
           {"uniform_mean", rep.reference.uniform_mean},
           {"elliptic_mean", rep.reference.elliptic_mean}}}};
  run.write_json("minimize.json", j);
  out << fmt::format("n = {}  start {:.6f}  end {:.6f}  band [{:.6f}, {:.6f}]\n", rep.n,
                     rep.start_energy, rep.end_energy, rep.reference.min_lower,
                     rep.reference.min_upper);
  return 0;
}

int cmd_verify(const AppConfig& cfg, Run& run, std::ostream& out) {
  AcceptanceOptions opts;
  opts.quick = cfg.quick.value;
  opts.threads = cfg.threads.value;
  opts.seed = cfg.seed.value;
  const auto results =
      run_acceptance(opts, [&](const CriterionResult& r) { out << format_result(r) << std::flush; });
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    arr.push_back({{"id", r.id},
                   {"title", r.title},
                   {"passed", r.passed},
                   {"seconds", r.seconds},
                   {"checks", checks},
                   {"info", r.info}});
  }
  run.write_json("verify.json", json{{"quick", opts.quick}, {"passed", all}, {"criteria", arr}});
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  out << fmt::format("{} of {} criteria passed\n", passed, results.size());
  return all ? 0 : 1;
}

}  // namespace

int run_subcommand(const AppConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run(cfg);
  int status = 0;
  const auto& sub = cfg.subcommand;
  if (sub == "sample") {
    status = cmd_sample(cfg, run, out);
  } else if (sub == "mc") {
    status = cmd_mc(cfg, run, out, err);
  } else if (sub == "constants") {
    status = cmd_constants(cfg, run, out);
  } else if (sub == "kacrice") {
    status = cmd_kacrice(cfg, run, out);
  } else if (sub == "minimize") {
    status = cmd_minimize(cfg, run, out);
  } else if (sub == "verify") {
    status = cmd_verify(cfg, run, out);
  } else {
    throw ConfigError("unknown subcommand '" + sub + "'");
  }
  run.finish();
  return status;
}

}  // namespace kostlan
