#include "kostlan/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "kostlan/constants.hpp"
#include "kostlan/divided_difference.hpp"
#include "kostlan/energy.hpp"
#include "kostlan/error.hpp"
#include "kostlan/kacrice.hpp"
#include "kostlan/minimizer.hpp"
#include "kostlan/rng.hpp"
#include "kostlan/special.hpp"
#include "kostlan/stats.hpp"

namespace kostlan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

void add(CriterionResult& r, std::string name, bool ok, std::string detail) {
  r.checks.push_back({std::move(name), ok, std::move(detail)});
}

/// Agreement to five decimal places: within half a unit in the fifth.
bool five_places(double value, double reference) {
  return std::abs(value - reference) < 0.5e-5;
}

struct Context {
  AcceptanceOptions opts;
  ConstantsReport constants;
  bool have_constants = false;
  // Run shared by the variance and shape criteria.
  std::vector<SampleRecord> big_run;
  int big_n = 0;
};

std::uint64_t seed_for(const Context& ctx, int id) {
  return ctx.opts.seed + 1000ULL * static_cast<std::uint64_t>(id);
}

const ConstantsReport& constants_of(Context& ctx) {
  if (!ctx.have_constants) {
    ctx.constants = compute_constants();
    ctx.have_constants = true;
  }
  return ctx.constants;
}

std::vector<SampleRecord> monte_carlo(const Context& ctx, int id, int n, int samples) {
  RunConfig cfg;
  cfg.n = n;
  cfg.samples = samples;
  cfg.master_seed = seed_for(ctx, id);
  cfg.threads = ctx.opts.threads;
  cfg.record_timing = false;
  return run_monte_carlo(cfg);
}

void failure_rate_check(CriterionResult& r, std::span<const SampleRecord> recs) {
  std::size_t failed = 0;
  for (const auto& s : recs) failed += s.failed ? 1 : 0;
  const double rate = recs.empty() ? 0.0 : static_cast<double>(failed) / recs.size();
  add(r, "failure rate < 0.1%", rate < 1e-3,
      fmt::format("{} of {} samples failed", failed, recs.size()));
}

CriterionResult constants_criterion(Context& ctx) {
  CriterionResult r = start(1, "limiting constants");
  const auto t0 = Clock::now();
  ctx.have_constants = false;
  const auto& c = constants_of(ctx);
  const double secs = seconds_since(t0);
  struct Row {
    const char* name;
    Estimate got;
    double ref;
  };
  for (const Row& row : {Row{"c1", c.c1, 0.300514}, Row{"c2", c.c2, 0.476091},
                         Row{"c3", c.c3, 0.34295}, Row{"c*", c.c_star, 0.0907056}}) {
    add(r, fmt::format("{} = {} to 5 places", row.name, row.ref), five_places(row.got.value, row.ref),
        fmt::format("computed {:.10f} (+/- {:.1e}), diff {:+.2e}", row.got.value, row.got.error,
                    row.got.value - row.ref));
  }
  for (const Row& row :
       {Row{"I1", c.i1, -0.570754}, Row{"I2", c.i2, 1.53694}, Row{"I3", c.i3, 0.114499}}) {
    add(r, fmt::format("{} = {} to 1e-4", row.name, row.ref),
        std::abs(row.got.value - row.ref) <= 1e-4,
        fmt::format("computed {:.10f}, diff {:+.2e}", row.got.value, row.got.value - row.ref));
  }
  add(r, "runtime < 30 s", secs < 30.0, fmt::format("{:.2f} s", secs));
  r.info.push_back(fmt::format("J1 = {:.10f}", c.j1.value));
  r.info.push_back(fmt::format("c1 by integral {:.12f}, by series {:.12f}", c.c1_integral.value,
                               c.c1.value));
  r.info.push_back(fmt::format("c1 + c2 - 2 c3 with c3 = 0.34295: {:.7f}",
                               c.c1.value + c.c2.value - 2 * 0.34295));
  r.info.push_back(fmt::format("lower bound c* >= {:.6f}", c.c_star_lower_bound));
  return r;
}

CriterionResult bounds_criterion(Context& ctx) {
  CriterionResult r = start(2, "variance gap bounds");
  const auto t0 = Clock::now();
  const auto bounds = gap_bounds();
  const double secs = seconds_since(t0);
  const auto& c = constants_of(ctx);
  auto find = [&](const std::string& name) -> const BoundCheck* {
    for (const auto& b : bounds)
      if (b.name == name) return &b;
    return nullptr;
  };
  for (const char* name : {"int_h2_lower", "int_h2_closed_form", "h2_at_1", "int_h1_lower",
                           "four_c2_minus_c1_bound", "c2_minus_c1_bound"}) {
    const BoundCheck* b = find(name);
    if (b == nullptr) {
      add(r, name, false, "missing");
      continue;
    }
    add(r, name, b->passed,
        fmt::format("{:.10f} vs {:.10f}{}{}", b->value, b->reference, b->detail.empty() ? "" : "; ",
                    b->detail));
  }
  add(r, "4 (c2 - c1) >= 0.1 from the constants", 4 * (c.c2.value - c.c1.value) >= 0.1,
      fmt::format("{:.8f}", 4 * (c.c2.value - c.c1.value)));
  add(r, "runtime < 10 s", secs < 10.0, fmt::format("{:.2f} s", secs));
  for (const auto& b : bounds) {
    if (b.name == "int_h2_flipped_sign" || b.name == "h2_increasing_on_unit_interval" ||
        b.name == "h1_nonpositive" || b.name == "h2_max_at_1" || b.name == "int_h1_closed_form" || b.name == "i2_bound" ||
        b.name == "i1_shift_closed_form" || b.name == "i1_offset") {
      r.info.push_back(fmt::format("{} {}: {:.10f} vs {:.10f} {}", b.passed ? "ok" : "off", b.name,
                                   b.value, b.reference, b.detail));
    }
  }
  return r;
}

CriterionResult expectation_criterion(Context& ctx) {
  CriterionResult r = start(3, "expected energy");
  const int n = 200;
  const int m = ctx.opts.quick ? 500 : 2000;
  const auto recs = monte_carlo(ctx, 3, n, m);
  const auto e = energies_of(recs);
  const auto k = k_statistics(e, false);
  const double expected = expected_energy(n);
  const double bound = 4.0 * std::sqrt(k.k2 / static_cast<double>(k.count));
  add(r, fmt::format("|mean - expected| <= 4 sqrt(k2/M), n={} M={}", n, m),
      std::abs(k.k1 - expected) <= bound,
      fmt::format("mean {:.4f}, expected {:.4f}, deviation {:+.4f}, bound {:.4f}", k.k1, expected,
                  k.k1 - expected, bound));
  failure_rate_check(r, recs);
  return r;
}

// Sample i of a run depends only on (seed, i), so a shorter run is a prefix.
const std::vector<SampleRecord>& big_run(Context& ctx, int n, int m) {
  if (ctx.big_n != n || static_cast<int>(ctx.big_run.size()) < m) {
    ctx.big_run = monte_carlo(ctx, 4, n, m);
    ctx.big_n = n;
  }
  return ctx.big_run;
}

CriterionResult variance_criterion(Context& ctx) {
  CriterionResult r = start(4, "energy variance");
  const int n = ctx.opts.quick ? 200 : 500;
  const auto& run = big_run(ctx, n, ctx.opts.quick ? 1000 : 5000);
  const auto& c = constants_of(ctx);
  const double band = ctx.opts.quick ? 0.2 : 0.1;
  const double ref = 0.0907056;
  const auto e = energies_of(run);
  const auto k = k_statistics(e);
  const double ratio = k.k2 / n;
  add(r, fmt::format("k2/n in c* (1 +/- {:.0f}%), n={} M={}", band * 100, n, run.size()),
      ratio >= ref * (1 - band) && ratio <= ref * (1 + band),
      fmt::format("k2/n = {:.5f} +/- {:.5f}, band [{:.4f}, {:.4f}]", ratio, k.se2 / n,
                  ref * (1 - band), ref * (1 + band)));
  failure_rate_check(r, run);
  const auto split = covariance_split(run, n);
  auto within15 = [](double v, double ref) { return std::abs(v - ref) <= 0.15 * ref ? "ok" : "off"; };
  r.info.push_back(fmt::format("{} Var(I)/n {:.5f} vs c1 {:.5f}", within15(split.var_i, c.c1.value),
                               split.var_i, c.c1.value));
  r.info.push_back(fmt::format("{} Var(S)/n {:.5f} vs c2 {:.5f}", within15(split.var_s, c.c2.value),
                               split.var_s, c.c2.value));
  r.info.push_back(fmt::format("{} Cov(I,S)/n {:.5f} vs c3 {:.5f}",
                               within15(split.cov_is, c.c3.value), split.cov_is, c.c3.value));
  const std::vector<double> grid{0.3, 0.6, 0.9};
  for (const auto& row : concentration_check(e, n, grid, c.c_star.value)) {
    const bool inside = row.gaussian_reference >= row.ci.lo && row.gaussian_reference <= row.ci.hi;
    r.info.push_back(fmt::format("{} P(|E - mean| >= {:.1f} sqrt(n)) = {:.4f} [{:.4f}, {:.4f}], "
                                 "gaussian {:.4f}",
                                 inside ? "ok" : "off", row.t, row.fraction, row.ci.lo, row.ci.hi,
                                 row.gaussian_reference));
  }
  return r;
}

CriterionResult shape_criterion(Context& ctx) {
  CriterionResult r = start(5, "energy distribution shape");
  const int n = 500;
  const std::size_t m = 2000;
  const auto& run = big_run(ctx, n, static_cast<int>(m));
  const std::span<const SampleRecord> head(run.data(), std::min(m, run.size()));
  const auto e = energies_of(head);
  const auto k = k_statistics(e);
  const double sd = std::sqrt(k.k2);
  const auto ks = normality_test(standardize(e, k.k1, sd));
  add(r, fmt::format("KS normality p > 0.01, n={} M={}", n, e.size()), ks.p_value > 0.01,
      fmt::format("D = {:.4f}, p = {:.4f}", ks.statistic, ks.p_value));
  const double g3 = k.k3 / std::pow(k.k2, 1.5);
  const double g4 = k.k4 / (k.k2 * k.k2);
  add(r, "|k3| / k2^1.5 < 0.15", std::abs(g3) < 0.15,
      fmt::format("{:+.4f} +/- {:.4f}", g3, k.se3 / std::pow(k.k2, 1.5)));
  add(r, "|k4| / k2^2 < 0.3", std::abs(g4) < 0.3,
      fmt::format("{:+.4f} +/- {:.4f}", g4, k.se4 / (k.k2 * k.k2)));
  const auto& c = constants_of(ctx);
  const auto ks_exact =
      normality_test(standardize(e, expected_energy(n), std::sqrt(c.c_star.value * n)));
  r.info.push_back(fmt::format("KS against exact mean and sqrt(c* n): D = {:.4f}, p = {:.4f}",
                               ks_exact.statistic, ks_exact.p_value));
  return r;
}

CriterionResult identity_criterion(Context& ctx) {
  CriterionResult r = start(6, "decomposition identity");
  const int samples = ctx.opts.quick ? 20 : 100;
  for (int n : {10, 100, 1000}) {
    const auto recs = monte_carlo(ctx, 6, n, samples);
    double worst = 0.0;
    std::size_t failed = 0;
    for (const auto& s : recs) {
      if (s.failed) {
        ++failed;
        continue;
      }
      worst = std::max(worst, std::abs(s.identity_residual));
    }
    const double tol = 1e-7 * n * static_cast<double>(n);
    add(r, fmt::format("n={}: max |residual| <= 1e-7 n^2 over {} samples", n, samples),
        failed == 0 && worst <= tol,
        fmt::format("max {:.3e}, tolerance {:.3e}, failed {}", worst, tol, failed));
  }
  return r;
}

CriterionResult split_criterion(Context& ctx) {
  CriterionResult r = start(7, "expectation split");
  const int n = 50;
  const int m = ctx.opts.quick ? 1000 : 5000;
  const auto recs = monte_carlo(ctx, 7, n, m);
  const auto summary = summarize(recs, n, 0.0907056);
  const double gamma = kEulerGamma;
  const double dev_i = summary.mean_i_over_n + gamma / 2;
  const double dev_s = summary.mean_s_over_n - (1 - gamma) / 2;
  add(r, fmt::format("I/n -> -gamma/2 within 5 SE, n={} M={}", n, m),
      std::abs(dev_i) <= 5 * summary.se_i_over_n,
      fmt::format("mean {:.6f}, target {:.6f}, {:+.2f} SE", summary.mean_i_over_n, -gamma / 2,
                  dev_i / summary.se_i_over_n));
  add(r, "S/n -> (1 - gamma)/2 within 5 SE", std::abs(dev_s) <= 5 * summary.se_s_over_n,
      fmt::format("mean {:.6f}, target {:.6f}, {:+.2f} SE", summary.mean_s_over_n,
                  (1 - gamma) / 2, dev_s / summary.se_s_over_n));
  failure_rate_check(r, recs);
  return r;
}

CriterionResult kacrice_criterion(Context& ctx) {
  CriterionResult r = start(8, "Kac-Rice consistency");
  {
    const int n = 50;
    const double total = rho_2_pair_integral(n, 0.0, 2.0);
    const double target = n * (n - 1.0);
    add(r, "pair integral = n (n - 1) to 1%, n=50", std::abs(total - target) <= 0.01 * target,
        fmt::format("{:.6f} vs {:.0f}, rel {:.2e}", total, target,
                    std::abs(total - target) / target));
  }
  {
    const int n = 100;
    const int samples = ctx.opts.quick ? 1000 : 10000;
    const std::vector<std::pair<double, double>> bands{
        {0.05, 0.15}, {0.15, 0.3}, {0.3, 0.6}, {0.6, 1.2}, {1.2, 2.0}};
    const auto counts = annulus_pair_counts(n, samples, seed_for(ctx, 8), bands, ctx.opts.threads);
    for (const auto& a : counts) {
      const double rel = std::abs(a.observed_mean - a.expected) / a.expected;
      add(r, fmt::format("annulus [{:.2f}, {:.2f}] within 5%, n={} M={}", a.d1, a.d2, n, samples),
          rel <= 0.05,
          fmt::format("observed {:.4f} +/- {:.4f}, quadrature {:.4f}, rel {:.2e}",
                      a.observed_mean, a.observed_se, a.expected, rel));
    }
  }
  {
    const int n = 50;
    const int samples = ctx.opts.quick ? 50000 : 400000;
    DensityQuery q;
    q.ell = 0;
    q.m = 1;
    q.powers = {1};
    q.points = {cplx(0.3, -0.2)};
    const auto est = rho_lmp_mc(q, n, samples, seed_for(ctx, 8) + 1);
    const double target = (1 - kEulerGamma) / 2;
    add(r, "Lambda_011 = (1 - gamma)/2 within 5 SE", std::abs(est.value - target) <= 5 * est.se,
        fmt::format("{:.6f} +/- {:.6f}, target {:.6f}, {:+.2f} SE", est.value, est.se, target,
                    (est.value - target) / est.se));
  }
  return r;
}

CriterionResult clustering_criterion(Context& ctx) {
  CriterionResult r = start(9, "clustering decay");
  for (int n : {100, 400}) {
    const auto rep = clustering_gap(n, 40, 5.0, 50.0, 1.9, 8, seed_for(ctx, 9));
    add(r, fmt::format("slope <= -1/32 at n={}", n), rep.slope <= -1.0 / 32,
        fmt::format("slope {:.5f}, n d^2 in [{:.1f}, {:.1f}]", rep.slope, rep.x.front(),
                    rep.x.back()));
    r.info.push_back(fmt::format("n={}: rotated-pair discrepancy {:.2e}", n,
                                 rep.family_max_discrepancy));
  }
  return r;
}

cplx random_in_disk(ComplexGaussianStream& s, double radius) {
  const double rho = radius * std::sqrt(s.next_uniform());
  const double phi = 2 * std::numbers::pi * s.next_uniform();
  return std::polar(rho, phi);
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double rel_err(cplx a, cplx b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-12);
}

CriterionResult divided_difference_criterion(Context& ctx) {
  CriterionResult r = start(10, "divided differences");
  ComplexGaussianStream rng(seed_for(ctx, 10), 0);

  double worst_contour = 0.0, worst_exp = 0.0;
  auto distinct_points = [&](int m, double radius, double sep) {
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < m) {
      const cplx z = random_in_disk(rng, radius);
      bool ok = true;
      for (cplx p : pts) ok = ok && std::abs(p - z) > sep;
      if (ok) pts.push_back(z);
    }
    return pts;
  };
  auto contour_error = [](const AnalyticFunction& f, const std::vector<cplx>& pts) {
    const cplx newton = divided_difference(f, pts);
    const auto contour = divided_difference_contour(f.value, pts);
    return std::abs(newton - contour.value) /
           std::max(std::abs(contour.value), 1e-12 * contour.scale);
  };
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + static_cast<int>(rng.next_uniform() * 6);
    const auto pts = distinct_points(m, 1.0, 0.05);
    // Degree below m - 1 gives an exact zero, which has no relative error.
    const int deg = m - 1 + static_cast<int>(rng.next_uniform() * 10);
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = rng.next_complex();
    worst_contour = std::max(worst_contour, contour_error(AnalyticFunction::polynomial(c), pts));
  }
  add(r, "Newton recurrence vs contour to 1e-8 on 1000 random polynomials", worst_contour <= 1e-8,
      fmt::format("max rel {:.2e}", worst_contour));
  for (int t = 0; t < 200; ++t) {
    const auto pts = distinct_points(1 + t % 6, 1.0, 0.05);
    worst_exp = std::max(worst_exp, contour_error(AnalyticFunction::exponential(rng.next_complex()), pts));
  }
  r.info.push_back(fmt::format("exp(c z), |c| ~ 1, 200 cases: max rel {:.2e}", worst_exp));

  double worst_value = 0.0, worst_deriv = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 6;
    const auto zs = distinct_points(m, 1.0, 0.1);
    // f = q(z) prod (z - z_l)
    std::vector<cplx> coeffs(1 + static_cast<std::size_t>(t % 5));
    for (auto& x : coeffs) x = rng.next_complex();
    for (cplx root : zs) {
      std::vector<cplx> next(coeffs.size() + 1, 0.0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] -= root * coeffs[j];
      }
      coeffs = std::move(next);
    }
    std::vector<cplx> deriv(coeffs.size() - 1);
    for (std::size_t j = 1; j < coeffs.size(); ++j) deriv[j - 1] = coeffs[j] * double(j);
    const auto f = AnalyticFunction::polynomial(coeffs);

    const cplx y = random_in_disk(rng, 1.5);
    auto with = [&](cplx extra) {
      auto v = zs;
      v.push_back(extra);
      return divided_difference(f, v);
    };
    cplx prod = 1.0;
    for (cplx z : zs) prod *= y - z;
    worst_value = std::max(worst_value, rel_err(with(y) * prod, horner(coeffs, y)));

    for (int j = 0; j < m; ++j) {
      cplx others = 1.0;
      for (int l = 0; l < m; ++l)
        if (l != j) others *= zs[j] - zs[l];
      worst_deriv = std::max(worst_deriv, rel_err(with(zs[j]) * others, horner(deriv, zs[j])));
    }
  }
  add(r, "f(y) = f[z_1..z_m, y] prod (y - z_l) to 1e-9", worst_value <= 1e-9,
      fmt::format("max rel {:.2e}", worst_value));
  add(r, "f'(z_j) = f[z_1..z_m, z_j] prod_{l != j} (z_j - z_l) to 1e-9", worst_deriv <= 1e-9,
      fmt::format("max rel {:.2e}", worst_deriv));

  double worst_matrix = 0.0;
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 6;
    const auto pts = distinct_points(m, 1.0, 0.05);
    std::vector<cplx> c(8);
    for (auto& x : c) x = rng.next_complex();
    const auto f = AnalyticFunction::polynomial(c);
    Eigen::VectorXcd dd(m), vals(m);
    for (int k = 0; k < m; ++k) {
      dd(k) = divided_difference(f, std::vector<cplx>(pts.begin(), pts.begin() + k + 1));
      vals(k) = f.value(pts[k]);
    }
    const Eigen::VectorXcd back = dd_matrix(pts) * dd;
    for (int k = 0; k < m; ++k) worst_matrix = std::max(worst_matrix, rel_err(back(k), vals(k)));
  }
  add(r, "values = M (divided differences) to 1e-10 for m <= 6", worst_matrix <= 1e-10,
      fmt::format("max rel {:.2e}", worst_matrix));
  return r;
}

CriterionResult minimizer_criterion(Context& ctx) {
  CriterionResult r = start(11, "energy descent");
  DescentOptions opts;
  opts.record_trajectory = false;
  for (int n : {2, 3}) {
    ComplexGaussianStream s(seed_for(ctx, 11), static_cast<std::uint64_t>(n));
    const auto res = descend(sample_uniform_configuration(n, s), opts);
    const double target = -n * std::log(static_cast<double>(n));
    add(r, fmt::format("n={} converges to -{} log {} to 1e-8", n, n, n),
        std::abs(res.final_state.energy - target) <= 1e-8,
        fmt::format("{:.12f} vs {:.12f}, {} iterations", res.final_state.energy, target,
                    res.final_state.iteration));
  }
  const int n = 200;
  DescentOptions big;
  big.record_trajectory = false;
  big.max_iterations = ctx.opts.quick ? 300 : 2000;
  const auto rep = pipeline(n, seed_for(ctx, 11), big);
  const double floor = rep.reference.min_lower - 0.01 * n;
  add(r, "n=200 end energy >= min_lower - 0.01 n", rep.end_energy >= floor,
      fmt::format("end {:.4f}, floor {:.4f}", rep.end_energy, floor));
  add(r, "n=200 end energy < start energy", rep.end_energy < rep.start_energy,
      fmt::format("start {:.4f}, end {:.4f}", rep.start_energy, rep.end_energy));
  const double expected = expected_energy(n);
  const double sd = std::sqrt(0.0907056 * n);
  add(r, "n=200 start energy within 4 sd of the expectation",
      std::abs(rep.start_energy - expected) <= 4 * sd,
      fmt::format("start {:.4f}, expected {:.4f}, {:+.2f} sd", rep.start_energy, expected,
                  (rep.start_energy - expected) / sd));
  r.info.push_back(fmt::format("min_upper {:.4f}, {} iterations, converged {}, stagnated {}",
                               rep.reference.min_upper, rep.descent.final_state.iteration,
                               rep.descent.converged, rep.descent.stagnated));
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const ResultSink& sink) {
  using Fn = CriterionResult (*)(Context&);
  const Fn table[] = {constants_criterion,   bounds_criterion,
                      expectation_criterion, variance_criterion,
                      shape_criterion,       identity_criterion,
                      split_criterion,       kacrice_criterion,
                      clustering_criterion,  divided_difference_criterion,
                      minimizer_criterion};
  Context ctx;
  ctx.opts = opts;
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 11; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end())
      continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = table[id - 1](ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      add(r, "completed without error", false, e.what());
    }
    r.id = id;
    r.seconds = seconds_since(t0);
    r.passed = !r.checks.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
    if (sink) sink(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::string s = fmt::format("{} {:>2} {} ({:.1f} s)\n", r.passed ? "PASS" : "FAIL", r.id,
                              r.title, r.seconds);
  for (const auto& c : r.checks)
    s += fmt::format("       {} {}: {}\n", c.passed ? "ok  " : "FAIL", c.name, c.detail);
  for (const auto& line : r.info) s += fmt::format("       info {}\n", line);
  return s;
}

}  // namespace kostlan
