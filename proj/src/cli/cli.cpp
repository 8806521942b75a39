// Copyright 2026 The wwkde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wwkde/cli.hpp"

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <numbers>

#include "wwkde/bandwidth.hpp"
#include "wwkde/config.hpp"
#include "wwkde/csv.hpp"
#include "wwkde/error.hpp"
#include "wwkde/estimator.hpp"
#include "wwkde/kernel.hpp"
#include "wwkde/simulate.hpp"
#include "wwkde/svg.hpp"
#include "wwkde/theory.hpp"

namespace wwkde::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string config_hash(const json& config) {
  const std::string text = config.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},       {"config_hash", m.config_hash},
          {"tool_version", m.tool_version}, {"base_seed", m.base_seed},
          {"start_time", m.start_time}, {"end_time", m.end_time},
          {"outputs", m.outputs}};
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

// Collects output files and writes manifest.json next to them.
class RunRecorder {
 public:
  RunRecorder(std::string command, fs::path out_dir, const json& config, std::uint64_t seed)
      : out_dir_(std::move(out_dir)) {
    manifest_.command = std::move(command);
    manifest_.config_hash = config_hash(config);
    manifest_.base_seed = seed;
    manifest_.start_time = utc_now();
    fs::create_directories(out_dir_);
  }

  fs::path path(const std::string& name) {
    manifest_.outputs.push_back(name);
    return out_dir_ / name;
  }

  void write_json(const std::string& name, const json& j) {
    write_text_file(path(name), j.dump(2) + "\n");
  }

  void finish() {
    manifest_.end_time = utc_now();
    write_text_file(out_dir_ / "manifest.json", to_json(manifest_).dump(2) + "\n");
  }

 private:
  fs::path out_dir_;
  RunManifest manifest_;
};

json load_json(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json validation_to_json(const KernelSpec& k, const ValidationReport& r) {
  json moments = json::array();
  for (const auto& m : r.moments)
    moments.push_back({{"multi_index", m.multi_index},
                       {"value", m.value},
                       {"required", m.required},
                       {"pass", m.pass}});
  json j = {{"family", to_string(k.family())},
            {"dim", k.dim()},
            {"order", k.order()},
            {"sup_bound", k.sup_bound()},
            {"integral", r.integral},
            {"integral_sq", r.integral_sq},
            {"integral_abs", r.integral_abs},
            {"symmetry_defect", r.symmetry_defect},
            {"moments", moments},
            {"normalization_ok", r.normalization_ok},
            {"symmetry_ok", r.symmetry_ok},
            {"square_integrable_ok", r.square_integrable_ok},
            {"abs_integrable_ok", r.abs_integrable_ok},
            {"moments_ok", r.moments_ok},
            {"passed", r.passed()}};
  if (k.support_radius()) j["support_radius"] = *k.support_radius();
  if (r.failure) j["failure"] = *r.failure;
  return j;
}

json rate_to_json(const RateReport& r, const ExperimentConfig& cfg, const std::string& hash) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"rmse", row.rmse},
                    {"stderr", row.stderr_rmse},
                    {"mean_abs_error", row.mean_abs_error},
                    {"bias", nan_to_null(row.bias)},
                    {"variance", nan_to_null(row.variance)}});
  json j = {{"config_hash", hash},
            {"replications", cfg.replications},
            {"seed", cfg.seed},
            {"rows", rows},
            {"slope", r.slope},
            {"slope_stderr", nan_to_null(r.slope_stderr)},
            {"intercept", r.intercept},
            {"theoretical_slope", r.theoretical_slope},
            {"within_tolerance", r.within_tolerance}};
  if (cfg.slope_tolerance) j["slope_tolerance"] = *cfg.slope_tolerance;
  return j;
}

CsvTable rate_csv(const RateReport& r) {
  CsvTable t({"n", "mean_error", "stderr"});
  for (const auto& row : r.rows)
    t.add_row({static_cast<double>(row.n), row.rmse, row.stderr_rmse});
  return t;
}

CsvTable tail_csv(const TailCurve& c) {
  CsvTable t({"u", "p_hat", "wilson_lo", "wilson_hi"});
  for (std::size_t i = 0; i < c.u.size(); ++i)
    t.add_row({c.u[i], c.p_hat[i], c.wilson_lo[i], c.wilson_hi[i]});
  return t;
}

json calibration_to_json(const Calibration& c) {
  return {{"c4", nan_to_null(c.c4)},
          {"unconstrained", c.unconstrained},
          {"falsified", c.falsified},
          {"dominates", c.dominates}};
}

json tail_to_json(const TailReport& r, const ExperimentConfig& cfg, const std::string& hash) {
  json cps = json::array();
  for (const auto& cp : r.checkpoints)
    cps.push_back({{"n", cp.curve.n},
                   {"samples", cp.curve.samples},
                   {"regime_m", cp.regime_m},
                   {"fitted_exponent", nan_to_null(cp.curve.exponent)},
                   {"fitted_exponent_stderr", nan_to_null(cp.curve.exponent_stderr)},
                   {"fit_points", cp.curve.fit_points},
                   {"reliable", cp.curve.reliable},
                   {"gaussian_window_exponent", nan_to_null(cp.gaussian_window_exponent)},
                   {"center_offset", cp.center_offset},
                   {"calibration", calibration_to_json(cp.calibration)},
                   {"exponent_within_tolerance", cp.exponent_within_tolerance}});
  json j = {{"config_hash", hash},
            {"replications", cfg.replications},
            {"seed", cfg.seed},
            {"center", cfg.center == Centering::truth ? "truth" : "mean"},
            {"theoretical_exponent", r.theoretical_exponent},
            {"checkpoints", cps}};
  if (cfg.exponent_tolerance) j["exponent_tolerance"] = *cfg.exponent_tolerance;
  return j;
}

PlotSpec rate_plot(const std::vector<double>& n, const std::vector<double>& err, double beta,
                   int dim) {
  PlotSpec p;
  p.title = "Convergence rate";
  p.x_label = "n";
  p.y_label = "RMSE";
  p.series.push_back({"empirical", n, err, false, "#1f77b4"});
  if (!n.empty()) {
    // Theory slope anchored at the geometric mean of the data.
    double lx = 0.0, ly = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) lx += std::log(n[i]), ly += std::log(err[i]);
    lx /= n.size();
    ly /= n.size();
    const double slope = -beta / (2.0 * beta + dim);
    std::vector<double> ty;
    for (double x : n) ty.push_back(std::exp(ly + slope * (std::log(x) - lx)));
    p.series.push_back({"theory", n, ty, true, "#d62728"});
  }
  return p;
}

PlotSpec tail_plot(const std::vector<std::pair<std::string, const TailCurve*>>& curves,
                   double qstar, double c4) {
  PlotSpec p;
  p.title = "Exceedance probability of the normalized deviation";
  p.x_label = "u";
  p.y_label = "P(dev > u)";
  static const char* kColors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
  std::size_t i = 0;
  double u_max = 0.0;
  for (const auto& [label, c] : curves) {
    p.series.push_back({label, c->u, c->p_hat, false, kColors[i++ % 5]});
    if (!c->u.empty()) u_max = std::max(u_max, c->u.back());
  }
  std::vector<double> bu, bp;
  for (int k = 1; k <= 100; ++k) {
    const double u = u_max * k / 100.0;
    bu.push_back(u);
    bp.push_back(std::min(1.0, 2.0 * std::exp(-c4 * std::pow(u, qstar))));
  }
  p.series.push_back({"bound 2exp(-C4 u^q*)", bu, bp, true, "#d62728"});
  return p;
}

int run_validate_kernel(const KernelConfig& kc, const QuadratureSettings& q,
                        const std::string& out_dir) {
  const auto kernel = make_kernel(kc);
  const auto report = validate_kernel(kernel, q);
  const json j = validation_to_json(kernel, report);
  std::cout << j.dump(2) << "\n";
  if (!out_dir.empty()) {
    const json config = {{"family", to_string(kc.family)},
                         {"dim", kc.dim},
                         {"order", kc.order},
                         {"truncation_radius", q.truncation_radius},
                         {"nodes", q.nodes_per_axis},
                         {"tolerance", q.tolerance},
                         {"moment_order", q.moment_order}};
    RunRecorder rec("validate-kernel", out_dir, config, 0);
    rec.write_json("kernel_report.json", j);
    rec.finish();
  }
  if (report.failure) spdlog::error("kernel validation failed: {}", *report.failure);
  return report.passed() ? kSuccess : kContractError;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Recursive Wolverton-Wagner density estimation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  int workers = default_workers();
  app.add_option("--workers", workers, "Worker threads for replications (default: $WWKDE_WORKERS)")
      ->check(CLI::PositiveNumber);

  // validate-kernel
  auto* validate = app.add_subcommand("validate-kernel", "Check a kernel's integral and moment conditions");
  KernelConfig vk;
  std::string vk_family = "gaussian";
  QuadratureSettings vq;
  std::string vk_out;
  validate->add_option("--family", vk_family, "gaussian | epanechnikov | orthogonal");
  validate->add_option("--dim", vk.dim)->check(CLI::PositiveNumber);
  validate->add_option("--order", vk.order)->check(CLI::NonNegativeNumber);
  validate->add_option("--truncation-radius", vq.truncation_radius);
  validate->add_option("--nodes", vq.nodes_per_axis);
  validate->add_option("--tolerance", vq.tolerance);
  validate->add_option("--moment-order", vq.moment_order, "Report moments up to this degree (use [beta])");
  validate->add_option("--out-dir", vk_out, "Also write kernel_report.json and manifest.json here");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Wolverton-Wagner estimate of a sample on a box grid");
  std::string est_samples, est_kernel = "epanechnikov", est_out_dir = ".";
  int est_order = 1;
  double est_beta = 1.0, est_c2 = 1.0, est_gamma = 0.0;
  std::vector<double> est_lower, est_upper;
  std::vector<int> est_cells;
  bool est_pr = false, est_clip = false;
  estimate->add_option("--samples", est_samples, "CSV with one point per row")->required();
  estimate->add_option("--kernel", est_kernel);
  estimate->add_option("--order", est_order);
  estimate->add_option("--beta", est_beta);
  estimate->add_option("--c2", est_c2);
  estimate->add_option("--gamma", est_gamma);
  estimate->add_option("--lower", est_lower)->required()->delimiter(',');
  estimate->add_option("--upper", est_upper)->required()->delimiter(',');
  estimate->add_option("--cells", est_cells)->delimiter(',');
  estimate->add_flag("--pr", est_pr, "Add a Parzen-Rosenblatt column f_pr");
  estimate->add_flag("--clip", est_clip, "Clip negative values and renormalise");
  estimate->add_option("--out-dir", est_out_dir);

  // ci
  auto* ci = app.add_subcommand("ci", "Confidence radius from the exponential tail bound");
  std::uint64_t ci_n = 1;
  int ci_d = 1;
  double ci_beta = 1.0, ci_alpha = 0.05, ci_c4 = 1.0, ci_c3 = 0.0;
  std::string ci_out;
  ci->add_option("--n", ci_n)->required()->check(CLI::PositiveNumber);
  ci->add_option("--beta", ci_beta)->required();
  ci->add_option("--d", ci_d)->required()->check(CLI::PositiveNumber);
  ci->add_option("--alpha", ci_alpha)->required();
  ci->add_option("--c4", ci_c4);
  ci->add_option("--c3", ci_c3, "Bias allowance added to the band half-width");
  ci->add_option("--out-dir", ci_out, "Also write ci.json and manifest.json here");

  // experiments
  auto* rate = app.add_subcommand("rate-experiment", "Monte Carlo convergence-rate run");
  auto* tail = app.add_subcommand("tail-experiment", "Monte Carlo tail-exponent run");
  std::string exp_config, exp_out = ".";
  bool exp_svg = false;
  for (auto* sub : {rate, tail}) {
    sub->add_option("--config", exp_config, "Experiment JSON")->required();
    sub->add_option("--out-dir", exp_out);
    sub->add_flag("--svg", exp_svg, "Also write an SVG plot");
  }

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Fit the tail-bound constant C4");
  std::string cal_curve, cal_config, cal_out = ".";
  double cal_beta = 1.0, cal_c4_max = 1e6;
  int cal_d = 1;
  calibrate->add_option("--curve", cal_curve, "Tail CSV (u, p_hat, wilson_lo, wilson_hi)");
  calibrate->add_option("--config", cal_config, "Experiment JSON; runs the tail experiment first");
  calibrate->add_option("--beta", cal_beta);
  calibrate->add_option("--d", cal_d);
  calibrate->add_option("--c4-max", cal_c4_max);
  calibrate->add_option("--out-dir", cal_out);

  // plot
  auto* plot = app.add_subcommand("plot", "Render a CSV produced by this tool as SVG");
  std::string plot_in, plot_kind = "rate", plot_out = "plot.svg", plot_echo;
  double plot_beta = 1.0, plot_c4 = 1.0;
  int plot_d = 1;
  plot->add_option("--input", plot_in)->required();
  plot->add_option("--kind", plot_kind, "rate | tail | estimate");
  plot->add_option("--output", plot_out);
  plot->add_option("--beta", plot_beta);
  plot->add_option("--d", plot_d);
  plot->add_option("--c4", plot_c4);
  plot->add_option("--csv-out", plot_echo, "Write back the values that were plotted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kContractError;
  }

  try {
    if (*validate) {
      vk.family = kernel_family_from_string(vk_family);
      return run_validate_kernel(vk, vq, vk_out);
    }

    if (*estimate) {
      const auto table = CsvTable::read(est_samples);
      const int d = static_cast<int>(table.header().size());
      std::vector<double> coords;
      for (const auto& row : table.rows()) coords.insert(coords.end(), row.begin(), row.end());
      const PointSet samples(d, std::move(coords));
      if (est_cells.empty()) est_cells.assign(d, 200);
      require(static_cast<int>(est_lower.size()) == d && static_cast<int>(est_upper.size()) == d &&
                  static_cast<int>(est_cells.size()) == d,
              "--lower/--upper/--cells must have one entry per sample column");
      const auto grid = EvaluationGrid::box(est_lower, est_upper, est_cells, GridMeasure::lebesgue);
      const auto kernel = make_kernel({kernel_family_from_string(est_kernel), d, est_order, 10.0});
      const BandwidthSchedule schedule(est_c2, est_beta, d, est_gamma);

      auto state = ww_init(grid, kernel, schedule);
      for (std::size_t i = 0; i < samples.size(); ++i) state.update(samples[i]);
      auto ww = state.values();
      std::vector<double> pr;
      if (est_pr && !samples.empty())
        pr = pr_batch(samples, grid, kernel, bandwidth_at(schedule, samples.size()));
      if (est_clip) {
        clip_and_renormalize(ww, grid);
        if (!pr.empty()) clip_and_renormalize(pr, grid);
      }
      std::vector<std::string> header;
      for (int a = 0; a < d; ++a) header.push_back("x_" + std::to_string(a + 1));
      header.push_back("f_ww");
      if (est_pr) header.push_back("f_pr");
      CsvTable out(header);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row(grid.point(i).begin(), grid.point(i).end());
        row.push_back(ww[i]);
        if (est_pr) row.push_back(pr.empty() ? 0.0 : pr[i]);
        out.add_row(std::move(row));
      }
      const json config = {{"samples_sha256", config_hash(json(read_text_file(est_samples)))},
                           {"kernel", est_kernel}, {"order", est_order}, {"beta", est_beta},
                           {"c2", est_c2}, {"gamma", est_gamma}, {"lower", est_lower},
                           {"upper", est_upper}, {"cells", est_cells}, {"pr", est_pr},
                           {"clip", est_clip}};
      RunRecorder rec("estimate", est_out_dir, config, 0);
      out.write(rec.path("estimate.csv"));
      rec.finish();
      return kSuccess;
    }

    if (*ci) {
      const TailModel tm(ci_beta, ci_d, TailConstants{.c4 = ci_c4});
      const auto r = confidence_radius(tm, ci_n, ci_alpha, ci_c3);
      const json j = {{"n", ci_n},         {"beta", ci_beta},
                      {"d", ci_d},         {"alpha", ci_alpha},
                      {"c4", ci_c4},       {"c3", ci_c3},
                      {"u_star", r.u_star}, {"normalizer", r.normalizer},
                      {"radius", r.radius}, {"half_width", r.half_width},
                      {"outside_stated_range", r.outside_stated_range}};
      std::cout << j.dump(2) << "\n";
      if (r.outside_stated_range)
        spdlog::warn("u* = {} lies below 1, where the tail bound is extrapolated", r.u_star);
      if (!ci_out.empty()) {
        RunRecorder rec("ci", ci_out,
                        {{"n", ci_n}, {"beta", ci_beta}, {"d", ci_d}, {"alpha", ci_alpha},
                         {"c4", ci_c4}, {"c3", ci_c3}},
                        0);
        rec.write_json("ci.json", j);
        rec.finish();
      }
      return kSuccess;
    }

    if (*rate) {
      const json doc = load_json(exp_config);
      auto cfg = experiment_config_from_json(doc);
      const std::string hash = config_hash(doc);
      RunRecorder rec("rate-experiment", exp_out, doc, cfg.seed);
      const auto report = run_rate_experiment(cfg, workers);
      rec.write_json("rate_report.json", rate_to_json(report, cfg, hash));
      rate_csv(report).write(rec.path("rate.csv"));
      if (exp_svg) {
        std::vector<double> n, e;
        for (const auto& row : report.rows) n.push_back(row.n), e.push_back(row.rmse);
        write_text_file(rec.path("rate.svg"),
                        render_svg(rate_plot(n, e, cfg.smoothness.beta, cfg.density.dim)));
      }
      rec.finish();
      spdlog::info("fitted slope {:.4f} (theory {:.4f})", report.slope, report.theoretical_slope);
      return report.within_tolerance ? kSuccess : kFalsified;
    }

    if (*tail) {
      const json doc = load_json(exp_config);
      auto cfg = experiment_config_from_json(doc);
      const std::string hash = config_hash(doc);
      RunRecorder rec("tail-experiment", exp_out, doc, cfg.seed);
      const auto report = run_tail_experiment(cfg, workers);
      rec.write_json("tail_report.json", tail_to_json(report, cfg, hash));
      bool ok = true;
      std::vector<std::pair<std::string, const TailCurve*>> curves;
      for (const auto& cp : report.checkpoints) {
        tail_csv(cp.curve).write(rec.path("tail_n" + std::to_string(cp.curve.n) + ".csv"));
        curves.emplace_back("n = " + std::to_string(cp.curve.n), &cp.curve);
        ok = ok && !cp.calibration.falsified && cp.exponent_within_tolerance;
      }
      if (exp_svg)
        write_text_file(rec.path("tail.svg"),
                        render_svg(tail_plot(curves, report.theoretical_exponent, cfg.constants.c4)));
      rec.finish();
      return ok ? kSuccess : kFalsified;
    }

    if (*calibrate) {
      require(cal_curve.empty() != cal_config.empty(), "calibrate needs exactly one of --curve or --config");
      if (!cal_config.empty()) {
        const json doc = load_json(cal_config);
        auto cfg = experiment_config_from_json(doc);
        cfg.target = Target::tail;
        RunRecorder rec("calibrate", cal_out, doc, cfg.seed);
        const auto report = run_tail_experiment(cfg, workers);
        json out = json::array();
        bool ok = true;
        for (const auto& cp : report.checkpoints) {
          out.push_back({{"n", cp.curve.n}, {"calibration", calibration_to_json(cp.calibration)}});
          ok = ok && !cp.calibration.falsified;
        }
        rec.write_json("calibration.json", {{"checkpoints", out}});
        rec.finish();
        return ok ? kSuccess : kFalsified;
      }
      const auto table = CsvTable::read(cal_curve);
      TailCurve curve;
      const auto iu = table.column("u"), ip = table.column("p_hat"),
                 ilo = table.column("wilson_lo"), ihi = table.column("wilson_hi");
      for (const auto& row : table.rows()) {
        curve.u.push_back(row[iu]);
        curve.p_hat.push_back(row[ip]);
        curve.wilson_lo.push_back(row[ilo]);
        curve.wilson_hi.push_back(row[ihi]);
      }
      const TailModel tm(cal_beta, cal_d);
      const auto cal = calibrate_constant(curve, tm, cal_c4_max);
      const json config = {{"curve_sha256", config_hash(json(read_text_file(cal_curve)))},
                           {"beta", cal_beta}, {"d", cal_d}, {"c4_max", cal_c4_max}};
      RunRecorder rec("calibrate", cal_out, config, 0);
      rec.write_json("calibration.json", calibration_to_json(cal));
      rec.finish();
      std::cout << calibration_to_json(cal).dump(2) << "\n";
      return cal.falsified ? kFalsified : kSuccess;
    }

    if (*plot) {
      const auto table = CsvTable::read(plot_in);
      PlotSpec spec;
      if (plot_kind == "rate") {
        std::vector<double> n, e;
        for (const auto& row : table.rows())
          n.push_back(row[table.column("n")]), e.push_back(row[table.column("mean_error")]);
        spec = rate_plot(n, e, plot_beta, plot_d);
      } else if (plot_kind == "tail") {
        TailCurve c;
        for (const auto& row : table.rows())
          c.u.push_back(row[table.column("u")]), c.p_hat.push_back(row[table.column("p_hat")]);
        spec = tail_plot({{"empirical", &c}}, (2.0 * plot_beta + plot_d) / (plot_beta + plot_d),
                         plot_c4);
      } else if (plot_kind == "estimate") {
        std::vector<double> x, f;
        for (const auto& row : table.rows())
          x.push_back(row[table.column("x_1")]), f.push_back(row[table.column("f_ww")]);
        spec.title = "Density estimate";
        spec.x_label = "x_1";
        spec.y_label = "f";
        spec.log_x = spec.log_y = false;
        spec.series.push_back({"f_ww", x, f, true, "#1f77b4"});
        if (std::find(table.header().begin(), table.header().end(), "f_pr") != table.header().end()) {
          std::vector<double> g;
          for (const auto& row : table.rows()) g.push_back(row[table.column("f_pr")]);
          spec.series.push_back({"f_pr", x, g, true, "#2ca02c"});
        }
      } else {
        throw ConfigError("unknown plot kind '" + plot_kind + "'");
      }
      const fs::path out_path(plot_out);
      const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
      RunRecorder rec("plot", dir,
                      {{"input_sha256", config_hash(json(read_text_file(plot_in)))},
                       {"kind", plot_kind}, {"beta", plot_beta}, {"d", plot_d}, {"c4", plot_c4}},
                      0);
      write_text_file(rec.path(out_path.filename().string()), render_svg(spec));
      if (!plot_echo.empty()) {
        table.write(plot_echo);
      }
      rec.finish();
      return kSuccess;
    }
  } catch (const ExperimentError& e) {
    spdlog::error("{} (seed {}, replication {})", e.what(), e.seed, e.replication);
    return kContractError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kContractError;
  }
  return kContractError;
}

}  // namespace wwkde::cli
