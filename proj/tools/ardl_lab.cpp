// ardl-lab: cointegration toolkit around a market-cap-weighted index builder,
// unit-root screening, lag-order search, bounds testing and error-correction
// estimation, driven by CSV inputs.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ardl/csv.hpp"
#include "ardl/index.hpp"
#include "ardl/ingest.hpp"
#include "ardl/model.hpp"
#include "ardl/pipeline.hpp"
#include "ardl/report.hpp"
#include "ardl/stability.hpp"
#include "ardl/synth.hpp"
#include "ardl/unitroot.hpp"

namespace {

// Flat key=value configuration: one pair per line, '#' comments, blank lines
// and [section] headers ignored. Keys mirror the long option names.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + t);
    values[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return values;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ModelFlags {
  std::string input;
  std::string dep;
  std::string x_list;
  std::string z_list;
  std::string log_list;
  int max_lag = 4;
  std::string case_mode = "auto";
  std::string search = "per_variable";
  int hac_bandwidth = ardl::kDefaultHacBandwidth;
  int bg_lags = ardl::kDefaultBgLags;
  int adf_max_lag = 0;
  std::string bounds_file;
  std::string out_dir = ".";
  std::string format = "csv";
  double cusum_level = 0.05;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "prepared panel CSV (date,<name>,...)")->required();
    cmd->add_option("--dep", dep, "dependent variable")->required();
    cmd->add_option("--x", x_list, "comma list of focus regressors")->required();
    cmd->add_option("--z", z_list, "comma list of control regressors");
    cmd->add_option("--log", log_list, "columns to log-transform");
    cmd->add_option("--max-lag", max_lag, "maximum lag order for the search");
    cmd->add_option("--case", case_mode, "deterministic case: auto or I..IV");
    cmd->add_option("--search", search, "per_variable or full enumeration");
    cmd->add_option("--hac-bandwidth", hac_bandwidth, "Newey-West Bartlett bandwidth");
    cmd->add_option("--bg-lags", bg_lags, "serial-correlation LM lag order");
    cmd->add_option("--adf-max-lag", adf_max_lag, "unit-root screening max lag (0 = auto)");
    cmd->add_option("--bounds-file", bounds_file, "critical bounds CSV (case,k,level,lower,upper)");
    cmd->add_option("--out-dir", out_dir, "output directory");
    cmd->add_option("--format", format, "csv or text tables");
    cmd->add_option("--cusum-level", cusum_level, "CUSUM significance level");
  }

  ardl::PipelineConfig to_config() const {
    ardl::PipelineConfig cfg;
    cfg.input_panel = input;
    cfg.dep_vars = {dep};
    cfg.x_vars = split_list(x_list);
    cfg.z_vars = split_list(z_list);
    cfg.log_columns = split_list(log_list);
    cfg.max_lag = max_lag;
    cfg.case_mode = case_mode;
    cfg.search = search;
    cfg.hac_bandwidth = hac_bandwidth;
    cfg.bg_lags = bg_lags;
    cfg.adf_max_lag = adf_max_lag;
    cfg.bounds_file = bounds_file;
    cfg.output_dir = out_dir;
    cfg.format = format;
    cfg.cusum_level = cusum_level;
    return cfg;
  }
};

void print_model_summary(const ardl::ModelReport& report) {
  std::ostringstream spec;
  spec << "(" << report.spec.m;
  for (int n : report.spec.reg_lags) spec << "," << n;
  spec << ")";
  std::cout << report.dep << ": ARDL" << spec.str() << " case " << to_string(report.spec.bound_case)
            << "\n";
  std::printf("  F = %.4f;", report.bounds.f_stat);
  for (int level : {10, 5, 1})
    std::printf(" %d%%: %s;", level, to_string(report.bounds.decisions.at(level)).c_str());
  std::printf("\n");
  const ardl::CoefficientRow& ect = report.ecm_rows.back();
  std::printf("  ECT(-1) = %s\n",
              ardl::format_estimate(ect.estimate, ect.std_error, ect.p_value).c_str());
  for (const auto& warning : report.warnings) std::cout << "  warning: " << warning << "\n";
}

int cmd_synth(const std::string& kind, double beta, double lambda, double rho, double drift,
              double sigma, int n, std::uint64_t seed, int burn_in, const std::string& out) {
  ardl::DgpConfig cfg;
  cfg.kind = ardl::parse_dgp_kind(kind);
  cfg.beta = beta;
  cfg.lambda = lambda;
  cfg.rho = rho;
  cfg.drift = drift;
  cfg.sigma = sigma;
  cfg.n = n;
  cfg.seed = seed;
  cfg.burn_in = burn_in;
  ardl::PanelDataset panel = ardl::generate(cfg);
  ardl::write_panel_csv(out, panel);
  std::cout << "wrote " << panel.rows() << " rows to " << out << "\n";
  return 0;
}

int cmd_index(const std::string& dir, const std::string& out, const std::string& weights_out,
              const std::string& rule, bool strict, bool strict_volume) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no constituent CSVs in '" + dir + "'");

  ardl::ResampleRule rrule =
      rule == "mean" ? ardl::ResampleRule::mean : ardl::ResampleRule::last_obs;
  std::vector<ardl::RawAssetTable> weekly;
  std::vector<std::string> diagnostics;
  for (const auto& file : files) {
    auto daily = ardl::load_asset_csv(file.string(), {}, strict, &diagnostics);
    weekly.push_back(ardl::resample_weekly(daily, rrule));
  }
  for (const auto& d : diagnostics) std::cerr << "note: " << d << "\n";

  ardl::IndexOptions options;
  options.strict_volume = strict_volume;
  ardl::IndexSeries idx = ardl::build_index(weekly, options);

  std::vector<std::vector<std::string>> rows;
  char buf[40];
  for (std::size_t t = 0; t < idx.index.size(); ++t) {
    std::vector<std::string> row{idx.index[t]};
    for (double v : {idx.marp(t), idx.marv(t), idx.mars(t)}) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      row.emplace_back(buf);
    }
    rows.push_back(std::move(row));
  }
  ardl::write_csv(out, {"date", "marp", "marv", "mars"}, rows);
  std::cout << "wrote " << rows.size() << " index rows to " << out << "\n";

  if (!weights_out.empty()) {
    std::vector<std::vector<std::string>> wrows;
    for (std::size_t t = 0; t < idx.index.size(); ++t) {
      for (const auto& [asset, weight] : idx.weights[t]) {
        std::snprintf(buf, sizeof(buf), "%.17g", weight);
        wrows.push_back({idx.index[t], asset, buf});
      }
    }
    ardl::write_csv(weights_out, {"date", "asset_id", "weight"}, wrows);
  }
  return 0;
}

int cmd_adf(const std::string& input, const std::string& column, int max_lag, const std::string& det,
            bool diff, double level, int mc_draws, std::uint64_t seed) {
  ardl::PanelDataset panel = ardl::read_panel_csv(input);
  Eigen::VectorXd series = panel.column(column);
  // Leading/trailing gaps shorten the sample; interior gaps are not imputed.
  Eigen::Index first = 0, last = series.size() - 1;
  while (first < series.size() && ardl::is_missing(series(first))) ++first;
  while (last >= first && ardl::is_missing(series(last))) --last;
  if (last < first) throw std::runtime_error("column '" + column + "' has no observations");
  for (Eigen::Index t = first; t <= last; ++t) {
    if (ardl::is_missing(series(t)))
      throw std::runtime_error("column '" + column + "' has a gap at " + panel.index[t] +
                               "; no imputation is performed");
  }
  Eigen::VectorXd y = series.segment(first, last - first + 1);
  std::string transform = "level";
  if (diff) {
    y = (y.tail(y.size() - 1) - y.head(y.size() - 1)).eval();
    transform = "first_difference";
  }
  int effective_max = max_lag > 0 ? max_lag : ardl::adf_default_max_lag(static_cast<int>(y.size()));
  ardl::AdfDeterministic d = ardl::parse_deterministic(det);
  ardl::AdfResult res = ardl::adf_test(y, effective_max, d, level);
  double prob = res.p_value;
  if (mc_draws > 0)
    prob = ardl::adf_pvalue_mc(res.statistic, static_cast<int>(y.size()), res.chosen_lag, d,
                               mc_draws, seed);
  std::printf("series,transform,prob,lag,maxlag,n\n");
  std::printf("%s,%s,%.4f,%d,%d,%d\n", column.c_str(), transform.c_str(), prob, res.chosen_lag,
              res.max_lag, res.nobs_effective);
  return 0;
}

int cmd_bounds(double f, const std::string& case_text, const std::string& bounds_file) {
  ardl::BoundsTable table =
      bounds_file.empty() ? ardl::pesaran_bounds_k8() : ardl::load_bounds_csv(bounds_file);
  ardl::BoundCase c = ardl::parse_case(case_text);
  std::printf("level,lower,upper,f_stat,decision\n");
  for (int level : {10, 5, 1}) {
    const ardl::BoundsRow& row = table.at(c, level);
    std::printf("%d%%,%.4f,%.4f,%.4f,%s\n", level, row.lower, row.upper, f,
                to_string(ardl::classify_bound(f, row)).c_str());
  }
  return 0;
}

int run_single_model(const ModelFlags& flags, const std::string& only_table) {
  ardl::PipelineConfig cfg = flags.to_config();
  auto pool = ardl::assemble_columns(cfg);
  ardl::ModelReport report = ardl::run_model(pool, cfg, cfg.dep_vars[0]);
  std::filesystem::create_directories(cfg.output_dir);
  ardl::write_model_report(cfg.output_dir, report, ardl::parse_report_format(cfg.format));
  ardl::write_summary_json(
      (std::filesystem::path(cfg.output_dir) / "summary.json").string(), {report});
  if (only_table == "ecm") {
    std::printf("variable,coef,se,pvalue,stars\n");
    for (const auto& row : report.ecm_rows)
      std::printf("%s,%.4f,%.4f,%.4f,%s\n", row.name.c_str(), row.estimate, row.std_error,
                  row.p_value, ardl::significance_stars(row.p_value).c_str());
  } else if (only_table == "cusum") {
    std::printf("t,cusum,lower,upper\n");
    for (Eigen::Index i = 0; i < report.cusum.cusum_path.size(); ++i)
      std::printf("%d,%.17g,%.17g,%.17g\n", report.cusum_first_t + static_cast<int>(i),
                  report.cusum.cusum_path(i), report.cusum.lower_line(i),
                  report.cusum.upper_line(i));
  } else {
    print_model_summary(report);
  }
  return report.bounds.decisions.at(5) == ardl::BoundDecision::inconclusive ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cointegration lab: index construction, unit roots, lag search, bounds tests and "
               "error-correction models over CSV panels"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic panel CSV");
  std::string synth_kind = "coint", synth_out = "panel.csv";
  double synth_beta = 2.0, synth_lambda = -0.25, synth_rho = 0.5, synth_drift = 0.0,
         synth_sigma = 1.0;
  int synth_n = 400, synth_burn = 100;
  std::uint64_t synth_seed = 7;
  synth->add_option("--kind", synth_kind, "wn|ar1|rw|coint");
  synth->add_option("--beta", synth_beta, "long-run slope (coint)");
  synth->add_option("--lambda", synth_lambda, "adjustment speed in (-1,0) (coint)");
  synth->add_option("--rho", synth_rho, "AR(1) coefficient");
  synth->add_option("--drift", synth_drift, "random-walk drift");
  synth->add_option("--sigma", synth_sigma, "innovation scale");
  synth->add_option("--n", synth_n, "sample size");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--burn-in", synth_burn, "burn-in length");
  synth->add_option("--out", synth_out, "output CSV path");

  // index
  auto* index = app.add_subcommand("index", "build the cap-weighted index from constituent CSVs");
  std::string index_dir, index_out = "index.csv", index_weights, index_rule = "last_obs";
  bool index_strict = false, index_strict_volume = false;
  index->add_option("--constituents", index_dir, "directory of per-asset CSVs")->required();
  index->add_option("--out", index_out, "output CSV (date,marp,marv,mars)");
  index->add_option("--weights-out", index_weights, "optional weights CSV (date,asset_id,weight)");
  index->add_option("--rule", index_rule, "weekly resample rule: last_obs|mean");
  index->add_flag("--strict", index_strict, "abort on malformed input rows");
  index->add_flag("--strict-volume", index_strict_volume, "missing volumes are errors");

  // adf
  auto* adf = app.add_subcommand("adf", "unit-root test on one panel column");
  std::string adf_input, adf_column, adf_det = "ct";
  int adf_max = 0, adf_mc = 0;
  bool adf_diff = false;
  double adf_level = 0.05;
  std::uint64_t adf_seed = 1;
  adf->add_option("--input", adf_input, "panel CSV")->required();
  adf->add_option("--column", adf_column, "column to test")->required();
  adf->add_option("--max-lag", adf_max, "maximum augmentation lag (0 = auto)");
  adf->add_option("--det", adf_det, "deterministics: none|c|ct");
  adf->add_flag("--diff", adf_diff, "test the first difference");
  adf->add_option("--level", adf_level, "significance level for the decision");
  adf->add_option("--pvalue-mc", adf_mc, "simulate the null p-value with this many draws");
  adf->add_option("--seed", adf_seed, "seed for --pvalue-mc");

  // fit / ecm / cusum share flags
  auto* fit = app.add_subcommand("fit", "lag search, bounds test, long-run and ECM tables");
  ModelFlags fit_flags;
  fit_flags.attach(fit);
  auto* ecm = app.add_subcommand("ecm", "like fit, printing the error-correction table");
  ModelFlags ecm_flags;
  ecm_flags.attach(ecm);
  auto* cusum = app.add_subcommand("cusum", "recursive-residual stability path of the fitted model");
  ModelFlags cusum_flags;
  cusum_flags.attach(cusum);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "classify an F statistic against critical bounds");
  double bounds_f = 0.0;
  std::string bounds_case = "II", bounds_file;
  bounds->add_option("--f", bounds_f, "F statistic")->required();
  bounds->add_option("--case", bounds_case, "deterministic case I..IV");
  bounds->add_option("--bounds-file", bounds_file, "bounds CSV (case,k,level,lower,upper)");

  // run
  auto* run = app.add_subcommand("run", "full multi-model pipeline from a config file or flags");
  std::string run_config;
  run->add_option("--config", run_config, "flat key=value configuration file");
  std::string run_input, run_constituents, run_exogenous, run_dep, run_x, run_z, run_log;
  std::string run_case = "auto", run_search = "per_variable", run_bounds, run_out = ".",
              run_format = "csv", run_rule = "last_obs";
  int run_max_lag = 4, run_hac = ardl::kDefaultHacBandwidth, run_bg = ardl::kDefaultBgLags,
      run_adf_max = 0, run_threads = 0;
  double run_cusum_level = 0.05;
  run->add_option("--input", run_input, "prepared panel CSV");
  run->add_option("--constituents", run_constituents, "directory of per-asset CSVs");
  run->add_option("--exogenous", run_exogenous, "weekly exogenous CSV");
  run->add_option("--dep", run_dep, "comma list of dependent variables");
  run->add_option("--x", run_x, "comma list of focus regressors ({dep} substituted)");
  run->add_option("--z", run_z, "comma list of control regressors");
  run->add_option("--log", run_log, "columns to log-transform");
  run->add_option("--max-lag", run_max_lag, "maximum lag order");
  run->add_option("--case", run_case, "deterministic case: auto or I..IV");
  run->add_option("--search", run_search, "per_variable or full");
  run->add_option("--hac-bandwidth", run_hac, "Newey-West bandwidth");
  run->add_option("--bg-lags", run_bg, "serial-correlation LM lags");
  run->add_option("--adf-max-lag", run_adf_max, "screening max lag (0 = auto)");
  run->add_option("--bounds-file", run_bounds, "critical bounds CSV");
  run->add_option("--out-dir", run_out, "output directory");
  run->add_option("--format", run_format, "csv or text");
  run->add_option("--cusum-level", run_cusum_level, "CUSUM significance level");
  run->add_option("--rule", run_rule, "weekly resample rule");
  run->add_option("--threads", run_threads, "worker threads (0 = ARDL_LAB_THREADS or hardware)");

  // report
  auto* report_cmd = app.add_subcommand("report", "re-render tables from a summary.json");
  std::string report_summary, report_out = ".", report_format = "text";
  report_cmd->add_option("--summary", report_summary, "summary.json path")->required();
  report_cmd->add_option("--out-dir", report_out, "output directory");
  report_cmd->add_option("--format", report_format, "csv or text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(synth_kind, synth_beta, synth_lambda, synth_rho, synth_drift, synth_sigma,
                       synth_n, synth_seed, synth_burn, synth_out);
    if (index->parsed())
      return cmd_index(index_dir, index_out, index_weights, index_rule, index_strict,
                       index_strict_volume);
    if (adf->parsed())
      return cmd_adf(adf_input, adf_column, adf_max, adf_det, adf_diff, adf_level, adf_mc, adf_seed);
    if (fit->parsed()) return run_single_model(fit_flags, "");
    if (ecm->parsed()) return run_single_model(ecm_flags, "ecm");
    if (cusum->parsed()) return run_single_model(cusum_flags, "cusum");
    if (bounds->parsed()) return cmd_bounds(bounds_f, bounds_case, bounds_file);
    if (run->parsed()) {
      if (!run_config.empty()) {
        // Config supplies defaults; flags given on the command line win.
        auto values = read_config_file(run_config);
        auto apply_string = [&](const char* flag, const char* key, std::string& target) {
          if (run->count(flag) == 0 && values.count(key)) target = values.at(key);
        };
        auto apply_int = [&](const char* flag, const char* key, int& target) {
          if (run->count(flag) == 0 && values.count(key)) target = std::stoi(values.at(key));
        };
        apply_string("--input", "input", run_input);
        apply_string("--constituents", "constituents", run_constituents);
        apply_string("--exogenous", "exogenous", run_exogenous);
        apply_string("--dep", "dep", run_dep);
        apply_string("--x", "x", run_x);
        apply_string("--z", "z", run_z);
        apply_string("--log", "log", run_log);
        apply_string("--case", "case", run_case);
        apply_string("--search", "search", run_search);
        apply_string("--bounds-file", "bounds-file", run_bounds);
        apply_string("--out-dir", "out-dir", run_out);
        apply_string("--format", "format", run_format);
        apply_string("--rule", "rule", run_rule);
        apply_int("--max-lag", "max-lag", run_max_lag);
        apply_int("--hac-bandwidth", "hac-bandwidth", run_hac);
        apply_int("--bg-lags", "bg-lags", run_bg);
        apply_int("--adf-max-lag", "adf-max-lag", run_adf_max);
        apply_int("--threads", "threads", run_threads);
        if (run->count("--cusum-level") == 0 && values.count("cusum-level"))
          run_cusum_level = std::stod(values.at("cusum-level"));
      }
      if (run_dep.empty()) throw std::runtime_error("no dependent variables; set --dep or dep=");
      if (run_x.empty()) throw std::runtime_error("no regressors; set --x or x=");
      ardl::PipelineConfig cfg;
      cfg.input_panel = run_input;
      cfg.constituents_dir = run_constituents;
      cfg.exogenous_csv = run_exogenous;
      cfg.dep_vars = split_list(run_dep);
      cfg.x_vars = split_list(run_x);
      cfg.z_vars = split_list(run_z);
      cfg.log_columns = split_list(run_log);
      cfg.max_lag = run_max_lag;
      cfg.case_mode = run_case;
      cfg.search = run_search;
      cfg.hac_bandwidth = run_hac;
      cfg.bg_lags = run_bg;
      cfg.adf_max_lag = run_adf_max;
      cfg.bounds_file = run_bounds;
      cfg.output_dir = run_out;
      cfg.format = run_format;
      cfg.cusum_level = run_cusum_level;
      cfg.resample_rule = run_rule == "mean" ? ardl::ResampleRule::mean : ardl::ResampleRule::last_obs;
      cfg.threads = run_threads;
      ardl::PipelineResult result = ardl::run_pipeline(cfg);
      for (const auto& model : result.reports) print_model_summary(model);
      return result.exit_code;
    }
    if (report_cmd->parsed()) {
      auto reports = ardl::read_summary_json(report_summary);
      std::filesystem::create_directories(report_out);
      for (const auto& r : reports)
        ardl::write_model_report(report_out, r, ardl::parse_report_format(report_format));
      std::cout << "re-rendered " << reports.size() << " model(s) into " << report_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
