#include "ardl/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "ardl/csv.hpp"
#include "ardl/index.hpp"
#include "ardl/model.hpp"
#include "ardl/stability.hpp"
#include "ardl/stats.hpp"
#include "ardl/unitroot.hpp"

namespace ardl {

namespace {

std::string substitute_dep(const std::string& name, const std::string& dep) {
  std::string out = name;
  const std::string token = "{dep}";
  for (std::size_t pos = out.find(token); pos != std::string::npos; pos = out.find(token))
    out.replace(pos, token.size(), dep);
  return out;
}

const NamedSeries& find_series(const std::vector<NamedSeries>& pool, const std::string& name) {
  for (const auto& s : pool) {
    if (s.name == name) return s;
  }
  throw std::runtime_error("unknown variable '" + name + "'");
}

AdfReportRow adf_row(const std::string& series_name, const std::string& transform,
                     const Eigen::VectorXd& series, int max_lag) {
  AdfResult res = adf_test(series, max_lag, AdfDeterministic::constant_trend);
  AdfReportRow row;
  row.series = series_name;
  row.transform = transform;
  row.prob = res.p_value;
  row.lag = res.chosen_lag;
  row.max_lag = res.max_lag;
  row.n = res.nobs_effective;
  return row;
}

}  // namespace

std::vector<NamedSeries> assemble_columns(const PipelineConfig& config) {
  std::vector<NamedSeries> pool;

  auto add_panel = [&pool](const PanelDataset& panel) {
    for (const auto& name : panel.names) {
      NamedSeries s;
      s.name = name;
      s.labels = panel.index;
      s.values = panel.column(name);
      pool.push_back(std::move(s));
    }
  };

  if (!config.input_panel.empty()) add_panel(read_panel_csv(config.input_panel));

  if (!config.constituents_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(config.constituents_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw std::runtime_error("no constituent CSVs in '" + config.constituents_dir + "'");
    std::vector<RawAssetTable> weekly;
    for (const auto& file : files) {
      RawAssetTable daily = load_asset_csv(file.string(), {}, config.strict_ingest);
      weekly.push_back(resample_weekly(daily, config.resample_rule));
    }
    IndexSeries idx = build_index(weekly);
    NamedSeries marp{"marp", idx.index, idx.marp};
    NamedSeries marv{"marv", idx.index, idx.marv};
    NamedSeries mars{"mars", idx.index, idx.mars};
    pool.push_back(std::move(marp));
    pool.push_back(std::move(marv));
    pool.push_back(std::move(mars));
    for (const auto& table : weekly) pool.push_back(price_series(table));
  }

  if (!config.exogenous_csv.empty()) add_panel(read_panel_csv(config.exogenous_csv));

  if (pool.empty())
    throw std::runtime_error("no input columns; give --input, --constituents or --exogenous");
  return pool;
}

ModelReport run_model(const std::vector<NamedSeries>& pool, const PipelineConfig& config,
                      const std::string& dep) {
  std::vector<std::string> x_vars, z_vars;
  for (const auto& name : config.x_vars) x_vars.push_back(substitute_dep(name, dep));
  for (const auto& name : config.z_vars) z_vars.push_back(substitute_dep(name, dep));

  std::vector<std::string> needed{dep};
  needed.insert(needed.end(), x_vars.begin(), x_vars.end());
  needed.insert(needed.end(), z_vars.begin(), z_vars.end());

  std::vector<NamedSeries> selected;
  for (const auto& name : needed) selected.push_back(find_series(pool, name));
  PanelDataset panel = align(selected);

  std::vector<std::string> log_cols;
  for (const auto& name : config.log_columns) {
    std::string resolved = substitute_dep(name, dep);
    if (std::find(needed.begin(), needed.end(), resolved) == needed.end())
      throw std::runtime_error("log column '" + resolved + "' is not used by model " + dep);
    log_cols.push_back(resolved);
  }
  if (!log_cols.empty()) panel = log_transform(panel, log_cols);

  ModelReport report;
  report.dep = dep;

  const int n = static_cast<int>(panel.rows());
  int adf_max = config.adf_max_lag > 0 ? config.adf_max_lag : adf_default_max_lag(n);
  for (const auto& name : needed) {
    Eigen::VectorXd series = panel.column(name);
    report.adf_rows.push_back(adf_row(name, "level", series, adf_max));
    Eigen::VectorXd diff = series.tail(series.size() - 1) - series.head(series.size() - 1);
    report.adf_rows.push_back(adf_row(name, "first_difference", diff, adf_max));
  }

  ArdlSpec spec =
      select_spec(panel, dep, x_vars, z_vars, config.max_lag, parse_search_mode(config.search));
  spec.bound_case = config.case_mode == "auto" ? choose_case(panel, spec, config.hac_bandwidth)
                                               : parse_case(config.case_mode);
  report.spec = spec;

  ArdlFit fit = fit_unrestricted(panel, spec, config.hac_bandwidth);
  const double dof = fit.ols.nobs - fit.ols.nparams;
  for (int c = 0; c < fit.ols.nparams; ++c) {
    CoefficientRow row;
    row.name = fit.design.col_names[c];
    row.estimate = fit.ols.coefficients(c);
    row.std_error = std::sqrt(fit.hac.matrix(c, c));
    row.p_value = row.std_error > 0.0
                      ? student_t_two_sided(row.estimate / row.std_error, dof)
                      : 1.0;
    report.ardl_rows.push_back(row);
  }
  report.r_squared = fit.ols.r_squared;
  report.durbin_watson = fit.ols.durbin_watson;
  std::tie(report.bg_lm_stat, report.bg_lm_p) =
      breusch_godfrey_lm(fit.ols, fit.design.X, config.bg_lags);
  std::tie(report.bpg_stat, report.bpg_p) = breusch_pagan_godfrey(fit.ols, fit.design.X);

  const BoundsTable table =
      config.bounds_file.empty() ? pesaran_bounds_k8() : load_bounds_csv(config.bounds_file);
  int k = static_cast<int>(x_vars.size() + z_vars.size());
  if (table.k != k)
    throw std::runtime_error("critical bounds are for k = " + std::to_string(table.k) +
                             " but the model has k = " + std::to_string(k) +
                             " regressors; supply --bounds-file");
  report.bounds = bound_test(fit, table);

  report.longrun = long_run(fit);
  Eigen::VectorXd ect = build_ect(panel, fit);
  EcmFit ecm = fit_recm(panel, spec, ect, config.hac_bandwidth);
  const double ecm_dof = ecm.ols.nobs - ecm.ols.nparams;
  for (int c = 0; c < ecm.ols.nparams; ++c) {
    CoefficientRow row;
    row.name = ecm.col_names[c];
    row.estimate = ecm.ols.coefficients(c);
    row.std_error = std::sqrt(ecm.hac.matrix(c, c));
    row.p_value = row.std_error > 0.0
                      ? student_t_two_sided(row.estimate / row.std_error, ecm_dof)
                      : 1.0;
    report.ecm_rows.push_back(row);
  }
  report.warnings = report.longrun.warnings;
  report.warnings.insert(report.warnings.end(), ecm.warnings.begin(), ecm.warnings.end());

  report.cusum = cusum_test(fit.design.y, fit.design.X, config.cusum_level);
  report.cusum_first_t = fit.ols.nparams + 1;
  return report;
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ARDL_LAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.dep_vars.empty()) throw std::runtime_error("no dependent variables configured");
  std::vector<NamedSeries> pool = assemble_columns(config);

  PipelineResult result;
  result.reports.resize(config.dep_vars.size());
  std::vector<std::exception_ptr> errors(config.dep_vars.size());

  const int nthreads =
      std::min<int>(effective_threads(config.threads), static_cast<int>(config.dep_vars.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= config.dep_vars.size()) break;
      try {
        result.reports[i] = run_model(pool, config, config.dep_vars[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  std::filesystem::create_directories(config.output_dir);
  ReportFormat format = parse_report_format(config.format);
  for (const auto& report : result.reports) write_model_report(config.output_dir, report, format);
  write_summary_json((std::filesystem::path(config.output_dir) / "summary.json").string(),
                     result.reports);

  for (const auto& report : result.reports) {
    if (report.bounds.decisions.at(5) == BoundDecision::inconclusive) result.exit_code = 2;
  }
  return result;
}

}  // namespace ardl
