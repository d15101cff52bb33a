#pragma once

#include <string>
#include <vector>

#include "ardl/ingest.hpp"
#include "ardl/report.hpp"

namespace ardl {

/// Full-run configuration. Variables are resolved against the assembled
/// column pool: per-asset price columns (named by file stem), the index
/// columns marp/marv/mars when a constituents directory is given, and every
/// exogenous column. Entries of x/z may contain the literal token "{dep}",
/// replaced by the dependent variable per model.
struct PipelineConfig {
  std::string input_panel;       // prepared wide CSV; skips ingest when set
  std::string constituents_dir;  // per-asset CSVs for the index build
  std::string exogenous_csv;
  std::vector<std::string> dep_vars;
  std::vector<std::string> x_vars;
  std::vector<std::string> z_vars;
  std::vector<std::string> log_columns;
  int max_lag = 4;
  std::string case_mode = "auto";  // or I..IV
  std::string search = "per_variable";
  int hac_bandwidth = kDefaultHacBandwidth;
  int bg_lags = kDefaultBgLags;
  int adf_max_lag = 0;  // 0 = floor(12 (n/100)^(1/4))
  std::string bounds_file;
  std::string output_dir = ".";
  std::string format = "csv";
  double cusum_level = 0.05;
  ResampleRule resample_rule = ResampleRule::last_obs;
  bool strict_ingest = false;
  int threads = 0;  // 0 = ARDL_LAB_THREADS env var, then hardware
};

struct PipelineResult {
  std::vector<ModelReport> reports;
  int exit_code = 0;  // 2 when any bound decision at 5% is inconclusive
};

/// Loads raw inputs into the unaligned column pool the models draw from.
std::vector<NamedSeries> assemble_columns(const PipelineConfig& config);

/// One dependent variable end to end: align, screen, select, fit, test.
ModelReport run_model(const std::vector<NamedSeries>& pool, const PipelineConfig& config,
                      const std::string& dep);

/// All dependent variables (in parallel), table emission and the combined
/// summary.json. Deterministic output for identical inputs.
PipelineResult run_pipeline(const PipelineConfig& config);

int effective_threads(int requested);

}  // namespace ardl
