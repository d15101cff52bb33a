#pragma once

#include <string>
#include <vector>

#include "ardl/model.hpp"
#include "ardl/stability.hpp"
#include "ardl/unitroot.hpp"

namespace ardl {

/// Significance stars at the 10/5/1% levels: *, **, ***.
std::string significance_stars(double p_value);

/// "0.4208*** (0.0851)" with four decimals.
std::string format_estimate(double estimate, double std_error, double p_value);

struct CoefficientRow {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double p_value = 1.0;
};

struct AdfReportRow {
  std::string series;
  std::string transform;  // "level" or "first_difference"
  double prob = 1.0;
  int lag = 0;
  int max_lag = 0;
  int n = 0;
};

struct ModelReport {
  std::string dep;
  ArdlSpec spec;
  std::vector<AdfReportRow> adf_rows;
  std::vector<CoefficientRow> ardl_rows;
  double r_squared = 0.0;
  double durbin_watson = 0.0;
  double bg_lm_stat = 0.0;
  double bg_lm_p = 1.0;
  double bpg_stat = 0.0;
  double bpg_p = 1.0;
  BoundTestResult bounds;
  LongRunEstimates longrun;
  std::vector<CoefficientRow> ecm_rows;  // ECT(-1) last
  CusumResult cusum;
  int cusum_first_t = 0;  // observation index of the first path point (p+1)
  std::vector<std::string> warnings;
};

enum class ReportFormat { csv, text };
ReportFormat parse_report_format(const std::string& text);

/// Writes the per-model tables (`<dep>_adf`, `<dep>_ardl`, `<dep>_bounds`,
/// `<dep>_longrun`, `<dep>_ecm`, `<dep>_cusum`) into `dir` in the requested
/// format. Output is byte-deterministic for identical inputs.
void write_model_report(const std::string& dir, const ModelReport& report, ReportFormat format);

/// Machine-readable bundle: everything in `reports`, serialized as JSON.
void write_summary_json(const std::string& path, const std::vector<ModelReport>& reports);

/// Reads a summary written by write_summary_json back into memory.
std::vector<ModelReport> read_summary_json(const std::string& path);

}  // namespace ardl
