#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>

#include "ardl/regression.hpp"

namespace ardl {

enum class AdfDeterministic { none, constant, constant_trend };

AdfDeterministic parse_deterministic(const std::string& text);  // "none"|"c"|"ct"
std::string to_string(AdfDeterministic det);

struct AdfResult {
  double statistic = 0.0;  // t ratio on the lagged level
  double p_value = 1.0;
  int chosen_lag = 0;
  int max_lag = 0;
  AdfDeterministic deterministic = AdfDeterministic::constant_trend;
  int nobs_effective = 0;
  double significance_level = 0.05;
  bool stationary = false;  // p_value < significance_level
};

/// Dickey-Fuller regression at a fixed augmentation order k:
/// dy_t on (deterministics, y_{t-1}, dy_{t-1..t-k}). Returns the t ratio of
/// the y_{t-1} coefficient with classical standard errors, plus the fit.
std::pair<double, OlsFit> adf_regression(const Eigen::Ref<const Eigen::VectorXd>& series, int k,
                                         AdfDeterministic det);

/// Schwarz-criterion lag choice over k = 0..max_lag, every candidate fit on
/// the common sample trimmed for max_lag; ties resolve to the smallest k.
int adf_select_lag(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag,
                   AdfDeterministic det);

/// Full test: select the lag, refit on the maximal sample for that lag, and
/// interpolate the p-value from the embedded finite-sample tables.
AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag,
                   AdfDeterministic det, double significance_level = 0.05);

/// Interpolated tail probability of the Dickey-Fuller t distribution, clamped
/// to [0.001, 0.999] beyond the tabulated 1%..10% quantiles.
double adf_pvalue(double statistic, int nobs_effective, AdfDeterministic det);

/// Simulated null p-value at the exact sample size (driftless random walk
/// replicas run through the same regression).
double adf_pvalue_mc(double statistic, int series_length, int k, AdfDeterministic det, int draws,
                     std::uint64_t seed);

/// Default maximum augmentation order: floor(12 (n/100)^(1/4)), the Schwert
/// (1989) rule.
int adf_default_max_lag(int n);

}  // namespace ardl
