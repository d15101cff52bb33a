#include "ardl/unitroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ardl/rng.hpp"

namespace ardl {

namespace {

// Finite-sample Dickey-Fuller t-ratio quantiles (Fuller 1976), one grid per
// deterministic case; rows are sample sizes, columns are the 1%, 2.5%, 5%
// and 10% lower-tail quantiles.
constexpr int kTableSizes[] = {25, 50, 100, 250, 500, 0};  // 0 marks the limit row
constexpr double kLevels[] = {0.01, 0.025, 0.05, 0.10};

constexpr double kTableNone[6][4] = {
    {-2.66, -2.26, -1.95, -1.60}, {-2.62, -2.25, -1.95, -1.61}, {-2.60, -2.24, -1.95, -1.61},
    {-2.58, -2.23, -1.95, -1.62}, {-2.58, -2.23, -1.95, -1.62}, {-2.58, -2.23, -1.95, -1.62},
};
constexpr double kTableConstant[6][4] = {
    {-3.75, -3.33, -3.00, -2.62}, {-3.58, -3.22, -2.93, -2.60}, {-3.51, -3.17, -2.89, -2.58},
    {-3.46, -3.14, -2.88, -2.57}, {-3.44, -3.13, -2.87, -2.57}, {-3.43, -3.12, -2.86, -2.57},
};
constexpr double kTableTrend[6][4] = {
    {-4.38, -3.95, -3.60, -3.24}, {-4.15, -3.80, -3.50, -3.18}, {-4.04, -3.73, -3.45, -3.15},
    {-3.99, -3.69, -3.43, -3.13}, {-3.98, -3.68, -3.42, -3.13}, {-3.96, -3.66, -3.41, -3.12},
};

const double (*table_for(AdfDeterministic det))[4] {
  switch (det) {
    case AdfDeterministic::none: return kTableNone;
    case AdfDeterministic::constant: return kTableConstant;
    case AdfDeterministic::constant_trend: return kTableTrend;
  }
  throw std::logic_error("unreachable");
}

int deterministic_terms(AdfDeterministic det) {
  switch (det) {
    case AdfDeterministic::none: return 0;
    case AdfDeterministic::constant: return 1;
    case AdfDeterministic::constant_trend: return 2;
  }
  throw std::logic_error("unreachable");
}

// Critical value at sample size n, interpolated linearly in 1/n between the
// bracketing table rows (the limit row acts as 1/n = 0).
double critical_value(const double (*table)[4], int n, int level_idx) {
  if (n <= kTableSizes[0]) return table[0][level_idx];
  for (int i = 1; i < 6; ++i) {
    int hi = kTableSizes[i];
    if (hi == 0 || n <= hi) {
      double inv_lo = 1.0 / kTableSizes[i - 1];
      double inv_hi = hi == 0 ? 0.0 : 1.0 / hi;
      double inv_n = 1.0 / n;
      double t = (inv_lo - inv_n) / (inv_lo - inv_hi);
      return table[i - 1][level_idx] + t * (table[i][level_idx] - table[i - 1][level_idx]);
    }
  }
  return table[5][level_idx];
}

// Builds dy_t regressed on (deterministics, y_{t-1}, dy_{t-1..t-k}) using
// rows t = first_t .. T-1 of the original series.
void build_adf_design(const Eigen::Ref<const Eigen::VectorXd>& y, int k, AdfDeterministic det,
                      int first_t, Eigen::VectorXd& dy, Eigen::MatrixXd& X) {
  const Eigen::Index T = y.size();
  const Eigen::Index n = T - first_t;
  const int ndet = deterministic_terms(det);
  dy.resize(n);
  X.resize(n, ndet + 1 + k);
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::Index t = first_t + r;
    dy(r) = y(t) - y(t - 1);
    int c = 0;
    if (det != AdfDeterministic::none) X(r, c++) = 1.0;
    if (det == AdfDeterministic::constant_trend) X(r, c++) = static_cast<double>(t);
    X(r, c++) = y(t - 1);
    for (int l = 1; l <= k; ++l) X(r, c++) = y(t - l) - y(t - l - 1);
  }
}

double level_t_stat(const OlsFit& fit, AdfDeterministic det) {
  int idx = deterministic_terms(det);  // position of the y_{t-1} column
  double var = fit.classical_covariance()(idx, idx);
  return fit.coefficients(idx) / std::sqrt(var);
}

}  // namespace

AdfDeterministic parse_deterministic(const std::string& text) {
  if (text == "none" || text == "n") return AdfDeterministic::none;
  if (text == "c" || text == "constant") return AdfDeterministic::constant;
  if (text == "ct" || text == "constant_trend") return AdfDeterministic::constant_trend;
  throw std::invalid_argument("unknown deterministic spec '" + text + "' (use none|c|ct)");
}

std::string to_string(AdfDeterministic det) {
  switch (det) {
    case AdfDeterministic::none: return "none";
    case AdfDeterministic::constant: return "c";
    case AdfDeterministic::constant_trend: return "ct";
  }
  throw std::logic_error("unreachable");
}

std::pair<double, OlsFit> adf_regression(const Eigen::Ref<const Eigen::VectorXd>& series, int k,
                                         AdfDeterministic det) {
  if (k < 0) throw std::invalid_argument("adf_regression: negative lag order");
  const Eigen::Index T = series.size();
  if (T <= k + 3 + deterministic_terms(det))
    throw std::invalid_argument("adf_regression: series too short for lag order " +
                                std::to_string(k));
  if ((series.array() == series(0)).all())
    throw std::runtime_error("adf_regression: zero variance series");

  Eigen::VectorXd dy;
  Eigen::MatrixXd X;
  build_adf_design(series, k, det, k + 1, dy, X);
  OlsFit fit = ols_fit(dy, X);
  return {level_t_stat(fit, det), std::move(fit)};
}

int adf_select_lag(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag,
                   AdfDeterministic det) {
  if (max_lag < 0) throw std::invalid_argument("adf_select_lag: negative max lag");
  const Eigen::Index T = series.size();
  if (T <= max_lag + 3 + deterministic_terms(det))
    throw std::invalid_argument("adf_select_lag: series too short for max lag " +
                                std::to_string(max_lag));
  if ((series.array() == series(0)).all())
    throw std::runtime_error("adf_select_lag: zero variance series");

  // All candidates share the sample trimmed for max_lag so criteria compare.
  int best_k = 0;
  double best_sic = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= max_lag; ++k) {
    Eigen::VectorXd dy;
    Eigen::MatrixXd X;
    build_adf_design(series, k, det, max_lag + 1, dy, X);
    OlsFit fit = ols_fit(dy, X);
    if (fit.sic < best_sic - 1e-12) {
      best_sic = fit.sic;
      best_k = k;
    }
  }
  return best_k;
}

AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag,
                   AdfDeterministic det, double significance_level) {
  AdfResult res;
  res.max_lag = max_lag;
  res.deterministic = det;
  res.significance_level = significance_level;
  res.chosen_lag = adf_select_lag(series, max_lag, det);
  auto [stat, fit] = adf_regression(series, res.chosen_lag, det);
  res.statistic = stat;
  res.nobs_effective = fit.nobs;
  res.p_value = adf_pvalue(stat, res.nobs_effective, det);
  res.stationary = res.p_value < significance_level;
  return res;
}

double adf_pvalue(double statistic, int nobs_effective, AdfDeterministic det) {
  const double (*table)[4] = table_for(det);
  double cv[4];
  for (int i = 0; i < 4; ++i) cv[i] = critical_value(table, nobs_effective, i);

  // ln(p) piecewise linear in the statistic over the tabulated quantiles,
  // extrapolated with the end segments and clamped.
  double logp;
  if (statistic <= cv[0]) {
    double slope = (std::log(kLevels[1]) - std::log(kLevels[0])) / (cv[1] - cv[0]);
    logp = std::log(kLevels[0]) + slope * (statistic - cv[0]);
  } else if (statistic >= cv[3]) {
    double slope = (std::log(kLevels[3]) - std::log(kLevels[2])) / (cv[3] - cv[2]);
    logp = std::log(kLevels[3]) + slope * (statistic - cv[3]);
  } else {
    int seg = statistic < cv[1] ? 0 : (statistic < cv[2] ? 1 : 2);
    double t = (statistic - cv[seg]) / (cv[seg + 1] - cv[seg]);
    logp = std::log(kLevels[seg]) + t * (std::log(kLevels[seg + 1]) - std::log(kLevels[seg]));
  }
  return std::clamp(std::exp(logp), 0.001, 0.999);
}

double adf_pvalue_mc(double statistic, int series_length, int k, AdfDeterministic det, int draws,
                     std::uint64_t seed) {
  if (draws <= 0) throw std::invalid_argument("adf_pvalue_mc: need draws > 0");
  Rng rng(seed);
  int below = 0;
  Eigen::VectorXd y(series_length);
  for (int d = 0; d < draws; ++d) {
    y(0) = rng.normal();
    for (int t = 1; t < series_length; ++t) y(t) = y(t - 1) + rng.normal();
    double s = adf_regression(y, k, det).first;
    if (s <= statistic) ++below;
  }
  return static_cast<double>(below) / draws;
}

int adf_default_max_lag(int n) {
  return static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
}

}  // namespace ardl
