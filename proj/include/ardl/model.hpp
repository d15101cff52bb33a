#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ardl/panel.hpp"
#include "ardl/regression.hpp"

namespace ardl {

/// Deterministic-term schemes of the bounds framework (Pesaran, Shin & Smith
/// 2001): I none; II intercept restricted to the levels; III unrestricted
/// intercept; IV unrestricted intercept with restricted trend.
enum class BoundCase { I = 1, II = 2, III = 3, IV = 4 };

BoundCase parse_case(const std::string& text);
std::string to_string(BoundCase c);

struct ArdlSpec {
  std::string dep;
  std::vector<std::string> x_vars;
  std::vector<std::string> z_vars;
  int m = 1;                  // dependent-variable difference lags, 1..max_lag
  std::vector<int> reg_lags;  // per regressor (x then z), 0..max_lag
  BoundCase bound_case = BoundCase::II;
  int max_lag = 4;

  std::vector<std::string> regressors() const;  // x then z
  int max_order() const;                        // max(m, reg_lags)
  void validate() const;
};

/// Materialized regression of the conditional error-correction form:
/// d(dep)_t on deterministics, d(dep) lags 1..m, per-regressor difference
/// blocks at lags 0..n_j, and the lagged levels of dep and every regressor.
struct ArdlDesign {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> col_names;
  int intercept_col = -1;
  int trend_col = -1;
  int first_level_col = 0;
  int n_levels = 0;
  int first_row = 0;  // panel row of the first usable observation
};

/// trim_lag < 0 trims by the spec's own maximal order; otherwise all rows
/// needing lags beyond trim_lag are dropped (used to put candidate models on
/// a common sample during lag selection).
ArdlDesign build_design(const PanelDataset& panel, const ArdlSpec& spec, int trim_lag = -1);

struct ArdlFit {
  ArdlSpec spec;
  ArdlDesign design;
  OlsFit ols;
  CovarianceEstimate hac;

  double phi1() const { return ols.coefficients(design.first_level_col); }
  double level_coefficient(int j) const {  // j-th regressor, x then z order
    return ols.coefficients(design.first_level_col + 1 + j);
  }
};

ArdlFit fit_unrestricted(const PanelDataset& panel, const ArdlSpec& spec,
                         int hac_bandwidth = kDefaultHacBandwidth);

// --- bound test --------------------------------------------------------------

enum class BoundDecision { no_cointegration, inconclusive, cointegrated };
std::string to_string(BoundDecision d);

struct BoundsRow {
  double lower = 0.0;
  double upper = 0.0;
};

/// Critical bounds per (case, significance percent in {10, 5, 1}).
struct BoundsTable {
  int k = 8;
  std::map<std::pair<int, int>, BoundsRow> rows;

  const BoundsRow& at(BoundCase c, int level_percent) const;
};

/// Pesaran-Shin-Smith (2001) Table CI bounds for k = 8 regressors.
const BoundsTable& pesaran_bounds_k8();

/// Reads `case,k,level,lower,upper` rows (case I..IV, level in {10,5,1}).
BoundsTable load_bounds_csv(const std::string& path);

BoundDecision classify_bound(double f_stat, const BoundsRow& bounds);

struct BoundTestResult {
  double f_stat = 0.0;
  int k = 0;
  int num_restrictions = 0;
  BoundCase bound_case = BoundCase::II;
  std::map<int, BoundDecision> decisions;  // keyed by level percent
  std::map<int, BoundsRow> bounds;
};

/// Joint F test that every lagged level (plus the intercept under Case II or
/// the trend under Case IV) is zero, classified against the bounds table.
BoundTestResult bound_test(const ArdlFit& fit, const BoundsTable& table = pesaran_bounds_k8());

// --- long run and error correction -------------------------------------------

struct LongRunTerm {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

struct LongRunEstimates {
  std::vector<LongRunTerm> terms;  // one per regressor, x then z order
  std::optional<LongRunTerm> intercept;
  std::optional<LongRunTerm> trend;
  std::vector<std::string> warnings;
};

/// Steady-state multipliers -phi_i/phi_1 with delta-method standard errors
/// over the HAC covariance. Throws "no level relationship" when phi_1 is
/// numerically zero.
LongRunEstimates long_run(const ArdlFit& fit);

/// Lagged disequilibrium series aligned to the panel: element t holds
/// dep_{t-1} minus the fitted long-run combination at t-1; element 0 is NaN.
Eigen::VectorXd build_ect(const PanelDataset& panel, const ArdlFit& fit);

struct EcmFit {
  ArdlSpec spec;
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> col_names;
  OlsFit ols;
  CovarianceEstimate hac;
  int ect_col = -1;
  double lambda = 0.0;
  double lambda_se = 0.0;
  double lambda_p = 1.0;
  Eigen::VectorXd ect_series;  // the regressor actually used
  std::vector<std::string> warnings;
};

/// Restricted ECM: d(dep)_t on the spec's difference blocks, the lagged
/// disequilibrium, and an intercept under Cases III and IV.
EcmFit fit_recm(const PanelDataset& panel, const ArdlSpec& spec,
                const Eigen::Ref<const Eigen::VectorXd>& ect_lagged,
                int hac_bandwidth = kDefaultHacBandwidth);

/// Deterministic-case choice: keep the trend if its level-equation t test
/// (delta method over the HAC covariance) rejects at 10%; otherwise classify
/// the intercept as unrestricted (III) when the restricted ECM still needs
/// one at 5%, restricted (II) when only the implied long-run intercept is
/// significant at 5%, else none (I).
BoundCase choose_case(const PanelDataset& panel, const ArdlSpec& spec,
                      int hac_bandwidth = kDefaultHacBandwidth);

// --- specification search -----------------------------------------------------

enum class SearchMode { per_variable, full };
SearchMode parse_search_mode(const std::string& text);

/// Candidate ordering used by the search: smaller criterion wins; criteria
/// within 1e-9 are ties, resolved by the smaller total lag order and then the
/// lexicographically smaller (m, n_1..n_J) vector.
bool spec_preferred(double sic_a, const std::vector<int>& orders_a, double sic_b,
                    const std::vector<int>& orders_b);

/// Schwarz-criterion lag-order search with every candidate fit on the common
/// max_lag-trimmed sample. `per_variable` runs coordinate descent from the
/// all-zeros order vector (at most 10 passes); `full` enumerates the whole
/// grid. Ties prefer the smallest total lag order, then the lexicographically
/// smallest (m, n_1..n_J).
ArdlSpec select_spec(const PanelDataset& panel, const std::string& dep,
                     const std::vector<std::string>& x_vars,
                     const std::vector<std::string>& z_vars, int max_lag = 4,
                     SearchMode mode = SearchMode::per_variable);

}  // namespace ardl
