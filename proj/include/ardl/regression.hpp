#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ardl {

/// Thrown when a design matrix is numerically rank deficient. `columns` holds
/// the zero-based indices of the columns the pivoted QR flagged as dependent.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(std::string message, std::vector<int> columns)
      : std::runtime_error(std::move(message)), columns_(std::move(columns)) {}
  const std::vector<int>& columns() const { return columns_; }

 private:
  std::vector<int> columns_;
};

struct OlsFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  int nobs = 0;
  int nparams = 0;
  Eigen::MatrixXd xtx_inverse;
  double r_squared = 0.0;
  double durbin_watson = 0.0;  // NaN when residuals vanish
  double sic = 0.0;            // ln(RSS/n) + p ln(n)/n
  bool has_intercept = false;  // detected constant column

  /// Classical covariance s^2 (X'X)^-1 with s^2 = rss / (n - p).
  Eigen::MatrixXd classical_covariance() const;
};

enum class CovarianceKind { classical, hac_bartlett };

struct CovarianceEstimate {
  Eigen::MatrixXd matrix;
  CovarianceKind kind = CovarianceKind::classical;
  int bandwidth = 0;
};

/// Least squares by column-pivoted Householder QR. Requires rows > cols and
/// numerically full column rank (threshold 1e-10 relative to the leading
/// pivot); otherwise throws RankDeficientError.
OlsFit ols_fit(const Eigen::Ref<const Eigen::VectorXd>& y,
               const Eigen::Ref<const Eigen::MatrixXd>& X);

/// Newey-West HAC sandwich with Bartlett weights w_l = 1 - l/(L+1):
///   (X'X)^-1 [ S0 + sum_l w_l (S_l + S_l') ] (X'X)^-1,
/// S_l = sum_t e_t e_{t-l} x_t x_{t-l}'. Bandwidth 0 reduces to White.
CovarianceEstimate newey_west_cov(const OlsFit& fit, const Eigen::Ref<const Eigen::MatrixXd>& X,
                                  int bandwidth);

constexpr int kDefaultHacBandwidth = 5;

/// F statistic for q restrictions: ((RSS_r - RSS_u)/q) / (RSS_u/(n - p)).
double wald_f(const OlsFit& fit, double restricted_rss, int num_restrictions);

/// Serial-correlation LM test: residuals regressed on X plus `lags` lagged
/// residuals (zero-padded); returns (n R^2_aux, chi-square(lags) tail prob).
std::pair<double, double> breusch_godfrey_lm(const OlsFit& fit,
                                             const Eigen::Ref<const Eigen::MatrixXd>& X, int lags);

constexpr int kDefaultBgLags = 2;

/// Heteroskedasticity LM test: squared residuals on X; statistic n R^2_aux
/// against chi-square(cols(X) - 1).
std::pair<double, double> breusch_pagan_godfrey(const OlsFit& fit,
                                                const Eigen::Ref<const Eigen::MatrixXd>& X);

/// sum (e_t - e_{t-1})^2 / sum e_t^2. Undefined for all-zero residuals.
double durbin_watson(const Eigen::Ref<const Eigen::VectorXd>& residuals);

/// Schwarz criterion ln(rss/n) + p ln(n)/n.
double schwarz_criterion(double rss, int nobs, int nparams);

}  // namespace ardl
