#include "ardl/regression.hpp"

#include <cmath>
#include <string>

#include "ardl/stats.hpp"

namespace ardl {

namespace {

bool column_is_constant(const Eigen::Ref<const Eigen::MatrixXd>& X, Eigen::Index j) {
  double first = X(0, j);
  if (first == 0.0) return false;
  return (X.col(j).array() == first).all();
}

}  // namespace

Eigen::MatrixXd OlsFit::classical_covariance() const {
  double dof = nobs - nparams;
  return (rss / dof) * xtx_inverse;
}

OlsFit ols_fit(const Eigen::Ref<const Eigen::VectorXd>& y,
               const Eigen::Ref<const Eigen::MatrixXd>& X) {
  const Eigen::Index n = X.rows(), p = X.cols();
  if (y.size() != n) throw std::invalid_argument("ols_fit: y and X row counts differ");
  if (p == 0) throw std::invalid_argument("ols_fit: empty design");
  if (n <= p) throw std::invalid_argument("ols_fit: need more rows than columns");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::vector<int> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) dependent.push_back(perm(k));
    std::string msg = "rank-deficient design; dependent columns:";
    for (int c : dependent) msg += ' ' + std::to_string(c);
    throw RankDeficientError(msg, dependent);
  }

  OlsFit fit;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.rss = fit.residuals.squaredNorm();
  fit.nobs = static_cast<int>(n);
  fit.nparams = static_cast<int>(p);

  // (X'X)^-1 = P R^-1 R^-T P'
  Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd xtx_inv = rinv * rinv.transpose();
  const auto perm = qr.colsPermutation();
  fit.xtx_inverse = perm * xtx_inv * perm.transpose();
  fit.xtx_inverse = 0.5 * (fit.xtx_inverse + fit.xtx_inverse.transpose()).eval();

  for (Eigen::Index j = 0; j < p && !fit.has_intercept; ++j)
    fit.has_intercept = column_is_constant(X, j);

  double tss;
  if (fit.has_intercept) {
    tss = (y.array() - y.mean()).matrix().squaredNorm();
  } else {
    tss = y.squaredNorm();
  }
  fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 0.0;

  double num = 0.0;
  for (Eigen::Index t = 1; t < n; ++t) {
    double d = fit.residuals(t) - fit.residuals(t - 1);
    num += d * d;
  }
  fit.durbin_watson = fit.rss > 0.0 ? num / fit.rss : std::nan("");
  fit.sic = schwarz_criterion(fit.rss, fit.nobs, fit.nparams);
  return fit;
}

CovarianceEstimate newey_west_cov(const OlsFit& fit, const Eigen::Ref<const Eigen::MatrixXd>& X,
                                  int bandwidth) {
  const Eigen::Index n = X.rows(), p = X.cols();
  if (bandwidth < 0) throw std::invalid_argument("newey_west_cov: negative bandwidth");
  if (bandwidth >= n) throw std::invalid_argument("newey_west_cov: bandwidth must be < nobs");
  const Eigen::VectorXd& e = fit.residuals;

  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index t = 0; t < n; ++t) meat += e(t) * e(t) * X.row(t).transpose() * X.row(t);
  for (int l = 1; l <= bandwidth; ++l) {
    double w = 1.0 - static_cast<double>(l) / (bandwidth + 1);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index t = l; t < n; ++t) s += e(t) * e(t - l) * X.row(t).transpose() * X.row(t - l);
    meat += w * (s + s.transpose());
  }

  CovarianceEstimate cov;
  cov.matrix = fit.xtx_inverse * meat * fit.xtx_inverse;
  cov.matrix = 0.5 * (cov.matrix + cov.matrix.transpose()).eval();
  cov.kind = CovarianceKind::hac_bartlett;
  cov.bandwidth = bandwidth;
  return cov;
}

double wald_f(const OlsFit& fit, double restricted_rss, int num_restrictions) {
  if (num_restrictions <= 0) throw std::invalid_argument("wald_f: need q > 0");
  if (fit.nobs <= fit.nparams) throw std::invalid_argument("wald_f: no residual degrees of freedom");
  if (restricted_rss < fit.rss - 1e-12 * std::max(1.0, fit.rss))
    throw std::invalid_argument("wald_f: restricted RSS below unrestricted RSS");
  double diff = std::max(0.0, restricted_rss - fit.rss);
  double dof = fit.nobs - fit.nparams;
  return (diff / num_restrictions) / (fit.rss / dof);
}

std::pair<double, double> breusch_godfrey_lm(const OlsFit& fit,
                                             const Eigen::Ref<const Eigen::MatrixXd>& X, int lags) {
  const Eigen::Index n = X.rows();
  if (lags <= 0) throw std::invalid_argument("breusch_godfrey_lm: need lags > 0");
  if (lags >= fit.nobs - fit.nparams)
    throw std::invalid_argument("breusch_godfrey_lm: lags >= residual degrees of freedom");
  const Eigen::VectorXd& e = fit.residuals;
  if (e.squaredNorm() == 0.0) return {0.0, 1.0};

  Eigen::MatrixXd aux(n, X.cols() + lags);
  aux.leftCols(X.cols()) = X;
  for (int l = 1; l <= lags; ++l) {
    for (Eigen::Index t = 0; t < n; ++t)
      aux(t, X.cols() + l - 1) = t - l >= 0 ? e(t - l) : 0.0;  // zero-padded head
  }
  OlsFit auxfit = ols_fit(e, aux);
  double stat = static_cast<double>(n) * auxfit.r_squared;
  return {stat, chi_square_sf(stat, lags)};
}

std::pair<double, double> breusch_pagan_godfrey(const OlsFit& fit,
                                                const Eigen::Ref<const Eigen::MatrixXd>& X) {
  const Eigen::Index n = X.rows();
  if (fit.nobs <= fit.nparams + 1)
    throw std::invalid_argument("breusch_pagan_godfrey: need nobs > nparams + 1");
  int dof = static_cast<int>(X.cols()) - 1;
  if (dof <= 0)
    throw std::invalid_argument("breusch_pagan_godfrey: not applicable to a constant-only design");
  Eigen::VectorXd e2 = fit.residuals.array().square();
  OlsFit auxfit = ols_fit(e2, X);
  double stat = static_cast<double>(n) * auxfit.r_squared;
  return {stat, chi_square_sf(stat, dof)};
}

double durbin_watson(const Eigen::Ref<const Eigen::VectorXd>& residuals) {
  if (residuals.size() < 2) throw std::invalid_argument("durbin_watson: need at least 2 residuals");
  double den = residuals.squaredNorm();
  if (den == 0.0) throw std::runtime_error("durbin_watson: undefined for all-zero residuals");
  double num = 0.0;
  for (Eigen::Index t = 1; t < residuals.size(); ++t) {
    double d = residuals(t) - residuals(t - 1);
    num += d * d;
  }
  return num / den;
}

double schwarz_criterion(double rss, int nobs, int nparams) {
  if (nobs <= 0) throw std::invalid_argument("schwarz_criterion: need nobs > 0");
  double n = nobs;
  return std::log(rss / n) + nparams * std::log(n) / n;
}

}  // namespace ardl
