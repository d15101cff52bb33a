#include "ardl/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace ardl {

Eigen::VectorXd recursive_residuals(const Eigen::Ref<const Eigen::VectorXd>& y,
                                    const Eigen::Ref<const Eigen::MatrixXd>& X) {
  const Eigen::Index n = X.rows(), p = X.cols();
  if (y.size() != n) throw std::invalid_argument("recursive_residuals: y and X row counts differ");
  if (n <= p) throw std::invalid_argument("recursive_residuals: need more rows than columns");

  // The residuals are invariant to column scaling; equilibrate so that mixed
  // regressor scales do not poison the start-up inverse.
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double norm = X.col(j).norm();
    scale(j) = norm > 0.0 ? norm : 1.0;
  }
  Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs.topRows(p));
  qr.setThreshold(1e-10);
  if (qr.rank() < p)
    throw std::runtime_error(
        "recursive_residuals: singular leading subdesign; the first rows cannot identify the "
        "coefficients (rows are in time order and may not be rearranged)");
  Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const auto perm = qr.colsPermutation();
  Eigen::MatrixXd M = perm * (rinv * rinv.transpose()) * perm.transpose();
  Eigen::VectorXd b = qr.solve(y.head(p));

  Eigen::VectorXd w(n - p);
  for (Eigen::Index t = p; t < n; ++t) {
    Eigen::VectorXd x = Xs.row(t).transpose();
    double f = 1.0 + x.dot(M * x);
    double err = y(t) - x.dot(b);
    w(t - p) = err / std::sqrt(f);
    // Rank-one update to include row t.
    Eigen::VectorXd k = M * x / f;
    b += k * err;
    M -= k * (x.transpose() * M);
    M = 0.5 * (M + M.transpose()).eval();
  }
  return w;
}

double cusum_boundary_parameter(double level) {
  if (std::abs(level - 0.10) < 1e-9) return 0.850;
  if (std::abs(level - 0.05) < 1e-9) return 0.948;
  if (std::abs(level - 0.01) < 1e-9) return 1.143;
  throw std::invalid_argument("cusum: boundary parameters are tabulated for 10%, 5% and 1% only");
}

CusumResult cusum_test(const Eigen::Ref<const Eigen::VectorXd>& y,
                       const Eigen::Ref<const Eigen::MatrixXd>& X, double level) {
  const Eigen::Index n = X.rows(), p = X.cols();
  Eigen::VectorXd w = recursive_residuals(y, X);
  const Eigen::Index m = w.size();

  double mean = w.mean();
  double var = (w.array() - mean).square().sum() / static_cast<double>(m - 1);
  double sigma = std::sqrt(var);
  double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if (!(sigma > 1e-12 * scale))
    throw std::runtime_error("cusum: recursive residuals have zero variance; path undefined");

  CusumResult res;
  res.boundary_parameter = cusum_boundary_parameter(level);
  res.cusum_path.resize(m);
  res.upper_line.resize(m);
  res.lower_line.resize(m);
  double a = res.boundary_parameter;
  double root = std::sqrt(static_cast<double>(n - p));
  double running = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    running += w(i) / sigma;
    res.cusum_path(i) = running;
    Eigen::Index t = p + 1 + i;  // observation index of this path point
    res.upper_line(i) = a * (root + 2.0 * static_cast<double>(t - p) / root);
    res.lower_line(i) = -res.upper_line(i);
    if (res.stable && std::abs(running) > res.upper_line(i)) {
      res.stable = false;
      res.first_crossing = static_cast<int>(t);
    }
  }
  return res;
}

}  // namespace ardl
