#pragma once

#include <Eigen/Dense>
#include <optional>

namespace ardl {

/// Standardized one-step-ahead prediction errors of the sequentially refit
/// regression: w_t = (y_t - x_t' b_{t-1}) / sqrt(1 + x_t' (X'X)_{t-1}^-1 x_t)
/// for t = p+1..n, where b_{t-1} fits the first t-1 rows. The leading p-row
/// block must be nonsingular; rows are in time order by construction.
Eigen::VectorXd recursive_residuals(const Eigen::Ref<const Eigen::VectorXd>& y,
                                    const Eigen::Ref<const Eigen::MatrixXd>& X);

struct CusumResult {
  Eigen::VectorXd cusum_path;  // indexed t = p+1..n
  Eigen::VectorXd upper_line;
  Eigen::VectorXd lower_line;  // = -upper_line
  bool stable = true;
  std::optional<int> first_crossing;  // observation index t, present iff unstable
  double boundary_parameter = 0.948;
};

/// Brown-Durbin-Evans CUSUM of recursive residuals with straight significance
/// lines +-a [sqrt(n-p) + 2 (t-p)/sqrt(n-p)]; a = 0.850 / 0.948 / 1.143 at
/// the 10% / 5% / 1% levels.
CusumResult cusum_test(const Eigen::Ref<const Eigen::VectorXd>& y,
                       const Eigen::Ref<const Eigen::MatrixXd>& X, double level = 0.05);

double cusum_boundary_parameter(double level);

}  // namespace ardl
