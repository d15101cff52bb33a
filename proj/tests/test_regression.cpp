#include <doctest.h>

#include <cmath>

#include "ardl/regression.hpp"
#include "ardl/rng.hpp"
#include "oracles.hpp"

using namespace ardl;

namespace {

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(X.cols()) = X;
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("regression");

TEST_CASE("exact proportional data recovers the slope with zero rss") {
  Eigen::VectorXd x(6);
  x << 1, 2, 3, 4, 5, 6;
  Eigen::MatrixXd X = x;
  Eigen::VectorXd y = 2.0 * x;
  OlsFit fit = ols_fit(y, X);
  CHECK(fit.coefficients(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.rss <= 1e-24);
  CHECK(fit.nobs == 6);
  CHECK(fit.nparams == 1);
}

TEST_CASE("five-point fixture matches the extended-precision oracle") {
  std::vector<std::vector<double>> Xv = {
      {1.0, 0.7, -1.2}, {1.0, -0.3, 0.8}, {1.0, 1.9, 2.1}, {1.0, 0.2, -0.6}, {1.0, -1.1, 0.4}};
  std::vector<double> yv = {0.5, 1.7, -2.3, 0.9, 1.1};
  Eigen::MatrixXd X(5, 3);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    y(i) = yv[i];
    for (int j = 0; j < 3; ++j) X(i, j) = Xv[i][j];
  }
  auto beta = oracle::normal_equations_ols(Xv, yv);
  OlsFit fit = ols_fit(y, X);
  for (int j = 0; j < 3; ++j) CHECK(fit.coefficients(j) == doctest::Approx(beta[j]).epsilon(1e-10));
}

TEST_CASE("duplicated column raises a rank error naming the dependent set") {
  Eigen::MatrixXd X(8, 3);
  Rng rng(3);
  for (int i = 0; i < 8; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = rng.normal();
    X(i, 2) = X(i, 1);
  }
  Eigen::VectorXd y = X.col(1);
  CHECK_THROWS_AS(ols_fit(y, X), RankDeficientError);
  try {
    ols_fit(y, X);
  } catch (const RankDeficientError& e) {
    CHECK(!e.columns().empty());
  }
}

TEST_CASE("xtx_inverse actually inverts X'X") {
  Rng rng(17);
  Eigen::MatrixXd X(30, 4);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) y(i) = rng.normal();
  OlsFit fit = ols_fit(y, X);
  Eigen::MatrixXd eye = fit.xtx_inverse * (X.transpose() * X);
  CHECK((eye - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("residuals are orthogonal to the design") {
  Rng rng(21);
  Eigen::MatrixXd X(40, 5);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 5; ++j) X(i, j) = rng.normal();
    y(i) = rng.normal();
  }
  OlsFit fit = ols_fit(y, X);
  Eigen::VectorXd xte = X.transpose() * fit.residuals;
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(xte(j)) <= 1e-8 * X.col(j).norm() * fit.residuals.norm() + 1e-12);
  CHECK(fit.rss == doctest::Approx(fit.residuals.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("coefficients are stable under column permutation") {
  Rng rng(31);
  Eigen::MatrixXd X(25, 4);
  Eigen::VectorXd y(25);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
    y(i) = X(i, 0) - 0.5 * X(i, 2) + 0.1 * rng.normal();
  }
  OlsFit base = ols_fit(y, X);
  Eigen::MatrixXd Xp(25, 4);
  int perm[4] = {2, 0, 3, 1};
  for (int j = 0; j < 4; ++j) Xp.col(j) = X.col(perm[j]);
  OlsFit permuted = ols_fit(y, Xp);
  for (int j = 0; j < 4; ++j)
    CHECK(permuted.coefficients(j) == doctest::Approx(base.coefficients(perm[j])).epsilon(1e-10));
  CHECK(permuted.rss == doctest::Approx(base.rss).epsilon(1e-10));
}

TEST_CASE("adding an irrelevant regressor never increases rss and raises sic") {
  Rng rng(57);
  int increases = 0;
  const int trials = 400;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 150;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X(i, 0) = 1.0;
      X(i, 1) = rng.normal();
      y(i) = 0.3 + 0.8 * X(i, 1) + rng.normal();
    }
    Eigen::MatrixXd X2(n, 3);
    X2.leftCols(2) = X;
    for (int i = 0; i < n; ++i) X2(i, 2) = rng.normal();  // pure noise column
    OlsFit small = ols_fit(y, X);
    OlsFit big = ols_fit(y, X2);
    CHECK(big.rss <= small.rss + 1e-9);
    if (big.sic > small.sic) ++increases;
  }
  CHECK(increases >= trials * 95 / 100);
}

TEST_CASE("newey-west with bandwidth zero equals the White sandwich") {
  Rng rng(41);
  const int n = 25;
  Eigen::MatrixXd X = with_intercept(Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) {
    return rng.normal();
  }));
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = 1.0 + X(i, 1) + rng.normal();
  OlsFit fit = ols_fit(y, X);
  CovarianceEstimate nw0 = newey_west_cov(fit, X, 0);

  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(2, 2);
  for (int t = 0; t < n; ++t)
    meat += fit.residuals(t) * fit.residuals(t) * X.row(t).transpose() * X.row(t);
  Eigen::MatrixXd white = fit.xtx_inverse * meat * fit.xtx_inverse;
  CHECK((nw0.matrix - white).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(nw0.bandwidth == 0);
  CHECK(nw0.kind == CovarianceKind::hac_bartlett);
}

TEST_CASE("six-observation fixture matches the literal double-sum oracle") {
  std::vector<std::vector<double>> Xv = {{1.0, 0.3},  {1.0, -1.1}, {1.0, 0.6},
                                         {1.0, 1.4},  {1.0, -0.2}, {1.0, 0.9}};
  std::vector<double> yv = {0.2, -0.8, 0.7, 1.9, 0.1, 0.6};
  Eigen::MatrixXd X(6, 2);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) {
    y(i) = yv[i];
    for (int j = 0; j < 2; ++j) X(i, j) = Xv[i][j];
  }
  OlsFit fit = ols_fit(y, X);
  std::vector<double> e(6);
  for (int i = 0; i < 6; ++i) e[i] = fit.residuals(i);
  auto expected = oracle::newey_west_literal(Xv, e, 2);
  CovarianceEstimate nw = newey_west_cov(fit, X, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(nw.matrix(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-10));
}

TEST_CASE("zero residuals give a zero HAC matrix; bandwidth bounds enforced") {
  Eigen::VectorXd x(7);
  x << 1, 2, 3, 4, 5, 6, 7;
  Eigen::MatrixXd X = with_intercept(x);
  Eigen::VectorXd y = 3.0 * x.array() + 1.0;
  OlsFit fit = ols_fit(y, X);
  CovarianceEstimate nw = newey_west_cov(fit, X, 3);
  CHECK(nw.matrix.cwiseAbs().maxCoeff() < 1e-18);
  CHECK_THROWS(newey_west_cov(fit, X, 7));
}

TEST_CASE("HAC estimate stays symmetric positive semidefinite") {
  Rng rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 40;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    double carry = 0.0;
    for (int i = 0; i < n; ++i) {
      X(i, 0) = 1.0;
      X(i, 1) = rng.normal();
      X(i, 2) = rng.normal();
      carry = 0.6 * carry + rng.normal();
      y(i) = X(i, 1) + carry;
    }
    OlsFit fit = ols_fit(y, X);
    CovarianceEstimate nw = newey_west_cov(fit, X, 4);
    CHECK((nw.matrix - nw.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nw.matrix);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * nw.matrix.trace());
  }
}

TEST_CASE("wald F fixtures") {
  OlsFit fit;
  fit.rss = 10.0;
  fit.nobs = 14;
  fit.nparams = 4;
  CHECK(wald_f(fit, 10.0, 2) == doctest::Approx(0.0));
  CHECK(wald_f(fit, 20.0, 2) == doctest::Approx(5.0));
  CHECK(wald_f(fit, 20.0, 10) == doctest::Approx(1.0));  // q = n - p, doubled rss
  CHECK_THROWS(wald_f(fit, 5.0, 2));                     // restricted below unrestricted
  OlsFit saturated = fit;
  saturated.nparams = 14;
  CHECK_THROWS(wald_f(saturated, 20.0, 2));
}

TEST_CASE("wald F is invariant to common rescaling") {
  OlsFit fit;
  fit.rss = 3.7;
  fit.nobs = 50;
  fit.nparams = 6;
  double base = wald_f(fit, 5.9, 3);
  OlsFit scaled = fit;
  scaled.rss = 3.7 * 123.0;
  CHECK(wald_f(scaled, 5.9 * 123.0, 3) == doctest::Approx(base).epsilon(1e-12));
}

namespace {

std::pair<Eigen::VectorXd, Eigen::MatrixXd> simulate_regression(Rng& rng, int n, double rho,
                                                                bool hetero) {
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  double e_prev = 0.0;
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = rng.normal();
    double e = rho * e_prev + rng.normal();
    e_prev = e;
    double scale = hetero ? std::sqrt(0.2 + 1.5 * X(i, 1) * X(i, 1)) : 1.0;
    y(i) = 0.5 + 0.8 * X(i, 1) + scale * e;
  }
  return {y, X};
}

}  // namespace

TEST_CASE("breusch-godfrey: zero residuals, power and size") {
  // Degenerate: zero residuals.
  Eigen::VectorXd x(12);
  for (int i = 0; i < 12; ++i) x(i) = i + 1;
  Eigen::MatrixXd X = with_intercept(x);
  OlsFit exact = ols_fit(Eigen::VectorXd(2.0 * x.array() + 3.0), X);
  auto [stat0, p0] = breusch_godfrey_lm(exact, X, 2);
  CHECK(stat0 == doctest::Approx(0.0));
  CHECK(p0 == doctest::Approx(1.0));

  // Power under strong AR(1) residuals.
  Rng rng(101);
  auto [y, Xd] = simulate_regression(rng, 200, 0.9, false);
  OlsFit fit = ols_fit(y, Xd);
  auto [stat, p] = breusch_godfrey_lm(fit, Xd, 2);
  CHECK(stat > 0.0);
  CHECK(p < 0.01);

  // Size under white noise: rejection rate near nominal 5%.
  Rng rng2(202);
  int rejections = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    auto [yy, XX] = simulate_regression(rng2, 200, 0.0, false);
    OlsFit f = ols_fit(yy, XX);
    if (breusch_godfrey_lm(f, XX, 2).second < 0.05) ++rejections;
  }
  double rate = static_cast<double>(rejections) / seeds;
  CHECK(rate >= 0.02);
  CHECK(rate <= 0.08);
}

TEST_CASE("breusch-pagan-godfrey: size, power and the degenerate design") {
  Rng rng(303);
  int rejections = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    auto [y, X] = simulate_regression(rng, 200, 0.0, false);
    OlsFit f = ols_fit(y, X);
    if (breusch_pagan_godfrey(f, X).second < 0.05) ++rejections;
  }
  double rate = static_cast<double>(rejections) / seeds;
  CHECK(rate >= 0.02);
  CHECK(rate <= 0.08);

  Rng rng2(404);
  auto [y, X] = simulate_regression(rng2, 300, 0.0, true);
  OlsFit f = ols_fit(y, X);
  CHECK(breusch_pagan_godfrey(f, X).second < 0.01);

  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(20, 1);
  Eigen::VectorXd yy(20);
  Rng rng3(505);
  for (int i = 0; i < 20; ++i) yy(i) = rng3.normal();
  OlsFit constant_fit = ols_fit(yy, ones);
  CHECK_THROWS_WITH_AS(breusch_pagan_godfrey(constant_fit, ones),
                       doctest::Contains("not applicable"), std::invalid_argument);
}

TEST_CASE("durbin-watson fixtures and white-noise behaviour") {
  Eigen::VectorXd persistent(3);
  persistent << 1, 1, 1;
  CHECK(durbin_watson(persistent) == doctest::Approx(0.0));

  Eigen::VectorXd alternating(4);
  alternating << 1, -1, 1, -1;
  CHECK(durbin_watson(alternating) == doctest::Approx(3.0));

  Eigen::VectorXd zeros = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_WITH_AS(durbin_watson(zeros), doctest::Contains("undefined"), std::runtime_error);

  Rng rng(606);
  Eigen::VectorXd wn(1000);
  for (int i = 0; i < 1000; ++i) wn(i) = rng.normal();
  CHECK(std::abs(durbin_watson(wn) - 2.0) < 0.2);
}

TEST_SUITE_END();
