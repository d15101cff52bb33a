#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library code paths they check: plain loops, normal equations in extended
// precision, literal double sums.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

using LongMatrix = std::vector<std::vector<long double>>;

inline LongMatrix long_identity(std::size_t p) {
  LongMatrix m(p, std::vector<long double>(p, 0.0L));
  for (std::size_t i = 0; i < p; ++i) m[i][i] = 1.0L;
  return m;
}

/// Gauss-Jordan inverse in long double.
inline LongMatrix long_inverse(LongMatrix a) {
  const std::size_t p = a.size();
  LongMatrix inv = long_identity(p);
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::fabs((double)a[r][col]) > std::fabs((double)a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0L) throw std::runtime_error("oracle: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    long double d = a[col][col];
    for (std::size_t j = 0; j < p; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      long double f = a[r][col];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < p; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Normal-equations least squares, all arithmetic in long double.
inline std::vector<double> normal_equations_ols(const std::vector<std::vector<double>>& X,
                                                const std::vector<double>& y) {
  const std::size_t n = X.size(), p = X[0].size();
  LongMatrix xtx(p, std::vector<long double>(p, 0.0L));
  std::vector<long double> xty(p, 0.0L);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < p; ++i) {
      xty[i] += static_cast<long double>(X[t][i]) * y[t];
      for (std::size_t j = 0; j < p; ++j)
        xtx[i][j] += static_cast<long double>(X[t][i]) * X[t][j];
    }
  }
  LongMatrix inv = long_inverse(xtx);
  std::vector<double> beta(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    long double sum = 0.0L;
    for (std::size_t j = 0; j < p; ++j) sum += inv[i][j] * xty[j];
    beta[i] = static_cast<double>(sum);
  }
  return beta;
}

/// Literal Newey-West double sum over the definition, in long double:
/// (X'X)^-1 [sum_t e_t^2 x x' + sum_l w_l sum_t e_t e_{t-l}(x_t x_{t-l}' +
/// x_{t-l} x_t')] (X'X)^-1.
inline std::vector<std::vector<double>> newey_west_literal(
    const std::vector<std::vector<double>>& X, const std::vector<double>& e, int bandwidth) {
  const std::size_t n = X.size(), p = X[0].size();
  LongMatrix xtx(p, std::vector<long double>(p, 0.0L));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        xtx[i][j] += static_cast<long double>(X[t][i]) * X[t][j];
  LongMatrix inv = long_inverse(xtx);

  LongMatrix meat(p, std::vector<long double>(p, 0.0L));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        meat[i][j] += static_cast<long double>(e[t]) * e[t] * X[t][i] * X[t][j];
  for (int l = 1; l <= bandwidth; ++l) {
    long double w = 1.0L - static_cast<long double>(l) / (bandwidth + 1);
    for (std::size_t t = static_cast<std::size_t>(l); t < n; ++t) {
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
          long double cross = static_cast<long double>(e[t]) * e[t - l] *
                              (static_cast<long double>(X[t][i]) * X[t - l][j] +
                               static_cast<long double>(X[t - l][i]) * X[t][j]);
          meat[i][j] += w * cross;
        }
      }
    }
  }

  // inv * meat * inv
  LongMatrix tmp(p, std::vector<long double>(p, 0.0L));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t j = 0; j < p; ++j) tmp[i][j] += inv[i][k] * meat[k][j];
  std::vector<std::vector<double>> out(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t j = 0; j < p; ++j)
        out[i][j] += static_cast<double>(tmp[i][k] * inv[k][j]);
  return out;
}

}  // namespace oracle
