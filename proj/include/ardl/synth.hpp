#pragma once

#include <cstdint>
#include <string>

#include "ardl/panel.hpp"

namespace ardl {

enum class DgpKind { white_noise, ar1, random_walk, cointegrated_pair };

DgpKind parse_dgp_kind(const std::string& text);  // "wn"|"ar1"|"rw"|"coint"

/// Seeded data-generating process. `cointegrated_pair` draws x as a random
/// walk and y_t = y_{t-1} + lambda (y_{t-1} - beta x_{t-1}) + sigma eps_t, so
/// the true adjustment speed is lambda and the true long-run slope is beta.
struct DgpConfig {
  DgpKind kind = DgpKind::white_noise;
  int n = 100;
  std::uint64_t seed = 0;
  int burn_in = 100;
  double sigma = 1.0;
  double rho = 0.0;     // ar1
  double drift = 0.0;   // random_walk
  double beta = 1.0;    // cointegrated_pair
  double lambda = -0.5; // cointegrated_pair, must lie in (-1, 0)
};

/// Deterministic panel for the given config; columns are "y" (and "x" for the
/// pair process), indexed by synthetic weekly Mondays from 2010-01-04.
PanelDataset generate(const DgpConfig& config);

}  // namespace ardl
