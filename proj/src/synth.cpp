#include "ardl/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "ardl/rng.hpp"

namespace ardl {

DgpKind parse_dgp_kind(const std::string& text) {
  if (text == "wn" || text == "white_noise") return DgpKind::white_noise;
  if (text == "ar1") return DgpKind::ar1;
  if (text == "rw" || text == "random_walk") return DgpKind::random_walk;
  if (text == "coint" || text == "cointegrated_pair") return DgpKind::cointegrated_pair;
  throw std::invalid_argument("unknown DGP kind '" + text + "' (use wn|ar1|rw|coint)");
}

PanelDataset generate(const DgpConfig& config) {
  if (config.n < 20) throw std::invalid_argument("generate: need n >= 20");
  if (config.burn_in < 0) throw std::invalid_argument("generate: negative burn_in");
  if (!(config.sigma > 0.0)) throw std::invalid_argument("generate: sigma must be positive");
  if (config.kind == DgpKind::ar1 && !(std::abs(config.rho) < 1.0))
    throw std::invalid_argument("generate: ar1 requires |rho| < 1");
  if (config.kind == DgpKind::cointegrated_pair &&
      !(config.lambda > -1.0 && config.lambda < 0.0))
    throw std::invalid_argument("generate: cointegrated_pair requires lambda in (-1, 0)");

  Rng rng(config.seed);
  PanelDataset panel;
  panel.frequency = Frequency::weekly;
  const long start = parse_iso_date("2010-01-04");  // a Monday
  panel.index.reserve(config.n);
  for (int t = 0; t < config.n; ++t) panel.index.push_back(format_iso_date(start + 7L * t));

  switch (config.kind) {
    case DgpKind::white_noise: {
      Eigen::VectorXd y(config.n);
      for (int t = 0; t < config.n; ++t) y(t) = config.sigma * rng.normal();
      panel.names = {"y"};
      panel.values = y;
      break;
    }
    case DgpKind::ar1: {
      double prev = 0.0;
      for (int t = 0; t < config.burn_in; ++t) prev = config.rho * prev + config.sigma * rng.normal();
      Eigen::VectorXd y(config.n);
      for (int t = 0; t < config.n; ++t) {
        prev = config.rho * prev + config.sigma * rng.normal();
        y(t) = prev;
      }
      panel.names = {"y"};
      panel.values = y;
      break;
    }
    case DgpKind::random_walk: {
      Eigen::VectorXd y(config.n);
      double level = 0.0;
      for (int t = 0; t < config.n; ++t) {
        level += config.drift + config.sigma * rng.normal();
        y(t) = level;
      }
      panel.names = {"y"};
      panel.values = y;
      break;
    }
    case DgpKind::cointegrated_pair: {
      Eigen::MatrixXd values(config.n, 2);
      double x = 0.0, y = 0.0;
      for (int t = 0; t < config.burn_in; ++t) {
        double xprev = x;
        x += rng.normal();
        y += config.lambda * (y - config.beta * xprev) + config.sigma * rng.normal();
      }
      for (int t = 0; t < config.n; ++t) {
        double xprev = x;
        x += rng.normal();
        y += config.lambda * (y - config.beta * xprev) + config.sigma * rng.normal();
        values(t, 0) = y;
        values(t, 1) = x;
      }
      panel.names = {"y", "x"};
      panel.values = values;
      break;
    }
  }
  return panel;
}

}  // namespace ardl
