#include "ardl/index.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ardl {

std::map<std::string, double> compute_weights(
    const std::vector<std::pair<std::string, double>>& market_caps) {
  if (market_caps.empty()) throw std::invalid_argument("compute_weights: no constituents");
  double total = 0.0;
  for (const auto& [id, mc] : market_caps) {
    if (mc < 0.0) throw std::invalid_argument("compute_weights: negative market cap for " + id);
    total += mc;
  }
  if (total <= 0.0) throw std::runtime_error("degenerate weights: total market cap is zero");
  std::map<std::string, double> weights;
  for (const auto& [id, mc] : market_caps) weights[id] = mc / total;
  return weights;
}

double index_price(const std::map<std::string, double>& weights,
                   const std::map<std::string, double>& prices) {
  double sum = 0.0;
  for (const auto& [id, w] : weights) {
    if (w == 0.0) continue;
    auto it = prices.find(id);
    if (it == prices.end() || is_missing(it->second))
      throw std::runtime_error("index price: missing price for weighted asset " + id);
    sum += w * it->second;
  }
  return sum;
}

double index_volume(const std::map<std::string, double>& weights,
                    const std::map<std::string, double>& volumes, bool strict) {
  double sum = 0.0;
  for (const auto& [id, w] : weights) {
    (void)w;
    auto it = volumes.find(id);
    if (it == volumes.end() || is_missing(it->second)) {
      if (strict) throw std::runtime_error("index volume: missing volume for asset " + id);
      continue;
    }
    sum += it->second;
  }
  return sum;
}

double index_volatility(double high, double low) {
  if (!(low > 0.0)) throw std::invalid_argument("index volatility: low must be positive");
  if (high < low) throw std::invalid_argument("index volatility: high < low");
  return std::log(high / low);
}

IndexSeries build_index(const std::vector<RawAssetTable>& constituents, const IndexOptions& options) {
  if (constituents.empty()) throw std::invalid_argument("build_index: no constituents");

  // Per-asset period lookup.
  std::vector<std::map<std::string, const RawAssetRow*>> byPeriod(constituents.size());
  std::set<std::string> periods;
  for (std::size_t a = 0; a < constituents.size(); ++a) {
    for (const auto& row : constituents[a].rows) {
      byPeriod[a][row.date] = &row;
      periods.insert(row.date);
    }
  }

  IndexSeries out;
  out.index.assign(periods.begin(), periods.end());
  const auto n = static_cast<Eigen::Index>(out.index.size());
  out.marp.resize(n);
  out.marv.resize(n);
  out.mars.resize(n);
  out.weights.resize(out.index.size());

  for (Eigen::Index t = 0; t < n; ++t) {
    const std::string& period = out.index[t];
    std::vector<std::pair<std::string, double>> caps;
    std::map<std::string, double> prices, volumes, highs, lows;
    for (std::size_t a = 0; a < constituents.size(); ++a) {
      auto it = byPeriod[a].find(period);
      if (it == byPeriod[a].end()) continue;
      const RawAssetRow& row = *it->second;
      if (is_missing(row.market_cap)) continue;  // not a member this period
      const std::string& id = constituents[a].asset_id;
      caps.emplace_back(id, row.market_cap);
      if (!is_missing(row.price)) prices[id] = row.price;
      if (!is_missing(row.volume)) volumes[id] = row.volume;
      if (!is_missing(row.high)) highs[id] = row.high;
      if (!is_missing(row.low)) lows[id] = row.low;
    }
    auto weights = compute_weights(caps);
    out.marp(t) = index_price(weights, prices);
    out.marv(t) = index_volume(weights, volumes, options.strict_volume);
    double high = index_price(weights, highs);
    double low = index_price(weights, lows);
    out.mars(t) = index_volatility(high, low);
    out.weights[t] = std::move(weights);
  }
  return out;
}

}  // namespace ardl
