#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "ardl/panel.hpp"

namespace ardl {

/// Market-cap-weighted index series: price (weighted constituent prices),
/// volume (summed constituent volumes) and volatility ln(high/low), where the
/// per-period index high/low reuse the same cap weights on constituent
/// highs/lows.
struct IndexSeries {
  std::vector<std::string> index;
  Eigen::VectorXd marp;
  Eigen::VectorXd marv;
  Eigen::VectorXd mars;
  std::vector<std::map<std::string, double>> weights;  // per period, asset -> weight
};

/// Cap weights for one period from the constituents present at that period.
/// Throws "degenerate weights" when the total market cap is not positive.
std::map<std::string, double> compute_weights(
    const std::vector<std::pair<std::string, double>>& market_caps);

/// Weighted sum of per-asset prices; every positively weighted asset must
/// have a price.
double index_price(const std::map<std::string, double>& weights,
                   const std::map<std::string, double>& prices);

/// Sum of available constituent volumes. In strict mode a constituent present
/// in the weight set but missing a volume is an error; otherwise it counts 0.
double index_volume(const std::map<std::string, double>& weights,
                    const std::map<std::string, double>& volumes, bool strict);

/// ln(high/low); requires high >= low > 0.
double index_volatility(double high, double low);

struct IndexOptions {
  bool strict_volume = false;
};

/// Builds the full index over the union of constituent periods. Constituents
/// without a market cap at a period are excluded from that period's weights.
IndexSeries build_index(const std::vector<RawAssetTable>& constituents,
                        const IndexOptions& options = {});

}  // namespace ardl
