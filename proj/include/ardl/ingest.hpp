#pragma once

#include <map>
#include <string>
#include <vector>

#include "ardl/panel.hpp"

namespace ardl {

/// Maps canonical field names (date, price, market_cap, volume, high, low) to
/// the column names used in a particular file. Unmapped fields default to the
/// canonical name; optional columns may be absent from the file entirely.
using ColumnSchema = std::map<std::string, std::string>;

enum class ResampleRule { last_obs, mean };

/// Loads a per-asset daily CSV. In strict mode any malformed row (bad date,
/// non-positive price/high/low, low > high, duplicated date) aborts the load;
/// otherwise offending rows are dropped and described in `diagnostics`.
RawAssetTable load_asset_csv(const std::string& path, const ColumnSchema& schema = {},
                             bool strict = false,
                             std::vector<std::string>* diagnostics = nullptr);

/// Collapses a daily table to one row per ISO week. Under `last_obs` the
/// price and market cap take the final observation of the week, volume is
/// summed and high/low take the weekly extremes; under `mean` price and
/// market cap are averaged instead.
RawAssetTable resample_weekly(const RawAssetTable& table, ResampleRule rule = ResampleRule::last_obs);

enum class AlignMode { intersection };

/// Intersects the supplied series on periods where every one of them is
/// present, producing a fully observed panel. Throws "no overlapping sample"
/// when the intersection is empty.
PanelDataset align(const std::vector<NamedSeries>& series, AlignMode mode = AlignMode::intersection);

/// Replaces the named columns by their natural logs; any non-positive value
/// aborts with the offending column and period in the message.
PanelDataset log_transform(const PanelDataset& panel, const std::vector<std::string>& columns);

/// Weekly price series of one asset as an align() input named by asset id.
NamedSeries price_series(const RawAssetTable& weekly);

}  // namespace ardl
