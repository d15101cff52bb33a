#include "ardl/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ardl/csv.hpp"

namespace ardl {

namespace {

std::string schema_name(const ColumnSchema& schema, const std::string& canonical) {
  auto it = schema.find(canonical);
  return it == schema.end() ? canonical : it->second;
}

double parse_field(const std::string& cell) {
  if (cell.empty()) return missing_value();
  std::size_t pos = 0;
  double v = std::stod(cell, &pos);
  if (pos != cell.size()) throw std::invalid_argument("non-numeric field '" + cell + "'");
  return v;
}

void fail_or_report(bool strict, std::vector<std::string>* diagnostics, const std::string& message) {
  if (strict) throw std::runtime_error(message);
  if (diagnostics) diagnostics->push_back(message);
}

}  // namespace

RawAssetTable load_asset_csv(const std::string& path, const ColumnSchema& schema, bool strict,
                             std::vector<std::string>* diagnostics) {
  CsvTable csv = read_csv(path);

  int date_col = csv.column_index(schema_name(schema, "date"));
  if (date_col < 0) throw std::runtime_error("'" + path + "': missing date column");
  int price_col = csv.column_index(schema_name(schema, "price"));
  int mcap_col = csv.column_index(schema_name(schema, "market_cap"));
  int vol_col = csv.column_index(schema_name(schema, "volume"));
  int high_col = csv.column_index(schema_name(schema, "high"));
  int low_col = csv.column_index(schema_name(schema, "low"));

  RawAssetTable table;
  // Asset id = file stem.
  std::string stem = path;
  if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  table.asset_id = stem;

  std::vector<std::pair<long, RawAssetRow>> parsed;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& cells = csv.rows[i];
    std::string where = path + " row " + std::to_string(i + 2);
    long day;
    RawAssetRow row;
    try {
      day = parse_iso_date(cells[date_col]);
      row.date = cells[date_col];
      if (price_col >= 0) row.price = parse_field(cells[price_col]);
      if (mcap_col >= 0) row.market_cap = parse_field(cells[mcap_col]);
      if (vol_col >= 0) row.volume = parse_field(cells[vol_col]);
      if (high_col >= 0) row.high = parse_field(cells[high_col]);
      if (low_col >= 0) row.low = parse_field(cells[low_col]);
    } catch (const std::exception& e) {
      fail_or_report(strict, diagnostics, where + ": " + e.what());
      continue;
    }
    if (!is_missing(row.price) && row.price <= 0.0) {
      fail_or_report(strict, diagnostics, where + ": non-positive price");
      continue;
    }
    if (!is_missing(row.high) && row.high <= 0.0) {
      fail_or_report(strict, diagnostics, where + ": non-positive high");
      continue;
    }
    if (!is_missing(row.low) && row.low <= 0.0) {
      fail_or_report(strict, diagnostics, where + ": non-positive low");
      continue;
    }
    if (!is_missing(row.market_cap) && row.market_cap < 0.0) {
      fail_or_report(strict, diagnostics, where + ": negative market_cap");
      continue;
    }
    if (!is_missing(row.volume) && row.volume < 0.0) {
      fail_or_report(strict, diagnostics, where + ": negative volume");
      continue;
    }
    if (!is_missing(row.high) && !is_missing(row.low) && row.low > row.high) {
      fail_or_report(strict, diagnostics, where + ": low > high");
      continue;
    }
    parsed.emplace_back(day, std::move(row));
  }

  std::stable_sort(parsed.begin(), parsed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (i > 0 && parsed[i].first == parsed[i - 1].first) {
      fail_or_report(strict, diagnostics, path + ": duplicate date " + parsed[i].second.date);
      continue;
    }
    table.rows.push_back(std::move(parsed[i].second));
  }
  return table;
}

RawAssetTable resample_weekly(const RawAssetTable& table, ResampleRule rule) {
  if (table.frequency != Frequency::daily)
    throw std::invalid_argument("resample_weekly: input must be daily");

  RawAssetTable out;
  out.asset_id = table.asset_id;
  out.frequency = Frequency::weekly;

  std::size_t i = 0;
  while (i < table.rows.size()) {
    std::string week = iso_week_label(parse_iso_date(table.rows[i].date));
    std::size_t j = i;
    RawAssetRow agg;
    agg.date = week;
    double price_sum = 0, mcap_sum = 0;
    int price_n = 0, mcap_n = 0;
    bool any_volume = false;
    double vol_sum = 0;
    while (j < table.rows.size() && iso_week_label(parse_iso_date(table.rows[j].date)) == week) {
      const RawAssetRow& r = table.rows[j];
      if (!is_missing(r.price)) {
        agg.price = r.price;  // last observation wins
        price_sum += r.price;
        ++price_n;
      }
      if (!is_missing(r.market_cap)) {
        agg.market_cap = r.market_cap;
        mcap_sum += r.market_cap;
        ++mcap_n;
      }
      if (!is_missing(r.volume)) {
        vol_sum += r.volume;
        any_volume = true;
      }
      if (!is_missing(r.high)) agg.high = is_missing(agg.high) ? r.high : std::max(agg.high, r.high);
      if (!is_missing(r.low)) agg.low = is_missing(agg.low) ? r.low : std::min(agg.low, r.low);
      ++j;
    }
    if (rule == ResampleRule::mean) {
      if (price_n > 0) agg.price = price_sum / price_n;
      if (mcap_n > 0) agg.market_cap = mcap_sum / mcap_n;
    }
    if (any_volume) agg.volume = vol_sum;
    out.rows.push_back(std::move(agg));
    i = j;
  }
  return out;
}

PanelDataset align(const std::vector<NamedSeries>& series, AlignMode mode) {
  (void)mode;
  if (series.empty()) throw std::invalid_argument("align: need at least one series");

  std::vector<std::map<std::string, double>> lookup(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (std::size_t i = 0; i < series[s].labels.size(); ++i) {
      double v = series[s].values(static_cast<Eigen::Index>(i));
      if (!is_missing(v)) lookup[s][series[s].labels[i]] = v;
    }
  }

  std::vector<std::string> common;
  for (const auto& [label, v] : lookup[0]) {
    (void)v;
    bool everywhere = true;
    for (std::size_t s = 1; s < series.size(); ++s) {
      if (!lookup[s].count(label)) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) common.push_back(label);
  }
  if (common.empty()) throw std::runtime_error("no overlapping sample");
  std::sort(common.begin(), common.end());

  PanelDataset panel;
  panel.index = common;
  panel.values.resize(static_cast<Eigen::Index>(common.size()),
                      static_cast<Eigen::Index>(series.size()));
  for (std::size_t s = 0; s < series.size(); ++s) {
    panel.names.push_back(series[s].name);
    for (std::size_t i = 0; i < common.size(); ++i) panel.values(i, s) = lookup[s].at(common[i]);
  }
  return panel;
}

PanelDataset log_transform(const PanelDataset& panel, const std::vector<std::string>& columns) {
  PanelDataset out = panel;
  for (const auto& name : columns) {
    int j = out.column_index(name);
    if (j < 0) throw std::invalid_argument("log_transform: unknown column '" + name + "'");
    for (std::size_t i = 0; i < out.rows(); ++i) {
      double v = out.values(i, j);
      if (is_missing(v)) continue;
      if (v <= 0.0)
        throw std::runtime_error("log_transform: non-positive value in column '" + name +
                                 "' at period " + out.index[i]);
      out.values(i, j) = std::log(v);
    }
  }
  return out;
}

NamedSeries price_series(const RawAssetTable& weekly) {
  NamedSeries s;
  s.name = weekly.asset_id;
  s.labels.reserve(weekly.rows.size());
  s.values.resize(static_cast<Eigen::Index>(weekly.rows.size()));
  for (std::size_t i = 0; i < weekly.rows.size(); ++i) {
    s.labels.push_back(weekly.rows[i].date);
    s.values(static_cast<Eigen::Index>(i)) = weekly.rows[i].price;
  }
  return s;
}

}  // namespace ardl
