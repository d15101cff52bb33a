#pragma once

#include <Eigen/Dense>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace ardl {

inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

enum class Frequency { daily, weekly };

/// Aligned multi-variable observation matrix. Rows are periods (labelled by
/// `index`), columns are variables; missing cells are NaN.
struct PanelDataset {
  std::vector<std::string> index;
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // rows() == index.size(), cols() == names.size()
  Frequency frequency = Frequency::weekly;

  std::size_t rows() const { return index.size(); }

  bool has_column(const std::string& name) const;
  int column_index(const std::string& name) const;  // -1 if absent

  /// Column view by name; throws if the column does not exist.
  Eigen::VectorXd column(const std::string& name) const;
};

/// One raw per-asset observation. Absent optional fields are NaN.
struct RawAssetRow {
  std::string date;  // ISO-8601 day (daily) or ISO week label (weekly)
  double price = std::numeric_limits<double>::quiet_NaN();
  double market_cap = std::numeric_limits<double>::quiet_NaN();
  double volume = std::numeric_limits<double>::quiet_NaN();
  double high = std::numeric_limits<double>::quiet_NaN();
  double low = std::numeric_limits<double>::quiet_NaN();
};

struct RawAssetTable {
  std::string asset_id;
  Frequency frequency = Frequency::daily;
  std::vector<RawAssetRow> rows;
};

/// A single named series over labelled periods, used as the align() input.
struct NamedSeries {
  std::string name;
  std::vector<std::string> labels;
  Eigen::VectorXd values;
};

// --- calendar helpers -------------------------------------------------------

/// Days since 1970-01-01 for a proleptic Gregorian date.
long days_from_civil(int year, int month, int day);

/// Inverse of days_from_civil.
void civil_from_days(long days, int& year, int& month, int& day);

/// Parses strict `YYYY-MM-DD`; throws std::invalid_argument on malformed input.
long parse_iso_date(const std::string& text);

std::string format_iso_date(long days);

/// Canonical label of the ISO-8601 week containing the given day: the date of
/// that week's Monday. Identical labels across assets align the same week.
std::string iso_week_label(long days);

}  // namespace ardl
