#include "ardl/panel.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace ardl {

bool PanelDataset::has_column(const std::string& name) const {
  return column_index(name) >= 0;
}

int PanelDataset::column_index(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return -1;
  return static_cast<int>(it - names.begin());
}

Eigen::VectorXd PanelDataset::column(const std::string& name) const {
  int j = column_index(name);
  if (j < 0) throw std::invalid_argument("unknown variable '" + name + "'");
  return values.col(j);
}

long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& year, int& month, int& day) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  year = static_cast<int>(y + (month <= 2));
}

long parse_iso_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw std::invalid_argument("malformed date '" + text + "' (expected YYYY-MM-DD)");
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("malformed date '" + text + "' (expected YYYY-MM-DD)");
  }
  int y = std::stoi(text.substr(0, 4));
  int m = std::stoi(text.substr(5, 2));
  int d = std::stoi(text.substr(8, 2));
  if (m < 1 || m > 12 || d < 1 || d > 31)
    throw std::invalid_argument("malformed date '" + text + "' (out-of-range field)");
  long days = days_from_civil(y, m, d);
  int y2, m2, d2;
  civil_from_days(days, y2, m2, d2);
  if (y2 != y || m2 != m || d2 != d)
    throw std::invalid_argument("malformed date '" + text + "' (invalid calendar day)");
  return days;
}

std::string format_iso_date(long days) {
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

std::string iso_week_label(long days) {
  // 1970-01-01 was a Thursday; weekday 0 = Monday.
  long wd = ((days % 7) + 7 + 3) % 7;
  return format_iso_date(days - wd);
}

}  // namespace ardl
