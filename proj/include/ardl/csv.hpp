#pragma once

#include <string>
#include <vector>

#include "ardl/panel.hpp"

namespace ardl {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
};

/// Reads a comma-separated file with a header row. Fields are not quoted;
/// trailing '\r' is stripped. Empty fields stay empty (missing).
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Reads a wide panel CSV (`date,<name1>,<name2>,...`); empty cells become NaN.
PanelDataset read_panel_csv(const std::string& path);

/// Writes a panel back out in the same wide layout, 17 significant digits.
void write_panel_csv(const std::string& path, const PanelDataset& panel);

}  // namespace ardl
