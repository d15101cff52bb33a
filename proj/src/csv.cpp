#include "ardl/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ardl {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return -1;
  return static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      fields.resize(table.header.size());
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::runtime_error("'" + path + "': missing header row");
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out << ',';
    out << header[j];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

PanelDataset read_panel_csv(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.header.empty() || table.header[0] != "date")
    throw std::runtime_error("'" + path + "': first column must be 'date'");
  PanelDataset panel;
  panel.names.assign(table.header.begin() + 1, table.header.end());
  panel.values.resize(static_cast<Eigen::Index>(table.rows.size()),
                      static_cast<Eigen::Index>(panel.names.size()));
  panel.index.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    panel.index.push_back(table.rows[i][0]);
    for (std::size_t j = 0; j + 1 < table.header.size(); ++j) {
      const std::string& cell = table.rows[i][j + 1];
      if (cell.empty()) {
        panel.values(i, j) = missing_value();
      } else {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size())
          throw std::runtime_error("'" + path + "': non-numeric cell '" + cell + "' in column " +
                                   panel.names[j]);
        panel.values(i, j) = v;
      }
    }
  }
  return panel;
}

void write_panel_csv(const std::string& path, const PanelDataset& panel) {
  std::vector<std::string> header{"date"};
  header.insert(header.end(), panel.names.begin(), panel.names.end());
  std::vector<std::vector<std::string>> rows;
  rows.reserve(panel.rows());
  char buf[40];
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    std::vector<std::string> row{panel.index[i]};
    for (Eigen::Index j = 0; j < panel.values.cols(); ++j) {
      double v = panel.values(i, j);
      if (is_missing(v)) {
        row.emplace_back();
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        row.emplace_back(buf);
      }
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace ardl
