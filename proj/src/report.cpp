#include "ardl/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ardl/csv.hpp"

namespace ardl {

namespace {

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::filesystem::path table_path(const std::string& dir, const std::string& dep,
                                 const std::string& table, ReportFormat format) {
  std::string ext = format == ReportFormat::csv ? ".csv" : ".txt";
  return std::filesystem::path(dir) / (dep + "_" + table + ext);
}

void write_text_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) widths[j] = header[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], row[j].size());

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << "  ";
      out << row[j];
      for (std::size_t k = row[j].size(); k < widths[j]; ++k) out << ' ';
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

void write_table(const std::string& dir, const std::string& dep, const std::string& table,
                 ReportFormat format, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  auto path = table_path(dir, dep, table, format);
  if (format == ReportFormat::csv) {
    write_csv(path.string(), header, rows);
  } else {
    write_text_table(path, header, rows);
  }
}

std::vector<std::string> coefficient_cells(const CoefficientRow& row, ReportFormat format) {
  if (format == ReportFormat::csv) {
    return {row.name, fmt4(row.estimate), fmt4(row.std_error), fmt4(row.p_value),
            significance_stars(row.p_value)};
  }
  return {row.name, format_estimate(row.estimate, row.std_error, row.p_value)};
}

}  // namespace

std::string significance_stars(double p_value) {
  if (p_value <= 0.01) return "***";
  if (p_value <= 0.05) return "**";
  if (p_value <= 0.10) return "*";
  return "";
}

std::string format_estimate(double estimate, double std_error, double p_value) {
  return fmt4(estimate) + significance_stars(p_value) + " (" + fmt4(std_error) + ")";
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "text") return ReportFormat::text;
  throw std::invalid_argument("unknown report format '" + text + "' (use csv|text)");
}

void write_model_report(const std::string& dir, const ModelReport& r, ReportFormat format) {
  std::filesystem::create_directories(dir);

  {  // unit-root screening
    std::vector<std::vector<std::string>> rows;
    for (const auto& a : r.adf_rows)
      rows.push_back({a.series, a.transform, fmt4(a.prob), std::to_string(a.lag),
                      std::to_string(a.max_lag), std::to_string(a.n)});
    write_table(dir, r.dep, "adf", format, {"series", "transform", "prob", "lag", "maxlag", "n"},
                rows);
  }

  {  // unrestricted model
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : r.ardl_rows) rows.push_back(coefficient_cells(c, format));
    auto stat_row = [&](const std::string& name, double v) {
      std::vector<std::string> row{name, fmt4(v)};
      if (format == ReportFormat::csv) row.resize(5);
      rows.push_back(row);
    };
    stat_row("R-squared", r.r_squared);
    stat_row("DurbinWatson", r.durbin_watson);
    stat_row("BG LM Test", r.bg_lm_p);
    stat_row("BPG Test", r.bpg_p);
    std::vector<std::string> header = format == ReportFormat::csv
                                          ? std::vector<std::string>{"variable", "coef", "se",
                                                                     "pvalue", "stars"}
                                          : std::vector<std::string>{"variable", "estimate"};
    write_table(dir, r.dep, "ardl", format, header, rows);
  }

  {  // bound test
    std::vector<std::vector<std::string>> rows;
    for (int level : {10, 5, 1}) {
      const auto& b = r.bounds.bounds.at(level);
      rows.push_back({std::to_string(level) + "%", fmt4(b.lower), fmt4(b.upper),
                      fmt4(r.bounds.f_stat), to_string(r.bounds.decisions.at(level))});
    }
    rows.push_back({"case", to_string(r.bounds.bound_case), "", "", ""});
    rows.push_back({"k", std::to_string(r.bounds.k), "", "", ""});
    write_table(dir, r.dep, "bounds", format, {"level", "lower", "upper", "f_stat", "decision"},
                rows);
  }

  {  // long-run estimates
    std::vector<std::vector<std::string>> rows;
    auto add = [&](const LongRunTerm& t) {
      CoefficientRow c{t.name, t.estimate, t.std_error, t.p_value};
      rows.push_back(coefficient_cells(c, format));
    };
    for (const auto& t : r.longrun.terms) add(t);
    if (r.longrun.intercept) add(*r.longrun.intercept);
    if (r.longrun.trend) add(*r.longrun.trend);
    std::vector<std::string> header = format == ReportFormat::csv
                                          ? std::vector<std::string>{"variable", "multiplier", "se",
                                                                     "pvalue", "stars"}
                                          : std::vector<std::string>{"variable", "estimate"};
    write_table(dir, r.dep, "longrun", format, header, rows);
  }

  {  // error-correction model
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : r.ecm_rows) rows.push_back(coefficient_cells(c, format));
    std::vector<std::string> header = format == ReportFormat::csv
                                          ? std::vector<std::string>{"variable", "coef", "se",
                                                                     "pvalue", "stars"}
                                          : std::vector<std::string>{"variable", "estimate"};
    write_table(dir, r.dep, "ecm", format, header, rows);
  }

  {  // cusum path (always csv; it is plot data)
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < r.cusum.cusum_path.size(); ++i) {
      int t = r.cusum_first_t + static_cast<int>(i);
      rows.push_back({std::to_string(t), fmt_full(r.cusum.cusum_path(i)),
                      fmt_full(r.cusum.lower_line(i)), fmt_full(r.cusum.upper_line(i))});
    }
    write_csv(table_path(dir, r.dep, "cusum", ReportFormat::csv).string(),
              {"t", "cusum", "lower", "upper"}, rows);
  }
}

namespace {

using nlohmann::json;

json to_json(const CoefficientRow& c) {
  return json{{"name", c.name}, {"estimate", c.estimate}, {"se", c.std_error}, {"p", c.p_value}};
}

CoefficientRow coefficient_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("estimate").get<double>(),
          j.at("se").get<double>(), j.at("p").get<double>()};
}

json to_json(const LongRunTerm& t) {
  return json{{"name", t.name},
              {"estimate", t.estimate},
              {"se", t.std_error},
              {"t", t.t_stat},
              {"p", t.p_value}};
}

LongRunTerm longrun_term_from_json(const json& j) {
  LongRunTerm t;
  t.name = j.at("name").get<std::string>();
  t.estimate = j.at("estimate").get<double>();
  t.std_error = j.at("se").get<double>();
  t.t_stat = j.at("t").get<double>();
  t.p_value = j.at("p").get<double>();
  return t;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

json model_to_json(const ModelReport& r) {
  json j;
  j["dep"] = r.dep;
  j["spec"] = {{"m", r.spec.m},
               {"reg_lags", r.spec.reg_lags},
               {"x_vars", r.spec.x_vars},
               {"z_vars", r.spec.z_vars},
               {"case", to_string(r.spec.bound_case)},
               {"max_lag", r.spec.max_lag}};
  json adf = json::array();
  for (const auto& a : r.adf_rows)
    adf.push_back(json{{"series", a.series},
                       {"transform", a.transform},
                       {"prob", a.prob},
                       {"lag", a.lag},
                       {"maxlag", a.max_lag},
                       {"n", a.n}});
  j["adf"] = adf;
  json ardl_rows = json::array();
  for (const auto& c : r.ardl_rows) ardl_rows.push_back(to_json(c));
  j["ardl"] = ardl_rows;
  j["diagnostics"] = {{"r_squared", r.r_squared},
                      {"durbin_watson", r.durbin_watson},
                      {"bg_lm_stat", r.bg_lm_stat},
                      {"bg_lm_p", r.bg_lm_p},
                      {"bpg_stat", r.bpg_stat},
                      {"bpg_p", r.bpg_p}};
  json bounds;
  bounds["f_stat"] = r.bounds.f_stat;
  bounds["k"] = r.bounds.k;
  bounds["q"] = r.bounds.num_restrictions;
  bounds["case"] = to_string(r.bounds.bound_case);
  json levels = json::array();
  for (int level : {10, 5, 1}) {
    const auto& b = r.bounds.bounds.at(level);
    levels.push_back(json{{"level", level},
                          {"lower", b.lower},
                          {"upper", b.upper},
                          {"decision", to_string(r.bounds.decisions.at(level))}});
  }
  bounds["levels"] = levels;
  j["bounds"] = bounds;
  json lr;
  json terms = json::array();
  for (const auto& t : r.longrun.terms) terms.push_back(to_json(t));
  lr["terms"] = terms;
  if (r.longrun.intercept) lr["intercept"] = to_json(*r.longrun.intercept);
  if (r.longrun.trend) lr["trend"] = to_json(*r.longrun.trend);
  lr["warnings"] = r.longrun.warnings;
  j["longrun"] = lr;
  json ecm_rows = json::array();
  for (const auto& c : r.ecm_rows) ecm_rows.push_back(to_json(c));
  j["ecm"] = ecm_rows;
  json cusum;
  cusum["path"] = vector_to_json(r.cusum.cusum_path);
  cusum["upper"] = vector_to_json(r.cusum.upper_line);
  cusum["stable"] = r.cusum.stable;
  cusum["first_t"] = r.cusum_first_t;
  cusum["boundary_parameter"] = r.cusum.boundary_parameter;
  if (r.cusum.first_crossing) cusum["first_crossing"] = *r.cusum.first_crossing;
  j["cusum"] = cusum;
  j["warnings"] = r.warnings;
  return j;
}

ModelReport model_from_json(const json& j) {
  ModelReport r;
  r.dep = j.at("dep").get<std::string>();
  const json& spec = j.at("spec");
  r.spec.dep = r.dep;
  r.spec.m = spec.at("m").get<int>();
  r.spec.reg_lags = spec.at("reg_lags").get<std::vector<int>>();
  r.spec.x_vars = spec.at("x_vars").get<std::vector<std::string>>();
  r.spec.z_vars = spec.at("z_vars").get<std::vector<std::string>>();
  r.spec.bound_case = parse_case(spec.at("case").get<std::string>());
  r.spec.max_lag = spec.at("max_lag").get<int>();
  for (const auto& a : j.at("adf")) {
    AdfReportRow row;
    row.series = a.at("series").get<std::string>();
    row.transform = a.at("transform").get<std::string>();
    row.prob = a.at("prob").get<double>();
    row.lag = a.at("lag").get<int>();
    row.max_lag = a.at("maxlag").get<int>();
    row.n = a.at("n").get<int>();
    r.adf_rows.push_back(row);
  }
  for (const auto& c : j.at("ardl")) r.ardl_rows.push_back(coefficient_from_json(c));
  const json& d = j.at("diagnostics");
  r.r_squared = d.at("r_squared").get<double>();
  r.durbin_watson = d.at("durbin_watson").get<double>();
  r.bg_lm_stat = d.at("bg_lm_stat").get<double>();
  r.bg_lm_p = d.at("bg_lm_p").get<double>();
  r.bpg_stat = d.at("bpg_stat").get<double>();
  r.bpg_p = d.at("bpg_p").get<double>();
  const json& b = j.at("bounds");
  r.bounds.f_stat = b.at("f_stat").get<double>();
  r.bounds.k = b.at("k").get<int>();
  r.bounds.num_restrictions = b.at("q").get<int>();
  r.bounds.bound_case = parse_case(b.at("case").get<std::string>());
  for (const auto& level : b.at("levels")) {
    int pct = level.at("level").get<int>();
    r.bounds.bounds[pct] = {level.at("lower").get<double>(), level.at("upper").get<double>()};
    std::string dec = level.at("decision").get<std::string>();
    r.bounds.decisions[pct] = dec == "cointegrated"
                                  ? BoundDecision::cointegrated
                                  : dec == "inconclusive" ? BoundDecision::inconclusive
                                                          : BoundDecision::no_cointegration;
  }
  const json& lr = j.at("longrun");
  for (const auto& t : lr.at("terms")) r.longrun.terms.push_back(longrun_term_from_json(t));
  if (lr.contains("intercept")) r.longrun.intercept = longrun_term_from_json(lr.at("intercept"));
  if (lr.contains("trend")) r.longrun.trend = longrun_term_from_json(lr.at("trend"));
  r.longrun.warnings = lr.at("warnings").get<std::vector<std::string>>();
  for (const auto& c : j.at("ecm")) r.ecm_rows.push_back(coefficient_from_json(c));
  const json& cusum = j.at("cusum");
  r.cusum.cusum_path = vector_from_json(cusum.at("path"));
  r.cusum.upper_line = vector_from_json(cusum.at("upper"));
  r.cusum.lower_line = -r.cusum.upper_line;
  r.cusum.stable = cusum.at("stable").get<bool>();
  r.cusum_first_t = cusum.at("first_t").get<int>();
  r.cusum.boundary_parameter = cusum.at("boundary_parameter").get<double>();
  if (cusum.contains("first_crossing")) r.cusum.first_crossing = cusum.at("first_crossing").get<int>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace

void write_summary_json(const std::string& path, const std::vector<ModelReport>& reports) {
  json j;
  json models = json::array();
  for (const auto& r : reports) models.push_back(model_to_json(r));
  j["models"] = models;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::vector<ModelReport> read_summary_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j = json::parse(in);
  std::vector<ModelReport> reports;
  for (const auto& m : j.at("models")) reports.push_back(model_from_json(m));
  return reports;
}

}  // namespace ardl
