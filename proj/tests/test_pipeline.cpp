#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ardl/csv.hpp"
#include "ardl/pipeline.hpp"
#include "ardl/rng.hpp"
#include "ardl/synth.hpp"

using namespace ardl;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Pesaran-Shin-Smith (2001) Table CI bounds for one regressor, the two cases
// these tests run under.
void write_k1_bounds(const fs::path& path) {
  std::ofstream out(path);
  out << "case,k,level,lower,upper\n"
      << "II,1,10,3.02,3.51\nII,1,5,3.62,4.16\nII,1,1,4.94,5.58\n"
      << "III,1,10,4.04,4.78\nIII,1,5,4.94,5.73\nIII,1,1,6.84,7.84\n";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig synth_config(const fs::path& dir, std::uint64_t seed) {
  DgpConfig dgp;
  dgp.kind = DgpKind::cointegrated_pair;
  dgp.n = 400;
  dgp.seed = seed;
  dgp.beta = 2.0;
  dgp.lambda = -0.25;
  PanelDataset panel = generate(dgp);
  fs::path input = dir / "panel.csv";
  write_panel_csv(input.string(), panel);
  fs::path bounds = dir / "k1_bounds.csv";
  write_k1_bounds(bounds);

  PipelineConfig cfg;
  cfg.input_panel = input.string();
  cfg.dep_vars = {"y"};
  cfg.x_vars = {"x"};
  cfg.case_mode = "III";
  cfg.bounds_file = bounds.string();
  cfg.output_dir = (dir / "out").string();
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("cointegrated synthetic run detects the level relationship") {
  fs::path dir = temp_dir("ardl_pipe_coint");
  PipelineConfig cfg = synth_config(dir, 42);
  PipelineResult result = run_pipeline(cfg);
  REQUIRE(result.reports.size() == 1);
  const ModelReport& report = result.reports[0];
  CHECK(report.bounds.decisions.at(5) == BoundDecision::cointegrated);
  const CoefficientRow& ect = report.ecm_rows.back();
  CHECK(ect.name == "ECT(-1)");
  CHECK(ect.estimate > -1.0);
  CHECK(ect.estimate < 0.0);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "out" / "y_ardl.csv"));
  CHECK(fs::exists(dir / "out" / "y_longrun.csv"));
  CHECK(fs::exists(dir / "out" / "y_ecm.csv"));
  CHECK(fs::exists(dir / "out" / "y_bounds.csv"));
  CHECK(fs::exists(dir / "out" / "y_cusum.csv"));
  CHECK(fs::exists(dir / "out" / "summary.json"));

  // The emitted long-run table equals -phi_i/phi_1 from the emitted model table.
  CsvTable ardl_table = read_csv((dir / "out" / "y_ardl.csv").string());
  CsvTable longrun = read_csv((dir / "out" / "y_longrun.csv").string());
  double phi1 = 0.0, phix = 0.0;
  for (const auto& row : ardl_table.rows) {
    if (row[0] == "y(-1)") phi1 = std::stod(row[1]);
    if (row[0] == "x(-1)") phix = std::stod(row[1]);
  }
  double multiplier = 0.0;
  for (const auto& row : longrun.rows) {
    if (row[0] == "x") multiplier = std::stod(row[1]);
  }
  CHECK(multiplier == doctest::Approx(-phix / phi1).epsilon(5e-3));
}

TEST_CASE("unknown variable names abort with the offending name") {
  fs::path dir = temp_dir("ardl_pipe_unknown");
  PipelineConfig cfg = synth_config(dir, 43);
  cfg.x_vars = {"volume_of_mystery"};
  CHECK_THROWS_WITH(run_pipeline(cfg), doctest::Contains("volume_of_mystery"));
}

TEST_CASE("two runs produce byte-identical artifacts") {
  fs::path dir = temp_dir("ardl_pipe_det");
  PipelineConfig cfg = synth_config(dir, 44);
  cfg.output_dir = (dir / "out1").string();
  run_pipeline(cfg);
  cfg.output_dir = (dir / "out2").string();
  run_pipeline(cfg);
  for (const auto& entry : fs::directory_iterator(dir / "out1")) {
    fs::path other = dir / "out2" / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(read_file(entry.path()) == read_file(other));
  }
}

TEST_CASE("an inconclusive bound test at 5% sets exit code 2") {
  fs::path dir = temp_dir("ardl_pipe_inconclusive");
  PipelineConfig cfg = synth_config(dir, 49);
  // Bounds straddling any finite statistic force the inconclusive band.
  std::ofstream out(dir / "wide_bounds.csv");
  out << "case,k,level,lower,upper\n"
      << "III,1,10,0.0001,1e9\nIII,1,5,0.0001,1e9\nIII,1,1,0.0001,1e9\n";
  out.close();
  cfg.bounds_file = (dir / "wide_bounds.csv").string();
  PipelineResult result = run_pipeline(cfg);
  CHECK(result.reports[0].bounds.decisions.at(5) == BoundDecision::inconclusive);
  CHECK(result.exit_code == 2);
}

TEST_CASE("case override wins over the automatic choice") {
  fs::path dir = temp_dir("ardl_pipe_case");
  PipelineConfig cfg = synth_config(dir, 45);
  cfg.case_mode = "II";
  PipelineResult result = run_pipeline(cfg);
  CHECK(result.reports[0].spec.bound_case == BoundCase::II);
}

TEST_CASE("{dep} substitution resolves per-model columns") {
  fs::path dir = temp_dir("ardl_pipe_subst");
  PipelineConfig cfg = synth_config(dir, 46);
  cfg.x_vars = {"{dep}_missing"};
  CHECK_THROWS_WITH(run_pipeline(cfg), doctest::Contains("y_missing"));
}

TEST_CASE("independent random walks rarely classify as cointegrated end to end") {
  fs::path dir = temp_dir("ardl_pipe_spurious");
  fs::path bounds = dir / "k1.csv";
  write_k1_bounds(bounds);
  PipelineConfig cfg;
  cfg.dep_vars = {"y"};
  cfg.x_vars = {"x"};
  cfg.case_mode = "III";
  cfg.bounds_file = bounds.string();

  const int seeds = 100;
  int cointegrated = 0;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(910000 + s);
    std::vector<NamedSeries> pool(2);
    pool[0].name = "y";
    pool[1].name = "x";
    pool[0].values.resize(400);
    pool[1].values.resize(400);
    double ly = 0, lx = 0;
    for (int t = 0; t < 400; ++t) {
      std::string label = "t" + std::to_string(1000 + t);
      pool[0].labels.push_back(label);
      pool[1].labels.push_back(label);
      ly += rng.normal();
      lx += rng.normal();
      pool[0].values(t) = ly;
      pool[1].values(t) = lx;
    }
    ModelReport report = run_model(pool, cfg, "y");
    if (report.bounds.decisions.at(1) == BoundDecision::cointegrated) ++cointegrated;
  }
  CHECK(seeds - cointegrated >= 85);
}

TEST_CASE("significance stars follow the published convention") {
  CHECK(significance_stars(0.004) == "***");
  CHECK(significance_stars(0.04) == "**");
  CHECK(significance_stars(0.07) == "*");
  CHECK(significance_stars(0.5) == "");
  CHECK(format_estimate(0.4208, 0.0851, 0.001) == "0.4208*** (0.0851)");
}

TEST_CASE("summary survives a serialization round trip") {
  fs::path dir = temp_dir("ardl_pipe_json");
  PipelineConfig cfg = synth_config(dir, 47);
  PipelineResult result = run_pipeline(cfg);
  auto loaded = read_summary_json((fs::path(cfg.output_dir) / "summary.json").string());
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].dep == result.reports[0].dep);
  CHECK(loaded[0].bounds.f_stat == doctest::Approx(result.reports[0].bounds.f_stat));
  CHECK(loaded[0].ecm_rows.back().estimate ==
        doctest::Approx(result.reports[0].ecm_rows.back().estimate));
  CHECK(loaded[0].spec.m == result.reports[0].spec.m);

  // Re-rendering from the summary gives identical tables.
  fs::path rerender = dir / "rerender";
  fs::create_directories(rerender);
  for (const auto& r : loaded) write_model_report(rerender.string(), r, ReportFormat::csv);
  CHECK(read_file(rerender / "y_longrun.csv") ==
        read_file(fs::path(cfg.output_dir) / "y_longrun.csv"));
  CHECK(read_file(rerender / "y_ecm.csv") == read_file(fs::path(cfg.output_dir) / "y_ecm.csv"));
}

TEST_CASE("text format renders aligned tables") {
  fs::path dir = temp_dir("ardl_pipe_text");
  PipelineConfig cfg = synth_config(dir, 48);
  cfg.format = "text";
  run_pipeline(cfg);
  std::string table = read_file(fs::path(cfg.output_dir) / "y_longrun.txt");
  CHECK(table.find("variable") != std::string::npos);
  CHECK(table.find("(") != std::string::npos);  // "estimate*** (se)" style
}

TEST_SUITE_END();
