#include "ardl/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ardl/csv.hpp"
#include "ardl/stats.hpp"

namespace ardl {

namespace {

constexpr double kSicTie = 1e-9;

Eigen::VectorXd checked_column(const PanelDataset& panel, const std::string& name) {
  Eigen::VectorXd col = panel.column(name);
  for (Eigen::Index t = 0; t < col.size(); ++t) {
    if (is_missing(col(t)))
      throw std::runtime_error("variable '" + name + "' has a missing value at period " +
                               panel.index[t] + "; align the panel first");
  }
  return col;
}

bool has_intercept(BoundCase c) { return c != BoundCase::I; }
bool has_trend(BoundCase c) { return c == BoundCase::IV; }

std::string lag_suffix(int lag) { return lag == 0 ? "" : "(-" + std::to_string(lag) + ")"; }

}  // namespace

BoundCase parse_case(const std::string& text) {
  if (text == "I" || text == "1") return BoundCase::I;
  if (text == "II" || text == "2") return BoundCase::II;
  if (text == "III" || text == "3") return BoundCase::III;
  if (text == "IV" || text == "4") return BoundCase::IV;
  throw std::invalid_argument("unknown case '" + text + "' (use I..IV)");
}

std::string to_string(BoundCase c) {
  switch (c) {
    case BoundCase::I: return "I";
    case BoundCase::II: return "II";
    case BoundCase::III: return "III";
    case BoundCase::IV: return "IV";
  }
  throw std::logic_error("unreachable");
}

std::string to_string(BoundDecision d) {
  switch (d) {
    case BoundDecision::no_cointegration: return "no_cointegration";
    case BoundDecision::inconclusive: return "inconclusive";
    case BoundDecision::cointegrated: return "cointegrated";
  }
  throw std::logic_error("unreachable");
}

std::vector<std::string> ArdlSpec::regressors() const {
  std::vector<std::string> all = x_vars;
  all.insert(all.end(), z_vars.begin(), z_vars.end());
  return all;
}

int ArdlSpec::max_order() const {
  int mo = m;
  for (int n : reg_lags) mo = std::max(mo, n);
  return mo;
}

void ArdlSpec::validate() const {
  if (dep.empty()) throw std::invalid_argument("ArdlSpec: missing dependent variable");
  if (x_vars.empty() && z_vars.empty())
    throw std::invalid_argument("ArdlSpec: need at least one regressor");
  if (m < 1 || m > max_lag) throw std::invalid_argument("ArdlSpec: m outside 1..max_lag");
  std::size_t J = x_vars.size() + z_vars.size();
  if (reg_lags.size() != J)
    throw std::invalid_argument("ArdlSpec: reg_lags size must match the regressor count");
  for (int n : reg_lags) {
    if (n < 0 || n > max_lag) throw std::invalid_argument("ArdlSpec: lag order outside 0..max_lag");
  }
}

ArdlDesign build_design(const PanelDataset& panel, const ArdlSpec& spec, int trim_lag) {
  spec.validate();
  const auto regs = spec.regressors();
  const int trim = trim_lag < 0 ? spec.max_order() : trim_lag;
  if (trim < spec.max_order())
    throw std::invalid_argument("build_design: trim_lag below the spec's own maximal order");

  Eigen::VectorXd dep = checked_column(panel, spec.dep);
  std::vector<Eigen::VectorXd> reg_cols;
  reg_cols.reserve(regs.size());
  for (const auto& name : regs) reg_cols.push_back(checked_column(panel, name));

  const Eigen::Index T = dep.size();
  const int t0 = trim + 1;
  const Eigen::Index n = T - t0;
  int width = (has_intercept(spec.bound_case) ? 1 : 0) + (has_trend(spec.bound_case) ? 1 : 0) +
              spec.m;
  for (int nj : spec.reg_lags) width += nj + 1;
  width += 1 + static_cast<int>(regs.size());  // lagged levels
  if (n < width + 10)
    throw std::runtime_error("build_design: effective sample (" + std::to_string(n) +
                             ") too small for " + std::to_string(width) + " parameters");

  ArdlDesign d;
  d.first_row = t0;
  d.y.resize(n);
  d.X.resize(n, width);
  d.col_names.reserve(width);

  int c = 0;
  if (has_intercept(spec.bound_case)) {
    d.intercept_col = c;
    d.col_names.push_back("C");
    d.X.col(c++).setOnes();
  }
  if (has_trend(spec.bound_case)) {
    d.trend_col = c;
    d.col_names.push_back("TREND");
    for (Eigen::Index r = 0; r < n; ++r) d.X(r, c) = static_cast<double>(t0 + r);
    ++c;
  }
  for (int i = 1; i <= spec.m; ++i) {
    d.col_names.push_back("d(" + spec.dep + ")" + lag_suffix(i));
    for (Eigen::Index r = 0; r < n; ++r) {
      Eigen::Index t = t0 + r;
      d.X(r, c) = dep(t - i) - dep(t - i - 1);
    }
    ++c;
  }
  for (std::size_t j = 0; j < regs.size(); ++j) {
    for (int i = 0; i <= spec.reg_lags[j]; ++i) {
      d.col_names.push_back("d(" + regs[j] + ")" + lag_suffix(i));
      for (Eigen::Index r = 0; r < n; ++r) {
        Eigen::Index t = t0 + r;
        d.X(r, c) = reg_cols[j](t - i) - reg_cols[j](t - i - 1);
      }
      ++c;
    }
  }
  d.first_level_col = c;
  d.n_levels = 1 + static_cast<int>(regs.size());
  d.col_names.push_back(spec.dep + "(-1)");
  for (Eigen::Index r = 0; r < n; ++r) d.X(r, c) = dep(t0 + r - 1);
  ++c;
  for (std::size_t j = 0; j < regs.size(); ++j) {
    d.col_names.push_back(regs[j] + "(-1)");
    for (Eigen::Index r = 0; r < n; ++r) d.X(r, c) = reg_cols[j](t0 + r - 1);
    ++c;
  }
  for (Eigen::Index r = 0; r < n; ++r) d.y(r) = dep(t0 + r) - dep(t0 + r - 1);
  return d;
}

namespace {

OlsFit fit_design_or_name_columns(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                  const std::vector<std::string>& names) {
  try {
    return ols_fit(y, X);
  } catch (const RankDeficientError& e) {
    std::string msg = "rank-deficient design; collinear columns:";
    for (int cidx : e.columns()) msg += " " + names[cidx];
    throw RankDeficientError(msg, e.columns());
  }
}

}  // namespace

ArdlFit fit_unrestricted(const PanelDataset& panel, const ArdlSpec& spec, int hac_bandwidth) {
  ArdlFit fit;
  fit.spec = spec;
  fit.design = build_design(panel, spec);
  fit.ols = fit_design_or_name_columns(fit.design.y, fit.design.X, fit.design.col_names);
  fit.hac = newey_west_cov(fit.ols, fit.design.X, hac_bandwidth);
  return fit;
}

const BoundsRow& BoundsTable::at(BoundCase c, int level_percent) const {
  auto it = rows.find({static_cast<int>(c), level_percent});
  if (it == rows.end())
    throw std::runtime_error("no critical bounds for case " + to_string(c) + " at " +
                             std::to_string(level_percent) + "%");
  return it->second;
}

const BoundsTable& pesaran_bounds_k8() {
  static const BoundsTable table = [] {
    BoundsTable t;
    t.k = 8;
    auto set = [&t](BoundCase c, int level, double lo, double hi) {
      t.rows[{static_cast<int>(c), level}] = {lo, hi};
    };
    set(BoundCase::I, 10, 1.66, 2.79);
    set(BoundCase::I, 5, 1.91, 3.11);
    set(BoundCase::I, 1, 2.45, 3.79);
    set(BoundCase::II, 10, 1.85, 2.85);
    set(BoundCase::II, 5, 2.11, 3.15);
    set(BoundCase::II, 1, 2.62, 3.77);
    set(BoundCase::III, 10, 1.95, 3.06);
    set(BoundCase::III, 5, 2.22, 3.39);
    set(BoundCase::III, 1, 2.79, 4.10);
    set(BoundCase::IV, 10, 2.13, 3.09);
    set(BoundCase::IV, 5, 2.38, 3.41);
    set(BoundCase::IV, 1, 2.93, 4.06);
    return t;
  }();
  return table;
}

BoundsTable load_bounds_csv(const std::string& path) {
  CsvTable csv = read_csv(path);
  int case_col = csv.column_index("case");
  int k_col = csv.column_index("k");
  int level_col = csv.column_index("level");
  int lower_col = csv.column_index("lower");
  int upper_col = csv.column_index("upper");
  if (case_col < 0 || k_col < 0 || level_col < 0 || lower_col < 0 || upper_col < 0)
    throw std::runtime_error("'" + path + "': expected header case,k,level,lower,upper");
  BoundsTable table;
  table.k = -1;
  for (const auto& row : csv.rows) {
    int k = std::stoi(row[k_col]);
    if (table.k < 0) table.k = k;
    if (k != table.k)
      throw std::runtime_error("'" + path + "': mixed k values in one bounds file");
    BoundCase c = parse_case(row[case_col]);
    int level = std::stoi(row[level_col]);
    if (level != 10 && level != 5 && level != 1)
      throw std::runtime_error("'" + path + "': level must be 10, 5 or 1");
    double lo = std::stod(row[lower_col]);
    double hi = std::stod(row[upper_col]);
    if (hi < lo) throw std::runtime_error("'" + path + "': upper bound below lower bound");
    table.rows[{static_cast<int>(c), level}] = {lo, hi};
  }
  if (table.rows.empty()) throw std::runtime_error("'" + path + "': empty bounds file");
  return table;
}

BoundDecision classify_bound(double f_stat, const BoundsRow& bounds) {
  if (f_stat > bounds.upper) return BoundDecision::cointegrated;
  if (f_stat < bounds.lower) return BoundDecision::no_cointegration;
  return BoundDecision::inconclusive;
}

BoundTestResult bound_test(const ArdlFit& fit, const BoundsTable& table) {
  const ArdlDesign& d = fit.design;
  std::vector<int> drop;
  for (int j = 0; j < d.n_levels; ++j) drop.push_back(d.first_level_col + j);
  if (fit.spec.bound_case == BoundCase::II && d.intercept_col >= 0) drop.push_back(d.intercept_col);
  if (fit.spec.bound_case == BoundCase::IV && d.trend_col >= 0) drop.push_back(d.trend_col);

  Eigen::MatrixXd restricted(d.X.rows(), d.X.cols() - static_cast<Eigen::Index>(drop.size()));
  int c = 0;
  for (Eigen::Index j = 0; j < d.X.cols(); ++j) {
    if (std::find(drop.begin(), drop.end(), static_cast<int>(j)) != drop.end()) continue;
    restricted.col(c++) = d.X.col(j);
  }
  OlsFit restricted_fit = ols_fit(d.y, restricted);

  BoundTestResult res;
  res.num_restrictions = static_cast<int>(drop.size());
  res.f_stat = wald_f(fit.ols, restricted_fit.rss, res.num_restrictions);
  res.k = table.k;
  res.bound_case = fit.spec.bound_case;
  for (int level : {10, 5, 1}) {
    const BoundsRow& row = table.at(fit.spec.bound_case, level);
    res.bounds[level] = row;
    res.decisions[level] = classify_bound(res.f_stat, row);
  }
  return res;
}

namespace {

LongRunTerm ratio_term(const std::string& name, double phi_i, double phi1,
                       const Eigen::MatrixXd& cov, int idx1, int idx_i, double t_dof) {
  LongRunTerm term;
  term.name = name;
  term.estimate = -phi_i / phi1;
  Eigen::Vector2d grad(phi_i / (phi1 * phi1), -1.0 / phi1);
  Eigen::Matrix2d sigma;
  sigma << cov(idx1, idx1), cov(idx1, idx_i), cov(idx_i, idx1), cov(idx_i, idx_i);
  double var = grad.dot(sigma * grad);
  term.std_error = var > 0.0 ? std::sqrt(var) : 0.0;
  if (term.std_error > 0.0) {
    term.t_stat = term.estimate / term.std_error;
    term.p_value = student_t_two_sided(term.t_stat, t_dof);
  } else {
    term.t_stat = 0.0;
    term.p_value = 1.0;
  }
  return term;
}

}  // namespace

LongRunEstimates long_run(const ArdlFit& fit) {
  const double phi1 = fit.phi1();
  if (std::abs(phi1) <= 1e-12)
    throw std::runtime_error("no level relationship: adjustment coefficient is zero");

  LongRunEstimates lr;
  if (phi1 >= 0.0)
    lr.warnings.push_back(
        "adjustment coefficient is non-negative; no error-correction interpretation");

  const Eigen::MatrixXd& cov = fit.hac.matrix;
  const double dof = fit.ols.nobs - fit.ols.nparams;
  const int idx1 = fit.design.first_level_col;
  const auto regs = fit.spec.regressors();
  for (std::size_t j = 0; j < regs.size(); ++j) {
    int idx = fit.design.first_level_col + 1 + static_cast<int>(j);
    lr.terms.push_back(ratio_term(regs[j], fit.ols.coefficients(idx), phi1, cov, idx1, idx, dof));
  }
  if (fit.design.intercept_col >= 0) {
    lr.intercept = ratio_term("C", fit.ols.coefficients(fit.design.intercept_col), phi1, cov, idx1,
                              fit.design.intercept_col, dof);
  }
  if (fit.design.trend_col >= 0) {
    lr.trend = ratio_term("TREND", fit.ols.coefficients(fit.design.trend_col), phi1, cov, idx1,
                          fit.design.trend_col, dof);
  }
  return lr;
}

Eigen::VectorXd build_ect(const PanelDataset& panel, const ArdlFit& fit) {
  LongRunEstimates lr = long_run(fit);
  Eigen::VectorXd dep = checked_column(panel, fit.spec.dep);
  const auto regs = fit.spec.regressors();
  std::vector<Eigen::VectorXd> reg_cols;
  for (const auto& name : regs) reg_cols.push_back(checked_column(panel, name));

  const Eigen::Index T = dep.size();
  Eigen::VectorXd raw(T);
  for (Eigen::Index t = 0; t < T; ++t) {
    double fitted = lr.intercept ? lr.intercept->estimate : 0.0;
    if (lr.trend) fitted += lr.trend->estimate * static_cast<double>(t);
    for (std::size_t j = 0; j < regs.size(); ++j) fitted += lr.terms[j].estimate * reg_cols[j](t);
    raw(t) = dep(t) - fitted;
  }
  Eigen::VectorXd lagged(T);
  lagged(0) = missing_value();
  for (Eigen::Index t = 1; t < T; ++t) lagged(t) = raw(t - 1);
  return lagged;
}

EcmFit fit_recm(const PanelDataset& panel, const ArdlSpec& spec,
                const Eigen::Ref<const Eigen::VectorXd>& ect_lagged, int hac_bandwidth) {
  spec.validate();
  Eigen::VectorXd dep = checked_column(panel, spec.dep);
  const auto regs = spec.regressors();
  std::vector<Eigen::VectorXd> reg_cols;
  for (const auto& name : regs) reg_cols.push_back(checked_column(panel, name));
  if (ect_lagged.size() != dep.size())
    throw std::invalid_argument("fit_recm: ECT series length must match the panel");

  const Eigen::Index T = dep.size();
  const int t0 = spec.max_order() + 1;
  const Eigen::Index n = T - t0;
  const bool intercept = spec.bound_case == BoundCase::III || spec.bound_case == BoundCase::IV;
  int width = (intercept ? 1 : 0) + spec.m + 1;  // +1 for the ECT column
  for (int nj : spec.reg_lags) width += nj + 1;
  if (n < width + 10)
    throw std::runtime_error("fit_recm: effective sample too small");

  EcmFit ecm;
  ecm.spec = spec;
  ecm.y.resize(n);
  ecm.X.resize(n, width);
  int c = 0;
  if (intercept) {
    ecm.col_names.push_back("C");
    ecm.X.col(c++).setOnes();
  }
  for (int i = 1; i <= spec.m; ++i) {
    ecm.col_names.push_back("d(" + spec.dep + ")" + lag_suffix(i));
    for (Eigen::Index r = 0; r < n; ++r) {
      Eigen::Index t = t0 + r;
      ecm.X(r, c) = dep(t - i) - dep(t - i - 1);
    }
    ++c;
  }
  for (std::size_t j = 0; j < regs.size(); ++j) {
    for (int i = 0; i <= spec.reg_lags[j]; ++i) {
      ecm.col_names.push_back("d(" + regs[j] + ")" + lag_suffix(i));
      for (Eigen::Index r = 0; r < n; ++r) {
        Eigen::Index t = t0 + r;
        ecm.X(r, c) = reg_cols[j](t - i) - reg_cols[j](t - i - 1);
      }
      ++c;
    }
  }
  ecm.ect_col = c;
  ecm.col_names.push_back("ECT(-1)");
  for (Eigen::Index r = 0; r < n; ++r) {
    double v = ect_lagged(t0 + r);
    if (is_missing(v)) throw std::runtime_error("fit_recm: ECT series missing inside the sample");
    ecm.X(r, c) = v;
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::Index t = t0 + r;
    ecm.y(r) = dep(t) - dep(t - 1);
  }

  ecm.ols = fit_design_or_name_columns(ecm.y, ecm.X, ecm.col_names);
  ecm.hac = newey_west_cov(ecm.ols, ecm.X, hac_bandwidth);
  ecm.lambda = ecm.ols.coefficients(ecm.ect_col);
  ecm.lambda_se = std::sqrt(ecm.hac.matrix(ecm.ect_col, ecm.ect_col));
  double dof = ecm.ols.nobs - ecm.ols.nparams;
  ecm.lambda_p = ecm.lambda_se > 0.0
                     ? student_t_two_sided(ecm.lambda / ecm.lambda_se, dof)
                     : 1.0;
  ecm.ect_series = ect_lagged;
  if (ecm.lambda >= 0.0)
    ecm.warnings.push_back("adjustment coefficient is non-negative; residuals are likely serially "
                           "correlated");
  else if (ecm.lambda <= -1.0)
    ecm.warnings.push_back("adjustment coefficient is below -1; the model is unstable over the "
                           "sample (possible structural break)");
  return ecm;
}

BoundCase choose_case(const PanelDataset& panel, const ArdlSpec& spec, int hac_bandwidth) {
  constexpr double kTrendLevel = 0.10;
  constexpr double kInterceptLevel = 0.05;

  // Trend first: keep it only if its level-equation t test (delta method over
  // the HAC covariance) rejects.
  ArdlSpec with_trend = spec;
  with_trend.bound_case = BoundCase::IV;
  ArdlFit fit4 = fit_unrestricted(panel, with_trend, hac_bandwidth);
  try {
    LongRunEstimates lr4 = long_run(fit4);
    if (lr4.trend && lr4.trend->p_value < kTrendLevel) return BoundCase::IV;
  } catch (const std::exception&) {
    int tc = fit4.design.trend_col;
    double t_se = std::sqrt(fit4.hac.matrix(tc, tc));
    if (t_se > 0.0) {
      double p = student_t_two_sided(fit4.ols.coefficients(tc) / t_se,
                                     fit4.ols.nobs - fit4.ols.nparams);
      if (p < kTrendLevel) return BoundCase::IV;
    }
  }

  ArdlSpec with_intercept = spec;
  with_intercept.bound_case = BoundCase::III;
  ArdlFit fit3 = fit_unrestricted(panel, with_intercept, hac_bandwidth);
  try {
    LongRunEstimates lr = long_run(fit3);
    Eigen::VectorXd ect = build_ect(panel, fit3);
    EcmFit recm = fit_recm(panel, with_intercept, ect, hac_bandwidth);
    int ic = 0;  // intercept is the first RECM column under case III
    double se = std::sqrt(recm.hac.matrix(ic, ic));
    double p_short = se > 0.0 ? student_t_two_sided(recm.ols.coefficients(ic) / se,
                                                    recm.ols.nobs - recm.ols.nparams)
                              : 1.0;
    if (p_short < kInterceptLevel) return BoundCase::III;
    if (lr.intercept && lr.intercept->p_value < kInterceptLevel) return BoundCase::II;
    return BoundCase::I;
  } catch (const std::exception&) {
    return BoundCase::III;  // keep the unrestricted intercept when tests are unavailable
  }
}

SearchMode parse_search_mode(const std::string& text) {
  if (text == "per_variable") return SearchMode::per_variable;
  if (text == "full") return SearchMode::full;
  throw std::invalid_argument("unknown search mode '" + text + "' (use per_variable|full)");
}

bool spec_preferred(double sic_a, const std::vector<int>& orders_a, double sic_b,
                    const std::vector<int>& orders_b) {
  if (sic_a < sic_b - kSicTie) return true;
  if (sic_a > sic_b + kSicTie) return false;
  int total_a = 0, total_b = 0;
  for (int o : orders_a) total_a += o;
  for (int o : orders_b) total_b += o;
  if (total_a != total_b) return total_a < total_b;
  return orders_a < orders_b;
}

namespace {

struct Candidate {
  double sic = std::numeric_limits<double>::infinity();
  int total = std::numeric_limits<int>::max();
  std::vector<int> orders;  // [m, n_1..n_J]
  bool valid = false;
};

bool better_than(const Candidate& a, const Candidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  return spec_preferred(a.sic, a.orders, b.sic, b.orders);
}

Candidate evaluate(const PanelDataset& panel, ArdlSpec spec, const std::vector<int>& orders) {
  spec.m = orders[0];
  spec.reg_lags.assign(orders.begin() + 1, orders.end());
  Candidate cand;
  cand.orders = orders;
  cand.total = 0;
  for (int o : orders) cand.total += o;
  try {
    ArdlDesign d = build_design(panel, spec, spec.max_lag);
    OlsFit fit = ols_fit(d.y, d.X);
    cand.sic = fit.sic;
    cand.valid = true;
  } catch (const std::exception&) {
    cand.valid = false;
  }
  return cand;
}

}  // namespace

ArdlSpec select_spec(const PanelDataset& panel, const std::string& dep,
                     const std::vector<std::string>& x_vars,
                     const std::vector<std::string>& z_vars, int max_lag, SearchMode mode) {
  if (max_lag < 1) throw std::invalid_argument("select_spec: need max_lag >= 1");
  ArdlSpec base;
  base.dep = dep;
  base.x_vars = x_vars;
  base.z_vars = z_vars;
  base.max_lag = max_lag;
  base.bound_case = BoundCase::III;  // candidates carry an intercept during search
  const std::size_t J = x_vars.size() + z_vars.size();
  if (J == 0) throw std::invalid_argument("select_spec: need at least one regressor");
  (void)checked_column(panel, dep);
  for (const auto& name : base.regressors()) (void)checked_column(panel, name);

  Candidate best;
  if (mode == SearchMode::full) {
    // odometer over [m: 1..max, n_j: 0..max]
    std::vector<int> orders(J + 1, 0);
    orders[0] = 1;
    bool done = false;
    while (!done) {
      Candidate cand = evaluate(panel, base, orders);
      if (better_than(cand, best)) best = cand;
      int pos = static_cast<int>(orders.size()) - 1;
      while (pos >= 0) {
        if (orders[pos] < max_lag) {
          ++orders[pos];
          break;
        }
        orders[pos] = pos == 0 ? 1 : 0;
        --pos;
      }
      done = pos < 0;
    }
  } else {
    std::vector<int> current(J + 1, 0);
    current[0] = 1;
    best = evaluate(panel, base, current);
    for (int pass = 0; pass < 10; ++pass) {
      bool changed = false;
      for (std::size_t coord = 0; coord < current.size(); ++coord) {
        int low = coord == 0 ? 1 : 0;
        Candidate coord_best;
        for (int v = low; v <= max_lag; ++v) {
          std::vector<int> trial = current;
          trial[coord] = v;
          Candidate cand = evaluate(panel, base, trial);
          if (better_than(cand, coord_best)) coord_best = cand;
        }
        if (coord_best.valid && better_than(coord_best, best)) {
          best = coord_best;
          current = coord_best.orders;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  if (!best.valid) throw std::runtime_error("select_spec: no candidate specification of full rank");
  ArdlSpec out = base;
  out.m = best.orders[0];
  out.reg_lags.assign(best.orders.begin() + 1, best.orders.end());
  return out;
}

}  // namespace ardl
