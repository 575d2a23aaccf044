#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "pslab/csv.hpp"
#include "pslab/fixtures.hpp"
#include "pslab/harness.hpp"
#include "pslab/stats/anova.hpp"
#include "pslab/stats/regression.hpp"

namespace pslab {

/// Thresholds the published tables are checked against.
namespace thresholds {
inline constexpr double kTable1MinR2 = 0.98;
inline constexpr double kTable3SsNRelTol = 0.01;
inline constexpr double kTable3SsMRelTol = 0.03;
inline constexpr double kTable3SsPRelTol = 0.20;
inline constexpr double kTable4MinR2 = 0.95;
inline constexpr double kTable5VertexLo = 0.35;
inline constexpr double kTable5VertexHi = 0.65;
inline constexpr double kFactorialAlpha = 0.01;
}  // namespace thresholds

struct Check {
  std::string name;
  bool pass{false};
  std::string detail;
};

struct ReproReport {
  std::string title;
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

inline void print_report(std::ostream& out, const ReproReport& r) {
  out << r.title << '\n';
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << (r.pass() ? "PASS" : "FAIL") << '\n';
}

inline bool within_rel(double value, double target, double tol) {
  return std::abs(value - target) <= tol * std::abs(target);
}

inline std::string num(double v) { return format_double(v); }

/// Strictly increasing on a dense grid of [lo, hi].
inline bool increasing_on(const std::vector<double>& coefficients, double lo, double hi, int steps = 2800) {
  double prev = stats::poly_eval(coefficients, lo);
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    const double v = stats::poly_eval(coefficients, x);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

inline ReproReport reproduce_table1() {
  ReproReport rep{"Table 1: mean time vs n log2 n (Cauchy inputs)", {}};
  const auto t = Table::parse_text(fixtures::kTable1Csv);
  const auto fit = stats::fit_nlogn(t.numeric("n"), t.numeric("time"));
  rep.add("R^2 >= 0.98", fit.r_squared >= thresholds::kTable1MinR2, "R^2 = " + num(fit.r_squared));
  rep.add("slope > 0", fit.coefficients[1] > 0.0, "b1 = " + num(fit.coefficients[1]));
  return rep;
}

/// Table 2 cell means expanded to `replicates` identical copies per cell.
inline stats::AnovaTable table2_anova(std::size_t replicates = 3) {
  const auto t = Table::parse_text(fixtures::kTable2Csv);
  std::vector<double> n, m, p, y;
  const auto cn = t.numeric("n"), cm = t.numeric("m"), cp = t.numeric("p"), cy = t.numeric("time");
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t r = 0; r < replicates; ++r) {
      n.push_back(cn[i]);
      m.push_back(cm[i]);
      p.push_back(cp[i]);
      y.push_back(cy[i]);
    }
  }
  return stats::anova_3factor(stats::observations_from_columns(n, m, p, y));
}

inline ReproReport reproduce_table3() {
  ReproReport rep{"Table 3: 3^3 factorial ANOVA on Table 2 cell means (r = 3)", {}};
  const auto table = table2_anova(3);
  bool df_ok = table.rows.size() == fixtures::kTable3.size();
  for (std::size_t i = 0; df_ok && i < table.rows.size(); ++i) {
    df_ok = table.rows[i].source == fixtures::kTable3[i].source && table.rows[i].df == fixtures::kTable3[i].df;
  }
  rep.add("df column 2,2,2,4,4,4,8,54,80", df_ok);
  const double ss_n = table.row("n").seq_ss, ss_m = table.row("m").seq_ss, ss_p = table.row("p").seq_ss;
  const double ss_nm = table.row("n*m").seq_ss;
  rep.add("SS_n within 1% of 0.731167", within_rel(ss_n, 0.731167, thresholds::kTable3SsNRelTol), num(ss_n));
  rep.add("SS_m within 3% of 0.056680", within_rel(ss_m, 0.056680, thresholds::kTable3SsMRelTol), num(ss_m));
  rep.add("SS_p within 20% of 0.001440", within_rel(ss_p, 0.001440, thresholds::kTable3SsPRelTol), num(ss_p));
  rep.add("SS_n > SS_m > SS_n*m > SS_p", ss_n > ss_m && ss_m > ss_nm && ss_nm > ss_p);
  bool seq_adj = true;
  for (const auto& r : table.rows) seq_adj = seq_adj && r.seq_ss == r.adj_ss;
  rep.add("Seq SS = Adj SS", seq_adj);
  bool structural = table.row("Error").ms == 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    structural = structural && std::isinf(table.rows[i].f) && table.rows[i].p == 0.0;
  }
  rep.add("MS_error = 0 -> F = +inf, P = 0", structural);
  return rep;
}

inline ReproReport reproduce_table4() {
  ReproReport rep{"Table 4: mean time vs m (n = 50000, p = 0.5)", {}};
  const auto t = Table::parse_text(fixtures::kTable4Csv);
  const auto x = t.numeric("m"), y = t.numeric("time");
  const auto cubic = stats::fit_poly(x, y, 3);
  rep.add("cubic R^2 >= 0.95", cubic.r_squared >= thresholds::kTable4MinR2, "R^2 = " + num(cubic.r_squared));
  rep.add("cubic increasing on [100, 1500]", increasing_on(cubic.coefficients, 100.0, 1500.0));
  const auto quartic = stats::fit_poly(x, y, 4);
  rep.add("quartic R^2 >= cubic R^2", quartic.r_squared >= cubic.r_squared,
          "R^2(4) = " + num(quartic.r_squared));
  return rep;
}

inline ReproReport reproduce_table5() {
  ReproReport rep{"Table 5: mean time vs p (n = 50000, m = 1000)", {}};
  const auto t = Table::parse_text(fixtures::kTable5Csv);
  const auto fit = stats::fit_poly(t.numeric("p"), t.numeric("time"), 2);
  const double lead = fit.coefficients[2];
  const double vertex = -fit.coefficients[1] / (2.0 * lead);
  rep.add("leading coefficient < 0", lead < 0.0, num(lead));
  rep.add("vertex in [0.35, 0.65]", vertex >= thresholds::kTable5VertexLo && vertex <= thresholds::kTable5VertexHi,
          "vertex = " + num(vertex));
  return rep;
}

/// Numeric response of a record by column name.
inline double response_of(const TrialRecord& r, std::string_view column) {
  if (column == "elapsed_s") return r.elapsed_s;
  if (column == "comparisons") return static_cast<double>(r.comparisons);
  if (column == "swaps") return static_cast<double>(r.swaps);
  if (column == "moves") return static_cast<double>(r.moves);
  throw std::invalid_argument("unknown response column '" + std::string(column) + "'");
}

/// ANOVA of binomial factorial records on factors (n, m, p).
inline stats::AnovaTable factorial_anova(const std::vector<TrialRecord>& records, std::string_view response) {
  std::vector<double> n, m, p, y;
  for (const auto& r : records) {
    if (!r.m() || !r.p()) throw std::invalid_argument("factorial records must use binomial inputs");
    n.push_back(static_cast<double>(r.n));
    m.push_back(static_cast<double>(*r.m()));
    p.push_back(*r.p());
    y.push_back(response_of(r, response));
  }
  return stats::anova_3factor(stats::observations_from_columns(n, m, p, y));
}

/// Live factorial run; main effects n and m must be significant. The other
/// p-values are reported without a threshold.
inline ReproReport reproduce_fresh_factorial(const FactorialPlan& plan, stats::AnovaTable* table_out = nullptr) {
  ReproReport rep{"Fresh factorial: " + std::to_string(plan.n_levels.size()) + "x" +
                      std::to_string(plan.m_levels.size()) + "x" + std::to_string(plan.p_levels.size()) +
                      ", r = " + std::to_string(plan.replicates) + ", response = comparisons",
                  {}};
  const auto records = run_factorial(plan);
  const auto table = factorial_anova(records, "comparisons");
  for (const auto* source : {"n", "m"}) {
    const auto& row = table.row(source);
    rep.add(std::string("main effect ") + source + " significant (P < 0.01)", row.p < thresholds::kFactorialAlpha,
            "P = " + num(row.p));
  }
  if (table_out) *table_out = table;
  return rep;
}

}  // namespace pslab
