#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pslab/stats/fdist.hpp"

namespace pslab::stats {

/// One response at level indices (a, b, c) of the three factors.
struct Observation {
  std::size_t a{0};
  std::size_t b{0};
  std::size_t c{0};
  double y{0.0};
};

struct AnovaRow {
  std::string source;
  std::size_t df{0};
  double seq_ss{0.0};
  double adj_ss{0.0};
  double ms{0.0};
  /// NaN when undefined (Error/Total rows, no error term, 0/0); +inf when the
  /// error mean square is exactly zero.
  double f{std::numeric_limits<double>::quiet_NaN()};
  double p{std::numeric_limits<double>::quiet_NaN()};
};

struct AnovaTable {
  std::vector<AnovaRow> rows;
  std::size_t replicates{0};
  double s{std::numeric_limits<double>::quiet_NaN()};
  double r_squared{0.0};
  double adj_r_squared{0.0};

  /// Row by source label; throws std::out_of_range if absent.
  [[nodiscard]] const AnovaRow& row(std::string_view source) const {
    for (const auto& r : rows) {
      if (r.source == source) return r;
    }
    throw std::out_of_range("anova: no row '" + std::string(source) + "'");
  }
};

struct CellCount {
  std::size_t a{0};
  std::size_t b{0};
  std::size_t c{0};
  std::size_t count{0};
};

/// Cells do not all hold the same number of observations.
class UnbalancedDesignError : public std::runtime_error {
 public:
  explicit UnbalancedDesignError(std::vector<CellCount> cells)
      : std::runtime_error("anova: unbalanced design (unequal replicates per cell)"),
        cells_(std::move(cells)) {}

  [[nodiscard]] const std::vector<CellCount>& cells() const noexcept { return cells_; }

 private:
  std::vector<CellCount> cells_;
};

/// Fixed-effects ANOVA for a fully crossed, balanced three-factor design
/// with r replicates per cell. Responses are shifted by the first observation
/// and every sum of squares is formed from deviations of (cell, marginal,
/// grand) means, which is the textbook G^2/N decomposition without its
/// cancellation. In a balanced design sequential and adjusted SS coincide.
///
/// With r = 1 there is no Error row and F/P stay undefined.
inline AnovaTable anova_3factor(std::span<const Observation> obs,
                                const std::array<std::string, 3>& names = {"n", "m", "p"}) {
  if (obs.empty()) throw std::invalid_argument("anova: no observations");
  std::size_t la = 0, lb = 0, lc = 0;
  for (const auto& o : obs) {
    la = std::max(la, o.a + 1);
    lb = std::max(lb, o.b + 1);
    lc = std::max(lc, o.c + 1);
  }
  if (la < 2 || lb < 2 || lc < 2) throw std::invalid_argument("anova: every factor needs >= 2 levels");

  auto cell_index = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * lb + j) * lc + k; };
  const std::size_t cells = la * lb * lc;
  std::vector<std::vector<double>> by_cell(cells);
  const double shift = obs.front().y;
  for (const auto& o : obs) by_cell[cell_index(o.a, o.b, o.c)].push_back(o.y - shift);

  const std::size_t r = by_cell.front().size();
  bool balanced = r > 0;
  for (const auto& cell : by_cell) balanced = balanced && cell.size() == r;
  if (!balanced) {
    std::vector<CellCount> counts;
    for (std::size_t i = 0; i < la; ++i)
      for (std::size_t j = 0; j < lb; ++j)
        for (std::size_t k = 0; k < lc; ++k) counts.push_back({i, j, k, by_cell[cell_index(i, j, k)].size()});
    throw UnbalancedDesignError(std::move(counts));
  }

  // Cell means and within-cell SS, each cell shifted by its own first value
  // so identical replicates give exactly zero.
  std::vector<double> cell_mean(cells);
  double ss_error = 0.0;
  for (std::size_t q = 0; q < cells; ++q) {
    const auto& cell = by_cell[q];
    const double base = cell.front();
    double dsum = 0.0;
    for (const double v : cell) dsum += v - base;
    const double dmean = dsum / static_cast<double>(r);
    for (const double v : cell) ss_error += (v - base - dmean) * (v - base - dmean);
    cell_mean[q] = base + dmean;
  }

  std::vector<double> ma(la, 0.0), mb(lb, 0.0), mc(lc, 0.0);
  std::vector<double> mab(la * lb, 0.0), mac(la * lc, 0.0), mbc(lb * lc, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < la; ++i)
    for (std::size_t j = 0; j < lb; ++j)
      for (std::size_t k = 0; k < lc; ++k) {
        const double m = cell_mean[cell_index(i, j, k)];
        ma[i] += m;
        mb[j] += m;
        mc[k] += m;
        mab[i * lb + j] += m;
        mac[i * lc + k] += m;
        mbc[j * lc + k] += m;
        grand += m;
      }
  for (auto& v : ma) v /= static_cast<double>(lb * lc);
  for (auto& v : mb) v /= static_cast<double>(la * lc);
  for (auto& v : mc) v /= static_cast<double>(la * lb);
  for (auto& v : mab) v /= static_cast<double>(lc);
  for (auto& v : mac) v /= static_cast<double>(lb);
  for (auto& v : mbc) v /= static_cast<double>(la);
  grand /= static_cast<double>(cells);

  const auto rr = static_cast<double>(r);
  auto sq = [](double v) { return v * v; };
  double ss_a = 0, ss_b = 0, ss_c = 0, ss_ab = 0, ss_ac = 0, ss_bc = 0, ss_abc = 0;
  for (std::size_t i = 0; i < la; ++i) ss_a += sq(ma[i] - grand);
  for (std::size_t j = 0; j < lb; ++j) ss_b += sq(mb[j] - grand);
  for (std::size_t k = 0; k < lc; ++k) ss_c += sq(mc[k] - grand);
  ss_a *= rr * static_cast<double>(lb * lc);
  ss_b *= rr * static_cast<double>(la * lc);
  ss_c *= rr * static_cast<double>(la * lb);
  for (std::size_t i = 0; i < la; ++i)
    for (std::size_t j = 0; j < lb; ++j) ss_ab += sq(mab[i * lb + j] - ma[i] - mb[j] + grand);
  for (std::size_t i = 0; i < la; ++i)
    for (std::size_t k = 0; k < lc; ++k) ss_ac += sq(mac[i * lc + k] - ma[i] - mc[k] + grand);
  for (std::size_t j = 0; j < lb; ++j)
    for (std::size_t k = 0; k < lc; ++k) ss_bc += sq(mbc[j * lc + k] - mb[j] - mc[k] + grand);
  ss_ab *= rr * static_cast<double>(lc);
  ss_ac *= rr * static_cast<double>(lb);
  ss_bc *= rr * static_cast<double>(la);
  for (std::size_t i = 0; i < la; ++i)
    for (std::size_t j = 0; j < lb; ++j)
      for (std::size_t k = 0; k < lc; ++k) {
        ss_abc += sq(cell_mean[cell_index(i, j, k)] - mab[i * lb + j] - mac[i * lc + k] - mbc[j * lc + k] +
                     ma[i] + mb[j] + mc[k] - grand);
      }
  ss_abc *= rr;

  double ss_total = 0.0;
  for (const auto& cell : by_cell)
    for (const double v : cell) ss_total += sq(v - grand);

  const std::size_t df_error = cells * (r - 1);
  const std::size_t df_total = cells * r - 1;
  const double ms_error = df_error > 0 ? ss_error / static_cast<double>(df_error) : 0.0;

  AnovaTable table;
  table.replicates = r;
  auto effect = [&](std::string label, std::size_t df, double ss) {
    AnovaRow row{std::move(label), df, ss, ss, ss / static_cast<double>(df)};
    if (df_error > 0) {
      if (ms_error > 0.0) {
        row.f = row.ms / ms_error;
        row.p = f_upper_tail(row.f, static_cast<double>(df), static_cast<double>(df_error));
      } else if (row.ms > 0.0) {
        row.f = std::numeric_limits<double>::infinity();
        row.p = 0.0;
      } else {
        row.p = 1.0;  // 0 / 0
      }
    }
    table.rows.push_back(std::move(row));
  };
  const auto& [na, nb, nc] = names;
  effect(na, la - 1, ss_a);
  effect(nb, lb - 1, ss_b);
  effect(nc, lc - 1, ss_c);
  effect(na + "*" + nb, (la - 1) * (lb - 1), ss_ab);
  effect(na + "*" + nc, (la - 1) * (lc - 1), ss_ac);
  effect(nb + "*" + nc, (lb - 1) * (lc - 1), ss_bc);
  effect(na + "*" + nb + "*" + nc, (la - 1) * (lb - 1) * (lc - 1), ss_abc);
  if (df_error > 0) {
    table.rows.push_back({"Error", df_error, ss_error, ss_error, ms_error});
    table.s = std::sqrt(ms_error);
  }
  table.rows.push_back({"Total", df_total, ss_total, ss_total, std::numeric_limits<double>::quiet_NaN()});
  table.rows.back().ms = std::numeric_limits<double>::quiet_NaN();

  if (ss_total > 0.0) {
    table.r_squared = 1.0 - ss_error / ss_total;
    table.adj_r_squared =
        df_error > 0 ? 1.0 - ms_error / (ss_total / static_cast<double>(df_total)) : table.r_squared;
  }
  return table;
}

/// Maps raw factor values to level indices 0..L-1 in ascending order.
inline std::vector<std::size_t> level_indices(std::span<const double> values,
                                              std::vector<double>* levels_out = nullptr) {
  std::vector<double> levels(values.begin(), values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::size_t> idx;
  idx.reserve(values.size());
  for (const double v : values) {
    idx.push_back(static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), v) - levels.begin()));
  }
  if (levels_out) *levels_out = std::move(levels);
  return idx;
}

/// Builds observations from three factor columns and a response column.
inline std::vector<Observation> observations_from_columns(std::span<const double> a, std::span<const double> b,
                                                          std::span<const double> c, std::span<const double> y) {
  if (a.size() != y.size() || b.size() != y.size() || c.size() != y.size()) {
    throw std::invalid_argument("anova: column lengths differ");
  }
  const auto ia = level_indices(a);
  const auto ib = level_indices(b);
  const auto ic = level_indices(c);
  std::vector<Observation> obs(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) obs[i] = {ia[i], ib[i], ic[i], y[i]};
  return obs;
}

namespace detail {
inline std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}
}  // namespace detail

/// Plain-text table: Source, DF, Seq SS, Adj SS, Adj MS, F, P.
inline void print_anova(std::ostream& out, const AnovaTable& t) {
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %4s %12s %12s %12s %14s %6s\n", "Source", "DF", "Seq SS", "Adj SS",
                "Adj MS", "F", "P");
  out << line;
  for (const auto& r : t.rows) {
    const bool total = r.source == "Total";
    std::snprintf(line, sizeof line, "%-8s %4zu %12s %12s %12s %14s %6s\n", r.source.c_str(), r.df,
                  detail::fixed(r.seq_ss, 6).c_str(), total ? "" : detail::fixed(r.adj_ss, 6).c_str(),
                  detail::fixed(r.ms, 6).c_str(), detail::fixed(r.f, 2).c_str(), detail::fixed(r.p, 3).c_str());
    out << line;
  }
  out << "\nS = " << detail::fixed(t.s, 9) << "   R-Sq = " << detail::fixed(100.0 * t.r_squared, 2)
      << "%   R-Sq(adj) = " << detail::fixed(100.0 * t.adj_r_squared, 2) << "%\n";
}

}  // namespace pslab::stats
