#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "pslab/distribution.hpp"
#include "pslab/harness.hpp"

namespace pslab {

inline constexpr std::string_view kTrialCsvHeader =
    "algorithm,dist,n,m,p,seed,replicate,elapsed_s,comparisons,swaps,moves";

/// Malformed CSV input. `line()` is 1-based and counts the header.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, std::string column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column '" + column + "': " + what),
        line_(line),
        column_(std::move(column)) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] const std::string& column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  if (text.empty()) return std::nullopt;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (*first == '+') ++first;
  }
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

/// Writes the header and one LF-terminated row per record.
inline void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kTrialCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << dist_name(r.spec) << ',' << r.n << ',';
    if (const auto m = r.m()) out << *m;
    out << ',';
    if (const auto p = r.p()) out << format_double(*p);
    out << ',' << r.seed << ',' << r.replicate << ',' << format_double(r.elapsed_s) << ','
        << r.comparisons << ',' << r.swaps << ',' << r.moves << '\n';
  }
}

inline std::vector<TrialRecord> read_csv(std::istream& in) {
  static constexpr std::string_view kColumns[] = {"algorithm", "dist",      "n",         "m",
                                                  "p",         "seed",      "replicate", "elapsed_s",
                                                  "comparisons", "swaps",   "moves"};
  std::string raw;
  std::size_t line_no = 1;
  if (!std::getline(in, raw)) throw CsvError(1, "algorithm", "missing header");
  if (strip_cr(raw) != kTrialCsvHeader) throw CsvError(1, "algorithm", "unexpected header");

  std::vector<TrialRecord> records;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != std::size(kColumns)) {
      throw CsvError(line_no, std::string(kColumns[std::min(f.size(), std::size(kColumns) - 1)]),
                     "expected 11 fields, found " + std::to_string(f.size()));
    }
    auto fail = [&](std::size_t col, const char* why) -> CsvError {
      return CsvError(line_no, std::string(kColumns[col]), why);
    };
    auto number = [&]<typename T>(std::size_t col, T) {
      const auto v = parse_number<T>(f[col]);
      if (!v) throw fail(col, "not a number");
      return *v;
    };

    TrialRecord r;
    const auto alg = parse_algorithm(f[0]);
    if (!alg) throw fail(0, "unknown algorithm");
    r.algorithm = *alg;
    const bool binomial = f[1] == "binomial";
    std::optional<DistributionSpec> spec;
    try {
      spec = binomial ? make_distribution(f[1], number(3, std::int64_t{}), number(4, double{}))
                      : make_distribution(f[1]);
    } catch (const std::invalid_argument& e) {
      throw fail(3, e.what());
    }
    if (!spec) throw fail(1, "unknown distribution");
    if (!binomial && (!f[3].empty() || !f[4].empty())) throw fail(3, "m/p set for non-binomial");
    r.spec = *spec;
    r.n = number(2, std::size_t{});
    r.seed = number(5, std::uint64_t{});
    r.replicate = number(6, std::size_t{});
    r.elapsed_s = number(7, double{});
    if (!(r.elapsed_s >= 0.0)) throw fail(7, "elapsed_s must be >= 0");
    r.comparisons = number(8, std::uint64_t{});
    r.swaps = number(9, std::uint64_t{});
    r.moves = number(10, std::uint64_t{});
    records.push_back(std::move(r));
  }
  return records;
}

inline void write_csv(const std::string& path, const std::vector<TrialRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(out, records);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<TrialRecord> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

/// A CSV file with a header row, kept as text; numeric columns are parsed on
/// request. Used by the fitting and ANOVA front ends, which take arbitrary
/// column names.
class Table {
 public:
  static Table parse(std::istream& in) {
    Table t;
    std::string raw;
    if (!std::getline(in, raw)) throw CsvError(1, "", "missing header");
    for (const auto name : split_fields(strip_cr(raw))) t.columns_.emplace_back(name);
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = strip_cr(raw);
      if (line.empty()) continue;
      auto fields = split_fields(line);
      if (fields.size() != t.columns_.size()) {
        throw CsvError(line_no, "", "expected " + std::to_string(t.columns_.size()) + " fields");
      }
      t.rows_.emplace_back(fields.begin(), fields.end());
      t.lines_.push_back(line_no);
    }
    return t;
  }

  static Table parse_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
  }

  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }

  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (columns_[i] == name) return i;
    }
    return std::nullopt;
  }

  /// Numeric values of column `name`. Throws std::out_of_range when the
  /// column is missing and CsvError on a non-numeric cell.
  [[nodiscard]] std::vector<double> numeric(std::string_view name) const {
    const auto col = index_of(name);
    if (!col) throw std::out_of_range("missing column '" + std::string(name) + "'");
    std::vector<double> values;
    values.reserve(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto v = parse_number<double>(rows_[r][*col]);
      if (!v) throw CsvError(lines_[r], std::string(name), "not a number");
      values.push_back(*v);
    }
    return values;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

}  // namespace pslab
