#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pslab/csv.hpp"
#include "pslab/stats/regression.hpp"

namespace pslab {

/// Run settings shared by the command-line tools. Every field has a default
/// and can be set from a `key=value` file (one pair per line, `#` comments)
/// or overridden by a flag.
///
///   seed            base seed for the seed policy             (0)
///   grid_reps       replicates per n in grid mode             (50)
///   factorial_reps  replicates per cell in factorial mode     (3)
///   readings        timed readings averaged into one record   (1)
///   out             output path; empty means standard output  ("")
///   epsilon         degree-selection threshold on adj. R^2    (0.005)
///   n_levels, m_levels, p_levels   comma-separated factor levels
struct Config {
  std::uint64_t seed{0};
  std::size_t grid_reps{50};
  std::size_t factorial_reps{3};
  std::size_t readings{1};
  std::string out;
  double epsilon{stats::kDefaultDegreeEpsilon};
  std::vector<std::size_t> n_levels{20000, 40000, 60000};
  std::vector<std::int64_t> m_levels{100, 1000, 1500};
  std::vector<double> p_levels{0.2, 0.5, 0.8};
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

template <typename T>
T config_number(std::string_view text, std::size_t line, std::string_view key) {
  const auto v = parse_number<T>(trim(text));
  if (!v) {
    throw ConfigError("config line " + std::to_string(line) + ": bad value for '" + std::string(key) + "'");
  }
  return *v;
}

template <typename T>
std::vector<T> config_list(std::string_view text, std::size_t line, std::string_view key) {
  std::vector<T> values;
  for (const auto item : split_fields(text)) values.push_back(config_number<T>(item, line, key));
  return values;
}

}  // namespace detail

/// Applies the pairs in `in` on top of `cfg`. Unknown keys are errors.
inline void load_config(std::istream& in, Config& cfg) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = detail::trim(strip_cr(raw));
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line) + ": expected key=value");
    }
    const auto key = detail::trim(text.substr(0, eq));
    const auto value = detail::trim(text.substr(eq + 1));
    if (key == "seed") cfg.seed = detail::config_number<std::uint64_t>(value, line, key);
    else if (key == "grid_reps") cfg.grid_reps = detail::config_number<std::size_t>(value, line, key);
    else if (key == "factorial_reps") cfg.factorial_reps = detail::config_number<std::size_t>(value, line, key);
    else if (key == "readings") cfg.readings = detail::config_number<std::size_t>(value, line, key);
    else if (key == "out") cfg.out = std::string(value);
    else if (key == "epsilon") cfg.epsilon = detail::config_number<double>(value, line, key);
    else if (key == "n_levels") cfg.n_levels = detail::config_list<std::size_t>(value, line, key);
    else if (key == "m_levels") cfg.m_levels = detail::config_list<std::int64_t>(value, line, key);
    else if (key == "p_levels") cfg.p_levels = detail::config_list<double>(value, line, key);
    else throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'");
  }
}

inline void load_config(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  load_config(in, cfg);
}

}  // namespace pslab
