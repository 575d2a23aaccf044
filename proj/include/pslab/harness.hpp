#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pslab/distribution.hpp"
#include "pslab/op_counter.hpp"
#include "pslab/sort.hpp"

namespace pslab {

/// One timed, instrumented sort of one generated array.
struct TrialRecord {
  Algorithm algorithm{Algorithm::Partition};
  DistributionSpec spec{dist::Uniform01{}};
  std::size_t n{0};
  std::uint64_t seed{0};
  std::size_t replicate{0};
  double elapsed_s{0.0};
  std::uint64_t comparisons{0};
  std::uint64_t swaps{0};
  std::uint64_t moves{0};

  [[nodiscard]] std::optional<std::int64_t> m() const {
    if (const auto* b = std::get_if<dist::Binomial>(&spec)) return b->m;
    return std::nullopt;
  }
  [[nodiscard]] std::optional<double> p() const {
    if (const auto* b = std::get_if<dist::Binomial>(&spec)) return b->p;
    return std::nullopt;
  }
  [[nodiscard]] OpCounter counter() const { return {comparisons, swaps, moves}; }

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// ---------------------------------------------------------------------------
// Seed policy

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hash of the design point: distribution, its parameters and the size.
inline std::uint64_t level_hash(const DistributionSpec& spec, std::size_t n) {
  std::uint64_t h = fnv1a64(dist_name(spec));
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  if (const auto* b = std::get_if<dist::Binomial>(&spec)) {
    h = mix64(h ^ static_cast<std::uint64_t>(b->m));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(b->p));
  }
  return h;
}

/// seed = mix64(base ^ hash(algorithm) ^ hash(levels) ^ replicate).
inline std::uint64_t derive_seed(std::uint64_t base, Algorithm alg, const DistributionSpec& spec,
                                 std::size_t n, std::uint64_t replicate) {
  return mix64(base ^ fnv1a64(to_string(alg)) ^ level_hash(spec, n) ^ replicate);
}

/// Replicate index reserved for the discarded warmup run.
inline constexpr std::uint64_t kWarmupReplicate = std::numeric_limits<std::uint64_t>::max();

// ---------------------------------------------------------------------------
// Trials

struct Measurement {
  OpCounter counter;
  double elapsed_s{0.0};
};

/// Times `readings` sorts of fresh copies of `keys` and reports the mean
/// elapsed time. Counts come from the first reading; every reading sorts the
/// same array so they are identical. Copying happens outside the timed
/// region.
inline Measurement measure_sort(Algorithm alg, const KeyArray& keys, std::size_t readings = 1) {
  if (readings == 0) throw std::invalid_argument("measure_sort: readings must be >= 1");
  return std::visit(
      [&](const auto& source) {
        Measurement m;
        double total = 0.0;
        for (std::size_t i = 0; i < readings; ++i) {
          auto outcome = timed_sort(alg, source);
          if (i == 0) m.counter = outcome.counter;
          total += outcome.elapsed_s;
        }
        m.elapsed_s = total / static_cast<double>(readings);
        return m;
      },
      keys);
}

/// Generates the array (untimed) from `seed`, then times the sort.
/// `readings` > 1 repeats the timing on the same array and averages it.
inline TrialRecord run_trial(Algorithm alg, const DistributionSpec& spec, std::size_t n,
                             std::uint64_t seed, std::size_t replicate = 0,
                             std::size_t readings = 1) {
  Rng rng(seed);
  const KeyArray keys = generate_array(spec, n, rng);
  const Measurement m = measure_sort(alg, keys, readings);
  return TrialRecord{alg,          spec, n, seed, replicate, m.elapsed_s, m.counter.comparisons,
                     m.counter.swaps, m.counter.moves};
}

// ---------------------------------------------------------------------------
// Size grids

struct GridPlan {
  Algorithm algorithm{Algorithm::Partition};
  DistributionSpec spec{dist::Cauchy{}};
  std::vector<std::size_t> n_values;
  std::size_t replicates{50};
  std::uint64_t base_seed{0};
  std::size_t readings{1};
  bool warmup{true};

  void validate() const {
    if (replicates < 1) throw std::invalid_argument("grid: replicates must be >= 1");
    if (readings < 1) throw std::invalid_argument("grid: readings must be >= 1");
    if (n_values.empty()) throw std::invalid_argument("grid: no n values");
    if (std::adjacent_find(n_values.begin(), n_values.end(), std::greater_equal<>{}) != n_values.end()) {
      throw std::invalid_argument("grid: n values must be strictly increasing");
    }
    pslab::validate(spec);
  }
};

/// Per-n replicate statistics. Means are what gets compared to published
/// tables; the median is informational.
struct GridSummaryRow {
  std::size_t n{0};
  std::size_t replicates{0};
  double mean_elapsed_s{0.0};
  double median_elapsed_s{0.0};
  double mean_comparisons{0.0};
  double mean_swaps{0.0};
  double mean_moves{0.0};
};

struct GridResult {
  std::vector<TrialRecord> records;
  std::vector<GridSummaryRow> summary;
};

inline double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

/// Summarises one n-value's replicate records.
inline GridSummaryRow summarize(std::size_t n, std::span<const TrialRecord> group) {
  GridSummaryRow row;
  row.n = n;
  row.replicates = group.size();
  if (group.empty()) return row;
  std::vector<double> times;
  times.reserve(group.size());
  for (const auto& r : group) {
    row.mean_elapsed_s += r.elapsed_s;
    row.mean_comparisons += static_cast<double>(r.comparisons);
    row.mean_swaps += static_cast<double>(r.swaps);
    row.mean_moves += static_cast<double>(r.moves);
    times.push_back(r.elapsed_s);
  }
  const auto count = static_cast<double>(group.size());
  row.mean_elapsed_s /= count;
  row.mean_comparisons /= count;
  row.mean_swaps /= count;
  row.mean_moves /= count;
  row.median_elapsed_s = median_of(std::move(times));
  return row;
}

/// Runs `replicates` trials per n value, preceded by one discarded warmup
/// trial per n. Trials run strictly sequentially on the calling thread.
inline GridResult run_grid(const GridPlan& plan) {
  plan.validate();
  GridResult result;
  result.records.reserve(plan.n_values.size() * plan.replicates);
  for (const std::size_t n : plan.n_values) {
    if (plan.warmup) {
      (void)run_trial(plan.algorithm, plan.spec, n,
                      derive_seed(plan.base_seed, plan.algorithm, plan.spec, n, kWarmupReplicate));
    }
    const std::size_t first = result.records.size();
    for (std::size_t r = 0; r < plan.replicates; ++r) {
      const auto seed = derive_seed(plan.base_seed, plan.algorithm, plan.spec, n, r);
      result.records.push_back(run_trial(plan.algorithm, plan.spec, n, seed, r, plan.readings));
    }
    result.summary.push_back(
        summarize(n, std::span<const TrialRecord>(result.records).subspan(first)));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Factorial designs

/// Fully crossed n x m x p design with Binomial(m, p) inputs.
struct FactorialPlan {
  Algorithm algorithm{Algorithm::Partition};
  std::vector<std::size_t> n_levels;
  std::vector<std::int64_t> m_levels;
  std::vector<double> p_levels;
  std::size_t replicates{3};
  std::uint64_t base_seed{0};
  std::size_t readings{1};
  bool warmup{true};

  void validate() const {
    auto check = [](const auto& levels, const char* name) {
      if (levels.size() < 2) {
        throw std::invalid_argument(std::string("factorial: need >= 2 levels for ") + name);
      }
      auto sorted = levels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string("factorial: duplicate level for ") + name);
      }
    };
    check(n_levels, "n");
    check(m_levels, "m");
    check(p_levels, "p");
    if (replicates < 1) throw std::invalid_argument("factorial: replicates must be >= 1");
    if (readings < 1) throw std::invalid_argument("factorial: readings must be >= 1");
    for (const auto m : m_levels) pslab::validate(dist::Binomial{m, 0.5});
    for (const auto p : p_levels) pslab::validate(dist::Binomial{1, p});
  }
};

/// One record per (design point, replicate), ordered n, m, p, replicate.
inline std::vector<TrialRecord> run_factorial(const FactorialPlan& plan) {
  plan.validate();
  std::vector<TrialRecord> records;
  records.reserve(plan.n_levels.size() * plan.m_levels.size() * plan.p_levels.size() *
                  plan.replicates);
  for (const std::size_t n : plan.n_levels) {
    bool warmed = !plan.warmup;
    for (const std::int64_t m : plan.m_levels) {
      for (const double p : plan.p_levels) {
        const DistributionSpec spec = dist::Binomial{m, p};
        if (!warmed) {
          (void)run_trial(plan.algorithm, spec, n,
                          derive_seed(plan.base_seed, plan.algorithm, spec, n, kWarmupReplicate));
          warmed = true;
        }
        for (std::size_t r = 0; r < plan.replicates; ++r) {
          const auto seed = derive_seed(plan.base_seed, plan.algorithm, spec, n, r);
          records.push_back(run_trial(plan.algorithm, spec, n, seed, r, plan.readings));
        }
      }
    }
  }
  return records;
}

}  // namespace pslab
