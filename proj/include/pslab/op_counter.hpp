#pragma once

#include <cstdint>

namespace pslab {

/// Relative cost assigned to each counted operation when collapsing a tally
/// into a single weighted figure.
struct OpWeights {
  double comparison{1.0};
  double swap{1.0};
  double move{1.0};
};

/// Tally of primitive operations performed by one instrumented sort run.
///
/// `comparisons` counts key-vs-key comparisons, `swaps` counts element
/// exchanges, and `moves` counts single element writes that are not part of
/// a swap (e.g. hole shifts during a heap sift).
struct OpCounter {
  std::uint64_t comparisons{0};
  std::uint64_t swaps{0};
  std::uint64_t moves{0};

  [[nodiscard]] double weighted(const OpWeights& w = {}) const noexcept {
    return w.comparison * static_cast<double>(comparisons) +
           w.swap * static_cast<double>(swaps) +
           w.move * static_cast<double>(moves);
  }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

}  // namespace pslab
