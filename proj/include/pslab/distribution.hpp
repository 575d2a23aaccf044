#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "pslab/random.hpp"

namespace pslab {

namespace dist {
struct Uniform01 {};
struct StdNormal {};
struct Cauchy {};
struct Binomial {
  std::int64_t m{1};
  double p{0.5};
};
struct Sorted {};
struct Reversed {};
struct AllEqual {};

inline bool operator==(const Binomial& a, const Binomial& b) { return a.m == b.m && a.p == b.p; }
inline bool operator==(Uniform01, Uniform01) { return true; }
inline bool operator==(StdNormal, StdNormal) { return true; }
inline bool operator==(Cauchy, Cauchy) { return true; }
inline bool operator==(Sorted, Sorted) { return true; }
inline bool operator==(Reversed, Reversed) { return true; }
inline bool operator==(AllEqual, AllEqual) { return true; }
}  // namespace dist

/// Input distribution for generated arrays. Sorted, Reversed and AllEqual
/// are deterministic adversarial inputs that ignore the random state.
using DistributionSpec = std::variant<dist::Uniform01, dist::StdNormal, dist::Cauchy, dist::Binomial,
                                      dist::Sorted, dist::Reversed, dist::AllEqual>;

/// One array's keys: reals for continuous distributions, integers otherwise.
using KeyArray = std::variant<std::vector<double>, std::vector<std::int64_t>>;

inline constexpr std::int64_t kAllEqualKey = 0;

/// Throws std::invalid_argument if the spec's parameters are out of range.
inline void validate(const DistributionSpec& spec) {
  if (const auto* b = std::get_if<dist::Binomial>(&spec)) {
    if (b->m < 1) throw std::invalid_argument("binomial: m must be >= 1");
    if (!(b->p >= 0.0 && b->p <= 1.0)) throw std::invalid_argument("binomial: p must lie in [0, 1]");
  }
}

inline std::string_view dist_name(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string_view {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Uniform01>) return "uniform";
        else if constexpr (std::is_same_v<D, dist::StdNormal>) return "normal";
        else if constexpr (std::is_same_v<D, dist::Cauchy>) return "cauchy";
        else if constexpr (std::is_same_v<D, dist::Binomial>) return "binomial";
        else if constexpr (std::is_same_v<D, dist::Sorted>) return "sorted";
        else if constexpr (std::is_same_v<D, dist::Reversed>) return "reversed";
        else return "allequal";
      },
      spec);
}

/// Builds a spec from its name; `m` and `p` are only consulted for binomial.
/// Returns nullopt for unknown names; parameter errors throw.
inline std::optional<DistributionSpec> make_distribution(std::string_view name, std::int64_t m = 1,
                                                         double p = 0.5) {
  std::optional<DistributionSpec> spec;
  if (name == "uniform") spec = dist::Uniform01{};
  else if (name == "normal") spec = dist::StdNormal{};
  else if (name == "cauchy") spec = dist::Cauchy{};
  else if (name == "binomial") spec = dist::Binomial{m, p};
  else if (name == "sorted") spec = dist::Sorted{};
  else if (name == "reversed") spec = dist::Reversed{};
  else if (name == "allequal") spec = dist::AllEqual{};
  if (spec) validate(*spec);
  return spec;
}

/// Draws `n` keys from `spec` using `rng`.
inline KeyArray generate_array(const DistributionSpec& spec, std::size_t n, Rng& rng) {
  validate(spec);
  return std::visit(
      [&](const auto& d) -> KeyArray {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, dist::Binomial>) {
          std::vector<std::int64_t> keys(n);
          for (auto& k : keys) k = rng.next_binomial(d.m, d.p);
          return keys;
        } else if constexpr (std::is_same_v<D, dist::Sorted>) {
          std::vector<std::int64_t> keys(n);
          std::iota(keys.begin(), keys.end(), std::int64_t{0});
          return keys;
        } else if constexpr (std::is_same_v<D, dist::Reversed>) {
          std::vector<std::int64_t> keys(n);
          for (std::size_t i = 0; i < n; ++i) keys[i] = static_cast<std::int64_t>(n - 1 - i);
          return keys;
        } else if constexpr (std::is_same_v<D, dist::AllEqual>) {
          return std::vector<std::int64_t>(n, kAllEqualKey);
        } else {
          std::vector<double> keys(n);
          for (auto& k : keys) {
            if constexpr (std::is_same_v<D, dist::Uniform01>) k = rng.next_uniform01();
            else if constexpr (std::is_same_v<D, dist::StdNormal>) k = rng.next_std_normal();
            else k = rng.next_cauchy();
          }
          return keys;
        }
      },
      spec);
}

inline std::size_t key_count(const KeyArray& keys) {
  return std::visit([](const auto& v) { return v.size(); }, keys);
}

}  // namespace pslab
