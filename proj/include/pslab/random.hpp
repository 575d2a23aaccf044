#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

namespace pslab {

/// Anything that yields U[0, 1) variates through `next_uniform01()`.
template <typename U>
concept UniformSource = requires(U u) {
  { u.next_uniform01() } -> std::convertible_to<double>;
};

/// Box-Muller transform. Maps `u1` in (0, 1) and `u2` in [0, 1) to two
/// independent standard normal variates. Throws std::invalid_argument when
/// `u1` is not strictly positive.
inline std::pair<double, double> box_muller(double u1, double u2) {
  if (!(u1 > 0.0)) throw std::invalid_argument("box_muller: u1 must be > 0");
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Standard normal stream over any uniform source. Both Box-Muller outputs
/// are used: a call that draws a fresh pair returns z1 and caches z2 for the
/// next call. A zero u1 is redrawn.
class NormalSampler {
 public:
  template <UniformSource U>
  double operator()(U& uniform) {
    if (cached_) {
      return *std::exchange(cached_, std::nullopt);
    }
    double u1 = uniform.next_uniform01();
    while (u1 == 0.0) u1 = uniform.next_uniform01();
    const double u2 = uniform.next_uniform01();
    const auto [z1, z2] = box_muller(u1, u2);
    cached_ = z2;
    return z1;
  }

  void reset() noexcept { cached_.reset(); }

 private:
  std::optional<double> cached_;
};

/// Denominators smaller than this in magnitude are redrawn.
inline constexpr double kCauchyDenominatorGuard = 1e-300;

/// Standard Cauchy variate as the ratio of two standard normals obtained
/// from `normal()`. Both normals are redrawn while the denominator is below
/// the guard, so the result is always finite.
template <typename NormalFn>
  requires std::invocable<NormalFn&>
double cauchy_variate(NormalFn&& normal) {
  for (;;) {
    const double numerator = normal();
    const double denominator = normal();
    if (std::abs(denominator) >= kCauchyDenominatorGuard) {
      return numerator / denominator;
    }
  }
}

/// Number of successes in `trials` Bernoulli(`p`) draws, summed literally.
template <UniformSource U>
std::int64_t binomial_variate(std::int64_t trials, double p, U& uniform) {
  if (trials < 1) throw std::invalid_argument("binomial: m must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial: p must lie in [0, 1]");
  std::int64_t successes = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    if (uniform.next_uniform01() < p) ++successes;
  }
  return successes;
}

/// Seedable random state. The bit generator is std::mt19937_64 (period
/// 2^19937 - 1, output fixed by the C++ standard), so streams replay across
/// compilers and standard libraries. Uniforms take the top 53 bits of each
/// output; nothing here goes through the implementation-defined
/// std::*_distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next_std_normal() { return normal_(*this); }

  double next_cauchy() {
    return cauchy_variate([this] { return next_std_normal(); });
  }

  std::int64_t next_binomial(std::int64_t trials, double p) {
    return binomial_variate(trials, p, *this);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  NormalSampler normal_;
};

}  // namespace pslab
