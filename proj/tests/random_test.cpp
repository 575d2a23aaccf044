#include "pslab/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pslab/distribution.hpp"

namespace pslab {
namespace {

// Replays a fixed list of uniforms.
struct ScriptedUniform {
  std::vector<double> values;
  std::size_t next{0};
  double next_uniform01() { return values.at(next++); }
};

struct Moments {
  double mean;
  double variance;
};

Moments moments(const std::vector<double>& v) {
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (const double x : v) var += (x - mean) * (x - mean);
  return {mean, var / static_cast<double>(v.size() - 1)};
}

TEST(Rng, EngineMatchesPublishedReference) {
  // The C++ standard pins the 10000th output of a default-seeded
  // mt19937_64 to 9981545732273789042.
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, UniformRangeAndReplay) {
  Rng a(42), b(42);
  const double a1 = a.next_uniform01(), a2 = a.next_uniform01();
  EXPECT_EQ(a1, b.next_uniform01());
  EXPECT_EQ(a2, b.next_uniform01());
  Rng c(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = c.next_uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, UniformMean) {
  Rng rng(2024);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += rng.next_uniform01();
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.003);
}

TEST(BoxMuller, AnalyticPoints) {
  auto [z1, z2] = box_muller(std::exp(-0.5), 0.0);
  EXPECT_NEAR(z1, 1.0, 1e-15);
  EXPECT_EQ(z2, 0.0);
  std::tie(z1, z2) = box_muller(std::exp(-2.0), 0.5);
  EXPECT_NEAR(z1, -2.0, 1e-15);
  EXPECT_NEAR(z2, 0.0, 1e-15);
  std::tie(z1, z2) = box_muller(std::exp(-0.5), 0.25);
  EXPECT_NEAR(z1, 0.0, 1e-15);
  EXPECT_NEAR(z2, 1.0, 1e-15);
}

TEST(BoxMuller, RejectsZero) {
  EXPECT_THROW(box_muller(0.0, 0.3), std::invalid_argument);
}

TEST(BoxMuller, RadiusIdentity) {
  Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    double u1 = rng.next_uniform01();
    while (u1 == 0.0) u1 = rng.next_uniform01();
    const double u2 = rng.next_uniform01();
    const auto [z1, z2] = box_muller(u1, u2);
    const double expected = -2.0 * std::log(u1);
    const double ulp = std::nextafter(expected, INFINITY) - expected;
    ASSERT_LE(std::abs(z1 * z1 + z2 * z2 - expected), 4.0 * ulp) << "u1 = " << u1 << " u2 = " << u2;
  }
}

TEST(NormalSampler, CachesSecondOutput) {
  ScriptedUniform src{{std::exp(-0.5), 0.0}};
  NormalSampler normal;
  EXPECT_NEAR(normal(src), 1.0, 1e-15);
  EXPECT_EQ(normal(src), 0.0);
  EXPECT_EQ(src.next, 2u);
}

TEST(NormalSampler, RedrawsZeroU1) {
  ScriptedUniform src{{0.0, std::exp(-2.0), 0.5}};
  NormalSampler normal;
  EXPECT_NEAR(normal(src), -2.0, 1e-15);
  EXPECT_EQ(src.next, 3u);
}

TEST(NormalSampler, Moments) {
  Rng rng(77);
  std::vector<double> draws(100000);
  for (auto& d : draws) d = rng.next_std_normal();
  const auto m = moments(draws);
  EXPECT_LT(std::abs(m.mean), 0.01);
  EXPECT_LT(std::abs(m.variance - 1.0), 0.02);
}

TEST(Cauchy, RatioOfInjectedNormals) {
  std::vector<double> normals{1.0, 2.0, 0.0, 1.0};
  std::size_t i = 0;
  auto next = [&] { return normals[i++]; };
  EXPECT_EQ(cauchy_variate(next), 0.5);
  EXPECT_EQ(cauchy_variate(next), 0.0);
}

TEST(Cauchy, TinyDenominatorIsRedrawn) {
  std::vector<double> normals{1.0, 1e-301, 3.0, 4.0};
  std::size_t i = 0;
  EXPECT_EQ(cauchy_variate([&] { return normals[i++]; }), 0.75);
  EXPECT_EQ(i, 4u);
}

TEST(Cauchy, QuartilesAndFiniteness) {
  Rng rng(31337);
  std::vector<double> draws(100000);
  std::size_t inside = 0;
  for (auto& d : draws) {
    d = rng.next_cauchy();
    ASSERT_TRUE(std::isfinite(d));
    if (d >= -1.0 && d <= 1.0) ++inside;
  }
  std::nth_element(draws.begin(), draws.begin() + 50000, draws.end());
  EXPECT_LT(std::abs(draws[50000]), 0.02);
  EXPECT_NEAR(static_cast<double>(inside) / 100000.0, 0.5, 0.01);
}

TEST(Binomial, DegenerateProbabilities) {
  Rng rng(1);
  EXPECT_EQ(rng.next_binomial(10, 0.0), 0);
  EXPECT_EQ(rng.next_binomial(5, 1.0), 5);
}

TEST(Binomial, RejectsBadParameters) {
  Rng rng(1);
  EXPECT_THROW(rng.next_binomial(0, 0.5), std::invalid_argument);
  EXPECT_THROW(rng.next_binomial(10, 1.5), std::invalid_argument);
  EXPECT_THROW(rng.next_binomial(10, -0.1), std::invalid_argument);
  EXPECT_THROW(rng.next_binomial(10, std::nan("")), std::invalid_argument);
}

TEST(Binomial, Moments) {
  Rng rng(555);
  std::vector<double> draws(100000);
  for (auto& d : draws) {
    const auto k = rng.next_binomial(1000, 0.3);
    ASSERT_GE(k, 0);
    ASSERT_LE(k, 1000);
    d = static_cast<double>(k);
  }
  const auto m = moments(draws);
  EXPECT_NEAR(m.mean, 300.0, 0.2);
  EXPECT_NEAR(m.variance, 210.0, 3.0);
}

TEST(GenerateArray, DeterministicShapes) {
  Rng rng(0);
  EXPECT_EQ(std::get<std::vector<std::int64_t>>(generate_array(dist::Sorted{}, 4, rng)),
            (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_EQ(std::get<std::vector<std::int64_t>>(generate_array(dist::Reversed{}, 4, rng)),
            (std::vector<std::int64_t>{3, 2, 1, 0}));
  const auto same = std::get<std::vector<std::int64_t>>(generate_array(dist::AllEqual{}, 5, rng));
  EXPECT_TRUE(std::all_of(same.begin(), same.end(), [&](auto v) { return v == same.front(); }));
  EXPECT_EQ(key_count(generate_array(dist::Uniform01{}, 0, rng)), 0u);
}

TEST(GenerateArray, BinomialRange) {
  Rng rng(9);
  const auto keys = std::get<std::vector<std::int64_t>>(generate_array(dist::Binomial{100, 0.5}, 50000, rng));
  ASSERT_EQ(keys.size(), 50000u);
  EXPECT_TRUE(std::all_of(keys.begin(), keys.end(), [](auto k) { return k >= 0 && k <= 100; }));
}

TEST(GenerateArray, Replay) {
  for (const DistributionSpec spec : {DistributionSpec{dist::Cauchy{}}, DistributionSpec{dist::StdNormal{}},
                                      DistributionSpec{dist::Binomial{30, 0.25}}}) {
    Rng a(123), b(123);
    EXPECT_EQ(generate_array(spec, 10, a), generate_array(spec, 10, b)) << dist_name(spec);
  }
}

TEST(GenerateArray, PropagatesParameterErrors) {
  Rng rng(0);
  EXPECT_THROW(generate_array(dist::Binomial{0, 0.5}, 3, rng), std::invalid_argument);
  EXPECT_THROW(make_distribution("binomial", 10, 2.0), std::invalid_argument);
  EXPECT_FALSE(make_distribution("poisson").has_value());
}

TEST(Distribution, NamesRoundTrip) {
  for (const auto* name : {"uniform", "normal", "cauchy", "binomial", "sorted", "reversed", "allequal"}) {
    const auto spec = make_distribution(name, 3, 0.5);
    ASSERT_TRUE(spec.has_value());
    EXPECT_EQ(dist_name(*spec), name);
  }
}

}  // namespace
}  // namespace pslab
