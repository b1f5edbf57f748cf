#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "halfhc/halfhc.hpp"
#include "halfhc/ones_stats.hpp"
#include "halfhc/rng.hpp"
#include "support/generators.hpp"

namespace halfhc {
namespace {

SymbolDistribution<Rational> four_symbol() {
  return validate_and_sort<Rational>(
      {{"a", Rational(4, 10)}, {"b", Rational(3, 10)}, {"c", Rational(2, 10)}, {"d", Rational(1, 10)}});
}

TEST(OnesCount, Examples) {
  EXPECT_EQ(ones_count("000"), 0u);
  EXPECT_EQ(ones_count("110"), 2u);
  EXPECT_EQ(ones_count("10110"), 3u);
  EXPECT_THROW(ones_count("10a"), Error);
  EXPECT_THROW(ones_count(""), Error);
}

TEST(ExpectedOnesFrequency, TwoSymbolCodes) {
  Codebook code{{"a", "b"}, {"0", "1"}};
  auto half = validate_and_sort<Rational>({{"a", Rational(1)}, {"b", Rational(1)}});
  EXPECT_EQ(expected_ones_frequency(code, half), Rational(1, 2));
  auto skew = validate_and_sort<Rational>({{"a", Rational(7, 10)}, {"b", Rational(3, 10)}});
  EXPECT_EQ(expected_ones_frequency(code, skew), Rational(3, 10));
}

TEST(ExpectedOnesFrequency, FourSymbolExact) {
  auto d = four_symbol();
  auto code = build_huffman(d);
  ASSERT_EQ(code.codewords, (std::vector<std::string>{"0", "10", "110", "111"}));
  EXPECT_EQ(expected_ones_frequency(code, d), Rational(10, 19));
  EXPECT_NEAR(to_double(expected_ones_frequency(code, d)), 0.52632, 5e-6);
}

TEST(ExpectedOnesFrequency, MonteCarloAgreesWithinThreeSigma) {
  auto d = four_symbol();
  auto code = build_huffman(d);
  const Rational q = expected_ones_frequency(code, d);

  // Delta-method standard error of a ratio estimator sum(ones)/sum(len):
  // sqrt(E[(ones - q len)^2] / n) / E[len].
  Rational second(0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    Rational dev = Rational(static_cast<long>(ones_count(code.codewords[i]))) -
                   q * Rational(static_cast<long>(code.length(i)));
    second += d.prob(i) * dev * dev;
  }
  const std::size_t n = 1'000'000;
  const double sigma = std::sqrt(to_double(second) / n) / to_double(expected_length(code, d));

  Rng rng(1);
  auto bits = encode(testing::sample_symbols(rng, d, n), code);
  auto counted = empirical_ones_frequency(bits);
  EXPECT_LT(std::fabs(counted.frequency - to_double(q)), 3 * sigma);
}

TEST(ExpectedOnesFrequency, ClassFormMatchesSymbolForm) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto d = testing::random_distribution(rng, static_cast<std::size_t>(rng.between(2, 24)));
    auto code = build_huffman(d);
    // Shuffle within length classes to exercise non-canonical arrangements.
    auto part = partition_by_length(code, d);
    for (const auto& cls : part.classes) {
      for (std::size_t k = cls.members.size(); k > 1; --k) {
        auto r = static_cast<std::size_t>(rng.below(k));
        std::swap(code.codewords[cls.members[k - 1]], code.codewords[cls.members[r]]);
      }
    }
    auto q_symbol = expected_ones_frequency(code, d);
    auto q_class = expected_ones_frequency(partition_by_length(code, d));
    ASSERT_EQ(q_symbol, q_class);
    ASSERT_GT(q_symbol, Rational(0));
    ASSERT_LE(q_symbol, Rational(1));
    ASSERT_NEAR(to_double(expected_ones_frequency(code, d.as<double>())), to_double(q_symbol), 1e-12);
  }
}

TEST(EmpiricalOnesFrequency, Examples) {
  auto a = empirical_ones_frequency(BitStream::from_string("0000"));
  EXPECT_EQ(a.ones, 0u);
  EXPECT_EQ(a.bits, 4u);
  EXPECT_EQ(a.frequency, 0.0);
  auto b = empirical_ones_frequency(BitStream::from_string("0101"));
  EXPECT_EQ(b.ones, 2u);
  EXPECT_EQ(b.bits, 4u);
  EXPECT_EQ(b.frequency, 0.5);
  EXPECT_THROW(empirical_ones_frequency(BitStream{}), Error);
}

TEST(EmpiricalOnesFrequency, SampledSourceNearExpectation) {
  auto d = four_symbol();
  auto code = build_huffman(d);
  Rng rng(42);
  auto bits = encode(testing::sample_symbols(rng, d, 100'000), code);
  EXPECT_NEAR(empirical_ones_frequency(bits).frequency, 10.0 / 19.0, 0.01);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
  EXPECT_NEAR(normal_quantile(0.995), 2.5758293035489004, 1e-12);
  for (double p : {1e-10, 0.001, 0.02, 0.3, 0.7, 0.98, 0.999999}) {
    double z = normal_quantile(p);
    EXPECT_NEAR(0.5 * std::erfc(-z / std::sqrt(2.0)), p, 1e-14 + 1e-10 * p) << p;
  }
  EXPECT_THROW(normal_quantile(0.0), Error);
  EXPECT_THROW(normal_quantile(1.0), Error);
}

TEST(WaldInterval, ZeroVarianceClamps) {
  auto ci = wald_interval(0, 100, 0.95);
  EXPECT_EQ(ci.low, 0.0);
  EXPECT_EQ(ci.high, 0.0);
}

TEST(WaldInterval, Balanced) {
  auto ci = wald_interval(5000, 10000, 0.95);
  EXPECT_NEAR(ci.low, 0.4902, 1e-4);
  EXPECT_NEAR(ci.high, 0.5098, 1e-4);
}

TEST(WaldInterval, ReproducesReportedIntervalFromImpliedBitCount) {
  // Reported: q = 0.45821 with 95% interval (0.4464, 0.47006).
  const double q = 0.45821;
  const double half_width = (0.47006 - 0.4464) / 2.0;
  const double z = normal_quantile(0.975);
  const double n = std::pow(z / half_width, 2.0) * q * (1.0 - q);
  EXPECT_NEAR(n, 6.8e3, 50.0);
  const auto bits = static_cast<std::uint64_t>(std::llround(n));
  const auto ones = static_cast<std::uint64_t>(std::llround(q * static_cast<double>(bits)));
  auto ci = wald_interval(ones, bits, 0.95);
  EXPECT_NEAR(ci.low, 0.4464, 5e-4);
  EXPECT_NEAR(ci.high, 0.47006, 5e-4);
  EXPECT_FALSE(ci.contains(0.5));
}

TEST(WaldInterval, WidthScalesWithInverseSqrtOfCount) {
  for (auto [ones, bits] : {std::pair<std::uint64_t, std::uint64_t>{300, 1000}, {4581, 10000}, {40, 100}}) {
    auto narrow = wald_interval(2 * ones, 2 * bits, 0.95);
    auto wide = wald_interval(ones, bits, 0.95);
    double ratio = (narrow.high - narrow.low) / (wide.high - wide.low);
    EXPECT_NEAR(ratio, 1.0 / std::sqrt(2.0), 1e-9);
  }
}

TEST(WaldInterval, Errors) {
  EXPECT_THROW(wald_interval(1, 10, 0.0), Error);
  EXPECT_THROW(wald_interval(1, 10, 1.0), Error);
  EXPECT_THROW(wald_interval(11, 10, 0.95), Error);
  EXPECT_THROW(wald_interval(0, 0, 0.95), Error);
}

TEST(OnesReport, IntervalContainsEstimate) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    BitStream bits;
    const double bias = rng.uniform();
    auto n = rng.between(1, 2000);
    for (std::int64_t i = 0; i < n; ++i) bits.push_back(rng.uniform() < bias);
    auto rep = make_ones_report(0.5, bits);
    EXPECT_LE(rep.ci.low, rep.empirical_q);
    EXPECT_GE(rep.ci.high, rep.empirical_q);
    EXPECT_EQ(rep.empirical_q, static_cast<double>(rep.ones_count) / static_cast<double>(rep.bit_count));
  }
}

TEST(Fbit, LayoutAndRoundTrip) {
  auto bits = BitStream::from_string("101");
  auto data = serialize_fbit(bits);
  const std::vector<std::uint8_t> expected = {'F', 'B', 'I', 'T', 3, 0, 0, 0, 0, 0, 0, 0, 0xA0};
  EXPECT_EQ(data, expected);
  EXPECT_EQ(deserialize_fbit(data), bits);

  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto b = fair_bits(static_cast<std::uint64_t>(rng.between(0, 200)), rng);
    EXPECT_EQ(deserialize_fbit(serialize_fbit(b)), b);
  }
  data.push_back(0);
  EXPECT_THROW(deserialize_fbit(data), Error);
  EXPECT_THROW(deserialize_fbit({'F', 'B', 'I', 'X', 0, 0, 0, 0, 0, 0, 0, 0}), Error);
}

}  // namespace
}  // namespace halfhc
