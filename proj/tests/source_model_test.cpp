#include <array>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "halfhc/source_model.hpp"
#include "support/generators.hpp"

namespace halfhc {
namespace {

TEST(EstimateDistribution, SymmetricPair) {
  auto d = estimate_distribution<Rational>("abab");
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.prob(0), Rational(1, 2));
  EXPECT_EQ(d.prob(1), Rational(1, 2));
}

TEST(EstimateDistribution, DirectCount) {
  auto d = estimate_distribution<Rational>("aab");
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.prob(0), Rational(2, 3));
  EXPECT_EQ(d.prob(1), Rational(1, 3));
}

TEST(EstimateDistribution, TiesBrokenByCodePoint) {
  auto d = estimate_distribution<Rational>("cbacbx\xC3\xA9\xC3\xA9");  // é twice
  // counts: b2 c2 é2 a1 x1
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"b", "c", "\xC3\xA9", "a", "x"}));
}

TEST(EstimateDistribution, WhitespaceIsASymbol) {
  auto d = estimate_distribution<Rational>("a a\n");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_NE(d.index_of(" "), d.size());
  EXPECT_NE(d.index_of("\n"), d.size());
}

TEST(EstimateDistribution, ZipfCorpusMatchesIndependentCount) {
  Rng rng(7);
  auto corpus = testing::zipf_corpus(rng, 12, 1000, 1.0);
  std::array<int, 256> counts{};
  for (unsigned char c : corpus) ++counts[c];

  auto d = estimate_distribution<Rational>(corpus);
  Rational total(0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto c = static_cast<unsigned char>(d.symbol(i)[0]);
    EXPECT_EQ(d.prob(i), Rational(counts[c], 1000)) << d.symbol(i);
    total += d.prob(i);
  }
  EXPECT_EQ(total, Rational(1));
}

TEST(EstimateDistribution, Errors) {
  EXPECT_THROW(estimate_distribution<Rational>(""), Error);
  try {
    estimate_distribution<Rational>("aaaa");
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "alphabet size < 2");
  }
  EXPECT_THROW(estimate_distribution<Rational>("a\xC3"), Error);
}

TEST(ValidateAndSort, Equal) {
  auto d = validate_and_sort<Rational>({{"x", Rational(1)}, {"y", Rational(1)}});
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(d.prob(0), Rational(1, 2));
}

TEST(ValidateAndSort, ZeroWeightRejected) {
  try {
    validate_and_sort<Rational>({{"x", Rational(3)}, {"y", Rational(1)}, {"z", Rational(0)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate probability");
  }
  EXPECT_THROW(validate_and_sort<double>({{"x", 1.0}, {"y", -1.0}}), Error);
}

TEST(ValidateAndSort, Sorts) {
  auto d = validate_and_sort<Rational>(
      {{"x", parse_decimal("0.2")}, {"y", parse_decimal("0.5")}, {"z", parse_decimal("0.3")}});
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"y", "z", "x"}));
  EXPECT_EQ(d.probs(), (std::vector<Rational>{Rational(1, 2), Rational(3, 10), Rational(1, 5)}));
}

TEST(ValidateAndSort, StableTieBreakAndDuplicates) {
  auto d = validate_and_sort<double>({{"q", 1.0}, {"p", 2.0}, {"r", 1.0}});
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"p", "q", "r"}));
  EXPECT_THROW(validate_and_sort<double>({{"q", 1.0}, {"q", 2.0}}), Error);
  EXPECT_THROW(validate_and_sort<double>({{"q", 1.0}}), Error);
}

TEST(ValidateAndSort, PreservesMultisetOfProbabilities) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 20));
    std::vector<std::pair<std::string, Rational>> raw;
    Rational total(0);
    for (std::size_t i = 0; i < n; ++i) {
      Rational w(rng.between(1, 50));
      raw.emplace_back(testing::symbol_name(i), w);
      total += w;
    }
    auto d = validate_and_sort(raw);
    std::vector<Rational> expected;
    for (auto& [s, w] : raw) expected.push_back(w / total);
    std::sort(expected.begin(), expected.end());
    auto got = d.probs();
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
  }
}

TEST(DistributionCsv, ParsesExactWeights) {
  auto d = parse_distribution_csv("symbol,weight\nx,0.2\ny,0.5\n\" \",0.3\n");
  EXPECT_EQ(d.symbols(), (std::vector<std::string>{"y", " ", "x"}));
  EXPECT_EQ(d.prob(1), Rational(3, 10));
}

TEST(DistributionCsv, Errors) {
  EXPECT_THROW(parse_distribution_csv("sym,w\nx,1\ny,1\n"), Error);
  EXPECT_THROW(parse_distribution_csv("symbol,weight\nx,1\ny,abc\n"), Error);
  EXPECT_THROW(parse_distribution_csv("symbol,weight\nx,1\ny,0\n"), Error);
}

TEST(ParseDecimal, Forms) {
  EXPECT_EQ(parse_decimal("3"), Rational(3));
  EXPECT_EQ(parse_decimal("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_decimal("2.5E2"), Rational(250));
  EXPECT_EQ(parse_decimal("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_decimal("-0.5"), Rational(-1, 2));
  EXPECT_THROW(parse_decimal("."), Error);
  EXPECT_THROW(parse_decimal("1e"), Error);
  EXPECT_THROW(parse_decimal("1.2.3"), Error);
}

}  // namespace
}  // namespace halfhc
