#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "halfhc/bitstream.hpp"
#include "halfhc/codeword.hpp"
#include "halfhc/huffman.hpp"
#include "halfhc/numeric.hpp"
#include "halfhc/source_model.hpp"

namespace halfhc {

/// Expected frequency of 1s, q = (sum_i p_i ones(c_i)) / (sum_i p_i l(i)).
template <class Real>
Real expected_ones_frequency(const Codebook& code, const SymbolDistribution<Real>& dist) {
  if (code.size() != dist.size()) throw Error("expected_ones_frequency: codebook and distribution sizes differ");
  Real ones(0);
  for (std::size_t i = 0; i < code.size(); ++i)
    ones += dist.prob(i) * Real(static_cast<long>(ones_count(code.codewords[i])));
  return ones / expected_length(code, dist);
}

/// Same quantity through the length classes: (sum_j r_j N_j) / L.
template <class Real>
Real expected_ones_frequency(const LengthClassPartition<Real>& part) {
  Real ones(0);
  Real length(0);
  for (const auto& cls : part.classes) {
    ones += cls.probability * cls.expected_ones;
    length += cls.probability * Real(static_cast<long>(cls.length));
  }
  return ones / length;
}

struct OnesCount {
  std::uint64_t ones = 0;
  std::uint64_t bits = 0;
  double frequency = 0.0;
};

inline OnesCount empirical_ones_frequency(const BitStream& bits) {
  if (bits.empty()) throw Error("empty bit stream");
  OnesCount c;
  c.ones = bits.count_ones();
  c.bits = bits.size();
  c.frequency = static_cast<double>(c.ones) / static_cast<double>(c.bits);
  return c;
}

/// Inverse of the standard normal CDF.
///
/// Acklam's rational approximation (relative error below 1.15e-9) followed by
/// one Halley step against std::erfc, which brings the result to a few ulps.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("normal_quantile: probability must lie in (0,1)");
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

struct Interval {
  double low = 0.0;
  double high = 0.0;

  bool contains(double v) const { return low <= v && v <= high; }
};

/// Wald (normal-approximation MLE) interval for a Bernoulli proportion,
/// clamped to [0, 1].
inline Interval wald_interval(std::uint64_t ones, std::uint64_t bits, double level) {
  if (!(level > 0.0 && level < 1.0)) throw Error("wald_interval: level must lie in (0,1)");
  if (bits == 0) throw Error("wald_interval: bit count must be positive");
  if (ones > bits) throw Error("wald_interval: ones exceed bit count");
  const double q = static_cast<double>(ones) / static_cast<double>(bits);
  const double z = normal_quantile((1.0 + level) / 2.0);
  const double half = z * std::sqrt(q * (1.0 - q) / static_cast<double>(bits));
  return {std::clamp(q - half, 0.0, 1.0), std::clamp(q + half, 0.0, 1.0)};
}

struct OnesReport {
  double expected_q = 0.0;
  double empirical_q = 0.0;
  std::uint64_t ones_count = 0;
  std::uint64_t bit_count = 0;
  double level = 0.95;
  Interval ci;

  /// The fair-stream hypothesis q = 0.5 is rejected when 0.5 falls outside
  /// the confidence interval.
  bool fair_rejected() const { return !ci.contains(0.5); }
};

inline OnesReport make_ones_report(double expected_q, const BitStream& bits, double level = 0.95) {
  auto counted = empirical_ones_frequency(bits);
  OnesReport r;
  r.expected_q = expected_q;
  r.empirical_q = counted.frequency;
  r.ones_count = counted.ones;
  r.bit_count = counted.bits;
  r.level = level;
  r.ci = wald_interval(counted.ones, counted.bits, level);
  return r;
}

}  // namespace halfhc
