#pragma once

// Scalar plumbing shared by every halfhc header.
//
// All code-construction and selection templates are parameterized on a
// `Real` type. Two instantiations are supported:
//
//   double            fast, used by the CLI for reports
//   halfhc::Rational  exact, used wherever equalities must hold bit-for-bit
//                     (Kraft sums, expected lengths, objective ties)

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace halfhc {

using Rational = boost::multiprecision::cpp_rational;

/// Raised for every data-level failure (bad input, violated precondition).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class Real>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Real>;

template <class Real>
inline double to_double(const Real& v) {
  return static_cast<double>(v);
}

template <class Real>
inline Real abs_value(const Real& v) {
  return v < Real(0) ? Real(-v) : v;
}

/// Slack added to interval bounds in the selection solvers. Zero for exact
/// scalars; absorbs rounding of partial sums for floating point.
template <class Real>
inline Real bound_tolerance() {
  if constexpr (is_exact_v<Real>)
    return Real(0);
  else
    return Real(1e-15);
}

/// Exact conversion from a ratio of integers.
template <class Real>
inline Real ratio(std::int64_t num, std::int64_t den) {
  if constexpr (is_exact_v<Real>)
    return Real(num, den);
  else
    return static_cast<Real>(num) / static_cast<Real>(den);
}

/// Converts between the supported scalars. Rational -> double rounds;
/// double -> Rational is exact in the binary value.
template <class To, class From>
inline To convert(const From& v) {
  if constexpr (std::is_same_v<To, From>)
    return v;
  else if constexpr (std::is_floating_point_v<To>)
    return static_cast<To>(v);
  else
    return To(v);
}

/// Parses a non-negative decimal literal ("3", "0.25", "1e-3", "2.5E2")
/// into an exact rational. Throws Error on anything else.
inline Rational parse_decimal(std::string_view text) {
  using boost::multiprecision::cpp_int;
  std::size_t pos = 0;
  auto fail = [&]() -> Rational {
    throw Error("invalid number '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int mantissa = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) return fail();
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') return fail();
      exponent = exponent * 10 + (c - '0');
      if (exponent > 4000) return fail();
    }
    if (exp_negative) exponent = -exponent;
  }
  exponent -= frac_digits;
  cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  return negative ? Rational(-value) : value;
}

}  // namespace halfhc
