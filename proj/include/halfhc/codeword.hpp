#pragma once

// Codewords are kept as strings over {'0','1'}. Huffman codes for skewed
// sources can exceed 64 bits, and the string form is also what every file
// format and table uses.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "halfhc/numeric.hpp"

namespace halfhc {

inline bool is_bit_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

/// Number of 1s in a non-empty bit string.
inline std::size_t ones_count(std::string_view codeword) {
  if (codeword.empty()) throw Error("empty codeword");
  std::size_t n = 0;
  for (char c : codeword) {
    if (c == '1')
      ++n;
    else if (c != '0')
      throw Error("non-binary character in codeword '" + std::string(codeword) + "'");
  }
  return n;
}

/// Binary increment in place. Returns false on overflow (all ones).
inline bool increment_bits(std::string& bits) {
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    if (*it == '0') {
      *it = '1';
      return true;
    }
    *it = '0';
  }
  return false;
}

/// Canonical prefix code for lengths given in non-decreasing order: the
/// first codeword is all zeros, each following one is the previous plus one,
/// left-shifted whenever the length grows.
inline std::vector<std::string> canonical_codewords(const std::vector<std::size_t>& sorted_lengths) {
  std::vector<std::string> out;
  out.reserve(sorted_lengths.size());
  std::string code;
  for (std::size_t i = 0; i < sorted_lengths.size(); ++i) {
    std::size_t len = sorted_lengths[i];
    if (len == 0) throw Error("zero codeword length");
    if (i == 0) {
      code.assign(len, '0');
    } else {
      if (len < code.size()) throw Error("canonical_codewords: lengths not sorted");
      if (!increment_bits(code)) throw Error("canonical_codewords: lengths violate Kraft inequality");
      code.append(len - code.size(), '0');
    }
    out.push_back(code);
  }
  return out;
}

/// True if no codeword is a prefix of another (duplicates count as prefixes).
inline bool is_prefix_free(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if (words[i + 1].compare(0, words[i].size(), words[i]) == 0) return false;
  }
  return true;
}

/// Exact Kraft sum over the codeword lengths.
template <class Lengths>
Rational kraft_sum(const Lengths& lengths) {
  using boost::multiprecision::cpp_int;
  Rational sum(0);
  for (std::size_t len : lengths) sum += Rational(cpp_int(1), cpp_int(1) << static_cast<unsigned>(len));
  return sum;
}

}  // namespace halfhc
