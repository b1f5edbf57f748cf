#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "halfhc/codeword.hpp"
#include "halfhc/csv.hpp"
#include "halfhc/numeric.hpp"
#include "halfhc/source_model.hpp"

namespace halfhc {

/// Codewords aligned with a distribution's symbol order.
struct Codebook {
  std::vector<std::string> symbols;
  std::vector<std::string> codewords;

  std::size_t size() const { return codewords.size(); }
  std::size_t length(std::size_t i) const { return codewords[i].size(); }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    out.reserve(codewords.size());
    for (const auto& c : codewords) out.push_back(c.size());
    return out;
  }

  bool operator==(const Codebook&) const = default;
};

/// Checks shape, alphabet, and prefix-freeness. Completeness is not required.
inline void validate_codebook(const Codebook& code) {
  if (code.symbols.size() != code.codewords.size()) throw Error("codebook: symbol/codeword size mismatch");
  if (code.codewords.empty()) throw Error("codebook: empty");
  for (const auto& c : code.codewords) {
    if (c.empty() || !is_bit_string(c)) throw Error("codebook: invalid codeword '" + c + "'");
  }
  if (!is_prefix_free(code.codewords)) throw Error("codebook: not prefix-free");
}

namespace detail {

template <class Real>
struct HuffmanNode {
  Real weight;
  std::size_t id;
};

template <class Real>
struct HeavierOrLater {
  bool operator()(const HuffmanNode<Real>& l, const HuffmanNode<Real>& r) const {
    if (l.weight != r.weight) return l.weight > r.weight;
    return l.id > r.id;
  }
};

}  // namespace detail

/// Optimal codeword lengths for a sorted distribution.
///
/// Merges always take the two lightest nodes; equal weights resolve to the
/// earliest-created node, with leaves created in symbol order before any
/// merged node. The resulting length multiset is handed out in ascending
/// order along the (non-increasing) probabilities, which only reorders
/// lengths among equiprobable symbols.
template <class Real>
std::vector<std::size_t> huffman_lengths(const SymbolDistribution<Real>& dist) {
  const std::size_t n = dist.size();
  std::vector<std::size_t> parent(2 * n - 1, 0);
  std::priority_queue<detail::HuffmanNode<Real>, std::vector<detail::HuffmanNode<Real>>,
                      detail::HeavierOrLater<Real>>
      heap;
  for (std::size_t i = 0; i < n; ++i) heap.push({dist.prob(i), i});
  std::size_t next_id = n;
  while (heap.size() > 1) {
    auto first = heap.top();
    heap.pop();
    auto second = heap.top();
    heap.pop();
    parent[first.id] = next_id;
    parent[second.id] = next_id;
    heap.push({first.weight + second.weight, next_id});
    ++next_id;
  }
  const std::size_t root = next_id - 1;
  std::vector<std::size_t> lengths(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t depth = 0;
    for (std::size_t v = i; v != root; v = parent[v]) ++depth;
    lengths[i] = depth;
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

/// Huffman code with canonical bit patterns: shorter codewords come first
/// lexicographically, and within a length the consecutive patterns go to
/// symbols in decreasing-probability order.
template <class Real>
Codebook build_huffman(const SymbolDistribution<Real>& dist) {
  auto lengths = huffman_lengths(dist);
  return Codebook{dist.symbols(), canonical_codewords(lengths)};
}

/// L = sum_i p_i * l(i), in bits per symbol.
template <class Real>
Real expected_length(const Codebook& code, const SymbolDistribution<Real>& dist) {
  if (code.size() != dist.size()) throw Error("expected_length: codebook and distribution sizes differ");
  Real total(0);
  for (std::size_t i = 0; i < code.size(); ++i) total += dist.prob(i) * Real(static_cast<long>(code.length(i)));
  return total;
}

/// Lower bound for expected_length: binary entropy of the distribution.
template <class Real>
double entropy_bits(const SymbolDistribution<Real>& dist) {
  double h = 0.0;
  for (const auto& p : dist.probs()) {
    double v = to_double(p);
    h -= v * std::log2(v);
  }
  return h;
}

/// Codewords of one distinct length, with the conditional statistics used
/// by the permutation search.
template <class Real>
struct LengthClass {
  std::size_t length = 0;
  std::vector<std::size_t> members;  // codebook indices, ascending
  Real probability{0};               // r_j
  std::vector<Real> conditional;     // p_{i|j}, aligned with members
  Real expected_ones{0};             // N_j under the current arrangement
};

template <class Real>
struct LengthClassPartition {
  std::vector<LengthClass<Real>> classes;  // ascending length

  std::size_t size() const { return classes.size(); }
  const LengthClass<Real>& operator[](std::size_t j) const { return classes[j]; }
};

template <class Real>
LengthClassPartition<Real> partition_by_length(const Codebook& code, const SymbolDistribution<Real>& dist) {
  if (code.size() != dist.size()) throw Error("partition_by_length: codebook and distribution sizes differ");
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < code.size(); ++i) groups[code.length(i)].push_back(i);

  LengthClassPartition<Real> part;
  for (auto& [len, members] : groups) {
    LengthClass<Real> cls;
    cls.length = len;
    cls.members = std::move(members);
    for (auto i : cls.members) cls.probability += dist.prob(i);
    for (auto i : cls.members) {
      Real cond = dist.prob(i) / cls.probability;
      cls.expected_ones += cond * Real(static_cast<long>(ones_count(code.codewords[i])));
      cls.conditional.push_back(std::move(cond));
    }
    part.classes.push_back(std::move(cls));
  }
  return part;
}

/// `symbol,probability,codeword,length` table.
template <class Real>
std::string codebook_csv(const Codebook& code, const SymbolDistribution<Real>& dist) {
  if (code.size() != dist.size()) throw Error("codebook_csv: codebook and distribution sizes differ");
  std::string out = "symbol,probability,codeword,length\n";
  for (std::size_t i = 0; i < code.size(); ++i) {
    char prob[32];
    std::snprintf(prob, sizeof prob, "%.17g", to_double(dist.prob(i)));
    out += csv::join({code.symbols[i], prob, code.codewords[i], std::to_string(code.length(i))});
    out += '\n';
  }
  return out;
}

/// Reads a code table written by codebook_csv. Only the symbol and codeword
/// columns are interpreted; the length column must agree.
inline Codebook parse_codebook_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows.front() != csv::Row{"symbol", "probability", "codeword", "length"})
    throw Error("codebook csv: expected header 'symbol,probability,codeword,length'");
  Codebook code;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 4) throw Error("codebook csv: row " + std::to_string(r + 1) + " malformed");
    if (std::to_string(row[2].size()) != row[3])
      throw Error("codebook csv: row " + std::to_string(r + 1) + " length column disagrees with codeword");
    code.symbols.push_back(row[0]);
    code.codewords.push_back(row[2]);
  }
  validate_codebook(code);
  return code;
}

}  // namespace halfhc
