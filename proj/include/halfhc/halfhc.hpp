#pragma once

// Half Huffman coding: take a Huffman code, choose for every length class
// either the ones-maximizing or the ones-minimizing arrangement of its
// codewords, and pick the combination whose expected frequency of 1s is
// closest to 1/2. Codeword lengths per symbol never change, so the expected
// length (and thus optimality) is untouched.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "halfhc/bitstream.hpp"
#include "halfhc/huffman.hpp"
#include "halfhc/numeric.hpp"
#include "halfhc/ones_stats.hpp"
#include "halfhc/perm_opt.hpp"
#include "halfhc/source_model.hpp"

namespace halfhc {

template <class Real>
struct CodecArtifact {
  Codebook base;      // canonical Huffman code
  Codebook permuted;  // halfHc code
  LengthClassPartition<Real> partition;
  EndpointProfile<Real> profile;
  Selection<Real> selection;
  SolverKind solver = SolverKind::exhaustive;
  Real expected_length{0};
  Real expected_q_base{0};
  Real expected_q_half{0};
};

/// Rearranges codewords inside every length class: class j uses pi_j^+ when
/// x_j = 0 and pi_j^- when x_j = 1.
template <class Real>
Codebook apply_selection(const Codebook& base, const LengthClassPartition<Real>& part,
                         const EndpointProfile<Real>& profile, std::span<const std::uint8_t> x) {
  if (x.size() != part.size() || profile.permutations.size() != part.size())
    throw Error("apply_selection: selection length does not match class count");
  Codebook out = base;
  for (std::size_t j = 0; j < part.size(); ++j) {
    const auto& members = part[j].members;
    const auto& perm = x[j] ? profile.permutations[j].minus : profile.permutations[j].plus;
    for (std::size_t k = 0; k < members.size(); ++k) out.codewords[members[k]] = base.codewords[members[perm[k]]];
  }
  return out;
}

template <class Real>
CodecArtifact<Real> half_huffman(const SymbolDistribution<Real>& dist, SolverKind solver = SolverKind::exhaustive,
                                 const Real& epsilon = default_epsilon<Real>()) {
  CodecArtifact<Real> art;
  art.solver = solver;
  art.base = build_huffman(dist);
  art.partition = partition_by_length(art.base, dist);
  art.profile = endpoint_counts(art.partition, art.base);
  art.selection = solve<Real>(solver, art.profile.a, art.profile.b, epsilon);
  art.permuted = apply_selection(art.base, art.partition, art.profile, art.selection.x);
  art.expected_length = expected_length(art.base, dist);
  art.expected_q_base = expected_ones_frequency(art.base, dist);
  art.expected_q_half = expected_ones_frequency(art.permuted, dist);
  return art;
}

/// Smallest |q - 1/2| over *all* within-class rearrangements, not just the
/// two endpoints per class. Returns nullopt when the enumeration would exceed
/// `cap` arrangements per class or `cap` combinations overall.
template <class Real>
std::optional<Real> full_permutation_optimum(const Codebook& base, const SymbolDistribution<Real>& dist,
                                             std::uint64_t cap = 1'000'000) {
  auto part = partition_by_length(base, dist);
  const Real length = expected_length(base, dist);
  // Achievable r_j * N_j values per class.
  std::vector<std::vector<Real>> options;
  std::uint64_t combos = 1;
  for (const auto& cls : part.classes) {
    std::uint64_t count = 1;
    for (std::uint64_t k = 2; k <= cls.members.size(); ++k) {
      count *= k;
      if (count > cap) return std::nullopt;
    }
    std::vector<std::size_t> ones;
    for (auto i : cls.members) ones.push_back(ones_count(base.codewords[i]));
    std::sort(ones.begin(), ones.end());
    std::vector<Real> values;
    do {
      Real n(0);
      for (std::size_t k = 0; k < ones.size(); ++k) n += cls.conditional[k] * Real(static_cast<long>(ones[k]));
      values.push_back(cls.probability * n);
    } while (std::next_permutation(ones.begin(), ones.end()));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    combos *= values.size();
    if (combos > cap) return std::nullopt;
    options.push_back(std::move(values));
  }
  std::optional<Real> best;
  std::vector<std::size_t> idx(options.size(), 0);
  while (true) {
    Real ones(0);
    for (std::size_t j = 0; j < options.size(); ++j) ones += options[j][idx[j]];
    Real obj = abs_value(Real(ones / length - Real(1) / Real(2)));
    if (!best || obj < *best) best = obj;
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == options[j].size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Encoding and decoding

/// Concatenates the codewords of `symbols`.
inline BitStream encode(std::span<const std::string> symbols, const Codebook& code) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < code.size(); ++i) index.emplace(code.symbols[i], i);
  BitStream out;
  for (const auto& s : symbols) {
    auto it = index.find(s);
    if (it == index.end()) throw Error("encode: symbol '" + s + "' is not in the codebook");
    out.append(code.codewords[it->second]);
  }
  return out;
}

inline BitStream encode_text(std::string_view text, const Codebook& code) {
  auto symbols = split_symbols(text);
  return encode(symbols, code);
}

/// Binary trie over a prefix-free codeword set; shared by the source decoder
/// and the matcher parser.
class PrefixTrie {
public:
  static constexpr std::int64_t kNone = -1;

  explicit PrefixTrie(const std::vector<std::string>& codewords) {
    nodes_.push_back({});
    for (std::size_t i = 0; i < codewords.size(); ++i) {
      const auto& word = codewords[i];
      if (word.empty() || !is_bit_string(word)) throw Error("invalid codeword '" + word + "'");
      std::size_t v = 0;
      for (char c : word) {
        if (nodes_[v].leaf != kNone) throw Error("codewords are not prefix-free");
        int bit = c == '1';
        if (nodes_[v].child[bit] == 0) {
          nodes_[v].child[bit] = nodes_.size();
          nodes_.push_back({});
        }
        v = nodes_[v].child[bit];
      }
      if (nodes_[v].leaf != kNone || nodes_[v].child[0] || nodes_[v].child[1])
        throw Error("codewords are not prefix-free");
      nodes_[v].leaf = static_cast<std::int64_t>(i);
    }
  }

  /// Walks bits from `pos`; on a complete codeword returns its index and
  /// advances `pos`. Returns kNone if the stream ends mid-codeword, or if
  /// the bits leave the trie (incomplete code).
  std::int64_t next(const BitStream& bits, std::uint64_t& pos) const {
    std::size_t v = 0;
    std::uint64_t p = pos;
    while (p < bits.size()) {
      std::size_t child = nodes_[v].child[bits[p] ? 1 : 0];
      if (child == 0) return kNone;
      v = child;
      ++p;
      if (nodes_[v].leaf != kNone) {
        pos = p;
        return nodes_[v].leaf;
      }
    }
    return kNone;
  }

private:
  struct Node {
    std::size_t child[2] = {0, 0};
    std::int64_t leaf = kNone;
  };
  std::vector<Node> nodes_;
};

inline std::vector<std::string> decode(const BitStream& bits, const Codebook& code) {
  PrefixTrie trie(code.codewords);
  std::vector<std::string> out;
  std::uint64_t pos = 0;
  while (pos < bits.size()) {
    auto leaf = trie.next(bits, pos);
    if (leaf == PrefixTrie::kNone) throw Error("truncated stream");
    out.push_back(code.symbols[static_cast<std::size_t>(leaf)]);
  }
  return out;
}

inline std::string join_symbols(const std::vector<std::string>& symbols) {
  std::string out;
  for (const auto& s : symbols) out += s;
  return out;
}

}  // namespace halfhc
