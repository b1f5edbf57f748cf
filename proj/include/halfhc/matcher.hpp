#pragma once

// Matcher codes parse a binary stream into channel symbols. Under fair input
// bits a complete prefix code emits symbol i with the dyadic probability
// d_i = sum over its codewords of 2^-len; anything else observed at the
// output reflects bias in the incoming stream.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "halfhc/bitstream.hpp"
#include "halfhc/codeword.hpp"
#include "halfhc/halfhc.hpp"
#include "halfhc/numeric.hpp"

namespace halfhc {

/// Costed target for the channel input distribution.
struct ChannelSpec {
  std::vector<std::string> symbols;
  std::vector<double> w;       // cost per symbol
  double S = std::numeric_limits<double>::infinity();  // average-cost budget
  std::vector<double> p_star;  // target pmf

  std::size_t size() const { return symbols.size(); }
};

/// Target vectors are often printed rounded, so their sum is only required
/// to be within 1e-3 of one.
inline void validate_channel_spec(const ChannelSpec& spec) {
  if (spec.symbols.size() < 2) throw Error("channel spec: need at least two symbols");
  if (spec.w.size() != spec.size() || spec.p_star.size() != spec.size())
    throw Error("channel spec: symbols, w and p_star must have the same length");
  double total = 0.0;
  for (double p : spec.p_star) {
    if (!(p > 0.0)) throw Error("channel spec: p_star entries must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-3) throw Error("channel spec: p_star does not sum to 1");
  for (double c : spec.w) {
    if (!std::isfinite(c)) throw Error("channel spec: costs must be finite");
  }
  if (!(spec.S > *std::min_element(spec.w.begin(), spec.w.end())))
    throw Error("channel spec: budget S must exceed the cheapest symbol cost");
}

struct MatcherEntry {
  std::string codeword;
  std::size_t symbol = 0;  // index into MatcherCode::symbols

  bool operator==(const MatcherEntry&) const = default;
};

struct MatcherCode {
  std::vector<std::string> symbols;
  std::vector<MatcherEntry> entries;

  std::vector<std::string> codewords() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.codeword);
    return out;
  }

  bool operator==(const MatcherCode&) const = default;
};

/// Prefix-free and complete (Kraft sum exactly 1).
inline void validate_matcher(const MatcherCode& m) {
  if (m.entries.empty()) throw Error("matcher: no entries");
  std::vector<std::size_t> lengths;
  for (const auto& e : m.entries) {
    if (e.codeword.empty() || !is_bit_string(e.codeword)) throw Error("matcher: invalid codeword '" + e.codeword + "'");
    if (e.symbol >= m.symbols.size()) throw Error("matcher: entry refers to unknown symbol");
    lengths.push_back(e.codeword.size());
  }
  if (!is_prefix_free(m.codewords())) throw Error("matcher: codewords are not prefix-free");
  if (kraft_sum(lengths) != Rational(1)) throw Error("matcher: code is not complete (Kraft sum != 1)");
}

/// Builds a matcher from (codeword, symbol name) pairs, ordering symbols by
/// `alphabet`. Names missing from the alphabet are an error.
inline MatcherCode make_matcher(const std::vector<std::pair<std::string, std::string>>& pairs,
                                const std::vector<std::string>& alphabet) {
  MatcherCode m;
  m.symbols = alphabet;
  for (const auto& [word, name] : pairs) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) throw Error("matcher: symbol '" + name + "' is not in the channel alphabet");
    m.entries.push_back({word, static_cast<std::size_t>(it - alphabet.begin())});
  }
  validate_matcher(m);
  return m;
}

/// Output pmf of the matcher under fair input bits.
inline std::vector<Rational> induced_pmf(const MatcherCode& m) {
  using boost::multiprecision::cpp_int;
  std::vector<Rational> d(m.symbols.size(), Rational(0));
  for (const auto& e : m.entries)
    d[e.symbol] += Rational(cpp_int(1), cpp_int(1) << static_cast<unsigned>(e.codeword.size()));
  return d;
}

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

struct ParseResult {
  std::vector<std::size_t> symbols;  // emitted symbol indices (if kept)
  std::vector<std::uint64_t> counts;
  std::vector<double> d_eff;
  std::uint64_t emitted = 0;
  std::uint64_t discarded_bits = 0;  // unparsed tail
};

/// Greedy prefix parse. A trailing partial codeword is dropped and counted.
inline ParseResult parse_stream(const BitStream& bits, const MatcherCode& m, bool keep_symbols = true) {
  validate_matcher(m);
  PrefixTrie trie(m.codewords());
  ParseResult res;
  res.counts.assign(m.symbols.size(), 0);
  std::uint64_t pos = 0;
  while (pos < bits.size()) {
    auto leaf = trie.next(bits, pos);
    if (leaf == PrefixTrie::kNone) break;
    std::size_t sym = m.entries[static_cast<std::size_t>(leaf)].symbol;
    ++res.counts[sym];
    ++res.emitted;
    if (keep_symbols) res.symbols.push_back(sym);
  }
  res.discarded_bits = bits.size() - pos;
  if (res.emitted == 0) throw Error("parse_stream: stream shorter than every matcher codeword");
  for (auto c : res.counts) res.d_eff.push_back(static_cast<double>(c) / static_cast<double>(res.emitted));
  return res;
}

/// KL(p || q) in nats; 0 * ln(0 / q) is taken as 0.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("kl_divergence: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw Error("kl_divergence: negative probability");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw Error("kl_divergence: q has zero mass where p is positive");
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

inline double average_cost(std::span<const double> w, std::span<const double> d) {
  if (w.size() != d.size()) throw Error("average_cost: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * d[i];
  return sum;
}

// ---------------------------------------------------------------------------
// Brute-force dyadic design

struct DyadicDesign {
  unsigned depth = 0;
  std::vector<std::uint64_t> k;  // d_i = k_i / 2^depth
  std::vector<double> d;
  double kl = 0.0;
  double cost = 0.0;

  std::vector<Rational> exact() const {
    using boost::multiprecision::cpp_int;
    std::vector<Rational> out;
    for (auto v : k) out.emplace_back(cpp_int(v), cpp_int(1) << depth);
    return out;
  }
};

inline constexpr std::size_t kDyadicMaxSymbols = 4;
inline constexpr unsigned kDyadicMaxDepth = 12;
inline constexpr double kCostSlack = 1e-12;

/// Minimizes KL(d || p*) over d = k / 2^D with every k_i >= 1 and
/// w^T d <= S. Candidates are visited in lexicographic order of k; a later
/// candidate replaces the incumbent only if its KL is smaller, or equal with
/// smaller cost.
inline DyadicDesign dyadic_search(const ChannelSpec& spec, unsigned depth) {
  validate_channel_spec(spec);
  const std::size_t n = spec.size();
  if (n > kDyadicMaxSymbols)
    throw Error("dyadic_search: brute force limited to " + std::to_string(kDyadicMaxSymbols) + " symbols");
  if (depth < 1 || depth > kDyadicMaxDepth)
    throw Error("dyadic_search: depth must lie in [1, " + std::to_string(kDyadicMaxDepth) + "]");
  const std::uint64_t total = std::uint64_t{1} << depth;
  if (total < n) throw Error("dyadic_search: depth too small for alphabet; increase depth");

  const double scale = 1.0 / static_cast<double>(total);
  DyadicDesign best;
  bool found = false;
  std::vector<std::uint64_t> k(n, 1);
  std::vector<double> d(n);

  auto score = [&] {
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<double>(k[i]) * scale;
    double cost = average_cost(spec.w, d);
    if (cost > spec.S + kCostSlack) return;
    double kl = kl_divergence(d, spec.p_star);
    if (!found || kl < best.kl || (kl == best.kl && cost < best.cost)) {
      found = true;
      best.k = k;
      best.d = d;
      best.kl = kl;
      best.cost = cost;
    }
  };
  // Odometer over k_0..k_{n-2}; k_{n-1} takes the remainder.
  auto recurse = [&](auto& self, std::size_t i, std::uint64_t remaining) -> void {
    if (i + 1 == n) {
      k[i] = remaining;
      score();
      return;
    }
    const std::uint64_t reserve = n - i - 1;  // later entries need at least 1 each
    for (std::uint64_t v = 1; v + reserve <= remaining; ++v) {
      k[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  recurse(recurse, 0, total);
  if (!found)
    throw Error("dyadic_search: no dyadic pmf at depth " + std::to_string(depth) +
                " meets the cost budget; try a larger depth");
  best.depth = depth;
  return best;
}

/// Complete prefix code whose leaves realize d exactly: every set bit of k_i
/// at weight 2^b becomes a leaf of length depth - b. Leaves are ordered by
/// (length, symbol) and given canonical codewords.
inline MatcherCode realize_matcher(const std::vector<std::uint64_t>& k, unsigned depth,
                                   const std::vector<std::string>& symbols) {
  if (k.size() != symbols.size()) throw Error("realize_matcher: size mismatch");
  std::uint64_t total = 0;
  for (auto v : k) total += v;
  if (depth > 62 || total != (std::uint64_t{1} << depth)) throw Error("realize_matcher: masses do not sum to 2^depth");
  struct Leaf {
    std::size_t length;
    std::size_t symbol;
  };
  std::vector<Leaf> leaves;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (unsigned b = 0; b < depth; ++b) {
      if ((k[i] >> b) & 1u) leaves.push_back({depth - b, i});
    }
    if (k[i] == total) throw Error("realize_matcher: a single symbol cannot take all mass");
  }
  std::sort(leaves.begin(), leaves.end(), [](const Leaf& l, const Leaf& r) {
    return l.length != r.length ? l.length < r.length : l.symbol < r.symbol;
  });
  std::vector<std::size_t> lengths;
  for (const auto& leaf : leaves) lengths.push_back(leaf.length);
  auto words = canonical_codewords(lengths);
  MatcherCode m;
  m.symbols = symbols;
  for (std::size_t t = 0; t < leaves.size(); ++t) m.entries.push_back({words[t], leaves[t].symbol});
  validate_matcher(m);
  return m;
}

inline MatcherCode realize_matcher(const DyadicDesign& design, const std::vector<std::string>& symbols) {
  return realize_matcher(design.k, design.depth, symbols);
}

}  // namespace halfhc
