#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halfhc/csv.hpp"
#include "halfhc/numeric.hpp"

namespace halfhc {

/// Splits UTF-8 text into one string per code point. Whitespace and control
/// characters are kept as symbols.
inline std::vector<std::string> split_symbols(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : (lead >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > text.size())
      throw Error("invalid UTF-8 at byte offset " + std::to_string(i));
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80)
        throw Error("invalid UTF-8 at byte offset " + std::to_string(i + k));
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

/// Source alphabet with strictly positive probabilities in non-increasing
/// order. Instances can only be obtained through the validating factories
/// below, so every live object satisfies the invariants.
template <class Real>
class SymbolDistribution {
public:
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<Real>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  const Real& prob(std::size_t i) const { return probs_[i]; }
  const std::string& symbol(std::size_t i) const { return symbols_[i]; }

  /// Index of a symbol, or size() if absent.
  std::size_t index_of(std::string_view s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  template <class To>
  SymbolDistribution<To> as() const {
    std::vector<To> p;
    p.reserve(probs_.size());
    for (const auto& v : probs_) p.push_back(convert<To>(v));
    return SymbolDistribution<To>::from_sorted(symbols_, std::move(p));
  }

  /// Accepts an already-sorted table. Throws Error if any invariant fails.
  static SymbolDistribution from_sorted(std::vector<std::string> symbols, std::vector<Real> probs) {
    if (symbols.size() != probs.size()) throw Error("symbol/probability size mismatch");
    if (probs.size() < 2) throw Error("alphabet size < 2");
    std::set<std::string> seen;
    Real total(0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] > Real(0))) throw Error("degenerate probability");
      if (i > 0 && probs[i] > probs[i - 1]) throw Error("probabilities not sorted non-increasing");
      if (!seen.insert(symbols[i]).second) throw Error("duplicate symbol '" + symbols[i] + "'");
      total += probs[i];
    }
    if constexpr (is_exact_v<Real>) {
      if (total != Real(1)) throw Error("probabilities do not sum to 1");
    } else {
      if (std::abs(to_double(total) - 1.0) > 1e-12) throw Error("probabilities do not sum to 1");
    }
    SymbolDistribution d;
    d.symbols_ = std::move(symbols);
    d.probs_ = std::move(probs);
    return d;
  }

private:
  std::vector<std::string> symbols_;
  std::vector<Real> probs_;
};

/// Normalizes weights and sorts non-increasing. Ties keep input order.
template <class Real>
SymbolDistribution<Real> validate_and_sort(const std::vector<std::pair<std::string, Real>>& raw) {
  std::set<std::string> seen;
  Real total(0);
  for (const auto& [sym, w] : raw) {
    if (!(w > Real(0))) throw Error("degenerate probability");
    if (!seen.insert(sym).second) throw Error("duplicate symbol '" + sym + "'");
    total += w;
  }
  if (raw.size() < 2) throw Error("alphabet size < 2");
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return raw[l].second > raw[r].second; });
  std::vector<std::string> symbols;
  std::vector<Real> probs;
  for (auto i : order) {
    symbols.push_back(raw[i].first);
    probs.push_back(raw[i].second / total);
  }
  return SymbolDistribution<Real>::from_sorted(std::move(symbols), std::move(probs));
}

/// Per-symbol occurrence counts, most frequent first; ties by code point.
inline std::vector<std::pair<std::string, std::uint64_t>> count_symbols(std::string_view text) {
  std::map<std::string, std::uint64_t> counts;  // byte order == code point order for UTF-8
  for (auto& s : split_symbols(text)) ++counts[s];
  std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.second > r.second; });
  return out;
}

/// Empirical relative frequencies of the distinct characters of `text`.
template <class Real = Rational>
SymbolDistribution<Real> estimate_distribution(std::string_view text) {
  auto counts = count_symbols(text);
  if (counts.empty()) throw Error("empty corpus");
  if (counts.size() < 2) throw Error("alphabet size < 2");
  std::uint64_t total = 0;
  for (auto& c : counts) total += c.second;
  std::vector<std::string> symbols;
  std::vector<Real> probs;
  for (auto& [s, c] : counts) {
    symbols.push_back(s);
    probs.push_back(ratio<Real>(static_cast<std::int64_t>(c), static_cast<std::int64_t>(total)));
  }
  return SymbolDistribution<Real>::from_sorted(std::move(symbols), std::move(probs));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses `symbol,weight` CSV text. Weights are decimal literals and are
/// read exactly.
inline SymbolDistribution<Rational> parse_distribution_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows.front().size() != 2 || rows.front()[0] != "symbol" || rows.front()[1] != "weight")
    throw Error("distribution csv: expected header 'symbol,weight'");
  std::vector<std::pair<std::string, Rational>> raw;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 2)
      throw Error("distribution csv: row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " fields");
    raw.emplace_back(row[0], parse_decimal(row[1]));
  }
  return validate_and_sort(raw);
}

inline SymbolDistribution<Rational> read_distribution_csv(const std::string& path) {
  try {
    return parse_distribution_csv(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace halfhc
