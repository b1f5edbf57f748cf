#pragma once

// Independent reference computations. Nothing in here calls the solver,
// permutation, or Huffman code paths it is used to check; each oracle is a
// direct enumeration from the definitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "halfhc/numeric.hpp"

namespace halfhc::oracle {

inline std::size_t ones(const std::string& word) {
  return static_cast<std::size_t>(std::count(word.begin(), word.end(), '1'));
}

/// Minimum of sum p_i l_i over non-decreasing length profiles with
/// l_i <= n - 1 and Kraft sum <= 1.
inline Rational min_expected_length(const std::vector<Rational>& probs) {
  const std::size_t n = probs.size();
  std::optional<Rational> best;
  std::vector<std::size_t> len(n, 1);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t min_len) {
    if (i == n) {
      Rational kraft(0), cost(0);
      for (std::size_t k = 0; k < n; ++k) {
        kraft += Rational(1, std::int64_t{1} << len[k]);
        cost += probs[k] * Rational(static_cast<long>(len[k]));
      }
      if (kraft <= 1 && (!best || cost < *best)) best = cost;
      return;
    }
    for (std::size_t l = min_len; l + 1 <= n; ++l) {
      len[i] = l;
      go(i + 1, l);
    }
  };
  go(0, 1);
  return *best;
}

/// Recursive enumeration of all 2^m selections, x_j = 0 before x_j = 1.
/// Keeps the first strictly smaller objective, so ties resolve to the
/// lexicographically smallest x.
struct BruteSelection {
  std::vector<std::uint8_t> x;
  double objective = std::numeric_limits<double>::infinity();
  std::uint64_t visited = 0;
};

inline BruteSelection brute_force_selection(const std::vector<double>& a, double b) {
  BruteSelection best;
  std::vector<std::uint8_t> x(a.size());
  std::function<void(std::size_t, double)> go = [&](std::size_t j, double value) {
    if (j == a.size()) {
      ++best.visited;
      double obj = std::fabs(value);
      if (obj < best.objective) {
        best.objective = obj;
        best.x = x;
      }
      return;
    }
    x[j] = 0;
    go(j + 1, value);
    x[j] = 1;
    go(j + 1, value + a[j]);
  };
  go(0, b);
  return best;
}

/// Every selection's feasibility verdict at level t (with the same 1e-15
/// slack the search uses on its bounds).
inline bool brute_force_feasible(const std::vector<double>& a, double b, double t) {
  const std::size_t m = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double v = b;
    for (std::size_t j = 0; j < m; ++j)
      if ((mask >> (m - 1 - j)) & 1u) v += a[j];
    if (std::fabs(v) <= t + 1e-15) return true;
  }
  return false;
}

/// q of a code where, in each length class, the class codewords are handed
/// out to the members (in probability order) sorted by ones-count descending
/// (choice 0) or ascending (choice 1). Computed from the symbol-level sums.
/// `probs` must be sorted non-increasing and aligned with `codewords`.
template <class Real>
Real endpoint_q(const std::vector<Real>& probs, const std::vector<std::string>& codewords,
                const std::vector<std::uint8_t>& choice) {
  std::map<std::size_t, std::vector<std::size_t>> by_length;
  for (std::size_t i = 0; i < codewords.size(); ++i) by_length[codewords[i].size()].push_back(i);
  if (by_length.size() != choice.size()) throw Error("endpoint_q: choice size mismatch");
  Real num(0), den(0);
  std::size_t j = 0;
  for (auto& [len, members] : by_length) {
    std::vector<std::size_t> counts;
    for (auto i : members) counts.push_back(ones(codewords[i]));
    if (choice[j] == 0)
      std::sort(counts.begin(), counts.end(), std::greater<>());
    else
      std::sort(counts.begin(), counts.end());
    for (std::size_t k = 0; k < members.size(); ++k) {
      num += probs[members[k]] * Real(static_cast<long>(counts[k]));
      den += probs[members[k]] * Real(static_cast<long>(len));
    }
    ++j;
  }
  return num / den;
}

inline std::size_t distinct_lengths(const std::vector<std::string>& codewords) {
  std::vector<std::size_t> l;
  for (const auto& c : codewords) l.push_back(c.size());
  std::sort(l.begin(), l.end());
  return static_cast<std::size_t>(std::unique(l.begin(), l.end()) - l.begin());
}

/// min over all 2^m endpoint selections of |q - 1/2|.
template <class Real>
Real best_endpoint_objective(const std::vector<Real>& probs, const std::vector<std::string>& codewords) {
  const std::size_t m = distinct_lengths(codewords);
  std::optional<Real> best;
  std::vector<std::uint8_t> choice(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (std::size_t j = 0; j < m; ++j) choice[j] = (mask >> j) & 1u;
    Real q = endpoint_q(probs, codewords, choice);
    Real dev = q - Real(1) / Real(2);
    if (dev < Real(0)) dev = -dev;
    if (!best || dev < *best) best = dev;
  }
  return *best;
}

/// Max and min of sum_k p_k * ones(word assigned to k) over all k!
/// assignments of `words` to members.
inline std::pair<double, double> brute_force_extremes(const std::vector<double>& p,
                                                      const std::vector<std::string>& words) {
  std::vector<std::size_t> perm(words.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double hi = -1.0, lo = std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) v += p[k] * static_cast<double>(ones(words[perm[k]]));
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {hi, lo};
}

struct DyadicOracle {
  std::vector<std::uint64_t> k;
  double kl = std::numeric_limits<double>::infinity();
  double cost = 0.0;
  std::uint64_t feasible = 0;
};

/// Three-symbol dyadic enumeration written as explicit nested loops, with
/// KL evaluated as sum d ln d - sum d ln p.
inline DyadicOracle dyadic_three(const std::vector<double>& w, double S, const std::vector<double>& p, unsigned depth) {
  DyadicOracle best;
  const std::uint64_t total = std::uint64_t{1} << depth;
  for (std::uint64_t k1 = 1; k1 < total; ++k1) {
    for (std::uint64_t k2 = 1; k1 + k2 < total; ++k2) {
      const std::uint64_t k3 = total - k1 - k2;
      const double d[3] = {double(k1) / double(total), double(k2) / double(total), double(k3) / double(total)};
      const double cost = w[0] * d[0] + w[1] * d[1] + w[2] * d[2];
      if (cost > S + 1e-12) continue;
      ++best.feasible;
      double kl = 0.0;
      for (int i = 0; i < 3; ++i) kl += d[i] * std::log(d[i]) - d[i] * std::log(p[i]);
      if (kl < best.kl - 1e-15) {
        best.kl = kl;
        best.k = {k1, k2, k3};
        best.cost = cost;
      }
    }
  }
  return best;
}

}  // namespace halfhc::oracle
