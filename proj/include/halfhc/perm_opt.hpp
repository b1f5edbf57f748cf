#pragma once

// Endpoint permutations and exact solvers for
//
//     minimize |a^T x + b|   over x in {0,1}^m.
//
// Every solver evaluates a full assignment the same way (start at b, add a_j
// for each x_j = 1 in index order), so floating-point objective values agree
// bit-for-bit across solvers and the shared tie-break (smallest objective,
// then lexicographically smallest x) yields identical selections.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halfhc/codeword.hpp"
#include "halfhc/huffman.hpp"
#include "halfhc/numeric.hpp"

namespace halfhc {

using BitVector = std::vector<std::uint8_t>;

/// Within-class arrangements as maps from member position to codeword
/// position: member k receives codeword `plus[k]` (resp. `minus[k]`).
struct ExtremePermutations {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
};

/// pi+ hands the codeword with the most 1s to the most probable member,
/// pi- the one with the fewest. Equal ones-counts go lexicographically
/// smaller codeword first in both.
template <class Real>
ExtremePermutations extreme_permutations(const std::vector<std::string>& codewords,
                                         const std::vector<Real>& conditional) {
  if (codewords.size() != conditional.size())
    throw Error("extreme_permutations: codewords and probabilities differ in size");
  for (std::size_t k = 1; k < conditional.size(); ++k) {
    if (conditional[k] > conditional[k - 1])
      throw Error("extreme_permutations: conditional probabilities not sorted non-increasing");
  }
  std::vector<std::size_t> ones(codewords.size());
  for (std::size_t k = 0; k < codewords.size(); ++k) ones[k] = ones_count(codewords[k]);

  ExtremePermutations out;
  out.plus.resize(codewords.size());
  std::iota(out.plus.begin(), out.plus.end(), std::size_t{0});
  out.minus = out.plus;
  std::sort(out.plus.begin(), out.plus.end(), [&](std::size_t l, std::size_t r) {
    if (ones[l] != ones[r]) return ones[l] > ones[r];
    return codewords[l] < codewords[r];
  });
  std::sort(out.minus.begin(), out.minus.end(), [&](std::size_t l, std::size_t r) {
    if (ones[l] != ones[r]) return ones[l] < ones[r];
    return codewords[l] < codewords[r];
  });
  return out;
}

/// Extreme conditional ones-counts per length class and the linear form
/// q(x) = a^T x + b + 0.5 they induce.
template <class Real>
struct EndpointProfile {
  std::vector<Real> n_plus;
  std::vector<Real> n_minus;
  std::vector<Real> r;
  Real expected_length{0};
  std::vector<Real> a;  // r_j (N_j^- - N_j^+) / L, never positive
  Real b{0};            // (sum_j r_j N_j^+) / L - 1/2
  std::vector<ExtremePermutations> permutations;

  std::size_t size() const { return a.size(); }
};

template <class Real>
std::vector<std::string> class_codewords(const LengthClass<Real>& cls, const Codebook& code) {
  std::vector<std::string> out;
  out.reserve(cls.members.size());
  for (auto i : cls.members) out.push_back(code.codewords[i]);
  return out;
}

template <class Real>
EndpointProfile<Real> endpoint_counts(const LengthClassPartition<Real>& part, const Codebook& code) {
  EndpointProfile<Real> prof;
  for (const auto& cls : part.classes) {
    auto words = class_codewords(cls, code);
    auto perms = extreme_permutations(words, cls.conditional);
    Real plus(0), minus(0);
    for (std::size_t k = 0; k < words.size(); ++k) {
      plus += cls.conditional[k] * Real(static_cast<long>(ones_count(words[perms.plus[k]])));
      minus += cls.conditional[k] * Real(static_cast<long>(ones_count(words[perms.minus[k]])));
    }
    prof.n_plus.push_back(plus);
    prof.n_minus.push_back(minus);
    prof.r.push_back(cls.probability);
    prof.expected_length += cls.probability * Real(static_cast<long>(cls.length));
    prof.permutations.push_back(std::move(perms));
  }
  Real ones_plus(0);
  for (std::size_t j = 0; j < prof.r.size(); ++j) {
    prof.a.push_back(prof.r[j] * (prof.n_minus[j] - prof.n_plus[j]) / prof.expected_length);
    ones_plus += prof.r[j] * prof.n_plus[j];
  }
  prof.b = ones_plus / prof.expected_length - Real(1) / Real(2);
  return prof;
}

// ---------------------------------------------------------------------------
// Solvers

template <class Real>
struct Selection {
  BitVector x;
  Real objective{0};
  std::uint64_t evaluations = 0;  // full assignments scored (exhaustive)
  std::uint64_t iterations = 0;   // bisection halvings
  std::uint64_t refinements = 0;  // bisection polish steps after convergence
  std::uint64_t nodes = 0;        // search-tree nodes expanded
};

/// a^T x + b, accumulated from b in index order.
template <class Real>
Real linear_value(std::span<const Real> a, const Real& b, std::span<const std::uint8_t> x) {
  if (a.size() != x.size()) throw Error("selection length does not match coefficient count");
  Real v = b;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (x[j]) v += a[j];
  }
  return v;
}

template <class Real>
Real selection_objective(std::span<const Real> a, const Real& b, std::span<const std::uint8_t> x) {
  return abs_value(linear_value(a, b, x));
}

inline constexpr std::size_t kExhaustiveLimit = 30;

/// Scores all 2^m selections in lexicographic order (x_1 most significant).
template <class Real>
Selection<Real> solve_exhaustive(std::span<const Real> a, const Real& b) {
  const std::size_t m = a.size();
  if (m > kExhaustiveLimit)
    throw Error("exhaustive search limited to m <= " + std::to_string(kExhaustiveLimit) + " (m = " +
                std::to_string(m) + "); use bisection or branch-and-bound");
  Selection<Real> best;
  BitVector x(m, 0);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t j = 0; j < m; ++j) x[j] = static_cast<std::uint8_t>((mask >> (m - 1 - j)) & 1u);
    Real obj = selection_objective<Real>(a, b, x);
    if (mask == 0 || obj < best.objective) {
      best.objective = obj;
      best.x = x;
    }
  }
  best.evaluations = total;
  return best;
}

namespace detail {

/// Depth-first search, x_j = 0 branch first, so the first accepted leaf is
/// the lexicographically smallest. Subtrees are pruned when the reachable
/// interval of a^T x + b misses [-limit - slack, limit + slack]; leaves are
/// accepted by `accept` on the exactly accumulated value.
template <class Real, class Accept>
std::optional<BitVector> depth_first(std::span<const Real> a, const Real& b, const Real& limit, const Real& slack,
                                     Accept accept, std::uint64_t* nodes) {
  const std::size_t m = a.size();
  std::vector<Real> suffix_lo(m + 1, Real(0)), suffix_hi(m + 1, Real(0));
  for (std::size_t j = m; j-- > 0;) {
    suffix_lo[j] = suffix_lo[j + 1] + (a[j] < Real(0) ? a[j] : Real(0));
    suffix_hi[j] = suffix_hi[j + 1] + (a[j] > Real(0) ? a[j] : Real(0));
  }
  const Real upper = limit + slack;
  const Real lower = -upper;

  BitVector x(m, 0);
  std::vector<Real> partial(m + 1);
  partial[0] = b;
  // choice[j] == 1: the x_j = 1 branch is still pending; 2: both done.
  std::vector<std::uint8_t> choice(m + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (nodes) ++*nodes;
    const Real& fixed = partial[depth];
    bool viable = !(fixed + suffix_hi[depth] < lower) && !(fixed + suffix_lo[depth] > upper);
    if (viable && depth == m && accept(fixed)) return x;
    if (viable && depth < m) {
      x[depth] = 0;
      partial[depth + 1] = fixed;
      choice[depth] = 1;
      ++depth;
      continue;
    }
    // backtrack
    while (true) {
      if (depth == 0) return std::nullopt;
      --depth;
      if (choice[depth] == 1) {
        x[depth] = 1;
        partial[depth + 1] = partial[depth] + a[depth];
        choice[depth] = 2;
        ++depth;
        break;
      }
      x[depth] = 0;
    }
  }
}

}  // namespace detail

/// Finds the lexicographically smallest x with -t <= a^T x + b <= t, with
/// bounds widened by the scalar's bound tolerance.
template <class Real>
std::optional<BitVector> feasibility_search(std::span<const Real> a, const Real& b, const Real& t,
                                            std::uint64_t* nodes = nullptr) {
  if (t < Real(0)) throw Error("feasibility_search: t must be non-negative");
  const Real tol = bound_tolerance<Real>();
  const Real bound = t + tol;
  return detail::depth_first<Real>(a, b, t, tol, [&](const Real& v) { return abs_value(v) <= bound; }, nodes);
}

/// Bisection on the epigraph level t with a feasibility oracle.
///
/// Halves [l, u] until u - l <= epsilon, keeping the last feasible witness.
/// The witness is then polished to the exact optimum: while some selection
/// scores strictly better, move to it; finally take the lexicographically
/// smallest selection attaining that score. The polish usually costs zero or
/// one extra feasibility call and makes the result identical to exhaustive
/// search.
template <class Real>
Selection<Real> solve_bisection(std::span<const Real> a, const Real& b, const Real& epsilon,
                                std::optional<Real> l0 = std::nullopt, std::optional<Real> u0 = std::nullopt) {
  if (!(epsilon > Real(0))) throw Error("bisection: epsilon must be positive");
  Selection<Real> sel;
  Real lo = l0.value_or(Real(0));
  Real hi;
  BitVector witness(a.size(), 0);
  if (u0) {
    hi = *u0;
    if (hi < lo) throw Error("bisection: empty initial bracket");
    auto w = feasibility_search<Real>(a, b, hi, &sel.nodes);
    if (!w) throw Error("bisection: initial upper bound is not achievable");
    witness = std::move(*w);
  } else {
    hi = abs_value(b);  // x = 0 attains |b|
  }

  while (hi - lo > epsilon) {
    Real t = (lo + hi) / Real(2);
    ++sel.iterations;
    if (auto w = feasibility_search<Real>(a, b, t, &sel.nodes)) {
      hi = t;
      witness = std::move(*w);
    } else {
      lo = t;
    }
  }

  Real best = selection_objective<Real>(a, b, witness);
  const Real slack = bound_tolerance<Real>();
  while (auto better = detail::depth_first<Real>(a, b, best, slack, [&](const Real& v) { return abs_value(v) < best; },
                                                 &sel.nodes)) {
    ++sel.refinements;
    witness = std::move(*better);
    best = selection_objective<Real>(a, b, witness);
  }
  auto first = detail::depth_first<Real>(a, b, best, slack, [&](const Real& v) { return abs_value(v) <= best; },
                                         &sel.nodes);
  sel.x = first ? std::move(*first) : std::move(witness);
  sel.objective = selection_objective<Real>(a, b, sel.x);
  return sel;
}

namespace detail {

template <class Real>
Real rounding_slack(std::span<const Real> a, const Real& b) {
  if constexpr (is_exact_v<Real>) {
    return Real(0);
  } else {
    Real scale = abs_value(b);
    for (const auto& v : a) scale += abs_value(v);
    return Real(4) * Real(static_cast<double>(a.size() + 1)) * std::numeric_limits<Real>::epsilon() * scale;
  }
}

}  // namespace detail

/// Best-first branch and bound over partial assignments.
///
/// A node fixes x_1..x_k; its bound is the distance from 0 to the reachable
/// interval of a^T x + b (0 when the interval straddles 0). The incumbent
/// starts at x = 0. Nodes are discarded once their bound exceeds the
/// incumbent (plus a rounding slack for floating point) so that every
/// selection tying the optimum is still reached and the lexicographic
/// tie-break holds.
template <class Real>
Selection<Real> solve_branch_bound(std::span<const Real> a, const Real& b) {
  const std::size_t m = a.size();
  std::vector<Real> suffix_lo(m + 1, Real(0)), suffix_hi(m + 1, Real(0));
  for (std::size_t j = m; j-- > 0;) {
    suffix_lo[j] = suffix_lo[j + 1] + (a[j] < Real(0) ? a[j] : Real(0));
    suffix_hi[j] = suffix_hi[j + 1] + (a[j] > Real(0) ? a[j] : Real(0));
  }
  struct Node {
    Real bound;
    Real fixed;
    BitVector x;  // length == depth
  };
  auto bound_of = [&](const Real& fixed, std::size_t depth) {
    Real lo = fixed + suffix_lo[depth];
    Real hi = fixed + suffix_hi[depth];
    if (lo > Real(0)) return lo;
    if (hi < Real(0)) return Real(-hi);
    return Real(0);
  };
  auto worse = [](const Node& l, const Node& r) {
    if (l.bound != r.bound) return l.bound > r.bound;
    if (l.x.size() != r.x.size()) return l.x.size() < r.x.size();
    return l.x > r.x;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  Selection<Real> best;
  best.x.assign(m, 0);
  best.objective = abs_value(b);
  const Real slack = detail::rounding_slack(a, b);

  open.push(Node{bound_of(b, 0), b, {}});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound > best.objective + slack) continue;
    ++best.nodes;
    const std::size_t depth = node.x.size();
    if (depth == m) {
      Real obj = abs_value(node.fixed);
      if (obj < best.objective || (obj == best.objective && node.x < best.x)) {
        best.objective = obj;
        best.x = node.x;
      }
      continue;
    }
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
      Node child;
      child.fixed = bit ? Real(node.fixed + a[depth]) : node.fixed;
      child.x = node.x;
      child.x.push_back(bit);
      child.bound = bound_of(child.fixed, depth + 1);
      if (!(child.bound > best.objective + slack)) open.push(std::move(child));
    }
  }
  return best;
}

enum class SolverKind { exhaustive, bisection, branch_bound };

inline SolverKind parse_solver_kind(std::string_view name) {
  if (name == "exhaustive") return SolverKind::exhaustive;
  if (name == "bisection") return SolverKind::bisection;
  if (name == "bb" || name == "branch_bound") return SolverKind::branch_bound;
  throw Error("unknown solver '" + std::string(name) + "'");
}

inline std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::exhaustive: return "exhaustive";
    case SolverKind::bisection: return "bisection";
    case SolverKind::branch_bound: return "bb";
  }
  return "?";
}

template <class Real>
Real default_epsilon() {
  if constexpr (is_exact_v<Real>)
    return Real(1, 1000000000000LL);
  else
    return Real(1e-12);
}

template <class Real>
Selection<Real> solve(SolverKind kind, std::span<const Real> a, const Real& b,
                      const Real& epsilon = default_epsilon<Real>()) {
  switch (kind) {
    case SolverKind::exhaustive: return solve_exhaustive<Real>(a, b);
    case SolverKind::bisection: return solve_bisection<Real>(a, b, epsilon);
    case SolverKind::branch_bound: return solve_branch_bound<Real>(a, b);
  }
  throw Error("unknown solver");
}

}  // namespace halfhc
