#pragma once

// JSON file formats:
//
//   solver instance  {"a": [...], "b": x, "epsilon": e}        (epsilon optional)
//   channel spec     {"symbols": [...], "w": [...], "S": s, "p_star": [...]}
//                    (S may be null for "no budget")
//   matcher code     [{"codeword": "01", "symbol": "r"}, ...]
//   codec artifact   base/halfhc code tables, selection, expected q values
//   pipeline report  per-codec q statistics and matcher output scores

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfhc/halfhc.hpp"
#include "halfhc/matcher.hpp"
#include "halfhc/numeric.hpp"
#include "halfhc/perm_opt.hpp"
#include "halfhc/pipeline.hpp"
#include "halfhc/source_model.hpp"

namespace halfhc {

using nlohmann::json;

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(what + ": " + e.what());
  }
}

template <class T>
T json_get(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw Error(what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(what + ": field '" + key + "' has the wrong type");
  }
}

struct SolverInstance {
  std::vector<double> a;
  double b = 0.0;
  double epsilon = 1e-12;
};

inline SolverInstance parse_instance(const std::string& text) {
  auto j = parse_json(text, "instance");
  SolverInstance inst;
  inst.a = json_get<std::vector<double>>(j, "a", "instance");
  inst.b = json_get<double>(j, "b", "instance");
  if (j.contains("epsilon")) inst.epsilon = json_get<double>(j, "epsilon", "instance");
  return inst;
}

inline json to_json(const SolverInstance& inst) {
  return json{{"a", inst.a}, {"b", inst.b}, {"epsilon", inst.epsilon}};
}

inline ChannelSpec parse_channel_spec(const std::string& text) {
  auto j = parse_json(text, "channel spec");
  ChannelSpec spec;
  spec.symbols = json_get<std::vector<std::string>>(j, "symbols", "channel spec");
  spec.w = json_get<std::vector<double>>(j, "w", "channel spec");
  spec.p_star = json_get<std::vector<double>>(j, "p_star", "channel spec");
  if (!j.contains("S") || j.at("S").is_null())
    spec.S = std::numeric_limits<double>::infinity();
  else
    spec.S = json_get<double>(j, "S", "channel spec");
  validate_channel_spec(spec);
  return spec;
}

inline json to_json(const ChannelSpec& spec) {
  json S = std::isfinite(spec.S) ? json(spec.S) : json(nullptr);
  return json{{"symbols", spec.symbols}, {"w", spec.w}, {"S", S}, {"p_star", spec.p_star}};
}

inline MatcherCode parse_matcher(const std::string& text, const std::vector<std::string>& alphabet) {
  auto j = parse_json(text, "matcher");
  if (!j.is_array()) throw Error("matcher: expected a JSON array of {codeword, symbol}");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : j)
    pairs.emplace_back(json_get<std::string>(e, "codeword", "matcher"), json_get<std::string>(e, "symbol", "matcher"));
  return make_matcher(pairs, alphabet);
}

inline json to_json(const MatcherCode& m) {
  json arr = json::array();
  for (const auto& e : m.entries) arr.push_back({{"codeword", e.codeword}, {"symbol", m.symbols[e.symbol]}});
  return arr;
}

template <class Real>
json code_table_json(const Codebook& code, const SymbolDistribution<Real>& dist) {
  json rows = json::array();
  for (std::size_t i = 0; i < code.size(); ++i)
    rows.push_back({{"symbol", code.symbols[i]},
                    {"probability", to_double(dist.prob(i))},
                    {"codeword", code.codewords[i]},
                    {"length", code.length(i)}});
  return rows;
}

template <class Real>
json to_json(const Selection<Real>& sel) {
  std::vector<int> x(sel.x.begin(), sel.x.end());
  return json{{"x", x},
              {"objective", to_double(sel.objective)},
              {"evaluations", sel.evaluations},
              {"iterations", sel.iterations},
              {"refinements", sel.refinements},
              {"nodes", sel.nodes}};
}

template <class Real>
json to_json(const CodecArtifact<Real>& art, const SymbolDistribution<Real>& dist) {
  json classes = json::array();
  for (std::size_t j = 0; j < art.partition.size(); ++j) {
    classes.push_back({{"length", art.partition[j].length},
                       {"size", art.partition[j].members.size()},
                       {"r", to_double(art.profile.r[j])},
                       {"n_plus", to_double(art.profile.n_plus[j])},
                       {"n_minus", to_double(art.profile.n_minus[j])},
                       {"a", to_double(art.profile.a[j])}});
  }
  json sel = to_json(art.selection);
  sel["solver"] = std::string(solver_name(art.solver));
  return json{{"expected_length", to_double(art.expected_length)},
              {"expected_q_base", to_double(art.expected_q_base)},
              {"expected_q_half", to_double(art.expected_q_half)},
              {"b", to_double(art.profile.b)},
              {"classes", classes},
              {"selection", sel},
              {"base", code_table_json(art.base, dist)},
              {"halfhc", code_table_json(art.permuted, dist)}};
}

inline json to_json(const OnesReport& r) {
  return json{{"expected_q", r.expected_q},
              {"empirical_q", r.empirical_q},
              {"ones_count", r.ones_count},
              {"bit_count", r.bit_count},
              {"level", r.level},
              {"ci", {r.ci.low, r.ci.high}},
              {"fair_rejected", r.fair_rejected()}};
}

inline json to_json(const PipelineReport& r) {
  return json{{"codec", std::string(codec_name(r.codec))},
              {"ones", to_json(r.ones)},
              {"d_eff", r.matcher.d_eff},
              {"counts", r.matcher.counts},
              {"emitted", r.matcher.emitted},
              {"discarded_bits", r.matcher.discarded_bits},
              {"kl", r.matcher.kl},
              {"cost", r.matcher.cost},
              {"baseline", {{"d", r.baseline.d}, {"kl", r.baseline.kl}, {"cost", r.baseline.cost}}}};
}

/// `variant,cost,kl` rows for a cost-vs-KL scatter.
inline std::string cost_kl_csv(const std::vector<std::pair<std::string, const PipelineReport*>>& rows) {
  std::string out = "variant,cost,kl\n";
  char buf[96];
  for (const auto& [name, rep] : rows) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g\n", rep->matcher.cost, rep->matcher.kl);
    out += name + buf;
  }
  return out;
}

}  // namespace halfhc
