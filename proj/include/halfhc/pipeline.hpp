#pragma once

// Source encoder followed by matcher: compress a corpus with Hc or halfHc,
// parse the resulting bits with a matcher code, and score what comes out
// against the costed target.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "halfhc/bitstream.hpp"
#include "halfhc/halfhc.hpp"
#include "halfhc/matcher.hpp"
#include "halfhc/ones_stats.hpp"
#include "halfhc/source_model.hpp"

namespace halfhc {

enum class CodecKind { hc, halfhc };

inline CodecKind parse_codec_kind(std::string_view name) {
  if (name == "hc") return CodecKind::hc;
  if (name == "halfhc") return CodecKind::halfhc;
  throw Error("unknown codec '" + std::string(name) + "'");
}

inline std::string_view codec_name(CodecKind kind) { return kind == CodecKind::hc ? "hc" : "halfhc"; }

/// Matcher output statistics for one bit stream.
struct MatcherEvaluation {
  std::vector<std::uint64_t> counts;
  std::vector<double> d_eff;
  std::uint64_t emitted = 0;
  std::uint64_t discarded_bits = 0;
  double kl = 0.0;    // KL(d_eff || p*)
  double cost = 0.0;  // w^T d_eff
};

/// What the matcher would produce from fair bits.
struct DyadicBaseline {
  std::vector<double> d;
  double kl = 0.0;
  double cost = 0.0;
};

struct PipelineReport {
  CodecKind codec = CodecKind::hc;
  OnesReport ones;
  MatcherEvaluation matcher;
  DyadicBaseline baseline;
  double cost_budget = 0.0;
};

inline MatcherEvaluation evaluate_matcher(const BitStream& bits, const MatcherCode& matcher, const ChannelSpec& spec) {
  if (matcher.symbols != spec.symbols) throw Error("matcher alphabet does not match channel spec symbols");
  auto parsed = parse_stream(bits, matcher, /*keep_symbols=*/false);
  MatcherEvaluation ev;
  ev.counts = std::move(parsed.counts);
  ev.d_eff = std::move(parsed.d_eff);
  ev.emitted = parsed.emitted;
  ev.discarded_bits = parsed.discarded_bits;
  ev.kl = kl_divergence(ev.d_eff, spec.p_star);
  ev.cost = average_cost(spec.w, ev.d_eff);
  return ev;
}

inline DyadicBaseline dyadic_baseline(const MatcherCode& matcher, const ChannelSpec& spec) {
  DyadicBaseline base;
  base.d = to_doubles(induced_pmf(matcher));
  base.kl = kl_divergence(base.d, spec.p_star);
  base.cost = average_cost(spec.w, base.d);
  return base;
}

/// Report for an arbitrary bit stream (used for the fair-bit smoke run).
inline PipelineReport run_pipeline_bits(const BitStream& bits, double expected_q, const MatcherCode& matcher,
                                        const ChannelSpec& spec) {
  validate_channel_spec(spec);
  PipelineReport rep;
  rep.ones = make_ones_report(expected_q, bits);
  rep.matcher = evaluate_matcher(bits, matcher, spec);
  rep.baseline = dyadic_baseline(matcher, spec);
  rep.cost_budget = spec.S;
  return rep;
}

/// Encodes `corpus` with the codec built from its own empirical distribution.
inline PipelineReport run_pipeline(std::string_view corpus, CodecKind codec, const CodecArtifact<Rational>& artifact,
                                   const MatcherCode& matcher, const ChannelSpec& spec) {
  const Codebook& code = codec == CodecKind::hc ? artifact.base : artifact.permuted;
  const Rational& q = codec == CodecKind::hc ? artifact.expected_q_base : artifact.expected_q_half;
  auto bits = encode_text(corpus, code);
  auto rep = run_pipeline_bits(bits, to_double(q), matcher, spec);
  rep.codec = codec;
  return rep;
}

inline PipelineReport run_pipeline(std::string_view corpus, CodecKind codec, const MatcherCode& matcher,
                                   const ChannelSpec& spec, SolverKind solver = SolverKind::exhaustive) {
  auto dist = estimate_distribution<Rational>(corpus);
  auto artifact = half_huffman(dist, solver);
  return run_pipeline(corpus, codec, artifact, matcher, spec);
}

}  // namespace halfhc
