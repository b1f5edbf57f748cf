// halfhc: command-line front end.
//
//   halfhc analyze CORPUS            Hc and halfHc tables, q report
//   halfhc solve INSTANCE            selection for an (a, b) instance
//   halfhc pipeline [CORPUS]         source code + matcher, both codecs
//   halfhc dyadic-search             brute-force dyadic matcher design
//
// Exit status: 0 ok, 1 usage error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfhc/csv.hpp"
#include "halfhc/halfhc.hpp"
#include "halfhc/json_io.hpp"
#include "halfhc/matcher.hpp"
#include "halfhc/pipeline.hpp"
#include "halfhc/rng.hpp"

namespace {

using namespace halfhc;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string corpus;
  std::string instance;
  std::string channel;
  std::string matcher;
  std::string codec = "both";
  std::string solver = "exhaustive";
  std::optional<double> epsilon;
  std::optional<unsigned> depth;
  std::uint64_t seed = 0;
  std::uint64_t fair_bits = 0;
  double level = 0.95;
  std::string out;
  std::string csv;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write failed for '" + path + "'");
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string printable(const std::string& s) {
  if (s == " ") return "' '";
  if (s == "\n") return "\\n";
  if (s == "\t") return "\\t";
  if (s == "\r") return "\\r";
  return s;
}

std::string code_table(const char* title, const Codebook& code, const SymbolDistribution<Rational>& dist) {
  std::ostringstream os;
  os << title << "\n";
  os << "  symbol  probability   codeword\n";
  for (std::size_t i = 0; i < code.size(); ++i) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %-6s  %.8f  %s\n", printable(code.symbols[i]).c_str(), to_double(dist.prob(i)),
                  code.codewords[i].c_str());
    os << buf;
  }
  return os.str();
}

std::string ones_block(const char* name, const OnesReport& r) {
  std::ostringstream os;
  os << name << ": expected q " << fmt("%.5f", r.expected_q) << ", empirical q " << fmt("%.5f", r.empirical_q) << " ("
     << r.ones_count << "/" << r.bit_count << "), " << fmt("%g", 100 * r.level) << "% CI [" << fmt("%.5f", r.ci.low)
     << ", " << fmt("%.5f", r.ci.high) << "], fair " << (r.fair_rejected() ? "rejected" : "not rejected") << "\n";
  return os.str();
}

Rational epsilon_or_default(const RunConfig& cfg) {
  if (!cfg.epsilon) return default_epsilon<Rational>();
  if (!(*cfg.epsilon > 0)) throw UsageError("--epsilon must be positive");
  return parse_decimal(fmt("%.17g", *cfg.epsilon));
}

int cmd_analyze(const RunConfig& cfg) {
  auto corpus = read_text_file(cfg.corpus);
  auto dist = estimate_distribution<Rational>(corpus);
  auto art = half_huffman(dist, parse_solver_kind(cfg.solver), epsilon_or_default(cfg));
  auto hc = make_ones_report(to_double(art.expected_q_base), encode_text(corpus, art.base), cfg.level);
  auto half = make_ones_report(to_double(art.expected_q_half), encode_text(corpus, art.permuted), cfg.level);

  std::ostringstream os;
  os << "symbols " << dist.size() << ", classes " << art.partition.size() << ", expected length "
     << fmt("%.6f", to_double(art.expected_length)) << " bits\n";
  os << "selection x = (";
  for (std::size_t j = 0; j < art.selection.x.size(); ++j) os << (j ? "," : "") << int(art.selection.x[j]);
  os << ") via " << solver_name(art.solver) << "\n\n";
  os << code_table("Hc", art.base, dist) << "\n" << code_table("halfHc", art.permuted, dist) << "\n";
  os << ones_block("Hc", hc) << ones_block("halfHc", half);
  std::cout << os.str();

  if (!cfg.out.empty()) {
    auto j = to_json(art, dist);
    j["ones"] = {{"hc", to_json(hc)}, {"halfhc", to_json(half)}};
    emit(j.dump(2) + "\n", cfg.out);
  }
  if (!cfg.csv.empty()) {
    std::string text = "codec,symbol,probability,codeword,length\n";
    for (const auto& [name, code] : {std::pair<const char*, const Codebook*>{"hc", &art.base}, {"halfhc", &art.permuted}})
      for (std::size_t i = 0; i < code->size(); ++i)
        text += csv::join({name, code->symbols[i], fmt("%.17g", to_double(dist.prob(i))), code->codewords[i],
                           std::to_string(code->length(i))}) +
                "\n";
    emit(text, cfg.csv);
  }
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  auto inst = parse_instance(read_text_file(cfg.instance));
  double eps = cfg.epsilon ? *cfg.epsilon : inst.epsilon;
  if (!(eps > 0)) throw UsageError("--epsilon must be positive");
  auto kind = parse_solver_kind(cfg.solver);
  auto sel = solve<double>(kind, inst.a, inst.b, eps);
  auto j = to_json(sel);
  j["solver"] = std::string(solver_name(kind));
  emit(j.dump(2) + "\n", cfg.out);
  return 0;
}

MatcherCode load_or_design_matcher(const RunConfig& cfg, const ChannelSpec& spec) {
  if (!cfg.matcher.empty()) return parse_matcher(read_text_file(cfg.matcher), spec.symbols);
  return realize_matcher(dyadic_search(spec, *cfg.depth), spec.symbols);
}

int cmd_pipeline(const RunConfig& cfg) {
  if (cfg.matcher.empty() && !cfg.depth) throw UsageError("pipeline needs --matcher or --depth");
  if (cfg.corpus.empty() && cfg.fair_bits == 0) throw UsageError("pipeline needs a corpus or --fair-bits");
  auto spec = parse_channel_spec(read_text_file(cfg.channel));
  auto matcher = load_or_design_matcher(cfg, spec);

  std::vector<std::pair<std::string, PipelineReport>> reports;
  if (cfg.fair_bits > 0) {
    Rng rng(cfg.seed);
    reports.emplace_back("fair", run_pipeline_bits(fair_bits(cfg.fair_bits, rng), 0.5, matcher, spec));
  }
  if (!cfg.corpus.empty()) {
    auto corpus = read_text_file(cfg.corpus);
    auto dist = estimate_distribution<Rational>(corpus);
    auto art = half_huffman(dist, parse_solver_kind(cfg.solver), epsilon_or_default(cfg));
    for (auto kind : {CodecKind::hc, CodecKind::halfhc}) {
      if (cfg.codec != "both" && parse_codec_kind(cfg.codec) != kind) continue;
      reports.emplace_back(std::string(codec_name(kind)), run_pipeline(corpus, kind, art, matcher, spec));
    }
  }

  json variants = json::object();
  std::vector<std::pair<std::string, const PipelineReport*>> rows;
  for (const auto& [name, rep] : reports) {
    variants[name] = to_json(rep);
    rows.emplace_back(name, &rep);
  }
  json S = std::isfinite(spec.S) ? json(spec.S) : json(nullptr);
  json out = {{"cost_budget", S}, {"matcher", to_json(matcher)}, {"variants", variants}};
  emit(out.dump(2) + "\n", cfg.out);
  if (!cfg.csv.empty()) emit(cost_kl_csv(rows), cfg.csv);
  return 0;
}

int cmd_dyadic(const RunConfig& cfg) {
  auto spec = parse_channel_spec(read_text_file(cfg.channel));
  auto design = dyadic_search(spec, cfg.depth.value_or(8));
  auto matcher = realize_matcher(design, spec.symbols);
  json j = {{"depth", design.depth}, {"k", design.k},       {"d", design.d},
            {"kl", design.kl},       {"cost", design.cost}, {"matcher", to_json(matcher)}};
  emit(j.dump(2) + "\n", cfg.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"half Huffman coding toolkit"};
  app.require_subcommand(1);

  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", cfg.solver, "exhaustive | bisection | bb")
        ->check(CLI::IsMember({"exhaustive", "bisection", "bb", "branch_bound"}));
    sub->add_option("--epsilon", cfg.epsilon, "bisection tolerance");
  };

  auto* analyze = app.add_subcommand("analyze", "code tables and frequency-of-ones report for a corpus");
  analyze->add_option("corpus", cfg.corpus, "UTF-8 text file")->required();
  add_solver(analyze);
  analyze->add_option("--level", cfg.level, "confidence level")->check(CLI::Range(0.5, 0.999999));
  analyze->add_option("--out", cfg.out, "write artifact JSON here");
  analyze->add_option("--csv", cfg.csv, "write code tables CSV here");

  auto* solve_cmd = app.add_subcommand("solve", "solve min |a^T x + b| over binary x");
  solve_cmd->add_option("instance", cfg.instance, "instance JSON")->required();
  add_solver(solve_cmd);
  solve_cmd->add_option("--out", cfg.out, "write selection JSON here (default stdout)");

  auto* pipeline = app.add_subcommand("pipeline", "encode a corpus and parse it with a matcher code");
  pipeline->add_option("corpus", cfg.corpus, "UTF-8 text file");
  pipeline->add_option("--channel", cfg.channel, "channel spec JSON")->required();
  pipeline->add_option("--matcher", cfg.matcher, "matcher code JSON");
  pipeline->add_option("--depth", cfg.depth, "design a dyadic matcher at this depth")->check(CLI::Range(1, 12));
  pipeline->add_option("--codec", cfg.codec, "hc | halfhc | both")->check(CLI::IsMember({"hc", "halfhc", "both"}));
  pipeline->add_option("--fair-bits", cfg.fair_bits, "also run N seeded fair bits through the matcher");
  pipeline->add_option("--seed", cfg.seed, "generator seed");
  add_solver(pipeline);
  pipeline->add_option("--out", cfg.out, "write report JSON here (default stdout)");
  pipeline->add_option("--csv", cfg.csv, "write variant,cost,kl CSV here");

  auto* dyadic = app.add_subcommand("dyadic-search", "brute-force dyadic matcher for a channel spec");
  dyadic->add_option("--channel", cfg.channel, "channel spec JSON")->required();
  dyadic->add_option("--depth", cfg.depth, "resolution 2^-D (default 8)")->check(CLI::Range(1, 12));
  dyadic->add_option("--out", cfg.out, "write design JSON here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*solve_cmd) return cmd_solve(cfg);
    if (*pipeline) return cmd_pipeline(cfg);
    return cmd_dyadic(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}
