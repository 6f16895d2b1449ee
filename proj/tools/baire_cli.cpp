#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "baire/embed.hpp"
#include "baire/game.hpp"
#include "baire/hierarchy.hpp"
#include "baire/json_io.hpp"
#include "baire/point_spec.hpp"
#include "baire/rank.hpp"
#include "baire/sampling.hpp"
#include "baire/universal.hpp"
#include "baire/verify.hpp"

using namespace baire;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kUsage = 2, kExhausted = 3 };

// Input that parsed but is unusable.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

Json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  return Json::parse(f);
}

// ralpha ---------------------------------------------------------------------

struct RalphaArgs {
  std::string alpha = "w";
  std::string x, y;
  bool random = false;
};

int cmd_ralpha(const RunConfig& cfg, const RalphaArgs& a) {
  const Ordinal alpha = parse_ordinal(a.alpha);
  const GammaCodec codec(alpha);
  PointSpec xs, ys;
  if (a.random) {
    Rng rng(cfg.seed);
    xs = random_natural_spec(rng);
    ys = random_gamma_spec(rng, codec);
  } else {
    if (a.x.empty() || a.y.empty()) throw UsageError("--x and --y are required without --random");
    xs = parse_point_spec(a.x);
    ys = parse_point_spec(a.y);
  }
  const DescentTrace t = r_alpha_decide(alpha, natural_point(xs), GammaPoint::from_spec(ys, codec));
  emit_json(cfg, Json{{"alpha", format_ordinal(alpha)},
                      {"x", format_point_spec(xs)},
                      {"y", format_point_spec(ys)},
                      {"trace", t}});
  return check_trace(t) ? kPropertyFailure : kOk;
}

// rank -----------------------------------------------------------------------

struct RankArgs {
  std::string graph = "ealpha";
  std::string alpha = "w";
  std::string s, t;
  std::uint64_t branch = 3;
  std::size_t depth = 5;
};

int cmd_rank(const RunConfig& cfg, const RankArgs& a) {
  std::optional<AlphaTree> tree;
  GraphOracle g = complete_graph();
  if (a.graph == "ealpha") {
    g = e_alpha(parse_ordinal(a.alpha));
  } else {
    tree = tree_from_json(read_json(a.graph));
    g = graph_from_labeling(labeling_of(*tree), a.graph);
  }
  const FinSeq s = parse_seq(a.s), t = parse_seq(a.t);
  if (s.size() != t.size() || s == t) throw UsageError("--s and --t must be distinct and of equal length");
  const RankBound r = rank_upper(g, s, t, a.branch, a.depth);
  emit_json(cfg, Json{{"graph", a.graph == "ealpha" ? "e_alpha(" + format_ordinal(parse_ordinal(a.alpha)) + ")" : a.graph},
                      {"s", s},
                      {"t", t},
                      {"branch", a.branch},
                      {"depth", a.depth},
                      {"rank", r}});
  return kOk;
}

// game -----------------------------------------------------------------------

struct GameArgs {
  std::string alpha = "w";
  std::string gamma = "5";
  std::string challenger = "greedy";
  std::size_t rounds = 1000;
};

int cmd_game(const RunConfig& cfg, const GameArgs& a) {
  const Ordinal alpha = parse_ordinal(a.alpha);
  const Ordinal gamma = parse_ordinal(a.gamma);
  if (!(gamma < alpha))
    throw UsageError("--gamma must be below --alpha");
  std::unique_ptr<Challenger> ch;
  try {
    ch = make_challenger(a.challenger, alpha, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Transcript t = rank_game_play(alpha, initial_game_state(alpha, gamma), *ch, a.rounds);
  emit_json(cfg, t);
  switch (t.outcome) {
    case GameOutcome::kRefuted:
      if (const auto why = audit_transcript(t)) {
        std::cerr << "audit failed: " << *why << "\n";
        return kPropertyFailure;
      }
      return kOk;
    case GameOutcome::kRoundLimit:
      std::cerr << "round limit reached\n";
      return kExhausted;
    case GameOutcome::kRejected:
      std::cerr << "challenger move rejected: " << t.diagnosis << "\n";
      return kUsage;
    case GameOutcome::kProverStuck:
      std::cerr << "prover stuck: " << t.diagnosis << "\n";
      return kPropertyFailure;
  }
  return kPropertyFailure;
}

// universal ------------------------------------------------------------------

struct UniversalArgs {
  std::string alpha = "w^2";
  std::uint64_t steps = 1000;
  std::string variant = "plain";
};

int cmd_universal(const RunConfig& cfg, const UniversalArgs& a) {
  UniversalTree u(parse_ordinal(a.alpha), parse_variant(a.variant));
  for (std::uint64_t i = 0; i < a.steps; ++i) u.build_step();
  if (cfg.format == "dot")
    emit(cfg, tree_to_dot(u));
  else
    emit_json(cfg, u.snapshot());
  return kOk;
}

// embed ----------------------------------------------------------------------

struct EmbedArgs {
  std::string tree;
  std::string universal = "fresh";
  std::string universal_out;
  std::uint64_t steps = 500;
  std::string variant = "plain";
  std::string alpha;
};

int cmd_embed(const RunConfig& cfg, const EmbedArgs& a) {
  const AlphaTree tree = tree_from_json(read_json(a.tree));
  std::optional<UniversalTree> u;
  if (a.universal == "fresh") {
    u.emplace(a.alpha.empty() ? tree.alpha() : parse_ordinal(a.alpha), parse_variant(a.variant));
    for (std::uint64_t i = 0; i < a.steps; ++i) u->build_step();
  } else {
    u.emplace(read_json(a.universal).get<UniversalSnapshot>());
  }
  if (u->alpha() < tree.alpha()) throw UsageError("source labels exceed the universal tree's alpha");
  const TreeSource src(tree);
  const Embedding e = embed_tree(src, *u);
  const EmbeddingCheck chk = check_embedding(e);
  if (!a.universal_out.empty()) {
    std::ofstream f(a.universal_out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.universal_out);
    f << Json(u->snapshot()).dump(2) << "\n";
  }
  Json j = record_of(e, a.tree, a.universal_out.empty() ? a.universal : a.universal_out);
  j["check"] = {{"nodes", chk.nodes}, {"pairs", chk.pairs}, {"defects", chk.defects}, {"ok", chk.ok()}};
  j["scheduled_steps"] = e.scheduled_steps();
  j["demand_steps"] = e.demand_steps();
  emit_json(cfg, j);
  return chk.ok() ? kOk : kPropertyFailure;
}

// verify ---------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  std::vector<SuiteReport> reports;
  try {
    reports = run_suites(suite, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg, format_report(reports, cfg.seed));
  for (const auto& r : reports)
    if (!r.passed()) return kPropertyFailure;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clopen graphs on Baire space: decision, rank, universal trees"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  // Also accept the global options after the subcommand.
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--out", cfg.out, "Output file");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  };

  RalphaArgs ra;
  auto* ralpha = app.add_subcommand("ralpha", "Decide (x, y) in R_alpha and print the descent trace");
  ralpha->add_option("--alpha", ra.alpha, "Limit ordinal")->capture_default_str();
  ralpha->add_option("--x", ra.x, "Point of w^w, e.g. 0,(1)*");
  ralpha->add_option("--y", ra.y, "Point of Gamma_alpha^w, e.g. (1|in)*");
  ralpha->add_flag("--random", ra.random, "Draw x and y from --seed");
  add_common(ralpha);

  RankArgs rk;
  auto* rank = app.add_subcommand("rank", "Truncated rank of a rectangle");
  rank->add_option("--graph", rk.graph, "ealpha or a tree JSON file")->capture_default_str();
  rank->add_option("--alpha", rk.alpha, "alpha for ealpha")->capture_default_str();
  rank->add_option("--s", rk.s, "First sequence, e.g. 0,1")->required();
  rank->add_option("--t", rk.t, "Second sequence")->required();
  rank->add_option("--branch", rk.branch, "Branch bound B")->capture_default_str()->check(CLI::PositiveNumber);
  rank->add_option("--depth", rk.depth, "Depth bound D")->capture_default_str();
  add_common(rank);

  GameArgs ga;
  auto* game = app.add_subcommand("game", "Play the rank game and print the transcript");
  game->add_option("--alpha", ga.alpha, "Limit ordinal")->capture_default_str();
  game->add_option("--gamma", ga.gamma, "Claimed rank")->capture_default_str();
  game->add_option("--challenger", ga.challenger, "greedy or random")->capture_default_str();
  game->add_option("--rounds", ga.rounds, "Round limit")->capture_default_str();
  add_common(game);

  UniversalArgs ua;
  auto* universal = app.add_subcommand("universal", "Build the universal alpha-tree");
  universal->add_option("--alpha", ua.alpha, "Limit ordinal")->capture_default_str();
  universal->add_option("--steps", ua.steps, "Construction steps")->capture_default_str();
  universal->add_option("--variant", ua.variant, "plain or true-clopen")
      ->check(CLI::IsMember({"plain", "true-clopen"}))
      ->capture_default_str();
  add_common(universal);

  EmbedArgs ea;
  auto* embed = app.add_subcommand("embed", "Embed a finite alpha-tree into a universal tree");
  embed->add_option("--tree", ea.tree, "Source tree JSON")->required();
  embed->add_option("--universal", ea.universal, "Snapshot JSON or fresh")->capture_default_str();
  embed->add_option("--universal-out", ea.universal_out, "Write the extended snapshot here");
  embed->add_option("--steps", ea.steps, "Steps for a fresh universal tree")->capture_default_str();
  embed->add_option("--variant", ea.variant, "Variant of a fresh universal tree")
      ->check(CLI::IsMember({"plain", "true-clopen"}))
      ->capture_default_str();
  embed->add_option("--alpha", ea.alpha, "alpha of a fresh universal tree (default: the source's)");
  add_common(embed);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "Suite name or all")->capture_default_str();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ralpha) return cmd_ralpha(cfg, ra);
    if (*rank) return cmd_rank(cfg, rk);
    if (*game) return cmd_game(cfg, ga);
    if (*universal) return cmd_universal(cfg, ua);
    if (*embed) return cmd_embed(cfg, ea);
    if (*verify) return cmd_verify(cfg, suite);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainViolation& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const HorizonExhausted& e) {
    std::cerr << "horizon exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const std::length_error& e) {
    std::cerr << "fuel exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPropertyFailure;
  }
  return kUsage;
}
