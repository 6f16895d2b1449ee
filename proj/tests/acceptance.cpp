// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance <path to the baire CLI>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "baire/embed.hpp"
#include "baire/game.hpp"
#include "baire/hierarchy.hpp"
#include "baire/rank.hpp"
#include "baire/sampling.hpp"
#include "baire/universal.hpp"

using namespace baire;

namespace {

// Runtime limits in seconds; 0 means none.
constexpr double kLimitDescent = 10;
constexpr double kLimitGame = 60;
constexpr double kLimitUniversal = 120;
constexpr double kLimitEmbed = 120;

Ordinal w_pow(std::uint64_t e, std::uint64_t c = 1) { return Ordinal::omega_power(Ordinal::finite(e), c); }

const std::vector<Ordinal> kAlphas{Ordinal::omega(), w_pow(1, 2), w_pow(2),
                                   Ordinal::from_terms({{Ordinal::finite(3), 1}, {Ordinal::finite(1), 1}})};

std::string pair_text(const FinSeq& s, const FinSeq& t) { return format_seq(s) + " / " + format_seq(t); }

class Tally {
 public:
  void tick(std::uint64_t n = 1) { cases_ += n; }
  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }
  std::uint64_t cases() const { return cases_; }
  std::uint64_t failures() const { return failures_; }
  const std::string& first() const { return first_; }

 private:
  std::uint64_t cases_ = 0, failures_ = 0;
  std::string first_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. Descent termination and soundness.

// The run written out from its definition: m_0 = x(0), (n_i, a_i) = y(m_i),
// m_{i+1} = x(n_i), stopping at a Q label or a non-descent.
std::optional<std::string> audit_run(const Ordinal& alpha, const Point& x, const GammaPoint& y, const DescentTrace& t) {
  if (t.steps.size() != t.i0 + 1) return "steps do not end at i0";
  std::uint64_t m = x.at(0);
  for (std::size_t i = 0; i <= t.i0; ++i) {
    const GammaLetter g = y.at(m);
    const DescentStep& st = t.steps[i];
    if (st.m != m || st.n != g.n || st.label != g.label) return "step " + std::to_string(i) + " misread";
    if (g.label.is_ordinal() && !(g.label.ordinal() < alpha)) return "label not below alpha";
    const bool descends = i == 0 || (g.label.is_ordinal() && g.label.ordinal() < t.steps[i - 1].label.ordinal());
    const bool stop = g.label.is_q() || !descends;
    if (stop != (i == t.i0)) return "run stops at the wrong step " + std::to_string(i);
    m = x.at(g.n);
  }
  const Label& last = t.steps[t.i0].label;
  if ((t.verdict == Verdict::kIn) != last.is_in()) return "verdict disagrees with the final label";
  return std::nullopt;
}

Outcome descent_soundness() {
  Tally c;
  Rng rng(1001);
  for (const Ordinal& alpha : kAlphas) {
    const GammaCodec codec(alpha);
    for (int i = 0; i < 10000; ++i) {
      const PointSpec xs = random_natural_spec(rng);
      const PointSpec ys = random_gamma_spec(rng, codec);
      const Point x = natural_point(xs);
      const GammaPoint y = GammaPoint::from_spec(ys, codec);
      const DescentTrace t = r_alpha_decide(alpha, x, y);
      c.tick();
      const std::string where = " at alpha " + format_ordinal(alpha) + ", x " + format_point_spec(xs) + ", y " +
                                format_point_spec(ys);
      if (const auto why = check_trace(t)) c.fail(*why + where);
      if (const auto why = audit_run(alpha, x, y, t)) c.fail(*why + where);
    }
  }
  return {c.failures() == 0, std::to_string(c.cases()) + " pairs over 4 alphas, " + std::to_string(c.failures()) +
                                 " violations" + (c.failures() ? " (first: " + c.first() + ")" : "")};
}

// ---------------------------------------------------------------------------
// 2. Prefix determinacy.

Outcome prefix_determinacy() {
  Tally c;
  Rng rng(1002);
  std::uint64_t rect_checks = 0;
  for (int i = 0; i < 1000; ++i) {
    const Ordinal& alpha = kAlphas[i % kAlphas.size()];
    const GammaCodec codec(alpha);
    const Point x = natural_point(random_natural_spec(rng));
    const GammaPoint y = GammaPoint::from_spec(random_gamma_spec(rng, codec), codec);
    const DescentTrace t = r_alpha_decide(alpha, x, y);
    const FinSeq xs = x.prefix(t.x_depth);
    std::vector<GammaLetter> ys;
    std::vector<std::uint64_t> codes;
    for (std::size_t k = 0; k < t.y_depth; ++k) {
      ys.push_back(y.at(k));
      codes.push_back(codec.encode(ys.back()));
    }
    // The rectangle read by the run is decided the same way.
    ++rect_checks;
    if (r_alpha_rect(codec, xs, FinSeq(codes)).verdict != t.verdict) c.fail("rectangle disagrees at trace " + std::to_string(i));
    for (int j = 0; j < 100; ++j) {
      const Point xt = natural_point(random_natural_spec(rng));
      const GammaPoint yt = GammaPoint::from_spec(random_gamma_spec(rng, codec), codec);
      const Point x2([&xs, xt](std::uint64_t k) { return k < xs.size() ? xs[k] : xt.at(k); });
      const GammaPoint y2([&ys, yt](std::uint64_t k) { return k < ys.size() ? ys[k] : yt.at(k); });
      c.tick();
      if (r_alpha_decide(alpha, x2, y2).verdict != t.verdict)
        c.fail("trace " + std::to_string(i) + " changes verdict past depth " + std::to_string(t.depth()));
    }
  }
  return {c.failures() == 0, "1000 traces, " + std::to_string(c.cases()) + " extensions, " +
                                 std::to_string(rect_checks) + " rectangles, " + std::to_string(c.failures()) +
                                 " mismatches" + (c.failures() ? " (first: " + c.first() + ")" : "")};
}

// ---------------------------------------------------------------------------
// 3. Bipartite structure of E_alpha.

bool on_a_side(std::uint64_t first) { return first == 0 || first == 2; }

Outcome bipartite() {
  Tally same, wit;
  Rng rng(1003);
  for (int i = 0; same.cases() < 1000; ++i) {
    const Ordinal& alpha = kAlphas[i % kAlphas.size()];
    const GraphOracle e = e_alpha(alpha);
    const bool a_side = rng.chance(1, 2);
    auto first = [&]() -> std::uint64_t {
      if (a_side) return rng.chance(1, 2) ? 0 : 2;
      const std::uint64_t v = rng.uniform(48);
      return v == 0 ? 1 : v + 2;
    };
    const std::size_t len = 1 + rng.uniform(6);
    const FinSeq s = FinSeq{first()}.concat(random_seq(rng, len - 1, 40));
    const FinSeq t = FinSeq{first()}.concat(random_seq(rng, len - 1, 40));
    if (s == t) continue;
    same.tick();
    if (e.decide_rect(s, t) == Verdict::kIn) same.fail(pair_text(s, t) + " at alpha " + format_ordinal(alpha));
  }
  for (int i = 0; i < 1000; ++i) {
    const Ordinal& alpha = kAlphas[i % kAlphas.size()];
    const GraphOracle e = e_alpha(alpha);
    const Point x = natural_point(random_natural_spec(rng));
    wit.tick();
    try {
      const Point y = witness_neighbor(alpha, x, 32);
      if (on_a_side(x.at(0)) == on_a_side(y.at(0))) wit.fail("neighbor on the same side of " + format_seq(x.prefix(6)));
      if (decide_pair(e, x, y, 64).verdict != Verdict::kIn) wit.fail("no edge to the neighbor of " + format_seq(x.prefix(6)));
    } catch (const std::exception& ex) {
      wit.fail(std::string("witness_neighbor threw: ") + ex.what());
    }
  }
  const bool ok = same.failures() == 0 && wit.failures() == 0;
  std::string d = std::to_string(same.cases()) + " same-side pairs, " + std::to_string(same.failures()) + " edges; " +
                  std::to_string(wit.cases()) + " points, " + std::to_string(wit.failures()) + " missing neighbors";
  if (same.failures()) d += " (first edge: " + same.first() + ")";
  if (wit.failures()) d += " (first: " + wit.first() + ")";
  return {ok, d};
}

// ---------------------------------------------------------------------------
// 4. Rank game lower bounds.

// Makes the first claim k under a limit pending ordinal, then defers.
class FirstClaim : public Challenger {
 public:
  FirstClaim(std::unique_ptr<Challenger> inner, std::uint64_t k) : inner_(std::move(inner)), k_(k) {}
  std::string name() const override { return inner_->name() + "+first" + std::to_string(k_); }
  ChallengerMove move(const GameState& st) override {
    ChallengerMove m = inner_->move(st);
    if (first_) m.claim = Ordinal::finite(k_);
    first_ = false;
    return m;
  }

 private:
  std::unique_ptr<Challenger> inner_;
  std::uint64_t k_;
  bool first_ = true;
};

// Replays the certificate directly: x = s⌢0^w, y = t⌢0^w decoded letterwise.
std::optional<std::string> replay_certificate(const Transcript& t) {
  if (!t.certificate) return "no certificate";
  const Certificate& cert = *t.certificate;
  const GameState& last = t.rounds.empty() ? t.initial : t.rounds.back().state;
  if (!last.s.is_prefix_of(cert.s) || !last.t.is_prefix_of(cert.t_in) || !last.t.is_prefix_of(cert.t_out))
    return "certificate leaves the final rectangle";
  const GammaCodec codec(t.alpha);
  const Point x = Point::eventually_periodic(cert.s);
  const Verdict in = r_alpha_decide(t.alpha, x, GammaPoint::from_codes(Point::eventually_periodic(cert.t_in), codec)).verdict;
  const Verdict out = r_alpha_decide(t.alpha, x, GammaPoint::from_codes(Point::eventually_periodic(cert.t_out), codec)).verdict;
  if (in != Verdict::kIn || out != Verdict::kOut) return "certificate points do not split the rectangle";
  return std::nullopt;
}

void audit_game(Tally& c, const Transcript& t, const std::string& tag, std::optional<std::uint64_t> claims_from) {
  c.tick();
  if (t.outcome != GameOutcome::kRefuted) return c.fail(tag + ": " + to_string(t.outcome) + " " + t.diagnosis);
  if (const auto why = audit_transcript(t)) return c.fail(tag + ": " + *why);
  if (const auto why = replay_certificate(t)) return c.fail(tag + ": " + *why);
  if (t.rounds.empty() || !t.rounds.back().challenge.claim.is_zero()) return c.fail(tag + ": game did not end at claim 0");
  for (std::size_t i = 1; i < t.rounds.size(); ++i)
    if (!(t.rounds[i].challenge.claim < t.rounds[i - 1].challenge.claim)) return c.fail(tag + ": claims do not descend");
  if (claims_from && t.rounds.size() != std::max<std::uint64_t>(*claims_from, 1))
    c.fail(tag + ": " + std::to_string(t.rounds.size()) + " rounds");
}

Outcome rank_game() {
  Tally c;
  const Ordinal alpha = Ordinal::omega();
  for (std::uint64_t g = 0; g <= 50; ++g) {
    const GameState init = initial_game_state(alpha, Ordinal::finite(g));
    auto greedy = greedy_challenger(alpha);
    // Greedy claims pending - 1 from gamma down, one round per claim.
    audit_game(c, rank_game_play(alpha, init, *greedy, 200), "greedy gamma " + std::to_string(g), g);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto random = random_challenger(alpha, seed);
      audit_game(c, rank_game_play(alpha, init, *random, 200),
                 "random seed " + std::to_string(seed) + " gamma " + std::to_string(g), std::nullopt);
    }
  }
  const std::uint64_t finite_games = c.cases();
  const Ordinal alpha2 = w_pow(1, 2);
  const GameState init = initial_game_state(alpha2, Ordinal::omega());
  for (std::uint64_t k = 0; k <= 30; ++k) {
    FirstClaim greedy(greedy_challenger(alpha2), k);
    const Transcript tg = rank_game_play(alpha2, init, greedy, 200);
    // After claiming k the greedy challenger walks k-1, ..., 0.
    audit_game(c, tg, "gamma w, greedy first claim " + std::to_string(k), k + 1);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      FirstClaim random(random_challenger(alpha2, seed), k);
      audit_game(c, rank_game_play(alpha2, init, random, 200),
                 "gamma w, random seed " + std::to_string(seed) + " first claim " + std::to_string(k), std::nullopt);
    }
  }
  for (std::uint64_t seed = 0; seed <= 20; ++seed) {
    auto ch = seed == 0 ? greedy_challenger(alpha2) : random_challenger(alpha2, seed);
    const Transcript t = rank_game_play(alpha2, init, *ch, 200);
    audit_game(c, t, "gamma w, " + ch->name() + " own first claim", std::nullopt);
    if (!t.rounds.empty() && !(t.rounds.front().challenge.claim < Ordinal::finite(31)))
      c.fail("shipped challenger opened with " + format_ordinal(t.rounds.front().challenge.claim));
  }
  return {c.failures() == 0, std::to_string(finite_games) + " finite games, " +
                                 std::to_string(c.cases() - finite_games) + " games from gamma = w, " +
                                 std::to_string(c.failures()) + " strategy failures" +
                                 (c.failures() ? " (first: " + c.first() + ")" : "")};
}

// ---------------------------------------------------------------------------
// 5. Rank machinery.

struct NaiveNode {
  char kind = 't';  // 't' terminal, 'i' internal, 'f' frontier
  std::vector<NaiveNode> kids;
};

// Terminal 0, frontier 1, internal the least value above every child.
std::uint64_t naive_rank(const NaiveNode& n) {
  if (n.kind == 't') return 0;
  if (n.kind == 'f') return 1;
  std::uint64_t r = 0;
  for (const auto& k : n.kids) r = std::max(r, naive_rank(k) + 1);
  return r;
}

void grow_naive(Rng& rng, NaiveNode& root, std::size_t fan, std::size_t max_nodes) {
  std::vector<NaiveNode*> queue{&root};
  std::size_t nodes = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::uint64_t pick = rng.uniform(10);
    if (pick < 4 && nodes + fan <= max_nodes) {
      queue[q]->kind = 'i';
      queue[q]->kids.resize(fan);
      nodes += fan;
      for (auto& k : queue[q]->kids) queue.push_back(&k);
    } else if (pick == 4) {
      queue[q]->kind = 'f';
    }
  }
}

// Flattens the naive tree into a T* with branch bound b (b^2 children).
TStar to_tstar(const NaiveNode& root, std::uint64_t b) {
  TStar t;
  t.branch_bound = b;
  t.nodes.push_back({});
  std::vector<std::pair<std::size_t, const NaiveNode*>> queue{{0, &root}};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [id, n] = queue[q];
    t.nodes[id].kind = n->kind == 'i' ? TStar::Kind::kInternal : n->kind == 'f' ? TStar::Kind::kFrontier
                                                                                : TStar::Kind::kTerminal;
    for (const auto& k : n->kids) {
      t.nodes[id].children.push_back(t.nodes.size());
      t.nodes.push_back({});
      queue.emplace_back(t.nodes.size() - 1, &k);
    }
  }
  return t;
}

Outcome rank_machinery() {
  Tally trees, mono, nested;
  Rng rng(1005);
  std::uint64_t max_nodes_seen = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t b = 1 + rng.uniform(3);
    NaiveNode root;
    grow_naive(rng, root, b * b, 500);
    const TStar t = to_tstar(root, b);
    max_nodes_seen = std::max<std::uint64_t>(max_nodes_seen, t.nodes.size());
    trees.tick();
    if (t.nodes.size() > 500) trees.fail("tree " + std::to_string(i) + " too large");
    if (tree_rank(t) != Ordinal::finite(naive_rank(root))) trees.fail("tree " + std::to_string(i));
  }

  const GraphOracle e = e_alpha(Ordinal::omega());
  auto random_rect = [&](std::size_t len) {
    FinSeq s = FinSeq{0}.concat(random_seq(rng, len - 1, 4));
    FinSeq t = FinSeq{1}.concat(random_seq(rng, len - 1, 12));
    if (rng.chance(1, 4)) std::swap(s, t);
    return std::make_pair(s, t);
  };
  std::uint64_t positive = 0;
  for (int i = 0; i < 50; ++i) {
    const auto [s, t] = random_rect(2 + rng.uniform(2));
    const std::size_t d = s.size() + 2;
    std::optional<Ordinal> prev;
    for (std::uint64_t b : {2, 4, 8}) {
      const Ordinal v = rank_upper(e, s, t, b, d).value;
      if (prev && v < *prev) mono.fail("B = " + std::to_string(b) + " decreases at " + pair_text(s, t));
      prev = v;
    }
    mono.tick();
    if (!prev->is_zero()) ++positive;
  }
  for (int i = 0; i < 200; ++i) {
    const auto [s, t] = random_rect(2);
    const std::size_t extra = 1 + rng.uniform(2);
    const FinSeq s2 = s.concat(random_seq(rng, extra, 3));
    const FinSeq t2 = t.concat(random_seq(rng, extra, 3));
    nested.tick();
    if (rank_upper(e, s, t, 3, 6).value < rank_upper(e, s2, t2, 3, 6).value)
      nested.fail(pair_text(s2, t2) + " exceeds " + pair_text(s, t));
  }
  const std::uint64_t fails = trees.failures() + mono.failures() + nested.failures();
  std::string d = std::to_string(trees.cases()) + " trees (largest " + std::to_string(max_nodes_seen) + " nodes), " +
                  std::to_string(mono.cases()) + " rectangles over B in {2,4,8} (" + std::to_string(positive) +
                  " of positive rank), " + std::to_string(nested.cases()) + " nested pairs, " + std::to_string(fails) +
                  " violations";
  for (const Tally* t : {&trees, &mono, &nested})
    if (t->failures()) d += " (first: " + t->first() + ")";
  return {fails == 0, d};
}

// ---------------------------------------------------------------------------
// 6. Universal tree validity and fairness.

std::optional<RequestTriple> random_request(Rng& rng, const UniversalTree& u, std::uint64_t g) {
  std::vector<NodeId> universe;
  for (NodeId i = 0; i < u.size(); ++i)
    if (u.epoch(i) < g) universe.push_back(i);
  for (int attempt = 0; attempt < 50; ++attempt) {
    RequestTriple req;
    req.p = universe[rng.uniform(universe.size())];
    std::vector<NodeId> level;
    for (NodeId i : universe)
      if (u.node(i).size() == u.node(req.p).size() + 1) level.push_back(i);
    const std::size_t k = level.empty() ? 0 : rng.uniform(std::min<std::size_t>(g, level.size()) + 1);
    for (std::size_t j = 0; j < k; ++j) std::swap(level[j], level[j + rng.uniform(level.size() - j)]);
    level.resize(k);
    std::sort(level.begin(), level.end());
    req.f_nodes = level;
    for (std::size_t j = 0; j < k; ++j) req.f_labels.push_back(*u.label_entry(rng.uniform(g)));
    if (!u.inconsistency(req) && u.grade_of(req) <= g) return req;
  }
  return std::nullopt;
}

// Witnesses checked from the definition: distinct children of p outside F
// whose labels against F are the requested ones.
std::optional<std::string> audit_witnesses(const UniversalTree& u, const RequestTriple& req,
                                           const std::vector<NodeId>& w) {
  std::set<NodeId> seen;
  for (NodeId x : w) {
    if (!seen.insert(x).second) return "repeated witness";
    if (u.node(x).size() != u.node(req.p).size() + 1 || u.parent_id(x) != req.p) return "witness not a child of p";
    for (std::size_t j = 0; j < req.f_nodes.size(); ++j) {
      if (x == req.f_nodes[j]) return "witness inside F";
      if (u.label(x, req.f_nodes[j]) != req.f_labels[j]) return "witness label differs from the request";
    }
  }
  return std::nullopt;
}

Outcome universal_tree() {
  Tally valid, fair, lprime;
  std::uint64_t pairs = 0, steps_used = 0;
  for (Variant v : {Variant::kPlain, Variant::kTrueClopen}) {
    UniversalTree u(w_pow(2), v);
    for (int chunk = 1; chunk <= 10; ++chunk) {
      for (int i = 0; i < 1000; ++i) u.build_step();
      const TreeValidation r = validate_alpha_tree(u);
      valid.tick();
      pairs += r.pairs_checked;
      if (!r.ok())
        valid.fail(to_string(v) + " step " + std::to_string(u.step()) + ": " +
                   pair_text(r.violations[0].s, r.violations[0].t) + " " + r.violations[0].reason);
    }
    if (v == Variant::kTrueClopen) {
      for_each_level_pair(u, [&](NodeId a, NodeId b) {
        const FinSeq& s = u.node(a);
        const FinSeq& t = u.node(b);
        if (s.size() < 2 || s[0] != t[0]) return;
        lprime.tick();
        if (u.label(a, b) != Label::out()) lprime.fail(pair_text(s, t));
      });
      if (!true_clopen_violations(u).empty()) lprime.fail("true_clopen_violations reports a pair");
    }
    Rng rng(1006 + static_cast<int>(v));
    for (int drawn = 0; drawn < 500;) {
      const auto req = random_request(rng, u, 3);
      if (!req) continue;
      ++drawn;
      fair.tick();
      const auto h = u.horizon(*req, 3);
      if (!h) {
        fair.fail("no horizon");
        continue;
      }
      const WitnessResult w = u.find_witnesses(*req, 3, *h);
      steps_used += w.scheduled_steps;
      if (w.shortfall || w.witnesses.size() < 3)
        fair.fail(to_string(v) + ": " + std::to_string(w.witnesses.size()) + " witnesses within horizon " +
                  std::to_string(*h));
      if (w.demand_steps != 0 || w.scheduled_steps > *h) fair.fail(to_string(v) + ": steps past the horizon");
      if (const auto why = audit_witnesses(u, *req, w.witnesses)) fair.fail(to_string(v) + ": " + *why);
    }
    const TreeValidation r = validate_alpha_tree(u);
    valid.tick();
    if (!r.ok()) valid.fail(to_string(v) + " after the fairness requests");
  }
  const std::uint64_t fails = valid.failures() + fair.failures() + lprime.failures();
  std::string d = std::to_string(valid.cases()) + " checkpoints (" + std::to_string(pairs) + " pairs), " +
                  std::to_string(fair.cases()) + " grade-3 requests (" + std::to_string(steps_used) + " steps), " +
                  std::to_string(lprime.cases()) + " L' pairs, " + std::to_string(fails) + " violations";
  for (const Tally* t : {&valid, &fair, &lprime})
    if (t->failures()) d += " (first: " + t->first() + ")";
  return {fails == 0, d};
}

// ---------------------------------------------------------------------------
// 7. Embedding correctness.

// Structure and labels of sigma checked from the definition.
std::optional<std::string> audit_embedding(const AlphaTree& tree, const Embedding& e, const UniversalTree& u) {
  std::set<NodeId> images;
  for (NodeId a = 0; a < tree.size(); ++a) {
    const FinSeq& s = tree.node(a);
    const auto img = e.sigma(s);
    if (!img) return "node " + format_seq(s) + " unmapped";
    if (!images.insert(*img).second) return "not injective at " + format_seq(s);
    if (u.node(*img).size() != s.size()) return "level changed at " + format_seq(s);
    if (!s.empty() && !u.node(*e.sigma(parent(s))).is_prefix_of(u.node(*img))) return "prefix order lost at " + format_seq(s);
  }
  std::optional<std::string> bad;
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    if (bad) return;
    const NodeId ia = *e.sigma(tree.node(a)), ib = *e.sigma(tree.node(b));
    if (tree.label(a, b) != u.label(ia, ib)) bad = "label differs on " + pair_text(tree.node(a), tree.node(b));
  });
  return bad;
}

Outcome embedding() {
  Tally emb, red, fault;
  Rng rng(1007);
  UniversalTree u(w_pow(2));
  for (int i = 0; i < 300; ++i) u.build_step();
  std::uint64_t nodes = 0, samples = 0;
  for (int i = 0; fault.cases() < 100; ++i) {
    const AlphaTree tree = random_alpha_tree(rng, RandomTreeOptions{});
    const std::string tag = "tree " + std::to_string(i);
    if (tree.size() > 40 || tree.level_count() > 7) emb.fail(tag + " exceeds the size bounds");
    if (!validate_alpha_tree(tree).ok()) emb.fail(tag + " is not a valid alpha-tree");
    const TreeSource src(tree);
    Embedding e = embed_tree(src, u);
    emb.tick();
    nodes += tree.size();
    if (const EmbeddingCheck chk = check_embedding(e); !chk.ok()) emb.fail(tag + ": " + chk.defects.front());
    if (const auto why = audit_embedding(tree, e, u)) emb.fail(tag + ": " + *why);
    const ReductionReport r = verify_reduction(e, 200, 8, 1007 + i);
    red.tick();
    samples += r.samples;
    if (!r.ok()) red.fail(tag + ": disagreement at " + pair_text(r.disagreements[0].s, r.disagreements[0].t));

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for_each_level_pair(tree, [&](NodeId a, NodeId b) { pairs.emplace_back(a, b); });
    if (pairs.empty()) continue;
    const auto [a, b] = pairs[rng.uniform(pairs.size())];
    const Label old = *tree.label(a, b);
    AlphaTree broken = tree;
    broken.set_label(a, b, old.is_out() ? Label::in() : Label::out());
    fault.tick();
    if (check_embedding(e.pairs(), TreeSource(broken), u).ok())
      fault.fail(tag + ": perturbation of " + pair_text(tree.node(a), tree.node(b)) + " undetected");
  }
  const std::uint64_t fails = emb.failures() + red.failures() + fault.failures();
  std::string d = std::to_string(emb.cases()) + " trees (" + std::to_string(nodes) + " nodes), " +
                  std::to_string(samples) + " reduction samples, " +
                  std::to_string(fault.cases() - fault.failures()) + "/" + std::to_string(fault.cases()) +
                  " faults detected, " + std::to_string(fails) + " violations";
  for (const Tally* t : {&emb, &red, &fault})
    if (t->failures()) d += " (first: " + t->first() + ")";
  return {fails == 0 && emb.cases() >= 100, d};
}

// ---------------------------------------------------------------------------
// 8. Canonical round trip.

Outcome round_trip() {
  Tally c;
  const GraphOracle e = e_alpha(Ordinal::omega());
  const CanonicalTree ct = canonical_alpha_tree(e, 3, 5);
  const GraphOracle g = graph_from_labeling(labeling_of(ct.tree));
  // Every sequence over {0,1,2} of length 1..5, listed independently of the tree.
  std::vector<std::vector<FinSeq>> by_len(6);
  by_len[0].push_back(FinSeq{});
  for (std::size_t n = 1; n <= 5; ++n)
    for (const FinSeq& s : by_len[n - 1])
      for (std::uint64_t d = 0; d < 3; ++d) by_len[n].push_back(s.child(d));
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t i = 0; i < by_len[n].size(); ++i)
      for (std::size_t j = i + 1; j < by_len[n].size(); ++j) {
        const FinSeq& s = by_len[n][i];
        const FinSeq& t = by_len[n][j];
        c.tick();
        if (g.decide_rect(s, t) != e.decide_rect(s, t) || g.decide_rect(t, s) != e.decide_rect(t, s))
          c.fail(pair_text(s, t));
      }
  return {c.failures() == 0, std::to_string(c.cases()) + " pairs at (branch 3, depth 5), " +
                                 std::to_string(c.failures()) + " disagreements" +
                                 (c.failures() ? " (first: " + c.first() + ")" : "")};
}

// ---------------------------------------------------------------------------
// 9. Determinism of the verify report.

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism(const std::string& cli) {
  const std::string cmd = "'" + cli + "' verify --suite all --seed 1";
  const Run a = run(cmd);
  const Run b = run(cmd);
  const bool same = a.out == b.out && a.code == b.code;
  const bool passed = a.code == 0 && a.out.find("all passed") != std::string::npos;
  std::string d = std::to_string(a.out.size()) + "-byte reports " + (same ? "identical" : "differ");
  d += passed ? ", all suites pass" : ", exit " + std::to_string(a.code);
  return {same && !a.out.empty(), d};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <baire cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "descent termination and soundness", kLimitDescent, descent_soundness},
      {2, "prefix determinacy", 0, prefix_determinacy},
      {3, "bipartite structure of E_alpha", 0, bipartite},
      {4, "rank game lower bounds", kLimitGame, rank_game},
      {5, "rank machinery oracle equivalence", 0, rank_machinery},
      {6, "universal tree validity and fairness", kLimitUniversal, universal_tree},
      {7, "embedding correctness", kLimitEmbed, embedding},
      {8, "canonical round trip", 0, round_trip},
      {9, "verify determinism", 0, [&cli] { return determinism(cli); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit == 0 || secs < c.limit;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << ((o.pass && in_time) ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
         << "; " << secs << " s";
    if (c.limit > 0) line << " (limit " << c.limit << " s" << (in_time ? "" : ", exceeded") << ")";
    std::cout << line.str() << std::endl;
    failed += !(o.pass && in_time);
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
