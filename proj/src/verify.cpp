#include "baire/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "baire/embed.hpp"
#include "baire/game.hpp"
#include "baire/hierarchy.hpp"
#include "baire/json_io.hpp"
#include "baire/rank.hpp"
#include "baire/sampling.hpp"
#include "baire/universal.hpp"

namespace baire {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ordinal", "seqspace", "clopen", "hierarchy", "rank",
                                              "game",    "universal", "embed", "io"};
  return names;
}

namespace {

class Check {
 public:
  explicit Check(std::string name) { r_.name = std::move(name); }
  void tick(std::uint64_t n = 1) { r_.cases += n; }
  void fail(const std::string& what) {
    if (r_.passed) r_.counterexample = what;
    r_.passed = false;
  }
  bool ok() const { return r_.passed; }
  CheckResult done() const { return r_; }

 private:
  CheckResult r_;
};

// Runs body, turning an escaped exception into a failure.
CheckResult guarded(const std::string& name, const std::function<void(Check&)>& body) {
  Check c(name);
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  return c.done();
}

Ordinal w_pow(std::uint64_t e) { return Ordinal::omega_power(Ordinal::finite(e)); }

const std::vector<Ordinal>& test_alphas() {
  static const std::vector<Ordinal> a{
      Ordinal::omega(), Ordinal::omega_power(Ordinal::finite(1), 2), w_pow(2),
      Ordinal::from_terms({{Ordinal::finite(3), 1}, {Ordinal::finite(1), 1}})};
  return a;
}

Ordinal random_below(Rng& rng, const Ordinal& bound, std::uint64_t window) {
  const BelowEnumerator below(bound);
  std::uint64_t n = window;
  if (const auto size = below.size()) n = std::min(n, *size);
  return below.at(rng.uniform(n));
}

std::string pair_text(const FinSeq& s, const FinSeq& t) { return format_seq(s) + " / " + format_seq(t); }

// ---------------------------------------------------------------------------

SuiteReport suite_ordinal(std::uint64_t seed) {
  SuiteReport rep{"ordinal", {}};
  rep.checks.push_back(guarded("compare_trichotomy_transitivity", [&](Check& c) {
    Rng rng(seed);
    const Ordinal bound = Ordinal::omega_power(Ordinal::omega());
    for (int i = 0; i < 2000; ++i) {
      const Ordinal a = random_below(rng, bound, 400), b = random_below(rng, bound, 400),
                    d = random_below(rng, bound, 400);
      c.tick();
      const int rel = (a < b) + (a == b) + (a > b);
      if (rel != 1 || (a < b) != (b > a)) c.fail(format_ordinal(a) + " vs " + format_ordinal(b));
      if (a <= b && b <= d && !(a <= d))
        c.fail("not transitive: " + format_ordinal(a) + ", " + format_ordinal(b) + ", " + format_ordinal(d));
    }
  }));
  rep.checks.push_back(guarded("enumerate_below_injective", [&](Check& c) {
    std::vector<Ordinal> bounds = test_alphas();
    bounds.push_back(Ordinal::finite(7));
    bounds.push_back(Ordinal::omega_power(Ordinal::omega()));
    for (const Ordinal& a : bounds) {
      std::set<Ordinal> seen;
      const BelowEnumerator below(a);
      const std::uint64_t n = below.size() ? *below.size() : 300;
      for (std::uint64_t k = 0; k < n; ++k) {
        c.tick();
        const Ordinal b = below.at(k);
        if (!(b < a)) c.fail(format_ordinal(b) + " listed below " + format_ordinal(a));
        if (!seen.insert(b).second) c.fail(format_ordinal(b) + " listed twice below " + format_ordinal(a));
        if (below.index_of(b) != k) c.fail("index_of disagrees at " + format_ordinal(b));
      }
    }
  }));
  rep.checks.push_back(guarded("descent_certificate", [&](Check& c) {
    // Below w^3 a strict descent strictly decreases the coefficient triple
    // of w^2, w, 1 lexicographically.
    Rng rng(seed + 1);
    auto triple = [](const Ordinal& o) {
      std::array<std::uint64_t, 3> t{0, 0, 0};
      for (const auto& term : o.terms()) t[2 - term.exponent.finite_value()] = term.coefficient;
      return t;
    };
    for (int i = 0; i < 300; ++i) {
      Ordinal cur = random_below(rng, w_pow(3), 200);
      for (int steps = 0; !cur.is_zero(); ++steps) {
        c.tick();
        const Ordinal next = random_below(rng, cur, 40);
        if (!(triple(next) < triple(cur))) c.fail("certificate does not decrease at " + format_ordinal(cur));
        if (steps > 100000) {
          c.fail("descent did not terminate from " + format_ordinal(cur));
          break;
        }
        cur = next;
      }
    }
  }));
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_seqspace(std::uint64_t seed) {
  SuiteReport rep{"seqspace", {}};
  constexpr std::uint64_t kB = 3;
  constexpr std::size_t kD = 4;
  auto random_antichain = [](Rng& rng) {
    std::vector<FinSeq> out;
    const std::size_t n = 1 + rng.uniform(4);
    for (std::size_t i = 0; i < n * 3 && out.size() < n; ++i) {
      const FinSeq c = random_seq(rng, 1 + rng.uniform(kD), kB);
      if (std::none_of(out.begin(), out.end(), [&](const FinSeq& o) { return o.comparable(c); })) out.push_back(c);
    }
    return out;
  };
  auto all_within = [] {
    std::vector<FinSeq> out{FinSeq{}};
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].size() < kD)
        for (std::uint64_t e = 0; e < kB; ++e) out.push_back(out[i].child(e));
    return out;
  }();

  rep.checks.push_back(guarded("decompose_open_disjoint_inside_cover", [&](Check& c) {
    Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
      const auto cyl = random_antichain(rng);
      auto inside = [&](const FinSeq& u) {
        for (const auto& x : cyl)
          if (x.is_prefix_of(u)) return Membership::kInside;
        for (const auto& x : cyl)
          if (u.is_prefix_of(x)) return Membership::kUndecided;
        return Membership::kOutside;
      };
      const Antichain a = decompose_open(inside, kB, kD);
      c.tick();
      if (!pairwise_incomparable(a.members)) c.fail("members overlap");
      for (const auto& m : a.members)
        if (inside(m) != Membership::kInside) c.fail(format_seq(m) + " not inside");
      for (const auto& u : all_within)
        if (inside(u) == Membership::kInside &&
            std::none_of(a.members.begin(), a.members.end(), [&](const FinSeq& m) { return m.is_prefix_of(u); }))
          c.fail(format_seq(u) + " inside but uncovered");
    }
  }));
  rep.checks.push_back(guarded("sigma_antichain_minimal", [&](Check& c) {
    Rng rng(seed + 1);
    for (int i = 0; i < 200; ++i) {
      const auto cyl = random_antichain(rng);
      std::vector<Side> sides;
      for (std::size_t k = 0; k < cyl.size(); ++k) sides.push_back(rng.chance(1, 2) ? Side::kA : Side::kB);
      auto sep = [&](const FinSeq& u) {
        for (std::size_t k = 0; k < cyl.size(); ++k)
          if (cyl[k].is_prefix_of(u)) return sides[k];
        return Side::kMixed;
      };
      const SidedAntichain a = sigma_antichain(sep, kB, kD);
      c.tick();
      std::vector<FinSeq> members;
      for (const auto& [m, side] : a.members) {
        members.push_back(m);
        if (sep(m) != side || side == Side::kMixed) c.fail(format_seq(m) + " has a wrong side");
        for (std::size_t n = 0; n < m.size(); ++n)
          if (sep(m.prefix(n)) != Side::kMixed) c.fail(format_seq(m) + " is not minimal");
      }
      if (!pairwise_incomparable(members)) c.fail("members overlap");
    }
  }));
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_clopen(std::uint64_t seed) {
  SuiteReport rep{"clopen", {}};
  const GraphOracle e = e_alpha(Ordinal::omega());
  rep.checks.push_back(guarded("coherence_e_alpha", [&](Check& c) {
    GraphCheckOptions o;
    o.samples = 500;
    o.seed = seed;
    const GraphCheckReport r = check_graph(e, o);
    c.tick(r.rect_samples + r.point_samples);
    if (!r.ok()) c.fail(r.violations.front().kind + " at " + pair_text(r.violations.front().s, r.violations.front().t));
  }));
  rep.checks.push_back(guarded("decide_pair_fuel_stable", [&](Check& c) {
    Rng rng(seed + 1);
    for (int i = 0; i < 500; ++i) {
      const Point x = natural_point(random_natural_spec(rng));
      const Point y = natural_point(random_natural_spec(rng));
      if (x.prefix(16) == y.prefix(16)) continue;
      c.tick();
      const PairDecision a = decide_pair(e, x, y, 16);
      const PairDecision b = decide_pair(e, x, y, 40);
      if (!a.diverged() && (a.verdict != b.verdict || a.depth != b.depth))
        c.fail("verdict changed with fuel on " + pair_text(x.prefix(8), y.prefix(8)));
    }
  }));
  rep.checks.push_back(guarded("labeling_scan_equivalence", [&](Check& c) {
    const CanonicalTree ct = canonical_alpha_tree(e, 3, 5);
    const Labeling l = labeling_of(ct.tree);
    const GraphOracle g = graph_from_labeling(l);
    for_each_level_pair(ct.tree, [&](NodeId a, NodeId b) {
      const FinSeq& s = ct.tree.node(a);
      const FinSeq& t = ct.tree.node(b);
      c.tick();
      Verdict scan = Verdict::kUndecided;
      std::size_t depth = 0;
      for (std::size_t k = split_level(s, t); k <= s.size() && scan == Verdict::kUndecided; ++k) {
        const Label x = l(s.prefix(k), t.prefix(k));
        if (x.is_q()) {
          scan = x.is_in() ? Verdict::kIn : Verdict::kOut;
          depth = k;
        }
      }
      const PairDecision d = decide_prefix_pair(g, s, t);
      if (d.verdict != scan || (scan != Verdict::kUndecided && d.depth != depth)) c.fail(pair_text(s, t));
    });
  }));
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_hierarchy(std::uint64_t seed) {
  SuiteReport rep{"hierarchy", {}};
  rep.checks.push_back(guarded("termination_soundness", [&](Check& c) {
    Rng rng(seed);
    for (const Ordinal& alpha : test_alphas()) {
      const GammaCodec codec(alpha);
      for (int i = 0; i < 1000; ++i) {
        const PointSpec ys = random_gamma_spec(rng, codec);
        const DescentTrace t =
            r_alpha_decide(alpha, natural_point(random_natural_spec(rng)), GammaPoint::from_spec(ys, codec));
        c.tick();
        if (const auto why = check_trace(t)) c.fail(*why + " for y = " + format_point_spec(ys));
        std::set<Ordinal> ordinals;
        for (const auto* part : {&ys.prefix, &ys.cycle})
          for (const auto& item : *part)
            if (const auto* l = std::get_if<GammaLetter>(&item); l && l->label.is_ordinal())
              ordinals.insert(l->label.ordinal());
        if (t.steps.size() > 1 + ordinals.size()) c.fail("run longer than the label chain for " + format_point_spec(ys));
      }
    }
  }));
  rep.checks.push_back(guarded("prefix_determinacy", [&](Check& c) {
    Rng rng(seed + 1);
    const Ordinal alpha = w_pow(2);
    const GammaCodec codec(alpha);
    for (int i = 0; i < 200; ++i) {
      const Point x = natural_point(random_natural_spec(rng));
      const GammaPoint y = GammaPoint::from_spec(random_gamma_spec(rng, codec), codec);
      const DescentTrace t = r_alpha_decide(alpha, x, y);
      const FinSeq xs = x.prefix(t.depth());
      std::vector<GammaLetter> ys;
      for (std::size_t k = 0; k < t.depth(); ++k) ys.push_back(y.at(k));
      for (int j = 0; j < 20; ++j) {
        c.tick();
        const PointSpec xt = random_natural_spec(rng);
        const PointSpec yt = random_gamma_spec(rng, codec);
        const Point x2([&xs, x = natural_point(xt)](std::uint64_t k) { return k < xs.size() ? xs[k] : x.at(k); });
        const GammaPoint y2([&ys, y = GammaPoint::from_spec(yt, codec)](std::uint64_t k) {
          return k < ys.size() ? ys[k] : y.at(k);
        });
        if (r_alpha_decide(alpha, x2, y2).verdict != t.verdict) c.fail("verdict changed past depth " + std::to_string(t.depth()));
      }
    }
  }));
  rep.checks.push_back(guarded("bipartite_e_alpha", [&](Check& c) {
    Rng rng(seed + 2);
    const GraphOracle e = e_alpha(Ordinal::omega());
    const std::uint64_t a_side[] = {0, 2};
    const std::uint64_t b_side[] = {1, 3, 4, 5};
    for (int i = 0; i < 1000; ++i) {
      const std::size_t len = 1 + rng.uniform(5);
      const bool in_a_side = rng.chance(1, 2);
      auto first = [&] { return in_a_side ? a_side[rng.uniform(2)] : b_side[rng.uniform(4)]; };
      FinSeq s = FinSeq{first()}.concat(random_seq(rng, len - 1, 40));
      FinSeq t = FinSeq{first()}.concat(random_seq(rng, len - 1, 40));
      if (s == t) continue;
      c.tick();
      if (e.decide_rect(s, t) == Verdict::kIn) c.fail(pair_text(s, t));
    }
  }));
  rep.checks.push_back(guarded("witness_neighbor", [&](Check& c) {
    Rng rng(seed + 3);
    const Ordinal alpha = w_pow(2);
    const GraphOracle e = e_alpha(alpha);
    for (int i = 0; i < 300; ++i) {
      const Point x = natural_point(random_natural_spec(rng));
      c.tick();
      const Point y = witness_neighbor(alpha, x, 32);
      if (decide_pair(e, x, y, 32).verdict != Verdict::kIn) c.fail("neighbor of " + format_seq(x.prefix(6)));
    }
  }));
  rep.checks.push_back(guarded("canonical_round_trip", [&](Check& c) {
    const GraphOracle e = e_alpha(Ordinal::omega());
    const CanonicalTree ct = canonical_alpha_tree(e, 3, 5);
    const GraphOracle g = graph_from_labeling(labeling_of(ct.tree));
    for_each_level_pair(ct.tree, [&](NodeId a, NodeId b) {
      c.tick();
      if (g.decide_rect(ct.tree.node(a), ct.tree.node(b)) != e.decide_rect(ct.tree.node(a), ct.tree.node(b)))
        c.fail(pair_text(ct.tree.node(a), ct.tree.node(b)));
    });
  }));
  return rep;
}

// ---------------------------------------------------------------------------

// Explicit pointer tree for the naive rank evaluator.
struct NaiveNode {
  int kind = 0;  // 0 terminal, 1 internal, 2 frontier
  std::vector<std::unique_ptr<NaiveNode>> kids;
};

std::uint64_t naive_rank(const NaiveNode& n) {
  if (n.kind == 0) return 0;
  if (n.kind == 2) return 1;
  std::uint64_t r = 0;
  for (const auto& k : n.kids) r = std::max(r, naive_rank(*k) + 1);
  return r;
}

// Random T* shape with branch 2 (4 children per internal node).
void random_tstar(Rng& rng, std::size_t max_nodes, TStar& t, NaiveNode& root) {
  t = TStar{};
  t.branch_bound = 2;
  t.nodes.push_back({});
  std::vector<std::pair<std::size_t, NaiveNode*>> queue{{0, &root}};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [id, naive] = queue[q];
    const std::uint64_t pick = rng.uniform(10);
    const bool room = t.nodes.size() + 4 <= max_nodes;
    if (pick < 4 && room) {
      t.nodes[id].kind = TStar::Kind::kInternal;
      naive->kind = 1;
      for (int k = 0; k < 4; ++k) {
        t.nodes[id].children.push_back(t.nodes.size());
        t.nodes.push_back({});
        naive->kids.push_back(std::make_unique<NaiveNode>());
        queue.emplace_back(t.nodes.size() - 1, naive->kids.back().get());
      }
    } else if (pick == 4) {
      t.nodes[id].kind = TStar::Kind::kFrontier;
      naive->kind = 2;
    }
  }
}

SuiteReport suite_rank(std::uint64_t seed) {
  SuiteReport rep{"rank", {}};
  const GraphOracle e = e_alpha(Ordinal::omega());
  const GammaCodec codec(Ordinal::omega());
  // Rectangles of C x D whose copy of R_w is undecided.
  auto random_rect = [&](Rng& rng, std::size_t len) {
    for (;;) {
      FinSeq s = FinSeq{0}.concat(random_seq(rng, len - 1, 4));
      FinSeq t = FinSeq{1}.concat(random_seq(rng, len - 1, 12));
      if (rng.chance(1, 4)) std::swap(s, t);
      return std::make_pair(s, t);
    }
  };

  rep.checks.push_back(guarded("tree_rank_naive", [&](Check& c) {
    Rng rng(seed);
    for (int i = 0; i < 100; ++i) {
      TStar t;
      NaiveNode root;
      random_tstar(rng, 500, t, root);
      c.tick();
      if (tree_rank(t) != Ordinal::finite(naive_rank(root))) c.fail("tree " + std::to_string(i));
    }
  }));
  rep.checks.push_back(guarded("rank_upper_monotone", [&](Check& c) {
    Rng rng(seed + 1);
    for (int i = 0; i < 30; ++i) {
      const auto [s, t] = random_rect(rng, 2 + rng.uniform(2));
      const std::size_t d = s.size() + 2;
      std::optional<Ordinal> prev;
      for (std::uint64_t b : {2, 4, 8}) {
        c.tick();
        const Ordinal v = rank_upper(e, s, t, b, d).value;
        if (prev && v < *prev) c.fail("B decrease at " + pair_text(s, t));
        prev = v;
      }
      if (rank_upper(e, s, t, 4, d + 1).value < rank_upper(e, s, t, 4, d).value)
        c.fail("depth decrease at " + pair_text(s, t));
    }
  }));
  rep.checks.push_back(guarded("nested_rectangles", [&](Check& c) {
    Rng rng(seed + 2);
    for (int i = 0; i < 100; ++i) {
      const auto [s, t] = random_rect(rng, 2);
      const std::size_t extra = 1 + rng.uniform(2);
      const FinSeq s2 = s.concat(random_seq(rng, extra, 3));
      const FinSeq t2 = t.concat(random_seq(rng, extra, 3));
      c.tick();
      if (rank_upper(e, s, t, 3, 6).value < rank_upper(e, s2, t2, 3, 6).value)
        c.fail(pair_text(s2, t2) + " exceeds " + pair_text(s, t));
    }
  }));
  rep.checks.push_back(guarded("pullback_partition_parity", [&](Check& c) {
    const PrefixMap parity = [](const FinSeq& u) {
      return u.empty() ? u : FinSeq{u[0] % 2}.concat(u.drop(1));
    };
    ClopenPartition codomain;
    codomain.pieces = {{FinSeq{0}}, {FinSeq{1}}};
    codomain.remainder = 1;
    const PulledPartition pulled = pullback_partition(parity, codomain, 4, 3);
    c.tick();
    if (!pulled.disjoint || !pulled.covers) c.fail("preimages overlap or miss");
    // Brute force: minimal u with every extension mapping into piece i.
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<FinSeq> expect;
      for (std::uint64_t a = 0; a < 4; ++a)
        if ((a % 2 == 0) == (i == 0)) expect.push_back(FinSeq{a});
      if (pulled.pieces[i].members != expect) c.fail("piece " + std::to_string(i) + " differs from brute force");
    }
  }));
  rep.checks.push_back(guarded("pullback_rank", [&](Check& c) {
    Rng rng(seed + 3);
    // Level-preserving shift of entries after the first: injective.
    const PrefixMap shift = [](const FinSeq& u) {
      std::vector<FinSeq::value_type> v(u.begin(), u.end());
      for (std::size_t k = 1; k < v.size(); ++k) v[k] += 1;
      return FinSeq(std::move(v));
    };
    const GraphOracle pulled = pullback_graph(e, shift);
    for (int i = 0; i < 30; ++i) {
      const auto [s, t] = random_rect(rng, 2);
      c.tick();
      if (rank_upper(e, shift(s), shift(t), 4, 5).value < rank_upper(pulled, s, t, 3, 5).value)
        c.fail(pair_text(s, t));
    }
  }));
  return rep;
}

// ---------------------------------------------------------------------------

class OverlappingChallenger : public Challenger {
 public:
  std::string name() const override { return "overlapping"; }
  ChallengerMove move(const GameState& st) override {
    ChallengerMove m;
    m.claim = st.pending.is_successor() ? st.pending.predecessor() : Ordinal{};
    m.left = ClopenPartition{st.s, {{st.s.child(0)}, {st.s.child(0).child(1)}}, 0};
    m.right = ClopenPartition::finest_level(st.t, 2);
    return m;
  }
};

SuiteReport suite_game(std::uint64_t seed) {
  SuiteReport rep{"game", {}};
  auto play = [](Check& c, const Ordinal& alpha, const Ordinal& gamma, Challenger& ch) {
    c.tick();
    const Transcript t = rank_game_play(alpha, initial_game_state(alpha, gamma), ch, 200);
    if (t.outcome != GameOutcome::kRefuted) {
      c.fail(ch.name() + " gamma " + format_ordinal(gamma) + ": " + to_string(t.outcome) + " " + t.diagnosis);
    } else if (const auto why = audit_transcript(t)) {
      c.fail(ch.name() + " gamma " + format_ordinal(gamma) + ": " + *why);
    }
    return t;
  };
  rep.checks.push_back(guarded("greedy_finite", [&](Check& c) {
    for (std::uint64_t g = 0; g <= 20; ++g) {
      auto ch = greedy_challenger(Ordinal::omega());
      const Transcript t = play(c, Ordinal::omega(), Ordinal::finite(g), *ch);
      if (t.rounds.size() != std::max<std::uint64_t>(g, 1)) c.fail("gamma " + std::to_string(g) + ": wrong round count");
    }
  }));
  rep.checks.push_back(guarded("random_finite", [&](Check& c) {
    for (std::uint64_t g = 0; g <= 12; ++g)
      for (std::uint64_t k = 0; k < 3; ++k) {
        auto ch = random_challenger(Ordinal::omega(), seed * 1000 + g * 10 + k);
        play(c, Ordinal::omega(), Ordinal::finite(g), *ch);
      }
  }));
  rep.checks.push_back(guarded("omega_reduces_to_finite", [&](Check& c) {
    const Ordinal alpha = Ordinal::omega_power(Ordinal::finite(1), 2);
    for (std::uint64_t k = 0; k < 6; ++k) {
      auto ch = k == 0 ? greedy_challenger(alpha) : random_challenger(alpha, seed + k);
      const Transcript t = play(c, alpha, Ordinal::omega(), *ch);
      if (!t.rounds.empty() && !(t.rounds.front().challenge.claim < Ordinal::finite(31)))
        c.fail("first claim not finite and <= 30");
    }
  }));
  rep.checks.push_back(guarded("malformed_partition_rejected", [&](Check& c) {
    OverlappingChallenger ch;
    c.tick();
    const Transcript t = rank_game_play(Ordinal::omega(), initial_game_state(Ordinal::omega(), Ordinal::finite(3)), ch, 10);
    if (t.outcome != GameOutcome::kRejected || t.diagnosis.empty()) c.fail("overlap accepted");
  }));
  return rep;
}

// ---------------------------------------------------------------------------

// Random consistent request of grade <= g.
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

SuiteReport suite_universal(std::uint64_t seed) {
  SuiteReport rep{"universal", {}};
  const Ordinal alpha = w_pow(2);
  for (Variant v : {Variant::kPlain, Variant::kTrueClopen}) {
    const std::string tag = "_" + to_string(v);
    UniversalTree u(alpha, v);
    rep.checks.push_back(guarded("validity_checkpoints" + tag, [&](Check& c) {
      for (int chunk = 0; chunk < 4; ++chunk) {
        for (int i = 0; i < 500; ++i) u.build_step();
        const TreeValidation r = validate_alpha_tree(u);
        c.tick(r.pairs_checked);
        if (!r.ok())
          c.fail("step " + std::to_string(u.step()) + ": " + pair_text(r.violations[0].s, r.violations[0].t) + " " +
                 r.violations[0].reason);
      }
    }));
    rep.checks.push_back(guarded("q_propagation" + tag, [&](Check& c) {
      for_each_level_pair(u, [&](NodeId a, NodeId b) {
        const NodeId pa = u.parent_id(a), pb = u.parent_id(b);
        if (pa == pb) return;
        const Label up = *u.label(pa, pb);
        if (!up.is_q()) return;
        c.tick();
        if (*u.label(a, b) != up) c.fail(pair_text(u.node(a), u.node(b)));
      });
    }));
    rep.checks.push_back(guarded("monotone_growth" + tag, [&](Check& c) {
      const UniversalSnapshot before = u.snapshot();
      UniversalTree grown(before);
      for (int i = 0; i < 300; ++i) grown.build_step();
      const UniversalSnapshot after = grown.snapshot();
      c.tick();
      if (!std::equal(before.nodes.begin(), before.nodes.end(), after.nodes.begin())) c.fail("T_n not a prefix");
      for (const auto& l : before.labels)
        if (std::find(after.labels.begin(), after.labels.end(), l) == after.labels.end())
          c.fail("label lost on " + pair_text(l.s, l.t));
      for_each_level_pair(u, [&](NodeId a, NodeId b) {
        if (u.label(a, b) != grown.label(a, b)) c.fail("label changed on " + pair_text(u.node(a), u.node(b)));
      });
    }));
    rep.checks.push_back(guarded("fairness_grade3" + tag, [&](Check& c) {
      Rng rng(seed);
      for (int i = 0; i < 60; ++i) {
        const auto req = random_request(rng, u, 3);
        if (!req) continue;
        c.tick();
        const auto h = u.horizon(*req, 3);
        if (!h) {
          c.fail("no horizon");
          continue;
        }
        const WitnessResult w = u.find_witnesses(*req, 3, *h);
        if (w.shortfall) c.fail("shortfall within horizon " + std::to_string(*h));
        const auto h2 = u.horizon(*req, 3);
        const WitnessResult more = u.find_witnesses(*req, 3, *h2, w.witnesses);
        if (more.shortfall) c.fail("no fresh witnesses within horizon " + std::to_string(*h2));
      }
    }));
    if (v == Variant::kTrueClopen)
      rep.checks.push_back(guarded("lprime_scan", [&](Check& c) {
        c.tick(u.size());
        const auto bad = true_clopen_violations(u);
        if (!bad.empty()) c.fail(pair_text(bad[0].first, bad[0].second));
      }));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_embed(std::uint64_t seed) {
  SuiteReport rep{"embed", {}};
  const Ordinal alpha = w_pow(2);
  rep.checks.push_back(guarded("random_trees", [&](Check& c) {
    Rng rng(seed);
    UniversalTree u(alpha);
    for (int i = 0; i < 300; ++i) u.build_step();
    for (int i = 0; i < 20; ++i) {
      const AlphaTree tree = random_alpha_tree(rng, RandomTreeOptions{});
      const TreeSource src(tree);
      Embedding e = embed_tree(src, u);
      c.tick();
      const EmbeddingCheck chk = check_embedding(e);
      if (!chk.ok()) c.fail("tree " + std::to_string(i) + ": " + chk.defects.front());
      const ReductionReport red = verify_reduction(e, 50, 8, seed + i);
      if (!red.ok()) c.fail("tree " + std::to_string(i) + ": reduction disagreement at " +
                            pair_text(red.disagreements[0].s, red.disagreements[0].t));
    }
  }));
  rep.checks.push_back(guarded("fault_injection", [&](Check& c) {
    Rng rng(seed + 1);
    UniversalTree u(alpha);
    for (int detected = 0, n = 0; n < 20;) {
      const AlphaTree tree = random_alpha_tree(rng, RandomTreeOptions{});
      std::vector<std::pair<NodeId, NodeId>> pairs;
      for_each_level_pair(tree, [&](NodeId a, NodeId b) { pairs.emplace_back(a, b); });
      if (pairs.empty()) continue;
      ++n;
      const TreeSource src(tree);
      const Embedding e = embed_tree(src, u);
      AlphaTree broken = tree;
      const auto [a, b] = pairs[rng.uniform(pairs.size())];
      const Label old = *tree.label(a, b);
      broken.set_label(a, b, old.is_out() ? Label::in() : Label::out());
      c.tick();
      if (!check_embedding(e.pairs(), TreeSource(broken), u).ok()) ++detected;
      else c.fail("perturbation of " + pair_text(tree.node(a), tree.node(b)) + " undetected");
    }
  }));
  rep.checks.push_back(guarded("lazy_source", [&](Check& c) {
    const auto labeler = std::make_shared<CanonicalLabeler>(e_alpha(Ordinal::omega()), 3, 6);
    const FunctionSource src(
        Ordinal::omega(),
        [](const FinSeq& s) {
          std::vector<FinSeq> out;
          for (std::uint64_t i = 0; i < 3; ++i) out.push_back(s.child(i));
          return out;
        },
        [labeler](const FinSeq& s, const FinSeq& t) { return labeler->label(s, t); });
    UniversalTree u(Ordinal::omega());
    Embedding e(src, u);
    for (std::size_t n = 1; n <= 4; ++n) {
      e.ensure_depth(n);
      c.tick();
      if (e.deepest_label_query().value_or(0) > n) c.fail("label read below level " + std::to_string(n));
    }
    const EmbeddingCheck chk = check_embedding(e);
    if (!chk.ok()) c.fail(chk.defects.front());
    Rng rng(seed + 2);
    const Labeling target = labeling_of(u);
    for (int i = 0; i < 50; ++i) {
      const FinSeq xs = random_seq(rng, 4, 3), ys = random_seq(rng, 4, 3);
      if (xs == ys) continue;
      const Point x = Point::eventually_periodic(xs), y = Point::eventually_periodic(ys);
      const Point fx = induced_point_map(e, x), fy = induced_point_map(e, y);
      c.tick();
      for (std::size_t k = split_level(xs, ys); k <= 4; ++k)
        if (src.label(xs.prefix(k), ys.prefix(k)) != target(fx.prefix(k), fy.prefix(k)))
          c.fail("label along images differs at " + pair_text(xs.prefix(k), ys.prefix(k)));
      if (split_level(fx.prefix(4), fy.prefix(4)) != split_level(xs, ys)) c.fail("images split at another level");
    }
  }));
  rep.checks.push_back(guarded("true_clopen_embedding", [&](Check& c) {
    Rng rng(seed + 3);
    UniversalTree u(alpha, Variant::kTrueClopen);
    RandomTreeOptions o;
    o.true_clopen = true;
    for (int i = 0; i < 10; ++i) {
      const AlphaTree tree = random_alpha_tree(rng, o);
      const TreeSource src(tree);
      const Embedding e = embed_tree(src, u);
      c.tick();
      if (!check_embedding(e).ok()) c.fail("tree " + std::to_string(i));
    }
    if (!true_clopen_violations(u).empty()) c.fail("target lost the true-clopen constraint");
  }));
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_io(std::uint64_t seed) {
  SuiteReport rep{"io", {}};
  rep.checks.push_back(guarded("tree_round_trip", [&](Check& c) {
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) {
      const AlphaTree t = random_alpha_tree(rng, RandomTreeOptions{});
      c.tick();
      const Json j = tree_to_json(t);
      if (!(tree_from_json(Json::parse(j.dump())) == t)) c.fail("tree " + std::to_string(i));
    }
  }));
  rep.checks.push_back(guarded("snapshot_round_trip", [&](Check& c) {
    UniversalTree u(w_pow(2), Variant::kTrueClopen);
    for (int i = 0; i < 400; ++i) u.build_step();
    c.tick();
    const UniversalSnapshot back = Json::parse(Json(u.snapshot()).dump()).get<UniversalSnapshot>();
    if (!(UniversalTree(back) == u)) c.fail("snapshot differs after re-import");
  }));
  rep.checks.push_back(guarded("transcript_round_trip", [&](Check& c) {
    for (std::uint64_t k = 0; k < 5; ++k) {
      auto ch = random_challenger(Ordinal::omega(), seed + k);
      const Transcript t = rank_game_play(Ordinal::omega(), initial_game_state(Ordinal::omega(), Ordinal::finite(4)), *ch, 50);
      c.tick();
      const Json j = t;
      const Json back = Json(Json::parse(j.dump()).get<Transcript>());
      if (back != j) c.fail("transcript " + std::to_string(k));
    }
  }));
  rep.checks.push_back(guarded("trace_round_trip", [&](Check& c) {
    Rng rng(seed + 1);
    const GammaCodec codec(w_pow(2));
    for (int i = 0; i < 50; ++i) {
      const DescentTrace t = r_alpha_decide(w_pow(2), natural_point(random_natural_spec(rng)),
                                            GammaPoint::from_spec(random_gamma_spec(rng, codec), codec));
      c.tick();
      if (!(Json::parse(Json(t).dump()).get<DescentTrace>() == t)) c.fail("trace " + std::to_string(i));
    }
  }));
  return rep;
}

}  // namespace

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed) {
  static const std::map<std::string, SuiteReport (*)(std::uint64_t)> suites{
      {"ordinal", suite_ordinal}, {"seqspace", suite_seqspace},   {"clopen", suite_clopen},
      {"hierarchy", suite_hierarchy}, {"rank", suite_rank},       {"game", suite_game},
      {"universal", suite_universal}, {"embed", suite_embed},     {"io", suite_io}};
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(suites.at(n)(seed));
    return out;
  }
  const auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  out.push_back(it->second(seed));
  return out;
}

std::string format_report(const std::vector<SuiteReport>& reports, std::uint64_t seed) {
  std::ostringstream out;
  bool all = true;
  out << "seed " << seed << "\n";
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      out << (c.passed ? "pass " : "FAIL ") << r.suite << "." << c.name << " cases=" << c.cases;
      if (!c.passed) out << " counterexample: " << c.counterexample;
      out << "\n";
    }
    all = all && r.passed();
  }
  out << (all ? "all passed" : "FAILURES") << "\n";
  return out.str();
}

}  // namespace baire
