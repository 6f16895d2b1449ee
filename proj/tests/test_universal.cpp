#include <doctest.h>

#include <algorithm>
#include <set>

#include "baire/embed.hpp"
#include "baire/random.hpp"
#include "baire/universal.hpp"

using namespace baire;

namespace {

const Ordinal kW2 = Ordinal::omega_power(Ordinal::finite(2));

UniversalTree grown(std::uint64_t steps, Variant v = Variant::kPlain) {
  UniversalTree u(kW2, v);
  for (std::uint64_t i = 0; i < steps; ++i) u.build_step();
  return u;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// |L_g| counted from the definition: p of epoch < g, F a set of at most g
// nodes of epoch < g one level below p, each with one of the first g labels.
std::uint64_t brute_grade_size(const UniversalTree& u, std::uint64_t g) {
  std::uint64_t total = 0;
  for (NodeId p = 0; p < u.size(); ++p) {
    if (u.epoch(p) >= g) continue;
    std::uint64_t w = 0;
    for (NodeId s = 0; s < u.size(); ++s)
      if (u.epoch(s) < g && u.node(s).size() == u.node(p).size() + 1) ++w;
    for (std::uint64_t k = 0; k <= g; ++k) {
      std::uint64_t ways = choose(w, k);
      for (std::uint64_t i = 0; i < k; ++i) ways *= g;
      total += ways;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("validate_alpha_tree examples") {
  AlphaTree chain(kW2);
  chain.add_path(FinSeq{0, 0, 0});
  CHECK(validate_alpha_tree(chain).ok());

  AlphaTree sib(kW2);
  sib.add_node(FinSeq{0});
  sib.add_node(FinSeq{1});
  sib.set_label(FinSeq{0}, FinSeq{1}, Label::ord(7));
  CHECK(validate_alpha_tree(sib).ok());

  AlphaTree bad = sib;
  bad.set_label(FinSeq{0}, FinSeq{1}, Label::ord(3));
  bad.add_node(FinSeq{0, 0});
  bad.add_node(FinSeq{1, 0});
  bad.set_label(FinSeq{0, 0}, FinSeq{1, 0}, Label::ord(5));
  const TreeValidation r = validate_alpha_tree(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].s == FinSeq{0, 0});

  AlphaTree unlabeled(kW2);
  unlabeled.add_node(FinSeq{0});
  unlabeled.add_node(FinSeq{1});
  CHECK_FALSE(validate_alpha_tree(unlabeled).ok());

  AlphaTree too_big = sib;
  too_big.set_label(FinSeq{0}, FinSeq{1}, Label::ord(kW2));
  CHECK_FALSE(validate_alpha_tree(too_big).ok());
}

TEST_CASE("filler labels") {
  CHECK(filler_label(FinSeq{0}, FinSeq{1}, std::nullopt) == Label::out());
  CHECK(filler_label(FinSeq{0, 0}, FinSeq{1, 0}, Label::in()) == Label::in());
  CHECK(filler_label(FinSeq{0, 0}, FinSeq{1, 0}, Label::ord(4)) == Label::out());
  CHECK(lprime_filler(FinSeq{0, 0}, FinSeq{0, 1}, std::nullopt) == Label::out());
  CHECK(lprime_filler(FinSeq{0, 0, 0}, FinSeq{0, 1, 0}, Label::ord(3)) == Label::out());
  CHECK(lprime_filler(FinSeq{0, 0}, FinSeq{1, 0}, Label::in()) == Label::in());
  CHECK(parse_variant("true-clopen") == Variant::kTrueClopen);
  CHECK_THROWS_AS(parse_variant("other"), std::invalid_argument);
}

TEST_CASE("first step adds one level-1 child of the root") {
  UniversalTree u(kW2);
  const RequestTriple req = u.schedule_next();
  CHECK(req.p == 0);
  CHECK(req.f_nodes.empty());
  const auto id = u.build_step();
  REQUIRE(id);
  CHECK(u.node(*id) == FinSeq{0});
  CHECK(u.size() == 2);
  CHECK(u.explicit_label_count() == 0);
  CHECK(u.step() == 1);
}

TEST_CASE("a demand step realises a constrained child") {
  UniversalTree u = grown(3);
  const NodeId s = *u.find(FinSeq{0});
  const RequestTriple req{0, {s}, {Label::ord(3)}};
  CHECK_FALSE(u.inconsistency(req));
  const NodeId t = u.demand_step(req);
  CHECK(u.parent_id(t) == 0);
  CHECK(*u.label(t, s) == Label::ord(3));
  CHECK(u.is_witness(req, t));
  CHECK(validate_alpha_tree(u).ok());
  CHECK(u.demand_steps() == 1);
}

TEST_CASE("inconsistent requests are refused") {
  UniversalTree u = grown(40);
  // Make the level-1 pair ((0), (1)) carry In, then ask for a child of (0)
  // out-labeled against a child of (1).
  const NodeId a = *u.find(FinSeq{0});
  const NodeId b = u.demand_step(RequestTriple{0, {a}, {Label::in()}});
  const NodeId bc = u.demand_step(RequestTriple{b, {}, {}});
  const RequestTriple bad{a, {bc}, {Label::out()}};
  CHECK(u.inconsistency(bad));
  CHECK_THROWS_AS(u.demand_step(bad), std::invalid_argument);
  CHECK_FALSE(u.inconsistency(RequestTriple{a, {bc}, {Label::in()}}));
  CHECK(u.inconsistency(RequestTriple{a, {a}, {Label::in()}}));  // wrong level
}

TEST_CASE("skipped scheduled steps leave the tree unchanged") {
  UniversalTree u = grown(200);
  int skipped = 0;
  for (int i = 0; i < 2000 && skipped < 5; ++i) {
    const std::size_t size = u.size();
    const std::size_t labels = u.explicit_label_count();
    const RequestTriple next = u.schedule_next();
    const bool applicable = !u.inconsistency(next);
    const auto id = u.build_step();
    CHECK(id.has_value() == applicable);
    if (!id) {
      ++skipped;
      CHECK(u.size() == size);
      CHECK(u.explicit_label_count() == labels);
    }
  }
  CHECK(skipped == 5);
}

TEST_CASE("grade lists match a direct count") {
  UniversalTree u = grown(60);
  REQUIRE(u.block() >= 4);
  for (std::uint64_t g = 1; g <= 4; ++g) CHECK(u.grade_size(g) == brute_grade_size(u, g));
  for (int i = 0; i < 50; ++i) {
    const RequestTriple next = u.schedule_next();
    CHECK(u.index_in_grade(next, u.grade()) == (u.block() - u.grade()) % u.grade_size(u.grade()));
    CHECK(u.grade_of(next) <= u.grade());
    u.build_step();
  }
  CHECK(u.step() == (u.block() - 1) * u.block() / 2 + u.grade() - 1);
}

TEST_CASE("find_witnesses") {
  UniversalTree u = grown(100);
  const RequestTriple free{0, {}, {}};
  const WitnessResult w = u.find_witnesses(free, 3, 0);
  REQUIRE_FALSE(w.shortfall);
  CHECK(std::set<NodeId>(w.witnesses.begin(), w.witnesses.end()).size() == 3);
  for (NodeId t : w.witnesses) CHECK(u.parent_id(t) == 0);

  const NodeId s = *u.find(FinSeq{0});
  const RequestTriple in{0, {s}, {Label::in()}};
  const auto h = u.horizon(in, 1);
  REQUIRE(h);
  const WitnessResult one = u.find_witnesses(in, 1, *h);
  REQUIRE_FALSE(one.shortfall);
  CHECK(one.demand_steps == 0);
  CHECK(*u.label(one.witnesses[0], s) == Label::in());

  const WitnessResult more = u.find_witnesses(in, 2, *u.horizon(in, 2), one.witnesses);
  REQUIRE_FALSE(more.shortfall);
  for (NodeId t : more.witnesses) {
    CHECK(t != one.witnesses[0]);
    CHECK(*u.label(t, s) == Label::in());
  }
}

TEST_CASE("snapshots rebuild the same tree") {
  const UniversalTree u = grown(500, Variant::kTrueClopen);
  const UniversalSnapshot snap = u.snapshot();
  UniversalTree back(snap);
  CHECK(back == u);
  UniversalTree a = grown(500, Variant::kTrueClopen);
  for (int i = 0; i < 50; ++i) {
    a.build_step();
    back.build_step();
  }
  CHECK(a == back);

  UniversalSnapshot broken = snap;
  broken.step += 1;
  CHECK_THROWS(UniversalTree{broken});
  broken = snap;
  broken.nodes[3] = broken.nodes[3].child(9);
  CHECK_THROWS(UniversalTree{broken});
}

TEST_CASE("property: every checkpoint is a valid alpha-tree") {
  for (Variant v : {Variant::kPlain, Variant::kTrueClopen}) {
    UniversalTree u(kW2, v);
    for (int chunk = 0; chunk < 6; ++chunk) {
      for (int i = 0; i < 250; ++i) u.build_step();
      const TreeValidation r = validate_alpha_tree(u);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("property: Q labels propagate to all child pairs") {
  const UniversalTree u = grown(1500);
  std::uint64_t checked = 0;
  for_each_level_pair(u, [&](NodeId a, NodeId b) {
    if (u.node(a).size() < 2 || u.parent_id(a) == u.parent_id(b)) return;
    const Label up = *u.label(u.parent_id(a), u.parent_id(b));
    if (!up.is_q()) return;
    ++checked;
    CHECK(*u.label(a, b) == up);
  });
  CHECK(checked > 1000);
}

TEST_CASE("property: construction only grows") {
  UniversalTree u = grown(700);
  const UniversalSnapshot before = u.snapshot();
  UniversalTree old(before);
  for (int i = 0; i < 300; ++i) u.build_step();
  const UniversalSnapshot after = u.snapshot();
  REQUIRE(after.nodes.size() >= before.nodes.size());
  CHECK(std::equal(before.nodes.begin(), before.nodes.end(), after.nodes.begin()));
  for (const auto& l : before.labels) CHECK(std::find(after.labels.begin(), after.labels.end(), l) != after.labels.end());
  for_each_level_pair(old, [&](NodeId a, NodeId b) { CHECK(old.label(a, b) == u.label(a, b)); });
}

TEST_CASE("property: grade 3 requests find 3 witnesses within the horizon") {
  UniversalTree u = grown(400);
  Rng rng(61);
  int asked = 0;
  for (int i = 0; i < 200 && asked < 40; ++i) {
    std::vector<NodeId> universe;
    for (NodeId n = 0; n < u.size(); ++n)
      if (u.epoch(n) < 3) universe.push_back(n);
    RequestTriple req;
    req.p = universe[rng.uniform(universe.size())];
    for (NodeId n : universe)
      if (u.node(n).size() == u.node(req.p).size() + 1 && req.f_nodes.size() < 3 && rng.chance(1, 2)) {
        req.f_nodes.push_back(n);
        req.f_labels.push_back(*u.label_entry(rng.uniform(3)));
      }
    if (u.inconsistency(req)) continue;
    ++asked;
    REQUIRE(u.grade_of(req) <= 3);
    const auto h = u.horizon(req, 3);
    REQUIRE(h);
    const WitnessResult w = u.find_witnesses(req, 3, *h);
    CHECK_FALSE(w.shortfall);
    CHECK(w.demand_steps == 0);
    CHECK(w.scheduled_steps <= *h);
    for (NodeId t : w.witnesses) CHECK(u.is_witness(req, t));
  }
  CHECK(asked == 40);
}

TEST_CASE("property: true-clopen variant keeps same-first-coordinate pairs out") {
  const UniversalTree u = grown(2000, Variant::kTrueClopen);
  CHECK(true_clopen_violations(u).empty());
  std::uint64_t checked = 0;
  for_each_level_pair(u, [&](NodeId a, NodeId b) {
    if (u.node(a).size() > 1 && u.node(a)[0] == u.node(b)[0]) {
      ++checked;
      CHECK(*u.label(a, b) == Label::out());
    }
  });
  CHECK(checked > 1000);
}
