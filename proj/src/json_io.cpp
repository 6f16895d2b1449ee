#include "baire/json_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace baire {

void to_json(Json& j, const FinSeq& s) { j = s.entries(); }
void from_json(const Json& j, FinSeq& s) { s = FinSeq(j.get<std::vector<FinSeq::value_type>>()); }
void to_json(Json& j, const Ordinal& o) { j = format_ordinal(o); }
void from_json(const Json& j, Ordinal& o) { o = parse_ordinal(j.get<std::string>()); }
void to_json(Json& j, const Label& l) {
  if (l.is_ordinal()) {
    j = Json{{"ord", format_ordinal(l.ordinal())}};
  } else {
    j = Json{{"q", l.is_in() ? "in" : "out"}};
  }
}

void from_json(const Json& j, Label& l) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("label must be {\"q\": ...} or {\"ord\": ...}");
  if (j.contains("ord")) {
    l = Label::ord(parse_ordinal(j.at("ord").get<std::string>()));
    return;
  }
  const auto q = j.at("q").get<std::string>();
  if (q == "in") {
    l = Label::in();
  } else if (q == "out") {
    l = Label::out();
  } else {
    throw std::invalid_argument("unknown Q label '" + q + "'");
  }
}

void to_json(Json& j, Verdict v) { j = to_string(v); }

void from_json(const Json& j, Verdict& v) {
  const auto s = j.get<std::string>();
  for (Verdict c : {Verdict::kIn, Verdict::kOut, Verdict::kUndecided})
    if (to_string(c) == s) {
      v = c;
      return;
    }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

void to_json(Json& j, const PairDecision& d) { j = Json{{"verdict", d.verdict}, {"depth", d.depth}}; }

void from_json(const Json& j, PairDecision& d) {
  j.at("verdict").get_to(d.verdict);
  j.at("depth").get_to(d.depth);
}

void to_json(Json& j, const Antichain& a) {
  j = Json{{"members", a.members},
           {"branch_truncated", a.branch_truncated},
           {"depth_truncated", a.depth_truncated},
           {"complete", a.complete()}};
}

void from_json(const Json& j, Antichain& a) {
  j.at("members").get_to(a.members);
  j.at("branch_truncated").get_to(a.branch_truncated);
  j.at("depth_truncated").get_to(a.depth_truncated);
}

void to_json(Json& j, const DescentStep& s) { j = Json{{"m", s.m}, {"n", s.n}, {"label", s.label}}; }

void from_json(const Json& j, DescentStep& s) {
  j.at("m").get_to(s.m);
  j.at("n").get_to(s.n);
  j.at("label").get_to(s.label);
}

void to_json(Json& j, const DescentTrace& t) {
  j = Json{{"steps", t.steps},     {"i0", t.i0},           {"verdict", t.verdict},
           {"x_depth", t.x_depth}, {"y_depth", t.y_depth}, {"depth", t.depth()}};
}

void from_json(const Json& j, DescentTrace& t) {
  j.at("steps").get_to(t.steps);
  j.at("i0").get_to(t.i0);
  j.at("verdict").get_to(t.verdict);
  j.at("x_depth").get_to(t.x_depth);
  j.at("y_depth").get_to(t.y_depth);
}

void to_json(Json& j, const RankBound& r) {
  j = Json{{"surrogate", "truncation upper bound"},
           {"value", r.value},
           {"complete", r.complete},
           {"exceeds_truncation", r.exceeds_truncation},
           {"hint", r.hint ? Json(*r.hint) : Json(nullptr)}};
}

void from_json(const Json& j, RankBound& r) {
  j.at("value").get_to(r.value);
  j.at("complete").get_to(r.complete);
  j.at("exceeds_truncation").get_to(r.exceeds_truncation);
  r.hint.reset();
  if (!j.at("hint").is_null()) r.hint = j.at("hint").get<Ordinal>();
}

// ---------------------------------------------------------------------------

void to_json(Json& j, const ClopenPartition& p) {
  j = Json{{"base", p.base},
           {"pieces", p.pieces},
           {"remainder", p.remainder ? Json(*p.remainder) : Json(nullptr)}};
}

void from_json(const Json& j, ClopenPartition& p) {
  j.at("base").get_to(p.base);
  j.at("pieces").get_to(p.pieces);
  p.remainder.reset();
  if (!j.at("remainder").is_null()) p.remainder = j.at("remainder").get<std::size_t>();
}

void to_json(Json& j, const GameState& s) {
  j = Json{{"s", s.s}, {"t", s.t}, {"pending", s.pending}, {"round", s.round}};
}

void from_json(const Json& j, GameState& s) {
  j.at("s").get_to(s.s);
  j.at("t").get_to(s.t);
  j.at("pending").get_to(s.pending);
  j.at("round").get_to(s.round);
}

void to_json(Json& j, const Certificate& c) {
  j = Json{{"s", c.s},
           {"t_in", c.t_in},
           {"t_out", c.t_out},
           {"in_trace", c.in_trace},
           {"out_trace", c.out_trace},
           {"completion", "s and t_in / t_out continued by zeros"}};
}

void from_json(const Json& j, Certificate& c) {
  j.at("s").get_to(c.s);
  j.at("t_in").get_to(c.t_in);
  j.at("t_out").get_to(c.t_out);
  j.at("in_trace").get_to(c.in_trace);
  j.at("out_trace").get_to(c.out_trace);
}

namespace {

Json round_to_json(const GameRound& r) {
  Json j{{"claim", r.challenge.claim},
         {"partitions", Json{{"left", r.challenge.left}, {"right", r.challenge.right}}},
         {"new_state", r.state}};
  if (r.prover) {
    j["prover_move"] = Json{{"s_prime", r.prover->s_prime},
                            {"t_prime", r.prover->t_prime},
                            {"s_double_prime", r.prover->s_double_prime},
                            {"left_piece", r.prover->left_piece},
                            {"right_piece", r.prover->right_piece}};
  } else {
    j["prover_move"] = nullptr;
  }
  return j;
}

GameRound round_from_json(const Json& j) {
  GameRound r;
  j.at("claim").get_to(r.challenge.claim);
  j.at("partitions").at("left").get_to(r.challenge.left);
  j.at("partitions").at("right").get_to(r.challenge.right);
  j.at("new_state").get_to(r.state);
  const Json& pm = j.at("prover_move");
  if (!pm.is_null()) {
    ProverMove m;
    pm.at("s_prime").get_to(m.s_prime);
    pm.at("t_prime").get_to(m.t_prime);
    pm.at("s_double_prime").get_to(m.s_double_prime);
    pm.at("left_piece").get_to(m.left_piece);
    pm.at("right_piece").get_to(m.right_piece);
    r.prover = m;
  }
  return r;
}

GameOutcome parse_outcome(const std::string& s) {
  for (GameOutcome o : {GameOutcome::kRefuted, GameOutcome::kRoundLimit, GameOutcome::kRejected,
                        GameOutcome::kProverStuck})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("unknown game outcome '" + s + "'");
}

}  // namespace

void to_json(Json& j, const Transcript& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) rounds.push_back(round_to_json(r));
  j = Json{{"alpha", t.alpha},
           {"challenger", t.challenger},
           {"initial", t.initial},
           {"rounds", rounds},
           {"outcome", to_string(t.outcome)},
           {"certificate", t.certificate ? Json(*t.certificate) : Json(nullptr)},
           {"diagnosis", t.diagnosis},
           {"surrogate", "game-strategy lower-bound certificate"}};
}

void from_json(const Json& j, Transcript& t) {
  j.at("alpha").get_to(t.alpha);
  j.at("challenger").get_to(t.challenger);
  j.at("initial").get_to(t.initial);
  t.rounds.clear();
  for (const auto& r : j.at("rounds")) t.rounds.push_back(round_from_json(r));
  t.outcome = parse_outcome(j.at("outcome").get<std::string>());
  t.certificate.reset();
  if (!j.at("certificate").is_null()) t.certificate = j.at("certificate").get<Certificate>();
  j.at("diagnosis").get_to(t.diagnosis);
}

// ---------------------------------------------------------------------------

Json tree_to_json(const LabeledTree& tree) {
  Json nodes = Json::array();
  for (NodeId i = 0; i < tree.size(); ++i) nodes.push_back(tree.node(i));
  struct Row {
    FinSeq s, t;
    Label l;
  };
  std::vector<Row> rows;
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    const auto l = tree.label(a, b);
    if (!l) return;
    FinSeq s = tree.node(a), t = tree.node(b);
    if (t < s) std::swap(s, t);
    rows.push_back({std::move(s), std::move(t), *l});
  });
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.s != b.s ? a.s < b.s : a.t < b.t; });
  Json labels = Json::array();
  for (const auto& r : rows) labels.push_back(Json{{"s", r.s}, {"t", r.t}, {"label", r.l}});
  return Json{{"alpha", tree.alpha()}, {"nodes", nodes}, {"labels", labels}};
}

AlphaTree tree_from_json(const Json& j) {
  AlphaTree tree(j.at("alpha").get<Ordinal>());
  for (const auto& n : j.at("nodes")) tree.add_path(n.get<FinSeq>());
  for (const auto& l : j.at("labels"))
    tree.set_label(l.at("s").get<FinSeq>(), l.at("t").get<FinSeq>(), l.at("label").get<Label>());
  return tree;
}

void to_json(Json& j, const UniversalSnapshot& s) {
  Json labels = Json::array();
  for (const auto& l : s.labels) labels.push_back(Json{{"s", l.s}, {"t", l.t}, {"label", l.label}});
  j = Json{{"alpha", s.alpha},
           {"variant", to_string(s.variant)},
           {"nodes", s.nodes},
           {"epochs", s.epochs},
           {"labels", labels},
           {"labels_stored", "explicit only; other pairs follow the filler rule"},
           {"step", s.step},
           {"demand_steps", s.demand_steps},
           {"cursor", Json{{"block", s.block}, {"grade", s.grade}}},
           {"block_starts", s.block_starts}};
}

void from_json(const Json& j, UniversalSnapshot& s) {
  j.at("alpha").get_to(s.alpha);
  s.variant = parse_variant(j.at("variant").get<std::string>());
  j.at("nodes").get_to(s.nodes);
  j.at("epochs").get_to(s.epochs);
  s.labels.clear();
  for (const auto& l : j.at("labels"))
    s.labels.push_back({l.at("s").get<FinSeq>(), l.at("t").get<FinSeq>(), l.at("label").get<Label>()});
  j.at("step").get_to(s.step);
  j.at("demand_steps").get_to(s.demand_steps);
  j.at("cursor").at("block").get_to(s.block);
  j.at("cursor").at("grade").get_to(s.grade);
  j.at("block_starts").get_to(s.block_starts);
}

EmbeddingRecord record_of(const Embedding& e, std::string source_ref, std::string target_ref) {
  EmbeddingRecord r;
  for (const auto& [s, t] : e.pairs()) r.pairs.emplace_back(s, e.target().node(t));
  r.source = std::move(source_ref);
  r.target = std::move(target_ref);
  return r;
}

void to_json(Json& j, const EmbeddingRecord& e) {
  Json pairs = Json::array();
  for (const auto& [s, t] : e.pairs) pairs.push_back(Json{{"source_node", s}, {"target_node", t}});
  j = Json{{"pairs", pairs}, {"source", e.source}, {"target", e.target}};
}

void from_json(const Json& j, EmbeddingRecord& e) {
  e.pairs.clear();
  for (const auto& p : j.at("pairs"))
    e.pairs.emplace_back(p.at("source_node").get<FinSeq>(), p.at("target_node").get<FinSeq>());
  j.at("source").get_to(e.source);
  j.at("target").get_to(e.target);
}

// ---------------------------------------------------------------------------

std::string tree_to_dot(const LabeledTree& tree, std::size_t max_pairs) {
  std::ostringstream out;
  out << "graph alpha_tree {\n";
  out << "  // alpha = " << format_ordinal(tree.alpha()) << "; out-labeled pairs omitted\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (NodeId i = 0; i < tree.size(); ++i) out << "  n" << i << " [label=\"" << format_seq(tree.node(i)) << "\"];\n";
  for (NodeId i = 1; i < tree.size(); ++i) out << "  n" << tree.parent_id(i) << " -- n" << i << ";\n";
  std::size_t drawn = 0;
  bool truncated = false;
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    const auto l = tree.label(a, b);
    if (!l || l->is_out()) return;
    if (drawn == max_pairs) {
      truncated = true;
      return;
    }
    ++drawn;
    out << "  n" << a << " -- n" << b << " [style=dashed, constraint=false, label=\"" << format_label(*l) << "\"];\n";
  });
  if (truncated) out << "  // further labeled pairs not drawn\n";
  out << "}\n";
  return out.str();
}

}  // namespace baire
