#include "baire/embed.hpp"

#include <algorithm>

#include "baire/hierarchy.hpp"

namespace baire {

std::vector<FinSeq> TreeSource::children(const FinSeq& s) const {
  const auto id = tree_.find(s);
  if (!id) throw std::out_of_range(format_seq(s) + " is not a node of the source tree");
  std::vector<FinSeq> out;
  for (NodeId c : tree_.children(*id)) out.push_back(tree_.node(c));
  std::sort(out.begin(), out.end());
  return out;
}

Label TreeSource::label(const FinSeq& s, const FinSeq& t) const { return labeling_of(tree_)(s, t); }

// ---------------------------------------------------------------------------

Embedding::Embedding(const SourceTree& source, UniversalTree& target, EmbedOptions options)
    : source_(source), target_(target), options_(options) {
  pairs_.emplace_back(FinSeq{}, 0);
  sigma_.emplace(FinSeq{}, 0);
  levels_.push_back({FinSeq{}});
}

std::optional<NodeId> Embedding::sigma(const FinSeq& s) const {
  const auto it = sigma_.find(s);
  if (it == sigma_.end()) return std::nullopt;
  return it->second;
}

void Embedding::ensure_depth(std::size_t n) {
  while (depth_ < n) {
    std::vector<FinSeq> next;
    for (const FinSeq& s : levels_[depth_]) {
      auto kids = source_.children(s);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    std::sort(next.begin(), next.end());
    levels_.emplace_back();
    ++depth_;
    for (const FinSeq& r : next) embed_node(r);
  }
}

void Embedding::embed_node(const FinSeq& r) {
  const std::size_t lvl = r.size();
  std::vector<std::pair<NodeId, Label>> constraints;
  for (const FinSeq& s : levels_[lvl]) {
    constraints.emplace_back(sigma_.at(s), source_.label(r, s));
    deepest_query_ = std::max(deepest_query_.value_or(0), lvl);
  }
  std::sort(constraints.begin(), constraints.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  RequestTriple req;
  req.p = sigma_.at(parent(r));
  for (auto& [id, l] : constraints) {
    req.f_nodes.push_back(id);
    req.f_labels.push_back(std::move(l));
  }
  const WitnessResult w = target_.find_witnesses(req, 1, options_.steps_per_node, {}, options_.allow_demand);
  scheduled_steps_ += w.scheduled_steps;
  demand_steps_ += w.demand_steps;
  if (w.shortfall)
    throw HorizonExhausted("no witness for " + format_seq(r) + " within " + std::to_string(options_.steps_per_node) +
                           " scheduled steps");
  const NodeId t = w.witnesses.front();
  pairs_.emplace_back(r, t);
  sigma_.emplace(r, t);
  levels_[lvl].push_back(r);
}

std::vector<std::pair<FinSeq, FinSeq>> true_clopen_violations(const LabeledTree& tree) {
  std::vector<std::pair<FinSeq, FinSeq>> out;
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    const FinSeq& s = tree.node(a);
    const FinSeq& t = tree.node(b);
    if (s.size() > 1 && s[0] == t[0] && tree.label(a, b) != Label::out()) out.emplace_back(s, t);
  });
  return out;
}

Embedding embed_tree(const TreeSource& source, UniversalTree& target, EmbedOptions options) {
  const TreeValidation v = validate_alpha_tree(source.tree());
  if (!v.ok()) {
    const auto& first = v.violations.front();
    throw std::invalid_argument("source is not an alpha-tree: " + format_seq(first.s) + " / " + format_seq(first.t) +
                                ": " + first.reason);
  }
  if (target.variant() == Variant::kTrueClopen) {
    const auto bad = true_clopen_violations(source.tree());
    if (!bad.empty())
      throw std::invalid_argument("source violates the true-clopen constraint at " + format_seq(bad.front().first) +
                                  " / " + format_seq(bad.front().second));
  }
  Embedding e(source, target, options);
  e.ensure_depth(source.tree().level_count() - 1);
  return e;
}

EmbeddingCheck check_embedding(const std::vector<std::pair<FinSeq, NodeId>>& map, const SourceTree& source,
                               const LabeledTree& target) {
  EmbeddingCheck out;
  auto defect = [&](std::string what) {
    ++out.defect_count;
    if (out.defects.size() < 8) out.defects.push_back(std::move(what));
  };
  std::unordered_map<FinSeq, NodeId, FinSeqHash> sigma;
  std::unordered_map<NodeId, FinSeq> preimage;
  std::vector<std::vector<std::pair<FinSeq, NodeId>>> levels;
  for (const auto& [s, t] : map) {
    ++out.nodes;
    if (t >= target.size()) {
      defect("sigma(" + format_seq(s) + ") is not a target node");
      continue;
    }
    if (!preimage.emplace(t, s).second)
      defect("not injective: " + format_seq(s) + " and " + format_seq(preimage[t]) + " share an image");
    sigma.emplace(s, t);
    if (target.node(t).size() != s.size()) defect("level not preserved at " + format_seq(s));
    if (levels.size() <= s.size()) levels.resize(s.size() + 1);
    levels[s.size()].emplace_back(s, t);
  }
  for (const auto& [s, t] : sigma) {
    if (s.empty()) {
      if (t != 0) defect("root not mapped to the root");
      continue;
    }
    const auto up = sigma.find(parent(s));
    if (up == sigma.end()) {
      defect("parent of " + format_seq(s) + " not embedded");
    } else if (t == 0 || target.parent_id(t) != up->second) {
      defect("order not preserved at " + format_seq(s));
    }
  }
  for (const auto& lv : levels)
    for (std::size_t i = 0; i < lv.size(); ++i)
      for (std::size_t j = i + 1; j < lv.size(); ++j) {
        ++out.pairs;
        const Label want = source.label(lv[i].first, lv[j].first);
        const auto got = target.label(lv[i].second, lv[j].second);
        if (got != want)
          defect("label of " + format_seq(lv[i].first) + " / " + format_seq(lv[j].first) + ": source " +
                 format_label(want) + ", target " + (got ? format_label(*got) : std::string("none")));
      }
  return out;
}

Point induced_point_map(Embedding& e, const Point& x) {
  return Point([&e, x](std::uint64_t k) {
    const FinSeq prefix = x.prefix(k + 1);
    e.ensure_depth(k + 1);
    const auto image = e.sigma(prefix);
    if (!image) throw DomainViolation("x leaves the source tree at " + format_seq(prefix));
    return e.target().node(*image)[k];
  });
}

namespace {

std::vector<Label> labels_along(const Labeling& l, const FinSeq& s, const FinSeq& t) {
  std::vector<Label> out;
  for (std::size_t k = split_level(s, t); k <= s.size(); ++k) out.push_back(l(s.prefix(k), t.prefix(k)));
  return out;
}

}  // namespace

ReductionReport verify_reduction(Embedding& e, std::uint64_t samples, std::size_t fuel, std::uint64_t seed) {
  ReductionReport report;
  Rng rng(seed);
  const SourceTree& src = e.source();
  const Labeling source_labels = [&src](const FinSeq& s, const FinSeq& t) { return src.label(s, t); };
  const Labeling target_labels = labeling_of(e.target());
  const GraphOracle source_graph = graph_from_labeling(source_labels, "source");
  const GraphOracle target_graph = graph_from_labeling(target_labels, "target");

  for (std::uint64_t i = 0; i < samples; ++i) {
    // Two random walks of a common length; redraw on coincidence.
    FinSeq s, t;
    for (int attempt = 0; attempt < 16 && s == t; ++attempt) {
      s = FinSeq{};
      t = FinSeq{};
      while (s.size() < fuel) {
        const auto cs = src.children(s);
        const auto ct = src.children(t);
        if (cs.empty() || ct.empty()) break;
        s = cs[rng.uniform(cs.size())];
        t = ct[rng.uniform(ct.size())];
      }
    }
    if (s == t) continue;
    ++report.samples;
    e.ensure_depth(s.size());
    const FinSeq is = e.target().node(*e.sigma(s));
    const FinSeq it = e.target().node(*e.sigma(t));
    const PairDecision ds = decide_prefix_pair(source_graph, s, t);
    const PairDecision dt = decide_prefix_pair(target_graph, is, it);
    if (!ds.diverged()) ++report.decided;
    if (ds.verdict != dt.verdict || ds.depth != dt.depth) {
      report.disagreements.push_back(ReductionDisagreement{s, t, is, it, ds, dt, labels_along(source_labels, s, t),
                                                           labels_along(target_labels, is, it)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

Ordinal random_below(Rng& rng, const Ordinal& bound, std::uint64_t window) {
  const BelowEnumerator below(bound);
  std::uint64_t n = window;
  if (const auto size = below.size()) n = std::min(n, *size);
  return below.at(rng.uniform(n));
}

Label random_label_below(Rng& rng, const Ordinal& bound, std::uint64_t window) {
  const std::uint64_t pick = rng.uniform(4);
  if (pick == 0 || bound.is_zero()) return rng.chance(1, 2) ? Label::in() : Label::out();
  if (pick == 1) return Label::out();
  return Label::ord(random_below(rng, bound, window));
}

}  // namespace

AlphaTree random_alpha_tree(Rng& rng, const RandomTreeOptions& options) {
  AlphaTree tree(options.label_bound);
  const std::size_t target = 1 + rng.uniform(std::max<std::size_t>(options.max_nodes, 1));
  std::vector<NodeId> open{0};  // nodes that may take children
  std::vector<std::uint64_t> next_entry{0};
  while (tree.size() < target && !open.empty()) {
    const std::size_t k = rng.uniform(open.size());
    const NodeId p = open[k];
    const FinSeq child = tree.node(p).child(next_entry[p]);
    next_entry[p] += 1 + rng.uniform(2);
    const NodeId c = tree.add_node(child);
    next_entry.push_back(0);
    if (child.size() < options.max_depth) open.push_back(c);
  }
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    const FinSeq& s = tree.node(a);
    const FinSeq& t = tree.node(b);
    Label l;
    if (options.true_clopen && s.size() > 1 && s[0] == t[0]) {
      l = Label::out();
    } else if (tree.parent_id(a) == tree.parent_id(b)) {
      l = random_label_below(rng, options.label_bound, options.window);
    } else {
      const Label up = *tree.label(tree.parent_id(a), tree.parent_id(b));
      l = up.is_q() ? up : random_label_below(rng, up.ordinal(), options.window);
    }
    tree.set_label(a, b, l);
  });
  return tree;
}

}  // namespace baire
