#include "baire/alpha_tree.hpp"

#include <stdexcept>

namespace baire {

AlphaTree::AlphaTree(Ordinal alpha) : alpha_(std::move(alpha)) {
  nodes_.push_back(Node{FinSeq(), 0, {}});
  levels_.push_back({0});
  index_.emplace(FinSeq(), 0);
}

std::optional<NodeId> AlphaTree::find(const FinSeq& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId AlphaTree::add_node(const FinSeq& s) {
  if (auto existing = find(s)) return *existing;
  if (s.empty()) return 0;
  auto p = find(parent(s));
  if (!p) throw std::invalid_argument("parent of " + format_seq(s) + " is not in the tree");
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{s, *p, {}});
  nodes_[*p].children.push_back(id);
  if (levels_.size() <= s.size()) levels_.resize(s.size() + 1);
  levels_[s.size()].push_back(id);
  index_.emplace(s, id);
  return id;
}

NodeId AlphaTree::add_path(const FinSeq& s) {
  NodeId id = 0;
  for (std::size_t n = 1; n <= s.size(); ++n) id = add_node(s.prefix(n));
  return id;
}

std::optional<Label> AlphaTree::label(NodeId a, NodeId b) const {
  if (a == b) return std::nullopt;
  auto it = labels_.find(pair_key(a, b));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

void AlphaTree::set_label(NodeId a, NodeId b, Label l) {
  if (a == b || a >= nodes_.size() || b >= nodes_.size() ||
      nodes_[a].seq.size() != nodes_[b].seq.size())
    throw std::invalid_argument("labels live on distinct nodes of one level");
  labels_[pair_key(a, b)] = std::move(l);
}

void AlphaTree::set_label(const FinSeq& s, const FinSeq& t, Label l) {
  auto a = find(s);
  auto b = find(t);
  if (!a || !b) throw std::invalid_argument("label on a pair outside the tree");
  set_label(*a, *b, std::move(l));
}

std::optional<Label> AlphaTree::label(const FinSeq& s, const FinSeq& t) const {
  auto a = find(s);
  auto b = find(t);
  if (!a || !b) return std::nullopt;
  return label(*a, *b);
}

bool operator==(const AlphaTree& a, const AlphaTree& b) {
  if (!(a.alpha_ == b.alpha_) || a.nodes_.size() != b.nodes_.size() ||
      a.labels_.size() != b.labels_.size())
    return false;
  for (const auto& n : a.nodes_)
    if (!b.find(n.seq)) return false;
  for (const auto& [key, l] : a.labels_) {
    const auto& s = a.nodes_[key >> 32].seq;
    const auto& t = a.nodes_[key & 0xffffffffu].seq;
    auto other = b.label(s, t);
    if (!other || !(*other == l)) return false;
  }
  return true;
}

void for_each_level_pair(const LabeledTree& tree, const std::function<void(NodeId, NodeId)>& fn) {
  for (std::size_t n = 1; n < tree.level_count(); ++n) {
    const auto& lv = tree.level(n);
    for (std::size_t i = 0; i < lv.size(); ++i)
      for (std::size_t j = i + 1; j < lv.size(); ++j) fn(lv[i], lv[j]);
  }
}

TreeValidation validate_alpha_tree(const LabeledTree& tree, std::size_t max_reported) {
  TreeValidation report;
  auto record = [&](NodeId a, NodeId b, std::string reason) {
    ++report.violation_count;
    if (report.violations.size() < max_reported)
      report.violations.push_back({tree.node(a), tree.node(b), std::move(reason)});
  };
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    ++report.pairs_checked;
    const auto l = tree.label(a, b);
    if (!l) {
      record(a, b, "unlabeled pair");
      return;
    }
    if (l->is_ordinal() && !(l->ordinal() < tree.alpha())) {
      record(a, b, "label " + format_label(*l) + " is not below alpha " + format_ordinal(tree.alpha()));
    }
    const NodeId pa = tree.parent_id(a);
    const NodeId pb = tree.parent_id(b);
    if (pa == pb) return;  // siblings are unconstrained
    const auto pl = tree.label(pa, pb);
    if (!pl) {
      record(pa, pb, "unlabeled parent pair");
      return;
    }
    if (!triangle_lt(*l, *pl)) {
      record(a, b, "label " + format_label(*l) + " does not descend from parent label " + format_label(*pl));
    }
  });
  return report;
}

std::function<Label(const FinSeq&, const FinSeq&)> labeling_of(const LabeledTree& tree) {
  return [&tree](const FinSeq& s, const FinSeq& t) -> Label {
    auto a = tree.find(s);
    auto b = tree.find(t);
    std::optional<Label> l;
    if (a && b) l = tree.label(*a, *b);
    if (!l) throw std::out_of_range("no label for " + format_seq(s) + " / " + format_seq(t));
    return *l;
  };
}

}  // namespace baire
