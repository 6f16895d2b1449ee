#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "baire/ordinal.hpp"
#include "baire/seqspace.hpp"

namespace baire {

using NodeId = std::uint32_t;

// Unordered key for a pair of distinct node ids.
inline std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// A finite parent-closed subtree of w^<w whose same-length distinct pairs
// carry labels in alpha ∪ {in, out}. Node ids are dense and assigned in
// insertion order; the root () is always id 0.
class LabeledTree {
 public:
  virtual ~LabeledTree() = default;

  virtual const Ordinal& alpha() const = 0;
  virtual std::size_t size() const = 0;
  virtual const FinSeq& node(NodeId id) const = 0;
  virtual NodeId parent_id(NodeId id) const = 0;  // precondition: id != 0
  virtual std::optional<NodeId> find(const FinSeq& s) const = 0;
  // Levels 0..level_count()-1; level n holds the nodes of length n.
  virtual std::size_t level_count() const = 0;
  virtual const std::vector<NodeId>& level(std::size_t n) const = 0;
  virtual const std::vector<NodeId>& children(NodeId id) const = 0;
  // Label of a same-level distinct pair; nullopt if unlabeled.
  virtual std::optional<Label> label(NodeId a, NodeId b) const = 0;

  std::size_t depth_of(NodeId id) const { return node(id).size(); }
};

// Plain explicit storage: every label is stored.
class AlphaTree final : public LabeledTree {
 public:
  explicit AlphaTree(Ordinal alpha = Ordinal::omega());

  const Ordinal& alpha() const override { return alpha_; }
  std::size_t size() const override { return nodes_.size(); }
  const FinSeq& node(NodeId id) const override { return nodes_[id].seq; }
  NodeId parent_id(NodeId id) const override { return nodes_[id].parent; }
  std::optional<NodeId> find(const FinSeq& s) const override;
  std::size_t level_count() const override { return levels_.size(); }
  const std::vector<NodeId>& level(std::size_t n) const override { return levels_.at(n); }
  const std::vector<NodeId>& children(NodeId id) const override { return nodes_[id].children; }
  std::optional<Label> label(NodeId a, NodeId b) const override;

  // Adds s; its parent must already be present. Returns the existing id if s
  // is already a node.
  NodeId add_node(const FinSeq& s);
  // Adds s together with any missing prefixes.
  NodeId add_path(const FinSeq& s);

  // Throws std::invalid_argument unless a, b are distinct nodes of one level.
  void set_label(NodeId a, NodeId b, Label l);
  void set_label(const FinSeq& s, const FinSeq& t, Label l);
  std::optional<Label> label(const FinSeq& s, const FinSeq& t) const;

  std::size_t label_count() const { return labels_.size(); }

  friend bool operator==(const AlphaTree& a, const AlphaTree& b);

 private:
  struct Node {
    FinSeq seq;
    NodeId parent = 0;
    std::vector<NodeId> children;
  };

  Ordinal alpha_;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> levels_;
  std::unordered_map<FinSeq, NodeId, FinSeqHash> index_;
  std::unordered_map<std::uint64_t, Label> labels_;
};

struct TreeViolation {
  FinSeq s;
  FinSeq t;
  std::string reason;
};

struct TreeValidation {
  std::uint64_t pairs_checked = 0;
  std::vector<TreeViolation> violations;  // truncated at max_reported
  std::uint64_t violation_count = 0;

  bool ok() const { return violation_count == 0; }
};

// Checks that every same-length distinct pair is labeled, that ordinal labels
// lie below alpha, and that l(s,t) ⊲ l(s*,t*) whenever s* != t*.
TreeValidation validate_alpha_tree(const LabeledTree& tree, std::size_t max_reported = 16);

// Calls fn(a, b) for every unordered same-level distinct pair, level by level.
void for_each_level_pair(const LabeledTree& tree, const std::function<void(NodeId, NodeId)>& fn);

// Label function over sequences backed by a tree; throws std::out_of_range
// for pairs the tree does not label.
std::function<Label(const FinSeq&, const FinSeq&)> labeling_of(const LabeledTree& tree);

}  // namespace baire
