#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "baire/alpha_tree.hpp"
#include "baire/clopen.hpp"
#include "baire/random.hpp"
#include "baire/universal.hpp"

namespace baire {

// An alpha-tree given lazily: children per node and a label per level pair.
class SourceTree {
 public:
  virtual ~SourceTree() = default;
  virtual const Ordinal& alpha() const = 0;
  virtual std::vector<FinSeq> children(const FinSeq& s) const = 0;
  virtual Label label(const FinSeq& s, const FinSeq& t) const = 0;
};

// A finite tree as a source. The tree must outlive the source.
class TreeSource final : public SourceTree {
 public:
  explicit TreeSource(const LabeledTree& tree) : tree_(tree) {}
  const LabeledTree& tree() const { return tree_; }
  const Ordinal& alpha() const override { return tree_.alpha(); }
  std::vector<FinSeq> children(const FinSeq& s) const override;
  Label label(const FinSeq& s, const FinSeq& t) const override;

 private:
  const LabeledTree& tree_;
};

class FunctionSource final : public SourceTree {
 public:
  using ChildrenFn = std::function<std::vector<FinSeq>(const FinSeq&)>;
  FunctionSource(Ordinal alpha, ChildrenFn children, Labeling labels)
      : alpha_(std::move(alpha)), children_(std::move(children)), labels_(std::move(labels)) {}
  const Ordinal& alpha() const override { return alpha_; }
  std::vector<FinSeq> children(const FinSeq& s) const override { return children_(s); }
  Label label(const FinSeq& s, const FinSeq& t) const override { return labels_(s, t); }

 private:
  Ordinal alpha_;
  ChildrenFn children_;
  Labeling labels_;
};

// Embedding could not find a witness within its step budget.
class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EmbedOptions {
  // Scheduled construction steps allowed per source node before falling back
  // to demand steps.
  std::uint64_t steps_per_node = 0;
  // Without demand steps, a node with no witness in budget raises
  // HorizonExhausted.
  bool allow_demand = true;
};

// sigma from a source alpha-tree into a universal tree, built one node at a
// time in breadth-first (level, lexicographic) order. For each new node r the
// universal tree is asked for a child of sigma(r*) whose labels against the
// already embedded level match those of r.
//
// Source and target must outlive the embedding; it mutates the target.
class Embedding {
 public:
  Embedding(const SourceTree& source, UniversalTree& target, EmbedOptions options = {});

  // Embeds every source node of length <= n. Source labels are only read at
  // levels <= n.
  void ensure_depth(std::size_t n);
  std::size_t embedded_depth() const { return depth_; }

  std::optional<NodeId> sigma(const FinSeq& s) const;
  // (source node, target node) in insertion order.
  const std::vector<std::pair<FinSeq, NodeId>>& pairs() const { return pairs_; }
  // Deepest level at which a source label was read.
  std::optional<std::size_t> deepest_label_query() const { return deepest_query_; }

  const SourceTree& source() const { return source_; }
  const UniversalTree& target() const { return target_; }
  std::uint64_t scheduled_steps() const { return scheduled_steps_; }
  std::uint64_t demand_steps() const { return demand_steps_; }

 private:
  void embed_node(const FinSeq& r);

  const SourceTree& source_;
  UniversalTree& target_;
  EmbedOptions options_;
  std::size_t depth_ = 0;
  std::vector<std::pair<FinSeq, NodeId>> pairs_;
  std::unordered_map<FinSeq, NodeId, FinSeqHash> sigma_;
  std::vector<std::vector<FinSeq>> levels_;  // embedded source nodes per level
  std::optional<std::size_t> deepest_query_;
  std::uint64_t scheduled_steps_ = 0;
  std::uint64_t demand_steps_ = 0;
};

// Violations of the true-clopen constraint in a finite tree.
std::vector<std::pair<FinSeq, FinSeq>> true_clopen_violations(const LabeledTree& tree);

// Validates the finite tree (and, for a true-clopen target, its constraint),
// then embeds it completely. Throws std::invalid_argument on an invalid tree
// and HorizonExhausted on a shortfall.
Embedding embed_tree(const TreeSource& source, UniversalTree& target, EmbedOptions options = {});

struct EmbeddingCheck {
  std::uint64_t nodes = 0;
  std::uint64_t pairs = 0;
  std::vector<std::string> defects;  // first few
  std::uint64_t defect_count = 0;

  bool ok() const { return defect_count == 0; }
};

// Exact check of injectivity, level and order preservation and of
// l(s, t) = L(sigma(s), sigma(t)) over all embedded pairs. The source may
// differ from the one the map was built from.
EmbeddingCheck check_embedding(const std::vector<std::pair<FinSeq, NodeId>>& map, const SourceTree& source,
                               const LabeledTree& target);
inline EmbeddingCheck check_embedding(const Embedding& e) {
  return check_embedding(e.pairs(), e.source(), e.target());
}

// x ↦ ∪ sigma(x↾n): coordinate k is the last entry of sigma(x↾(k+1)). The
// embedding is extended lazily; it must outlive the point. Reading a
// coordinate of x outside the source raises DomainViolation.
Point induced_point_map(Embedding& e, const Point& x);

struct ReductionDisagreement {
  FinSeq s;
  FinSeq t;
  FinSeq image_s;
  FinSeq image_t;
  PairDecision source;
  PairDecision target;
  std::vector<Label> source_trace;  // labels along (s↾k, t↾k) from the split
  std::vector<Label> target_trace;
};

struct ReductionReport {
  std::uint64_t samples = 0;
  std::uint64_t decided = 0;  // samples decided within their length
  std::vector<ReductionDisagreement> disagreements;

  bool ok() const { return disagreements.empty(); }
};

// Samples pairs of distinct same-length branches of the source (random walks
// of length <= fuel, extending the embedding as needed) and compares the
// first decision along them in the source labeling with the first decision
// along their images in the target labeling.
ReductionReport verify_reduction(Embedding& e, std::uint64_t samples, std::size_t fuel, std::uint64_t seed);

struct RandomTreeOptions {
  std::size_t max_nodes = 40;
  std::size_t max_depth = 6;
  Ordinal label_bound = Ordinal::omega_power(Ordinal::finite(2));
  bool true_clopen = false;
  // Ordinal labels are drawn from the first `window` notations below a bound.
  std::uint64_t window = 24;
};

// A random valid alpha-tree (alpha = label_bound) with at most max_nodes nodes.
AlphaTree random_alpha_tree(Rng& rng, const RandomTreeOptions& options);

}  // namespace baire
