#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "baire/alpha_tree.hpp"
#include "baire/ordinal.hpp"
#include "baire/seqspace.hpp"

namespace baire {

enum class Variant {
  kPlain,
  kTrueClopen,  // L': same-first-coordinate pairs below level 1 are Out
};
std::string to_string(Variant v);
Variant parse_variant(const std::string& text);  // "plain" | "true-clopen"

// Label for a new pair (s, t) not fixed by a request. Siblings (no parent
// pair) get Out; Q labels propagate from the parent pair; otherwise Out. The
// true-clopen variant forces Out when |s| > 1 and s(0) = t(0).
Label filler_label(const FinSeq& s, const FinSeq& t, const std::optional<Label>& parent_label);
Label lprime_filler(const FinSeq& s, const FinSeq& t, const std::optional<Label>& parent_label);

// Ask for a fresh child t of p with L(t, s) = f(s) for s ∈ F. F holds nodes
// of level |p| + 1, sorted by id, and labels[i] is f(F[i]).
struct RequestTriple {
  NodeId p = 0;
  std::vector<NodeId> f_nodes;
  std::vector<Label> f_labels;

  friend bool operator==(const RequestTriple&, const RequestTriple&) = default;
};

struct WitnessResult {
  std::vector<NodeId> witnesses;
  std::uint64_t scheduled_steps = 0;
  std::uint64_t demand_steps = 0;
  bool shortfall = false;  // fewer than `count` witnesses
};

// Serialised state: nodes in id order, explicit labels only.
struct UniversalSnapshot {
  struct ExplicitLabel {
    FinSeq s;
    FinSeq t;
    Label label;
    friend bool operator==(const ExplicitLabel&, const ExplicitLabel&) = default;
  };

  Ordinal alpha;
  Variant variant = Variant::kPlain;
  std::vector<FinSeq> nodes;
  std::vector<std::uint64_t> epochs;
  std::vector<ExplicitLabel> labels;  // sorted by (s, t)
  std::uint64_t step = 0;
  std::uint64_t demand_steps = 0;
  std::uint64_t block = 1;
  std::uint64_t grade = 1;
  std::vector<std::uint64_t> block_starts;  // node count when block b began, b = 1..block

  friend bool operator==(const UniversalSnapshot&, const UniversalSnapshot&) = default;
};

// The incremental universal labeling (T_n, L_n).
//
// Fresh children of p are named p⌢k with k the number of children p already
// has. A node made during block b has epoch b; the root has epoch 0. Block b
// runs one step for each grade g = 1..b, and grade g works through the list
// L_g of triples whose nodes have epoch < g, |F| <= g and labels among the
// first g entries of (in, out, enumerate_below(alpha, .)). In block b grade g
// takes entry (b - g) mod |L_g|, so every entry recurs every |L_g| blocks.
//
// Only labels fixed by requests are stored; all others follow filler_label.
// label() is safe to call concurrently on an unchanging tree.
class UniversalTree final : public LabeledTree {
 public:
  explicit UniversalTree(Ordinal alpha, Variant variant = Variant::kPlain);
  explicit UniversalTree(const UniversalSnapshot& snap);

  const Ordinal& alpha() const override { return alpha_; }
  std::size_t size() const override { return nodes_.size(); }
  const FinSeq& node(NodeId id) const override { return nodes_[id].seq; }
  NodeId parent_id(NodeId id) const override { return nodes_[id].parent; }
  std::optional<NodeId> find(const FinSeq& s) const override;
  std::size_t level_count() const override { return levels_.size(); }
  const std::vector<NodeId>& level(std::size_t n) const override { return levels_.at(n); }
  const std::vector<NodeId>& children(NodeId id) const override { return nodes_[id].children; }
  std::optional<Label> label(NodeId a, NodeId b) const override;

  Variant variant() const { return variant_; }
  std::uint64_t step() const { return step_; }
  std::uint64_t demand_steps() const { return demand_steps_; }
  std::uint64_t block() const { return block_; }
  std::uint64_t grade() const { return grade_; }
  std::uint64_t epoch(NodeId id) const { return nodes_[id].epoch; }
  std::size_t explicit_label_count() const { return explicit_.size(); }

  // Entry i of (in, out, enumerate_below(alpha, .)); nullopt past its end.
  std::optional<Label> label_entry(std::uint64_t i) const;
  std::optional<std::uint64_t> label_entry_index(const Label& l) const;

  // Reason the request is inapplicable, or nullopt when p and F are in the
  // tree and f is consistent with L.
  std::optional<std::string> inconsistency(const RequestTriple& req) const;

  // The triple the next build_step processes.
  RequestTriple schedule_next() const;
  // Runs one scheduled step; returns the new node if the triple applied.
  std::optional<NodeId> build_step();
  // Realises a consistent request immediately, outside the schedule.
  // Throws std::invalid_argument on an inconsistent request.
  NodeId demand_step(const RequestTriple& req);

  // Least grade whose list contains req.
  std::uint64_t grade_of(const RequestTriple& req) const;
  // |L_g|, saturating at 2^62. Requires block() >= g.
  std::uint64_t grade_size(std::uint64_t g) const;
  // Position of req in L_g, or nullopt if absent. Requires block() >= g.
  std::optional<std::uint64_t> index_in_grade(const RequestTriple& req, std::uint64_t g) const;
  // Scheduled steps from now until req has been processed `count` more
  // times: the bound H(g) for a request of grade g. Nullopt while block g has
  // not begun.
  std::optional<std::uint64_t> horizon(const RequestTriple& req, std::uint64_t count) const;

  // Children t of p, not in F or exclude, with L(t, s) = f(s) on F. Existing
  // children are scanned first, then up to max_steps scheduled steps run,
  // then, if allow_demand, demand steps fill the shortfall. Throws
  // std::invalid_argument on an inconsistent request.
  WitnessResult find_witnesses(const RequestTriple& req, std::size_t count, std::uint64_t max_steps,
                               const std::vector<NodeId>& exclude = {}, bool allow_demand = false);
  bool is_witness(const RequestTriple& req, NodeId t) const;

  UniversalSnapshot snapshot() const;
  friend bool operator==(const UniversalTree& a, const UniversalTree& b) { return a.snapshot() == b.snapshot(); }

 private:
  struct Node {
    FinSeq seq;
    NodeId parent = 0;
    std::uint64_t epoch = 0;
    std::vector<NodeId> children;
  };
  // Item counts of L_g, built lazily per grade.
  struct GradeTable {
    std::uint64_t universe = 0;                     // |U_g|: the first `universe` node ids
    std::uint64_t n_labels = 0;                     // label entries available to grade g
    std::uint64_t max_f = 0;                        // largest |F|
    std::vector<std::uint64_t> width;               // level size in U_g below each p
    std::vector<std::uint64_t> per_k;               // items with |F| = k
    std::uint64_t total = 0;
  };

  NodeId add_child(NodeId p);
  void advance_cursor();
  const GradeTable& table(std::uint64_t g) const;
  RequestTriple unrank(std::uint64_t g, std::uint64_t index) const;

  Ordinal alpha_;
  Variant variant_;
  BelowEnumerator below_;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> levels_;
  std::unordered_map<FinSeq, NodeId, FinSeqHash> index_;
  std::unordered_map<std::uint64_t, Label> explicit_;
  std::uint64_t step_ = 0;
  std::uint64_t demand_steps_ = 0;
  std::uint64_t block_ = 1;
  std::uint64_t grade_ = 1;
  std::vector<std::uint64_t> block_starts_;  // block_starts_[b - 1]
  mutable std::unordered_map<std::uint64_t, GradeTable> tables_;
};

}  // namespace baire
