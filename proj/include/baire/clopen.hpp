#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "baire/alpha_tree.hpp"
#include "baire/ordinal.hpp"
#include "baire/seqspace.hpp"

namespace baire {

enum class Verdict { kIn, kOut, kUndecided };

std::string to_string(Verdict v);

// Decides a rectangle [s]x[t] for same-length distinct s, t.
using RectDecider = std::function<Verdict(const FinSeq&, const FinSeq&)>;
// Optional structural lower bound on rank_E([s]x[t]) known to an oracle.
using RankHint = std::function<std::optional<Ordinal>(const FinSeq&, const FinSeq&)>;

// A clopen relation presented by prefix rectangles. Coherence and the
// well-foundedness of the undecided region are promises of the supplier;
// check_graph samples them.
class GraphOracle {
 public:
  GraphOracle(std::string name, RectDecider decide, bool symmetric = true, RankHint hint = {});

  // Throws std::invalid_argument unless |s| == |t| and s != t.
  Verdict decide_rect(const FinSeq& s, const FinSeq& t) const;

  const std::string& name() const { return name_; }
  // False for the one-sided relations S_alpha and P_alpha.
  bool symmetric() const { return symmetric_; }
  const RankHint& rank_hint() const { return hint_; }

 private:
  std::string name_;
  RectDecider decide_;
  bool symmetric_;
  RankHint hint_;
};

GraphOracle complete_graph();
GraphOracle empty_graph();

// A point of w^w given by its coordinate function. Coordinates are memoised
// behind a mutex, so one Point may be shared across threads.
class Point {
 public:
  using Coord = std::function<std::uint64_t(std::uint64_t)>;

  explicit Point(Coord coord);
  // prefix followed by cycle repeated forever; an empty cycle means zeros.
  static Point eventually_periodic(FinSeq prefix, FinSeq cycle = {});

  std::uint64_t at(std::uint64_t k) const;
  FinSeq prefix(std::size_t n) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct PairDecision {
  Verdict verdict = Verdict::kUndecided;  // kUndecided means diverged
  std::size_t depth = 0;                  // minimal deciding prefix length

  bool diverged() const { return verdict == Verdict::kUndecided; }
};

// Scans prefix lengths up to `fuel`. Throws std::invalid_argument if x and y
// agree on their first `fuel` coordinates (points not provably distinct).
PairDecision decide_pair(const GraphOracle& g, const Point& x, const Point& y, std::size_t fuel);

// First decision along two same-length sequences: the minimal n in
// [split_level, |s|] with decide_rect(s↾n, t↾n) decided.
PairDecision decide_prefix_pair(const GraphOracle& g, const FinSeq& s, const FinSeq& t);

// Labels of the canonical alpha-tree of a graph, restricted to sequences with
// entries < branch_bound and length <= depth_bound. Decided pairs get In/Out;
// undecided pairs get their rank in the truncated tree of undecided pairs
// below them. Ranks are memoised; the labeler is not thread-safe.
class CanonicalLabeler {
 public:
  CanonicalLabeler(GraphOracle graph, std::uint64_t branch_bound, std::size_t depth_bound);

  Label label(const FinSeq& s, const FinSeq& t);
  // True if the rank below (s,t) met an undecided pair at depth_bound, so the
  // ordinal label is only a lower bound.
  bool lower_bound_only(const FinSeq& s, const FinSeq& t);

  std::uint64_t branch_bound() const { return branch_bound_; }
  std::size_t depth_bound() const { return depth_bound_; }

 private:
  struct RankEntry {
    std::uint64_t rank = 0;
    bool truncated = false;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<FinSeq, FinSeq>& p) const noexcept;
  };
  const RankEntry& rank(const FinSeq& s, const FinSeq& t);

  GraphOracle graph_;
  std::uint64_t branch_bound_;
  std::size_t depth_bound_;
  std::unordered_map<std::pair<FinSeq, FinSeq>, RankEntry, PairHash> memo_;
};

struct CanonicalTree {
  AlphaTree tree;
  // Pairs whose ordinal label is only a lower bound (depth_bound reached).
  std::vector<std::pair<FinSeq, FinSeq>> lower_bound_pairs;
};

// Materialises the full bounded tree (branch_bound^depth_bound leaves).
CanonicalTree canonical_alpha_tree(const GraphOracle& g, std::uint64_t branch_bound,
                                   std::size_t depth_bound);

using Labeling = std::function<Label(const FinSeq&, const FinSeq&)>;

// The graph associated with a labeling: a rectangle is decided by the first
// Q label along (s↾k, t↾k) for split_level(s,t) <= k <= |s|.
GraphOracle graph_from_labeling(Labeling labels, std::string name = "labeling");

struct GraphCheckOptions {
  std::uint64_t samples = 1000;
  std::size_t fuel = 32;             // point-pair decision budget
  std::uint64_t branch_bound = 4;    // entries of sampled prefixes
  std::size_t max_length = 5;        // length of sampled prefixes
  std::uint64_t seed = 1;
};

struct GraphViolation {
  std::string kind;  // "symmetry", "coherence", "decidability"
  FinSeq s;
  FinSeq t;
  std::string detail;
};

struct GraphCheckReport {
  std::uint64_t rect_samples = 0;
  std::uint64_t point_samples = 0;
  std::vector<GraphViolation> violations;

  bool ok() const { return violations.empty(); }
};

GraphCheckReport check_graph(const GraphOracle& g, const GraphCheckOptions& options);

}  // namespace baire
