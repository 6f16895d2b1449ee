#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baire/clopen.hpp"
#include "baire/ordinal.hpp"
#include "baire/seqspace.hpp"

namespace baire {

// The tree T* of undecided rectangles below (s0, t0), truncated to children
// with entries < branch_bound and sequences of length <= depth_bound.
struct TStar {
  enum class Kind {
    kTerminal,  // decided rectangle, in T* \ T
    kInternal,  // undecided and expanded
    kFrontier,  // undecided at depth_bound, not expanded
  };
  struct Node {
    FinSeq s;
    FinSeq t;
    Kind kind = Kind::kTerminal;
    std::vector<std::size_t> children;
  };

  std::vector<Node> nodes;  // nodes[0] is the root
  std::uint64_t branch_bound = 0;
  std::size_t depth_bound = 0;

  // No frontier nodes: the truncation is fully expanded.
  bool complete() const;
};

// Throws std::invalid_argument unless s0, t0 are distinct and of equal
// length; std::length_error past max_nodes.
TStar tstar_build(const GraphOracle& g, const FinSeq& s0, const FinSeq& t0, std::uint64_t branch_bound,
                  std::size_t depth_bound, std::size_t max_nodes = 4'000'000);

// The standard rank: terminal nodes 0, internal nodes sup(child + 1). An
// unexpanded frontier node is in T, so it is valued 1, a lower bound.
Ordinal tree_rank(const TStar& tree);

struct RankBound {
  Ordinal value;             // rank of the truncated T*
  bool complete = true;      // no undecided rectangle at depth_bound
  // The oracle's own analysis proves rank >= hint > value: the true sup over
  // infinitely many children exceeds what the truncation sees.
  bool exceeds_truncation = false;
  std::optional<Ordinal> hint;
};

// Computes tree_rank of the truncated T* rooted at (s, t) without
// materialising it. Nondecreasing in branch_bound and depth_bound.
RankBound rank_upper(const GraphOracle& g, const FinSeq& s, const FinSeq& t, std::uint64_t branch_bound,
                     std::size_t depth_bound);

// A clopen partition of [base] into finitely many pieces, each a finite union
// of cylinders. The optional remainder piece also absorbs every point in no
// listed cylinder.
struct ClopenPartition {
  FinSeq base;
  std::vector<std::vector<FinSeq>> pieces;
  std::optional<std::size_t> remainder;

  // Description of the first defect (cylinder outside base, overlap, no
  // cover), or nullopt when well formed.
  std::optional<std::string> validate() const;
  // The piece containing all of [u], for u extending base; nullopt when [u]
  // meets several pieces or leaves the covered region.
  std::optional<std::size_t> piece_of(const FinSeq& u) const;
  // Shortest prefix z↾L with L >= min_length lying inside one piece, with
  // that piece. z must extend base.
  std::pair<FinSeq, std::size_t> settle(const Point& z, std::size_t min_length) const;

  // Cylinders base⌢(i) for i < width, piece i each, and every other point in
  // an extra remainder piece.
  static ClopenPartition finest_level(const FinSeq& base, std::uint64_t width);
};

// A prefix map f: w^<w -> w^<w that is monotone (s ⊆ s' implies
// f(s) ⊆ f(s')), inducing a continuous map on points.
using PrefixMap = std::function<FinSeq(const FinSeq&)>;

struct PulledPartition {
  std::vector<Antichain> pieces;  // minimal u with f([u]) inside piece i
  bool disjoint = true;
  // Every length-depth_bound sequence with entries < branch_bound lies under
  // some member.
  bool covers = true;
};

// Preimages f^{-1}(C'_i) of a codomain partition, over the whole domain,
// explored within the bounds.
PulledPartition pullback_partition(const PrefixMap& f, const ClopenPartition& codomain,
                                   std::uint64_t branch_bound, std::size_t depth_bound);

// The relation (s, t) -> g(f(s), f(t)), for a level-preserving f that is
// injective on the sequences queried. f is then a reduction by construction.
GraphOracle pullback_graph(const GraphOracle& g, PrefixMap f);

}  // namespace baire
