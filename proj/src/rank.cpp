#include "baire/rank.hpp"

#include <algorithm>
#include <stdexcept>

namespace baire {

bool TStar::complete() const {
  return std::none_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.kind == Kind::kFrontier; });
}

namespace {

void require_rect(const FinSeq& s, const FinSeq& t) {
  if (s.size() != t.size() || s == t)
    throw std::invalid_argument("rectangle roots must be distinct and of equal length: " + format_seq(s) +
                                " / " + format_seq(t));
}

}  // namespace

TStar tstar_build(const GraphOracle& g, const FinSeq& s0, const FinSeq& t0, std::uint64_t branch_bound,
                  std::size_t depth_bound, std::size_t max_nodes) {
  require_rect(s0, t0);
  TStar tree;
  tree.branch_bound = branch_bound;
  tree.depth_bound = depth_bound;
  tree.nodes.push_back(TStar::Node{s0, t0, TStar::Kind::kTerminal, {}});
  // Breadth-first; nodes[k] is classified when popped.
  for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
    if (g.decide_rect(tree.nodes[k].s, tree.nodes[k].t) != Verdict::kUndecided) continue;
    if (tree.nodes[k].s.size() >= depth_bound) {
      tree.nodes[k].kind = TStar::Kind::kFrontier;
      continue;
    }
    tree.nodes[k].kind = TStar::Kind::kInternal;
    for (std::uint64_t i = 0; i < branch_bound; ++i)
      for (std::uint64_t j = 0; j < branch_bound; ++j) {
        if (tree.nodes.size() >= max_nodes) throw std::length_error("T* truncation exceeds node limit");
        tree.nodes[k].children.push_back(tree.nodes.size());
        tree.nodes.push_back(TStar::Node{tree.nodes[k].s.child(i), tree.nodes[k].t.child(j),
                                         TStar::Kind::kTerminal, {}});
      }
  }
  return tree;
}

Ordinal tree_rank(const TStar& tree) {
  // Children always follow their parent in breadth-first order.
  std::vector<std::uint64_t> r(tree.nodes.size(), 0);
  for (std::size_t k = tree.nodes.size(); k-- > 0;) {
    const auto& n = tree.nodes[k];
    switch (n.kind) {
      case TStar::Kind::kTerminal:
        r[k] = 0;
        break;
      case TStar::Kind::kFrontier:
        r[k] = 1;
        break;
      case TStar::Kind::kInternal:
        for (std::size_t c : n.children) r[k] = std::max(r[k], r[c] + 1);
        break;
    }
  }
  return Ordinal::finite(r.empty() ? 0 : r[0]);
}

namespace {

struct RankAcc {
  std::uint64_t rank = 0;
  bool truncated = false;
};

// (s, t) is undecided.
RankAcc undecided_rank(const GraphOracle& g, const FinSeq& s, const FinSeq& t, std::uint64_t b, std::size_t depth) {
  if (s.size() >= depth) return RankAcc{1, true};
  const std::uint64_t ceiling = depth - s.size() + 1;
  RankAcc acc{1, false};
  for (std::uint64_t i = 0; i < b; ++i) {
    const FinSeq si = s.child(i);
    for (std::uint64_t j = 0; j < b; ++j) {
      const FinSeq tj = t.child(j);
      if (g.decide_rect(si, tj) != Verdict::kUndecided) continue;
      const RankAcc child = undecided_rank(g, si, tj, b, depth);
      acc.rank = std::max(acc.rank, child.rank + 1);
      acc.truncated = acc.truncated || child.truncated;
      // A chain reaching the frontier already attains the ceiling.
      if (acc.rank == ceiling) return acc;
    }
  }
  return acc;
}

}  // namespace

RankBound rank_upper(const GraphOracle& g, const FinSeq& s, const FinSeq& t, std::uint64_t branch_bound,
                     std::size_t depth_bound) {
  require_rect(s, t);
  RankBound out;
  if (g.decide_rect(s, t) == Verdict::kUndecided) {
    const RankAcc acc = undecided_rank(g, s, t, branch_bound, depth_bound);
    out.value = Ordinal::finite(acc.rank);
    out.complete = !acc.truncated;
  }
  if (g.rank_hint()) {
    out.hint = g.rank_hint()(s, t);
    out.exceeds_truncation = out.hint && out.value < *out.hint;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::string> ClopenPartition::validate() const {
  std::vector<std::pair<FinSeq, std::size_t>> all;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& c : pieces[i]) {
      if (!base.is_prefix_of(c))
        return "cylinder " + format_seq(c) + " of piece " + std::to_string(i) + " does not extend " + format_seq(base);
      all.emplace_back(c, i);
    }
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (all[a].first.comparable(all[b].first))
        return "overlapping cylinders " + format_seq(all[a].first) + " (piece " + std::to_string(all[a].second) +
               ") and " + format_seq(all[b].first) + " (piece " + std::to_string(all[b].second) + ")";
  if (remainder) {
    if (*remainder >= pieces.size()) return "remainder index out of range";
    return std::nullopt;
  }
  // Finitely many proper extensions never cover an w-branching cylinder.
  for (const auto& [c, i] : all)
    if (c == base) return std::nullopt;
  return "pieces do not cover " + format_seq(base) + " and there is no remainder piece";
}

std::optional<std::size_t> ClopenPartition::piece_of(const FinSeq& u) const {
  bool below_other = false;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& c : pieces[i]) {
      if (c.is_prefix_of(u)) return i;
      if (u.is_prefix_of(c) && (!remainder || i != *remainder)) below_other = true;
    }
  if (!base.is_prefix_of(u) || !remainder || below_other) return std::nullopt;
  return remainder;
}

std::pair<FinSeq, std::size_t> ClopenPartition::settle(const Point& z, std::size_t min_length) const {
  std::size_t longest = min_length;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& c : pieces[i]) {
      if (z.prefix(c.size()) == c) return {z.prefix(std::max(min_length, c.size())), i};
      longest = std::max(longest, c.size());
    }
  if (!remainder) throw std::logic_error("point outside every piece of a partition without remainder");
  // No listed cylinder is a prefix of z, so none meets [z↾longest].
  return {z.prefix(longest), *remainder};
}

ClopenPartition ClopenPartition::finest_level(const FinSeq& base, std::uint64_t width) {
  ClopenPartition p;
  p.base = base;
  for (std::uint64_t i = 0; i < width; ++i) p.pieces.push_back({base.child(i)});
  p.pieces.emplace_back();
  p.remainder = p.pieces.size() - 1;
  return p;
}

PulledPartition pullback_partition(const PrefixMap& f, const ClopenPartition& codomain, std::uint64_t branch_bound,
                                   std::size_t depth_bound) {
  PulledPartition out;
  for (std::size_t i = 0; i < codomain.pieces.size(); ++i) {
    out.pieces.push_back(decompose_open(
        [&](const FinSeq& u) {
          const FinSeq image = f(u);
          const auto piece = codomain.piece_of(image);
          if (piece) return *piece == i ? Membership::kInside : Membership::kOutside;
          // Images leaving [base] stay outside every piece.
          if (!codomain.base.comparable(image)) return Membership::kOutside;
          return Membership::kUndecided;
        },
        branch_bound, depth_bound));
  }
  for (std::size_t a = 0; a < out.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < out.pieces.size(); ++b)
      for (const auto& u : out.pieces[a].members)
        for (const auto& v : out.pieces[b].members)
          if (u.comparable(v)) out.disjoint = false;

  // Coverage of the bounded universe at full depth.
  std::vector<FinSeq::value_type> digits(depth_bound, 0);
  for (;;) {
    const FinSeq leaf(digits);
    bool hit = false;
    for (const auto& piece : out.pieces)
      for (const auto& u : piece.members)
        if (u.is_prefix_of(leaf)) hit = true;
    if (!hit) {
      out.covers = false;
      break;
    }
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == branch_bound) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

GraphOracle pullback_graph(const GraphOracle& g, PrefixMap f) {
  return GraphOracle(
      "pullback(" + g.name() + ")",
      [g, f = std::move(f)](const FinSeq& s, const FinSeq& t) {
        const FinSeq fs = f(s);
        const FinSeq ft = f(t);
        if (fs == ft) throw std::invalid_argument("pullback map identifies " + format_seq(s) + " and " + format_seq(t));
        return g.decide_rect(fs, ft);
      },
      g.symmetric());
}

}  // namespace baire
