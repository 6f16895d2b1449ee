#include "baire/clopen.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "baire/random.hpp"
#include "baire/sampling.hpp"

namespace baire {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIn:
      return "in";
    case Verdict::kOut:
      return "out";
    case Verdict::kUndecided:
      break;
  }
  return "undecided";
}

GraphOracle::GraphOracle(std::string name, RectDecider decide, bool symmetric, RankHint hint)
    : name_(std::move(name)), decide_(std::move(decide)), symmetric_(symmetric), hint_(std::move(hint)) {}

Verdict GraphOracle::decide_rect(const FinSeq& s, const FinSeq& t) const {
  if (s.size() != t.size())
    throw std::invalid_argument("decide_rect needs same-length prefixes, got " + format_seq(s) +
                                " and " + format_seq(t));
  if (s == t) throw std::invalid_argument("decide_rect on the diagonal " + format_seq(s));
  return decide_(s, t);
}

GraphOracle complete_graph() {
  return GraphOracle("complete", [](const FinSeq&, const FinSeq&) { return Verdict::kIn; });
}

GraphOracle empty_graph() {
  return GraphOracle("empty", [](const FinSeq&, const FinSeq&) { return Verdict::kOut; });
}

// ---------------------------------------------------------------------------

struct Point::State {
  Coord coord;
  std::mutex mu;
  std::vector<std::uint64_t> cache;
};

Point::Point(Coord coord) : state_(std::make_shared<State>()) { state_->coord = std::move(coord); }

Point Point::eventually_periodic(FinSeq prefix, FinSeq cycle) {
  return Point([prefix = std::move(prefix), cycle = std::move(cycle)](std::uint64_t k) -> std::uint64_t {
    if (k < prefix.size()) return prefix[k];
    if (cycle.empty()) return 0;
    return cycle[(k - prefix.size()) % cycle.size()];
  });
}

std::uint64_t Point::at(std::uint64_t k) const {
  std::lock_guard lock(state_->mu);
  while (state_->cache.size() <= k) state_->cache.push_back(state_->coord(state_->cache.size()));
  return state_->cache[k];
}

FinSeq Point::prefix(std::size_t n) const {
  std::vector<FinSeq::value_type> out;
  out.reserve(n);
  if (n > 0) at(n - 1);
  std::lock_guard lock(state_->mu);
  out.assign(state_->cache.begin(), state_->cache.begin() + static_cast<std::ptrdiff_t>(n));
  return FinSeq(std::move(out));
}

PairDecision decide_pair(const GraphOracle& g, const Point& x, const Point& y, std::size_t fuel) {
  std::size_t first_diff = fuel;
  for (std::size_t k = 0; k < fuel; ++k) {
    if (x.at(k) != y.at(k)) {
      first_diff = k;
      break;
    }
  }
  if (first_diff == fuel)
    throw std::invalid_argument("points agree on their first " + std::to_string(fuel) +
                                " coordinates; distinctness not detectable within fuel");
  const FinSeq xs = x.prefix(fuel);
  const FinSeq ys = y.prefix(fuel);
  for (std::size_t n = first_diff + 1; n <= fuel; ++n) {
    const Verdict v = g.decide_rect(xs.prefix(n), ys.prefix(n));
    if (v != Verdict::kUndecided) return PairDecision{v, n};
  }
  return PairDecision{Verdict::kUndecided, fuel};
}

PairDecision decide_prefix_pair(const GraphOracle& g, const FinSeq& s, const FinSeq& t) {
  if (s.size() != t.size()) throw std::invalid_argument("decide_prefix_pair needs same-length sequences");
  for (std::size_t n = split_level(s, t); n <= s.size(); ++n) {
    const Verdict v = g.decide_rect(s.prefix(n), t.prefix(n));
    if (v != Verdict::kUndecided) return PairDecision{v, n};
  }
  return PairDecision{Verdict::kUndecided, s.size()};
}

// ---------------------------------------------------------------------------

std::size_t CanonicalLabeler::PairHash::operator()(const std::pair<FinSeq, FinSeq>& p) const noexcept {
  const FinSeqHash h;
  return h(p.first) * 0x100000001b3ull ^ h(p.second);
}

CanonicalLabeler::CanonicalLabeler(GraphOracle graph, std::uint64_t branch_bound, std::size_t depth_bound)
    : graph_(std::move(graph)), branch_bound_(branch_bound), depth_bound_(depth_bound) {}

const CanonicalLabeler::RankEntry& CanonicalLabeler::rank(const FinSeq& s, const FinSeq& t) {
  // Memo is keyed on the ordered pair; the relation need not be symmetric.
  if (auto it = memo_.find({s, t}); it != memo_.end()) return it->second;
  RankEntry entry;
  if (s.size() >= depth_bound_) {
    entry.truncated = true;
  } else {
    for (std::uint64_t i = 0; i < branch_bound_; ++i) {
      const FinSeq si = s.child(i);
      for (std::uint64_t j = 0; j < branch_bound_; ++j) {
        const FinSeq tj = t.child(j);
        if (graph_.decide_rect(si, tj) != Verdict::kUndecided) continue;
        const RankEntry& child = rank(si, tj);
        entry.rank = std::max(entry.rank, child.rank + 1);
        entry.truncated = entry.truncated || child.truncated;
      }
    }
  }
  return memo_.emplace(std::make_pair(s, t), entry).first->second;
}

Label CanonicalLabeler::label(const FinSeq& s, const FinSeq& t) {
  switch (graph_.decide_rect(s, t)) {
    case Verdict::kIn:
      return Label::in();
    case Verdict::kOut:
      return Label::out();
    case Verdict::kUndecided:
      break;
  }
  return Label::ord(rank(s, t).rank);
}

bool CanonicalLabeler::lower_bound_only(const FinSeq& s, const FinSeq& t) {
  if (graph_.decide_rect(s, t) != Verdict::kUndecided) return false;
  return rank(s, t).truncated;
}

CanonicalTree canonical_alpha_tree(const GraphOracle& g, std::uint64_t branch_bound, std::size_t depth_bound) {
  CanonicalTree out{AlphaTree(Ordinal::omega()), {}};
  AlphaTree& tree = out.tree;
  for (std::size_t n = 0; n < depth_bound; ++n) {
    // Level n is complete; add level n+1 in shortlex order.
    for (NodeId id : std::vector<NodeId>(tree.level(n)))
      for (std::uint64_t i = 0; i < branch_bound; ++i) tree.add_node(tree.node(id).child(i));
  }
  CanonicalLabeler labeler(g, branch_bound, depth_bound);
  for_each_level_pair(tree, [&](NodeId a, NodeId b) {
    const FinSeq& s = tree.node(a);
    const FinSeq& t = tree.node(b);
    tree.set_label(a, b, labeler.label(s, t));
    if (labeler.lower_bound_only(s, t)) out.lower_bound_pairs.emplace_back(s, t);
  });
  return out;
}

GraphOracle graph_from_labeling(Labeling labels, std::string name) {
  return GraphOracle(std::move(name), [labels = std::move(labels)](const FinSeq& s, const FinSeq& t) {
    for (std::size_t k = split_level(s, t); k <= s.size(); ++k) {
      const Label l = labels(s.prefix(k), t.prefix(k));
      if (l.is_in()) return Verdict::kIn;
      if (l.is_out()) return Verdict::kOut;
    }
    return Verdict::kUndecided;
  });
}

// ---------------------------------------------------------------------------

GraphCheckReport check_graph(const GraphOracle& g, const GraphCheckOptions& options) {
  GraphCheckReport report;
  Rng rng(options.seed);
  const std::uint64_t b = std::max<std::uint64_t>(options.branch_bound, 2);
  const std::size_t max_len = std::max<std::size_t>(options.max_length, 1);

  for (std::uint64_t k = 0; k < options.samples; ++k) {
    const std::size_t len = rng.range(1, max_len);
    FinSeq s = random_seq(rng, len, b);
    FinSeq t = random_seq(rng, len, b);
    if (s == t) t = parent(t).child((t.back() + 1) % b);
    ++report.rect_samples;
    const Verdict v = g.decide_rect(s, t);
    if (g.symmetric()) {
      const Verdict w = g.decide_rect(t, s);
      if (v != w)
        report.violations.push_back({"symmetry", s, t, to_string(v) + " vs reversed " + to_string(w)});
    }
    if (v != Verdict::kUndecided) {
      for (std::uint64_t i = 0; i < b; ++i)
        for (std::uint64_t j = 0; j < b; ++j) {
          const Verdict w = g.decide_rect(s.child(i), t.child(j));
          if (w != v)
            report.violations.push_back({"coherence", s.child(i), t.child(j),
                                         "extension gives " + to_string(w) + ", parent rectangle " + to_string(v)});
        }
    }

    // Decidability along a pair of eventually periodic completions.
    const Point x = Point::eventually_periodic(s, random_seq(rng, rng.range(1, 2), b));
    const Point y = Point::eventually_periodic(t, random_seq(rng, rng.range(1, 2), b));
    ++report.point_samples;
    const PairDecision d = decide_pair(g, x, y, std::max(options.fuel, len));
    if (d.diverged())
      report.violations.push_back({"decidability", x.prefix(options.fuel), y.prefix(options.fuel),
                                   "no decision within fuel " + std::to_string(options.fuel)});
  }
  return report;
}

}  // namespace baire
