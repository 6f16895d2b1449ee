#include "baire/universal.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace baire {

std::string to_string(Variant v) { return v == Variant::kPlain ? "plain" : "true-clopen"; }

Variant parse_variant(const std::string& text) {
  if (text == "plain") return Variant::kPlain;
  if (text == "true-clopen") return Variant::kTrueClopen;
  throw std::invalid_argument("unknown variant '" + text + "' (expected plain or true-clopen)");
}

Label filler_label(const FinSeq&, const FinSeq&, const std::optional<Label>& parent_label) {
  if (parent_label && parent_label->is_q()) return *parent_label;
  return Label::out();
}

Label lprime_filler(const FinSeq& s, const FinSeq& t, const std::optional<Label>& parent_label) {
  if (s.size() > 1 && s[0] == t[0]) return Label::out();
  return filler_label(s, t, parent_label);
}

namespace {

constexpr std::uint64_t kCap = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kCap, a + b); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p >= kCap ? kCap : static_cast<std::uint64_t>(p);
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e && r < kCap; ++i) r = sat_mul(r, base);
  return r;
}

std::uint64_t sat_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Increasing for i <= n/2, so saturation is final.
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c >= kCap) return kCap;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

UniversalTree::UniversalTree(Ordinal alpha, Variant variant)
    : alpha_(alpha), variant_(variant), below_(std::move(alpha)) {
  nodes_.push_back(Node{FinSeq{}, 0, 0, {}});
  levels_.push_back({0});
  index_.emplace(FinSeq{}, 0);
  block_starts_.push_back(1);
}

UniversalTree::UniversalTree(const UniversalSnapshot& snap) : UniversalTree(snap.alpha, snap.variant) {
  if (snap.nodes.empty() || !snap.nodes[0].empty() || snap.epochs.size() != snap.nodes.size())
    throw std::invalid_argument("snapshot nodes must start with the root and carry one epoch each");
  for (std::size_t i = 1; i < snap.nodes.size(); ++i) {
    const FinSeq& s = snap.nodes[i];
    const auto p = s.empty() ? std::nullopt : find(parent(s));
    if (!p || s.back() != nodes_[*p].children.size())
      throw std::invalid_argument("snapshot node " + format_seq(s) + " is not the next fresh child of its parent");
    const NodeId id = add_child(*p);
    nodes_[id].epoch = snap.epochs[i];
  }
  for (const auto& l : snap.labels) {
    const auto a = find(l.s);
    const auto b = find(l.t);
    if (!a || !b || *a == *b || l.s.size() != l.t.size())
      throw std::invalid_argument("snapshot label on " + format_seq(l.s) + " / " + format_seq(l.t) + " is not a level pair");
    explicit_[pair_key(*a, *b)] = l.label;
  }
  step_ = snap.step;
  demand_steps_ = snap.demand_steps;
  block_ = snap.block;
  grade_ = snap.grade;
  block_starts_ = snap.block_starts;
  if (block_ == 0 || grade_ == 0 || grade_ > block_ || block_starts_.size() != block_ ||
      step_ != (block_ - 1) * block_ / 2 + grade_ - 1)
    throw std::invalid_argument("snapshot cursor is inconsistent");
}

std::optional<NodeId> UniversalTree::find(const FinSeq& s) const {
  const auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Label> UniversalTree::label(NodeId a, NodeId b) const {
  if (a == b || a >= nodes_.size() || b >= nodes_.size()) return std::nullopt;
  if (nodes_[a].seq.size() != nodes_[b].seq.size()) return std::nullopt;
  if (const auto it = explicit_.find(pair_key(a, b)); it != explicit_.end()) return it->second;
  const NodeId pa = nodes_[a].parent;
  const NodeId pb = nodes_[b].parent;
  const std::optional<Label> parent_label = pa == pb ? std::nullopt : label(pa, pb);
  return variant_ == Variant::kPlain ? filler_label(nodes_[a].seq, nodes_[b].seq, parent_label)
                                     : lprime_filler(nodes_[a].seq, nodes_[b].seq, parent_label);
}

std::optional<Label> UniversalTree::label_entry(std::uint64_t i) const {
  if (i == 0) return Label::in();
  if (i == 1) return Label::out();
  if (const auto n = below_.size(); n && i - 2 >= *n) return std::nullopt;
  return Label::ord(below_.at(i - 2));
}

std::optional<std::uint64_t> UniversalTree::label_entry_index(const Label& l) const {
  if (l.is_in()) return 0;
  if (l.is_out()) return 1;
  if (!(l.ordinal() < alpha_)) return std::nullopt;
  return 2 + below_.index_of(l.ordinal());
}

std::optional<std::string> UniversalTree::inconsistency(const RequestTriple& req) const {
  if (req.p >= nodes_.size()) return "p is not a node";
  if (req.f_nodes.size() != req.f_labels.size()) return "F and f differ in size";
  const FinSeq& p = nodes_[req.p].seq;
  for (std::size_t i = 0; i < req.f_nodes.size(); ++i) {
    const NodeId s = req.f_nodes[i];
    if (s >= nodes_.size()) return "F contains a non-node";
    if (i > 0 && !(req.f_nodes[i - 1] < s)) return "F is not sorted by id";
    if (nodes_[s].seq.size() != p.size() + 1) return "F member " + format_seq(nodes_[s].seq) + " is not at level |p|+1";
    const Label& f = req.f_labels[i];
    if (!label_entry_index(f)) return "label " + format_label(f) + " is not below alpha";
    if (nodes_[s].parent != req.p && !triangle_lt(f, *label(req.p, nodes_[s].parent)))
      return "f(" + format_seq(nodes_[s].seq) + ") = " + format_label(f) + " does not descend from L(p, s*)";
    if (variant_ == Variant::kTrueClopen && !p.empty() && nodes_[s].seq[0] == p[0] && !f.is_out())
      return "f(" + format_seq(nodes_[s].seq) + ") must be out: same first coordinate as the new child";
  }
  return std::nullopt;
}

NodeId UniversalTree::add_child(NodeId p) {
  const auto id = static_cast<NodeId>(nodes_.size());
  FinSeq seq = nodes_[p].seq.child(nodes_[p].children.size());
  nodes_[p].children.push_back(id);
  if (levels_.size() <= seq.size()) levels_.emplace_back();
  levels_[seq.size()].push_back(id);
  index_.emplace(seq, id);
  nodes_.push_back(Node{std::move(seq), p, block_, {}});
  return id;
}

void UniversalTree::advance_cursor() {
  ++step_;
  if (++grade_ > block_) {
    ++block_;
    grade_ = 1;
    block_starts_.push_back(nodes_.size());
  }
}

NodeId UniversalTree::demand_step(const RequestTriple& req) {
  if (const auto why = inconsistency(req)) throw std::invalid_argument("inconsistent request: " + *why);
  const NodeId t = add_child(req.p);
  for (std::size_t i = 0; i < req.f_nodes.size(); ++i) explicit_[pair_key(t, req.f_nodes[i])] = req.f_labels[i];
  ++demand_steps_;
  return t;
}

std::optional<NodeId> UniversalTree::build_step() {
  const RequestTriple req = schedule_next();
  std::optional<NodeId> made;
  if (!inconsistency(req)) {
    made = add_child(req.p);
    for (std::size_t i = 0; i < req.f_nodes.size(); ++i)
      explicit_[pair_key(*made, req.f_nodes[i])] = req.f_labels[i];
  }
  advance_cursor();
  return made;
}

// ---------------------------------------------------------------------------
// The graded lists L_g.
//
// Order: by |F| = k, then p by id, then F as a lexicographic combination of
// the level below p (restricted to U_g), then f as base-n_labels digits with
// the first member of F most significant.

const UniversalTree::GradeTable& UniversalTree::table(std::uint64_t g) const {
  if (g == 0 || g > block_) throw std::logic_error("grade list not yet fixed");
  if (const auto it = tables_.find(g); it != tables_.end()) return it->second;
  GradeTable tab;
  tab.universe = block_starts_[g - 1];
  std::uint64_t n_labels = 2 + (below_.size() ? *below_.size() : g);
  tab.n_labels = std::min(g, n_labels);
  tab.width.resize(tab.universe);
  std::uint64_t widest = 0;
  for (NodeId p = 0; p < tab.universe; ++p) {
    const std::size_t lvl = nodes_[p].seq.size() + 1;
    std::uint64_t w = 0;
    if (lvl < levels_.size()) {
      const auto& l = levels_[lvl];
      w = std::lower_bound(l.begin(), l.end(), static_cast<NodeId>(tab.universe)) - l.begin();
    }
    tab.width[p] = w;
    widest = std::max(widest, w);
  }
  tab.max_f = std::min(g, widest);
  for (std::uint64_t k = 0; k <= tab.max_f && tab.total < kCap; ++k) {
    const std::uint64_t labelings = sat_pow(tab.n_labels, k);
    std::uint64_t count = 0;
    for (NodeId p = 0; p < tab.universe && count < kCap; ++p)
      count = sat_add(count, sat_mul(sat_binom(tab.width[p], k), labelings));
    tab.per_k.push_back(count);
    tab.total = sat_add(tab.total, count);
  }
  return tables_.emplace(g, std::move(tab)).first->second;
}

RequestTriple UniversalTree::unrank(std::uint64_t g, std::uint64_t index) const {
  const GradeTable& tab = table(g);
  std::uint64_t k = 0;
  while (index >= tab.per_k[k]) index -= tab.per_k[k++];
  RequestTriple req;
  const std::uint64_t labelings = sat_pow(tab.n_labels, k);
  NodeId p = 0;
  for (;; ++p) {
    const std::uint64_t here = sat_mul(sat_binom(tab.width[p], k), labelings);
    if (index < here) break;
    index -= here;
  }
  req.p = p;
  if (k == 0) return req;
  std::uint64_t comb = index / labelings;
  std::uint64_t digits = index % labelings;
  const auto& lvl = levels_[nodes_[p].seq.size() + 1];
  const std::uint64_t w = tab.width[p];
  std::uint64_t c = 0;
  for (std::uint64_t j = 0; j < k; ++j, ++c) {
    for (;; ++c) {
      const std::uint64_t rest = sat_binom(w - c - 1, k - j - 1);
      if (comb < rest) break;
      comb -= rest;
    }
    req.f_nodes.push_back(lvl[c]);
  }
  req.f_labels.resize(k);
  for (std::uint64_t j = k; j-- > 0;) {
    req.f_labels[j] = *label_entry(digits % tab.n_labels);
    digits /= tab.n_labels;
  }
  return req;
}

RequestTriple UniversalTree::schedule_next() const {
  const GradeTable& tab = table(grade_);
  return unrank(grade_, (block_ - grade_) % tab.total);
}

std::uint64_t UniversalTree::grade_of(const RequestTriple& req) const {
  std::uint64_t g = std::max<std::uint64_t>(1, req.f_nodes.size());
  g = std::max(g, nodes_.at(req.p).epoch + 1);
  for (NodeId s : req.f_nodes) g = std::max(g, nodes_.at(s).epoch + 1);
  for (const Label& l : req.f_labels) {
    const auto i = label_entry_index(l);
    if (!i) throw std::invalid_argument("label " + format_label(l) + " is not below alpha");
    g = std::max(g, *i + 1);
  }
  return g;
}

std::uint64_t UniversalTree::grade_size(std::uint64_t g) const { return table(g).total; }

std::optional<std::uint64_t> UniversalTree::index_in_grade(const RequestTriple& req, std::uint64_t g) const {
  const GradeTable& tab = table(g);
  const std::uint64_t k = req.f_nodes.size();
  if (req.p >= tab.universe || k > tab.max_f || req.f_labels.size() != k) return std::nullopt;
  std::uint64_t index = 0;
  for (std::uint64_t j = 0; j < k; ++j) index = sat_add(index, tab.per_k[j]);
  const std::uint64_t labelings = sat_pow(tab.n_labels, k);
  for (NodeId p = 0; p < req.p; ++p) index = sat_add(index, sat_mul(sat_binom(tab.width[p], k), labelings));
  if (k == 0) return index;
  const auto& lvl = levels_[nodes_[req.p].seq.size() + 1];
  const std::uint64_t w = tab.width[req.p];
  std::uint64_t comb = 0;
  std::uint64_t c = 0;
  for (std::uint64_t j = 0; j < k; ++j, ++c) {
    const auto pos = std::lower_bound(lvl.begin(), lvl.begin() + w, req.f_nodes[j]) - lvl.begin();
    if (static_cast<std::uint64_t>(pos) >= w || lvl[pos] != req.f_nodes[j] || static_cast<std::uint64_t>(pos) < c)
      return std::nullopt;
    for (; c < static_cast<std::uint64_t>(pos); ++c) comb = sat_add(comb, sat_binom(w - c - 1, k - j - 1));
  }
  std::uint64_t digits = 0;
  for (const Label& l : req.f_labels) {
    const auto i = label_entry_index(l);
    if (!i || *i >= tab.n_labels) return std::nullopt;
    digits = digits * tab.n_labels + *i;
  }
  return sat_add(index, sat_add(sat_mul(comb, labelings), digits));
}

std::optional<std::uint64_t> UniversalTree::horizon(const RequestTriple& req, std::uint64_t count) const {
  if (count == 0) return 0;
  const std::uint64_t g = grade_of(req);
  if (block_ < g) return std::nullopt;
  const auto i = index_in_grade(req, g);
  if (!i) return std::nullopt;
  using W = unsigned __int128;
  const W period = grade_size(g);
  const W first_block = std::max<W>(grade_ <= g ? block_ : block_ + 1, g);
  const W phase = g + *i;
  W b = phase;
  if (b < first_block) b += (first_block - phase + period - 1) / period * period;
  b += (count - 1) * period;
  const W last_step = (b - 1) * b / 2 + (g - 1);
  const W h = last_step - step_ + 1;
  if (h > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(h);
}

bool UniversalTree::is_witness(const RequestTriple& req, NodeId t) const {
  if (t >= nodes_.size() || nodes_[t].parent != req.p || t == 0) return false;
  for (std::size_t i = 0; i < req.f_nodes.size(); ++i) {
    if (req.f_nodes[i] == t) return false;
    if (label(t, req.f_nodes[i]) != req.f_labels[i]) return false;
  }
  return true;
}

WitnessResult UniversalTree::find_witnesses(const RequestTriple& req, std::size_t count, std::uint64_t max_steps,
                                            const std::vector<NodeId>& exclude, bool allow_demand) {
  if (const auto why = inconsistency(req)) throw std::invalid_argument("inconsistent request: " + *why);
  WitnessResult out;
  auto usable = [&](NodeId t) {
    return std::find(exclude.begin(), exclude.end(), t) == exclude.end() && is_witness(req, t);
  };
  for (NodeId t : nodes_[req.p].children) {
    if (out.witnesses.size() >= count) break;
    if (usable(t)) out.witnesses.push_back(t);
  }
  while (out.witnesses.size() < count && out.scheduled_steps < max_steps) {
    const auto made = build_step();
    ++out.scheduled_steps;
    if (made && usable(*made)) out.witnesses.push_back(*made);
  }
  while (allow_demand && out.witnesses.size() < count) {
    out.witnesses.push_back(demand_step(req));
    ++out.demand_steps;
  }
  out.shortfall = out.witnesses.size() < count;
  return out;
}

UniversalSnapshot UniversalTree::snapshot() const {
  UniversalSnapshot snap;
  snap.alpha = alpha_;
  snap.variant = variant_;
  for (const auto& n : nodes_) {
    snap.nodes.push_back(n.seq);
    snap.epochs.push_back(n.epoch);
  }
  for (const auto& [key, l] : explicit_) {
    FinSeq s = nodes_[static_cast<NodeId>(key >> 32)].seq;
    FinSeq t = nodes_[static_cast<NodeId>(key & 0xffffffffu)].seq;
    if (t < s) std::swap(s, t);
    snap.labels.push_back({std::move(s), std::move(t), l});
  }
  std::sort(snap.labels.begin(), snap.labels.end(),
            [](const auto& a, const auto& b) { return a.s != b.s ? a.s < b.s : a.t < b.t; });
  snap.step = step_;
  snap.demand_steps = demand_steps_;
  snap.block = block_;
  snap.grade = grade_;
  snap.block_starts = block_starts_;
  return snap;
}

}  // namespace baire
