#include "baire/seqspace.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "baire/ordinal.hpp"

namespace baire {

FinSeq FinSeq::child(value_type i) const {
  FinSeq r = *this;
  r.entries_.push_back(i);
  return r;
}

FinSeq FinSeq::prefix(std::size_t n) const {
  n = std::min(n, entries_.size());
  return FinSeq(std::vector<value_type>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

FinSeq FinSeq::drop(std::size_t n) const {
  n = std::min(n, entries_.size());
  return FinSeq(std::vector<value_type>(entries_.begin() + static_cast<std::ptrdiff_t>(n), entries_.end()));
}

FinSeq FinSeq::concat(const FinSeq& tail) const {
  FinSeq r = *this;
  r.entries_.insert(r.entries_.end(), tail.entries_.begin(), tail.entries_.end());
  return r;
}

bool FinSeq::is_prefix_of(const FinSeq& other) const {
  return entries_.size() <= other.entries_.size() &&
         std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

std::strong_ordering operator<=>(const FinSeq& a, const FinSeq& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.entries_ <=> b.entries_;
}

std::size_t FinSeqHash::operator()(const FinSeq& s) const noexcept {
  std::size_t h = 1469598103934665603ull ^ s.size();
  for (auto v : s) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

FinSeq parent(const FinSeq& s) {
  if (s.empty()) throw std::domain_error("the empty sequence has no parent");
  return s.prefix(s.size() - 1);
}

std::size_t split_level(const FinSeq& s, const FinSeq& t) {
  const std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i)
    if (s[i] != t[i]) return i + 1;
  throw std::invalid_argument("split_level of comparable sequences " + format_seq(s) + " and " +
                              format_seq(t));
}

std::string format_seq(const FinSeq& s) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ',';
    out << s[i];
  }
  out << ')';
  return out.str();
}

FinSeq parse_seq(std::string_view text) {
  std::size_t pos = 0;
  const bool parens = !text.empty() && text.front() == '(';
  if (parens) {
    if (text.back() != ')') throw ParseError(text.size(), "expected ')'");
    text = text.substr(1, text.size() - 2);
    pos = 1;
  }
  std::vector<FinSeq::value_type> entries;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError(pos + i, "expected a natural number");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      const auto d = static_cast<std::uint64_t>(text[i] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
        throw ParseError(pos + i, "natural number overflows 64 bits");
      v = v * 10 + d;
      ++i;
    }
    entries.push_back(v);
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError(pos + i, "expected ','");
      ++i;
      if (i == text.size()) throw ParseError(pos + i, "trailing ','");
    }
  }
  return FinSeq(std::move(entries));
}

namespace {

// Depth-first search for minimal decided nodes. `classify` returns true for a
// hit, false for a dead end, nullopt to keep descending.
template <class Classify, class OnHit>
void minimal_decided(const FinSeq& node, std::uint64_t branch_bound, std::size_t depth_bound,
                     bool& branch_truncated, bool& depth_truncated, const Classify& classify,
                     const OnHit& on_hit) {
  const std::optional<bool> verdict = classify(node);
  if (verdict) {
    if (*verdict) on_hit(node);
    return;
  }
  if (node.size() >= depth_bound) {
    depth_truncated = true;
    return;
  }
  branch_truncated = true;
  for (std::uint64_t i = 0; i < branch_bound; ++i)
    minimal_decided(node.child(i), branch_bound, depth_bound, branch_truncated, depth_truncated,
                    classify, on_hit);
}

}  // namespace

Antichain decompose_open(const PrefixPredicate& inside, std::uint64_t branch_bound,
                         std::size_t depth_bound) {
  Antichain out;
  minimal_decided(
      FinSeq(), branch_bound, depth_bound, out.branch_truncated, out.depth_truncated,
      [&](const FinSeq& s) -> std::optional<bool> {
        switch (inside(s)) {
          case Membership::kInside:
            return true;
          case Membership::kOutside:
            return false;
          case Membership::kUndecided:
            break;
        }
        return std::nullopt;
      },
      [&](const FinSeq& s) { out.members.push_back(s); });
  std::sort(out.members.begin(), out.members.end());
  return out;
}

SidedAntichain sigma_antichain(const std::function<Side(const FinSeq&)>& sep,
                               std::uint64_t branch_bound, std::size_t depth_bound) {
  SidedAntichain out;
  minimal_decided(
      FinSeq(), branch_bound, depth_bound, out.branch_truncated, out.depth_truncated,
      [&](const FinSeq& s) -> std::optional<bool> {
        if (sep(s) == Side::kMixed) return std::nullopt;
        return true;
      },
      [&](const FinSeq& s) { out.members.emplace_back(s, sep(s)); });
  std::sort(out.members.begin(), out.members.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool pairwise_incomparable(std::span<const FinSeq> seqs) {
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j)
      if (seqs[i].comparable(seqs[j])) return false;
  return true;
}

}  // namespace baire
