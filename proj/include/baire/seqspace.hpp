#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace baire {

// An element of w^<w. Ordered shortlex: by length, then by entries.
class FinSeq {
 public:
  using value_type = std::uint64_t;

  FinSeq() = default;
  FinSeq(std::initializer_list<value_type> entries) : entries_(entries) {}
  explicit FinSeq(std::vector<value_type> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  value_type operator[](std::size_t i) const { return entries_[i]; }
  value_type back() const { return entries_.back(); }
  const std::vector<value_type>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // s⌢(i)
  FinSeq child(value_type i) const;
  // s restricted to its first n entries; n is clamped to size().
  FinSeq prefix(std::size_t n) const;
  // Drops the first n entries.
  FinSeq drop(std::size_t n) const;
  FinSeq concat(const FinSeq& tail) const;

  bool is_prefix_of(const FinSeq& other) const;
  bool comparable(const FinSeq& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  friend std::strong_ordering operator<=>(const FinSeq& a, const FinSeq& b);
  friend bool operator==(const FinSeq& a, const FinSeq& b) = default;

 private:
  std::vector<value_type> entries_;
};

struct FinSeqHash {
  std::size_t operator()(const FinSeq& s) const noexcept;
};

// s* : s without its last entry. Throws std::domain_error for ().
FinSeq parent(const FinSeq& s);

// Least n with s↾n != t↾n. Throws std::invalid_argument when s and t are
// comparable.
std::size_t split_level(const FinSeq& s, const FinSeq& t);

// `(3,1,4)`, `()`.
std::string format_seq(const FinSeq& s);
// Comma separated naturals, optionally parenthesised: `3,1,4`, `(3,1,4)`, ``.
FinSeq parse_seq(std::string_view text);

// ---------------------------------------------------------------------------
// Clopen sets given intensionally by a decision on cylinders.

enum class Membership { kInside, kOutside, kUndecided };

// Must be coherent: a decided verdict at s persists on every extension of s.
using PrefixPredicate = std::function<Membership(const FinSeq&)>;

struct Antichain {
  std::vector<FinSeq> members;  // shortlex order
  // Some undecided node was expanded, so children >= branch_bound were skipped.
  bool branch_truncated = false;
  // Some node of length depth_bound was still undecided.
  bool depth_truncated = false;

  bool complete() const { return !branch_truncated && !depth_truncated; }
};

// The minimal Inside prefixes among sequences with entries < branch_bound and
// length <= depth_bound: the bounded form of writing an open set as a disjoint
// union of cylinders.
Antichain decompose_open(const PrefixPredicate& inside, std::uint64_t branch_bound,
                         std::size_t depth_bound);

enum class Side { kA, kB, kMixed };

struct SidedAntichain {
  std::vector<std::pair<FinSeq, Side>> members;  // shortlex order, sides pure
  bool branch_truncated = false;
  bool depth_truncated = false;

  bool complete() const { return !branch_truncated && !depth_truncated; }
};

// Minimal sequences whose cylinder gets a pure A or pure B verdict. `sep` must
// be coherent: pure verdicts persist under extension.
SidedAntichain sigma_antichain(const std::function<Side(const FinSeq&)>& sep,
                               std::uint64_t branch_bound, std::size_t depth_bound);

bool pairwise_incomparable(std::span<const FinSeq> seqs);

}  // namespace baire
