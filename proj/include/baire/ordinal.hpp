#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace baire {

// Thrown by the text parsers. `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

// An ordinal below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,   e1 > e2 > ... > ek,  ci >= 1.
// The empty term list is 0.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_power(Ordinal exponent, std::uint64_t coefficient = 1);
  // Validates the CNF invariants; throws std::invalid_argument otherwise.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Precondition: is_finite().
  std::uint64_t finite_value() const;
  // Nonzero and not a successor, i.e. a multiple of w.
  bool is_limit() const;
  bool is_successor() const;
  Ordinal successor() const;
  // Precondition: is_successor().
  Ordinal predecessor() const;

  // Grading used by the enumeration: 0 has weight 0 and each term w^e*c
  // contributes c + weight(e). Every weight class is finite.
  std::uint64_t weight() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

std::strong_ordering cmp_ordinal(const Ordinal& a, const Ordinal& b);

// Canonical text: `0`, `5`, `w`, `w^2*3+w+5`, `w^(w+1)`, `w^w`.
std::string format_ordinal(const Ordinal& a);
// Accepts exactly the canonical text produced by format_ordinal.
Ordinal parse_ordinal(std::string_view text);

// An element of alpha ∪ {in, out}.
class Label {
 public:
  enum class Kind { kIn, kOut, kOrdinal };

  Label() = default;  // In
  static Label in() { return Label(); }
  static Label out();
  static Label ord(Ordinal value);
  static Label ord(std::uint64_t n) { return ord(Ordinal::finite(n)); }

  Kind kind() const { return kind_; }
  bool is_q() const { return kind_ != Kind::kOrdinal; }
  bool is_in() const { return kind_ == Kind::kIn; }
  bool is_out() const { return kind_ == Kind::kOut; }
  bool is_ordinal() const { return kind_ == Kind::kOrdinal; }
  // Precondition: is_ordinal().
  const Ordinal& ordinal() const;

  friend bool operator==(const Label& a, const Label& b);

 private:
  Kind kind_ = Kind::kIn;
  Ordinal value_;
};

// The label order x ⊲ y: ordinals by <, Q below every ordinal, and each Q
// value related only to itself.
bool triangle_lt(const Label& x, const Label& y);

// `in`, `out`, or an ordinal in canonical text.
std::string format_label(const Label& l);
Label parse_label(std::string_view text);

// A fixed injective enumeration of all notations below `bound`: notations are
// listed by ascending weight and, within one weight, in ascending ordinal
// order. Copies share one lazily extended cache; safe for concurrent use.
class BelowEnumerator {
 public:
  // Throws std::domain_error if bound is 0.
  explicit BelowEnumerator(Ordinal bound);

  const Ordinal& bound() const;
  // Number of notations below a finite bound; nullopt for infinite bounds.
  std::optional<std::uint64_t> size() const;
  // Throws std::out_of_range past the end of a finite domain.
  Ordinal at(std::uint64_t k) const;
  // Inverse of at(). Throws std::domain_error if beta >= bound.
  std::uint64_t index_of(const Ordinal& beta) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Shorthand for BelowEnumerator(alpha).at(k) without a shared cache.
Ordinal enumerate_below(const Ordinal& alpha, std::uint64_t k);

}  // namespace baire
