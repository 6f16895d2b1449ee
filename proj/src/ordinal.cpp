#include "baire/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <mutex>
#include <sstream>

namespace baire {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " +
                         message),
      position_(position),
      detail_(message) {}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back(Term{Ordinal(), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(Ordinal exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal();
  Ordinal r;
  r.terms_.push_back(Term{std::move(exponent), coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw std::invalid_argument("CNF term with zero coefficient");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw std::invalid_argument("CNF exponents must strictly decrease");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw std::logic_error("finite_value() of an infinite ordinal");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

bool Ordinal::is_limit() const {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

Ordinal Ordinal::successor() const {
  Ordinal r = *this;
  if (is_successor()) {
    r.terms_.back().coefficient += 1;
  } else {
    r.terms_.push_back(Term{Ordinal(), 1});
  }
  return r;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw std::logic_error("predecessor() of a non-successor ordinal");
  Ordinal r = *this;
  if (--r.terms_.back().coefficient == 0) r.terms_.pop_back();
  return r;
}

std::uint64_t Ordinal::weight() const {
  std::uint64_t w = 0;
  for (const auto& t : terms_) w = saturating_add(w, saturating_add(t.coefficient, t.exponent.weight()));
  return w;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (auto c = a.terms_[i].coefficient <=> b.terms_[i].coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

std::strong_ordering cmp_ordinal(const Ordinal& a, const Ordinal& b) { return a <=> b; }

// ---------------------------------------------------------------------------
// Text form

namespace {

void format_into(std::ostringstream& out, const Ordinal& a) {
  if (a.is_zero()) {
    out << '0';
    return;
  }
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out << '+';
    first = false;
    if (t.exponent.is_zero()) {
      out << t.coefficient;
      continue;
    }
    out << 'w';
    if (t.exponent != Ordinal::finite(1)) {
      out << '^';
      if (t.exponent.is_finite()) {
        out << t.exponent.finite_value();
      } else if (t.exponent == Ordinal::omega()) {
        out << 'w';
      } else {
        out << '(';
        format_into(out, t.exponent);
        out << ')';
      }
    }
    if (t.coefficient != 1) out << '*' << t.coefficient;
  }
}

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal r = parse_sum();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::uint64_t parse_natural() {
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        pos_ = start;
        fail("natural number overflows 64 bits");
      }
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ - start > 1 && text_[start] == '0') {
      pos_ = start;
      fail("leading zero");
    }
    return v;
  }

  Ordinal parse_exponent() {
    const std::size_t start = pos_;
    if (peek() == 'w') {
      ++pos_;
      return Ordinal::omega();
    }
    if (peek() == '(') {
      ++pos_;
      Ordinal e = parse_sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      if (e.is_finite() || e == Ordinal::omega()) {
        pos_ = start;
        fail("parenthesised exponent must not be a natural number or w");
      }
      return e;
    }
    const std::uint64_t n = parse_natural();
    if (n < 2) {
      pos_ = start;
      fail("exponent 0 or 1 is written without '^'");
    }
    return Ordinal::finite(n);
  }

  Ordinal::Term parse_term() {
    if (peek() == 'w') {
      ++pos_;
      Ordinal::Term t{Ordinal::finite(1), 1};
      if (peek() == '^') {
        ++pos_;
        t.exponent = parse_exponent();
      }
      if (peek() == '*') {
        ++pos_;
        const std::size_t start = pos_;
        t.coefficient = parse_natural();
        if (t.coefficient < 2) {
          pos_ = start;
          fail("coefficient 0 or 1 is written without '*'");
        }
      }
      return t;
    }
    return Ordinal::Term{Ordinal(), parse_natural()};
  }

  Ordinal parse_sum() {
    std::vector<Ordinal::Term> terms;
    for (;;) {
      const std::size_t start = pos_;
      Ordinal::Term t = parse_term();
      if (t.coefficient == 0) {
        if (!terms.empty() || peek() == '+') {
          pos_ = start;
          fail("0 may only appear on its own");
        }
        return Ordinal();
      }
      if (!terms.empty() && !(t.exponent < terms.back().exponent)) {
        pos_ = start;
        fail("not in Cantor normal form: exponents must strictly decrease");
      }
      terms.push_back(std::move(t));
      if (peek() != '+') break;
      ++pos_;
    }
    return Ordinal::from_terms(std::move(terms));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_ordinal(const Ordinal& a) {
  std::ostringstream out;
  format_into(out, a);
  return out.str();
}

Ordinal parse_ordinal(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty ordinal");
  return OrdinalParser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Labels

Label Label::out() {
  Label l;
  l.kind_ = Kind::kOut;
  return l;
}

Label Label::ord(Ordinal value) {
  Label l;
  l.kind_ = Kind::kOrdinal;
  l.value_ = std::move(value);
  return l;
}

const Ordinal& Label::ordinal() const {
  if (kind_ != Kind::kOrdinal) throw std::logic_error("ordinal() of a Q label");
  return value_;
}

bool operator==(const Label& a, const Label& b) {
  return a.kind_ == b.kind_ && (a.kind_ != Label::Kind::kOrdinal || a.value_ == b.value_);
}

bool triangle_lt(const Label& x, const Label& y) {
  if (x.is_ordinal() && y.is_ordinal()) return x.ordinal() < y.ordinal();
  if (x.is_q() && y.is_ordinal()) return true;
  if (x.is_q() && y.is_q()) return x.kind() == y.kind();
  return false;
}

std::string format_label(const Label& l) {
  switch (l.kind()) {
    case Label::Kind::kIn:
      return "in";
    case Label::Kind::kOut:
      return "out";
    case Label::Kind::kOrdinal:
      break;
  }
  return format_ordinal(l.ordinal());
}

Label parse_label(std::string_view text) {
  if (text == "in") return Label::in();
  if (text == "out") return Label::out();
  return Label::ord(parse_ordinal(text));
}

// ---------------------------------------------------------------------------
// Enumeration below a bound

namespace {

// All notations of weight exactly `w` that lie below `bound` (if given) and
// whose exponents all lie below `cap` (if given). Ascending order.
std::vector<Ordinal> notations_of_weight(std::uint64_t w, const std::optional<Ordinal>& bound,
                                         const std::optional<Ordinal>& cap) {
  std::vector<Ordinal> out;
  if (bound && bound->is_zero()) return out;
  if (w == 0) {
    out.emplace_back();
    return out;
  }

  auto prepend_all = [&out](const Ordinal& e, std::uint64_t c, const std::vector<Ordinal>& rests) {
    for (const auto& rest : rests) {
      std::vector<Ordinal::Term> terms;
      terms.reserve(rest.terms().size() + 1);
      terms.push_back(Ordinal::Term{e, c});
      terms.insert(terms.end(), rest.terms().begin(), rest.terms().end());
      out.push_back(Ordinal::from_terms(std::move(terms)));
    }
  };

  const Ordinal* lead_exp = bound ? &bound->terms().front().exponent : nullptr;
  const std::uint64_t lead_coef = bound ? bound->terms().front().coefficient : 0;

  // Exponent strictly below min(cap, leading exponent of bound).
  std::optional<Ordinal> exp_bound = cap;
  if (lead_exp && (!exp_bound || *lead_exp < *exp_bound)) exp_bound = *lead_exp;

  for (std::uint64_t we = 0; we < w; ++we) {
    const std::uint64_t budget = w - we;  // c + weight(rest)
    for (const auto& e : notations_of_weight(we, exp_bound, std::nullopt)) {
      for (std::uint64_t c = 1; c <= budget; ++c)
        prepend_all(e, c, notations_of_weight(budget - c, std::nullopt, e));
    }
    // Exponent equal to the bound's leading exponent.
    if (lead_exp && lead_exp->weight() == we && (!cap || *lead_exp < *cap)) {
      const Ordinal& e = *lead_exp;
      for (std::uint64_t c = 1; c <= budget && c <= lead_coef; ++c) {
        if (c < lead_coef) {
          prepend_all(e, c, notations_of_weight(budget - c, std::nullopt, e));
        } else {
          std::vector<Ordinal::Term> rest_terms(bound->terms().begin() + 1, bound->terms().end());
          const Ordinal rest_bound = Ordinal::from_terms(std::move(rest_terms));
          prepend_all(e, c, notations_of_weight(budget - c, rest_bound, e));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

struct BelowEnumerator::State {
  Ordinal bound;
  std::mutex mu;
  std::vector<Ordinal> listed;
  // weight_start[w] is the index of the first notation of weight w.
  std::vector<std::size_t> weight_start;
  std::uint64_t next_weight = 0;

  // Requires mu held.
  void extend_one_weight() {
    auto batch = notations_of_weight(next_weight, bound, std::nullopt);
    weight_start.push_back(listed.size());
    listed.insert(listed.end(), batch.begin(), batch.end());
    ++next_weight;
  }
};

BelowEnumerator::BelowEnumerator(Ordinal bound) : state_(std::make_shared<State>()) {
  if (bound.is_zero()) throw std::domain_error("no notations below 0");
  state_->bound = std::move(bound);
}

const Ordinal& BelowEnumerator::bound() const { return state_->bound; }

std::optional<std::uint64_t> BelowEnumerator::size() const {
  if (!state_->bound.is_finite()) return std::nullopt;
  return state_->bound.finite_value();
}

Ordinal BelowEnumerator::at(std::uint64_t k) const {
  if (auto n = size(); n && k >= *n)
    throw std::out_of_range("index " + std::to_string(k) + " past the " + std::to_string(*n) +
                            " notations below " + format_ordinal(state_->bound));
  std::lock_guard lock(state_->mu);
  while (state_->listed.size() <= k) state_->extend_one_weight();
  return state_->listed[k];
}

std::uint64_t BelowEnumerator::index_of(const Ordinal& beta) const {
  if (!(beta < state_->bound))
    throw std::domain_error(format_ordinal(beta) + " is not below " + format_ordinal(state_->bound));
  const std::uint64_t w = beta.weight();
  std::lock_guard lock(state_->mu);
  while (state_->next_weight <= w) state_->extend_one_weight();
  // Weight classes are contiguous and sorted.
  const auto first = state_->listed.begin() + static_cast<std::ptrdiff_t>(state_->weight_start[w]);
  const auto last = w + 1 < state_->weight_start.size()
                        ? state_->listed.begin() + static_cast<std::ptrdiff_t>(state_->weight_start[w + 1])
                        : state_->listed.end();
  return static_cast<std::uint64_t>(std::lower_bound(first, last, beta) - state_->listed.begin());
}

Ordinal enumerate_below(const Ordinal& alpha, std::uint64_t k) {
  return BelowEnumerator(alpha).at(k);
}

}  // namespace baire
