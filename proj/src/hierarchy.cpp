#include "baire/hierarchy.hpp"

#include <cmath>
#include <limits>

namespace baire {

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  if (s < a || s >= (std::uint64_t{1} << 32)) throw std::overflow_error("cantor_pair overflow");
  return s * (s + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // w = floor((sqrt(8z+1)-1)/2), corrected for floating point error.
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const std::uint64_t b = z - w * (w + 1) / 2;
  return {w - b, b};
}

// ---------------------------------------------------------------------------

GammaCodec::GammaCodec(Ordinal alpha)
    : below_(alpha.is_zero() ? throw DomainViolation("Gamma_alpha needs a limit ordinal, got 0")
                             : std::move(alpha)) {
  if (!below_.bound().is_limit())
    throw DomainViolation("Gamma_alpha needs a limit ordinal, got " + format_ordinal(below_.bound()));
}

std::uint64_t GammaCodec::label_code(const Label& l) const {
  switch (l.kind()) {
    case Label::Kind::kIn:
      return 0;
    case Label::Kind::kOut:
      return 1;
    case Label::Kind::kOrdinal:
      break;
  }
  if (!(l.ordinal() < alpha()))
    throw DomainViolation("label " + format_label(l) + " is not below " + format_ordinal(alpha()));
  return 2 + below_.index_of(l.ordinal());
}

Label GammaCodec::label_of(std::uint64_t code) const {
  if (code == 0) return Label::in();
  if (code == 1) return Label::out();
  return Label::ord(below_.at(code - 2));
}

std::uint64_t GammaCodec::encode(const GammaLetter& letter) const {
  return cantor_pair(letter.n, label_code(letter.label));
}

GammaLetter GammaCodec::decode(std::uint64_t code) const {
  const auto [n, lc] = cantor_unpair(code);
  return GammaLetter{n, label_of(lc)};
}

GammaPoint GammaPoint::eventually_periodic(std::vector<GammaLetter> prefix, std::vector<GammaLetter> cycle) {
  return GammaPoint([prefix = std::move(prefix), cycle = std::move(cycle)](std::uint64_t k) {
    if (k < prefix.size()) return prefix[k];
    if (cycle.empty()) return GammaLetter{};
    return cycle[(k - prefix.size()) % cycle.size()];
  });
}

GammaPoint GammaPoint::from_codes(Point codes, GammaCodec codec) {
  return GammaPoint([codes = std::move(codes), codec = std::move(codec)](std::uint64_t k) {
    return codec.decode(codes.at(k));
  });
}

GammaPoint GammaPoint::from_spec(const PointSpec& spec, const GammaCodec& codec) {
  auto letter = [&codec](const SpecItem& item) {
    if (const auto* code = std::get_if<std::uint64_t>(&item)) return codec.decode(*code);
    return std::get<GammaLetter>(item);
  };
  std::vector<GammaLetter> prefix, cycle;
  for (const auto& i : spec.prefix) prefix.push_back(letter(i));
  for (const auto& i : spec.cycle) cycle.push_back(letter(i));
  return eventually_periodic(std::move(prefix), std::move(cycle));
}

// ---------------------------------------------------------------------------

DescentTrace r_alpha_decide(const Ordinal& alpha, const Point& x, const GammaPoint& y) {
  if (!alpha.is_limit())
    throw DomainViolation("R_alpha needs a limit ordinal, got " + format_ordinal(alpha));
  DescentTrace trace;
  auto read_x = [&](std::uint64_t k) {
    trace.x_depth = std::max<std::size_t>(trace.x_depth, k + 1);
    return x.at(k);
  };
  auto read_y = [&](std::uint64_t k) {
    trace.y_depth = std::max<std::size_t>(trace.y_depth, k + 1);
    GammaLetter l = y.at(k);
    if (l.label.is_ordinal() && !(l.label.ordinal() < alpha))
      throw DomainViolation("y(" + std::to_string(k) + ") carries label " + format_label(l.label) +
                            ", not below " + format_ordinal(alpha));
    return l;
  };

  std::uint64_t m = read_x(0);
  for (std::size_t i = 0;; ++i) {
    const GammaLetter letter = read_y(m);
    trace.steps.push_back(DescentStep{m, letter.n, letter.label});
    const bool stop = letter.label.is_q() ||
                      (i > 0 && !(letter.label.ordinal() < trace.steps[i - 1].label.ordinal()));
    if (stop) {
      trace.i0 = i;
      trace.verdict = letter.label.is_in() ? Verdict::kIn : Verdict::kOut;
      return trace;
    }
    m = read_x(letter.n);
  }
}

std::optional<std::string> check_trace(const DescentTrace& t) {
  if (t.steps.empty()) return "empty trace";
  if (t.i0 + 1 != t.steps.size()) return "trace does not end at i0";
  for (std::size_t i = 0; i < t.i0; ++i) {
    const Label& l = t.steps[i].label;
    if (!l.is_ordinal()) return "Q label before i0 at step " + std::to_string(i);
    if (i > 0 && !(l.ordinal() < t.steps[i - 1].label.ordinal()))
      return "no strict descent at step " + std::to_string(i);
  }
  const Label& last = t.steps[t.i0].label;
  if (!last.is_q()) {
    if (t.i0 == 0) return "ordinal label at i0 = 0";
    if (last.ordinal() < t.steps[t.i0 - 1].label.ordinal()) return "run stopped on a strict descent";
  }
  const Verdict expected = last.is_in() ? Verdict::kIn : Verdict::kOut;
  if (t.verdict != expected) return "verdict disagrees with the label at i0";
  return std::nullopt;
}

std::optional<Ordinal> PendingState::last_ordinal() const {
  if (steps.empty()) return std::nullopt;
  return steps.back().label.ordinal();
}

RectOutcome r_alpha_rect(const GammaCodec& codec, const FinSeq& s, const FinSeq& t) {
  RectOutcome out;
  auto stall = [&](PendingState::Awaiting awaiting, std::uint64_t index) {
    out.verdict = Verdict::kUndecided;
    out.pending = PendingState{out.steps, awaiting, index};
    return out;
  };
  if (s.empty()) return stall(PendingState::Awaiting::kX, 0);
  std::uint64_t m = s[0];
  for (std::size_t i = 0;; ++i) {
    if (m >= t.size()) return stall(PendingState::Awaiting::kY, m);
    const GammaLetter letter = codec.decode(t[m]);
    out.steps.push_back(DescentStep{m, letter.n, letter.label});
    const bool stop = letter.label.is_q() ||
                      (i > 0 && !(letter.label.ordinal() < out.steps[i - 1].label.ordinal()));
    if (stop) {
      out.verdict = letter.label.is_in() ? Verdict::kIn : Verdict::kOut;
      return out;
    }
    if (letter.n >= s.size()) return stall(PendingState::Awaiting::kX, letter.n);
    m = s[letter.n];
  }
}

// ---------------------------------------------------------------------------

Region region_of(std::uint64_t first) {
  switch (first) {
    case 0:
      return Region::kC;
    case 1:
      return Region::kD;
    case 2:
      return Region::kC1;
    default:
      return Region::kD1;
  }
}

namespace {

// (s, t) with s ∈ C, t ∈ D: the copy of R_alpha.
Verdict copy_rect(const GammaCodec& codec, const FinSeq& s, const FinSeq& t) {
  return r_alpha_rect(codec, s.drop(1), t.drop(1)).verdict;
}

Verdict p_rect(const GammaCodec& codec, const FinSeq& s, const FinSeq& t) {
  const Region rs = region_of(s[0]);
  const Region rt = region_of(t[0]);
  if (rs == Region::kC && rt == Region::kD) return copy_rect(codec, s, t);
  if (rs == Region::kC1 && rt == Region::kD) return Verdict::kIn;
  if (rs == Region::kC && rt == Region::kD1) return Verdict::kIn;
  return Verdict::kOut;
}

RankHint copy_hint(const GammaCodec& codec, bool symmetric) {
  return [codec, symmetric](const FinSeq& s, const FinSeq& t) -> std::optional<Ordinal> {
    if (s.empty()) return std::nullopt;
    const FinSeq* c = &s;
    const FinSeq* d = &t;
    if (symmetric && s[0] == 1 && t[0] == 0) std::swap(c, d);
    if ((*c)[0] != 0 || (*d)[0] != 1) return std::nullopt;
    const RectOutcome r = r_alpha_rect(codec, c->drop(1), d->drop(1));
    if (!r.pending || !r.pending->claim_shape()) return std::nullopt;
    return r.pending->last_ordinal();
  };
}

}  // namespace

GraphOracle s_alpha(const Ordinal& alpha) {
  GammaCodec codec(alpha);
  return GraphOracle(
      "S_" + format_ordinal(alpha),
      [codec](const FinSeq& s, const FinSeq& t) {
        if (s[0] != 0 || t[0] != 1) return Verdict::kOut;
        return copy_rect(codec, s, t);
      },
      false, copy_hint(codec, false));
}

GraphOracle p_alpha(const Ordinal& alpha) {
  GammaCodec codec(alpha);
  return GraphOracle(
      "P_" + format_ordinal(alpha), [codec](const FinSeq& s, const FinSeq& t) { return p_rect(codec, s, t); },
      false, copy_hint(codec, false));
}

GraphOracle e_alpha(const Ordinal& alpha) {
  GammaCodec codec(alpha);
  return GraphOracle(
      "E_" + format_ordinal(alpha),
      [codec](const FinSeq& s, const FinSeq& t) {
        const bool sa = in_a(region_of(s[0]));
        const bool ta = in_a(region_of(t[0]));
        if (sa == ta) return Verdict::kOut;
        return sa ? p_rect(codec, s, t) : p_rect(codec, t, s);
      },
      true, copy_hint(codec, true));
}

Point witness_neighbor(const Ordinal& alpha, const Point& x, std::size_t fuel) {
  std::uint64_t first = 0;
  switch (region_of(x.at(0))) {
    case Region::kC:
      first = 3;  // C x D1 ⊆ P
      break;
    case Region::kC1:
      first = 1;  // C1 x D ⊆ P
      break;
    case Region::kD:
      first = 2;
      break;
    case Region::kD1:
      first = 0;
      break;
  }
  Point y = Point::eventually_periodic(FinSeq{first});
  const PairDecision d = decide_pair(e_alpha(alpha), x, y, fuel);
  if (d.verdict != Verdict::kIn)
    throw std::logic_error("witness_neighbor: candidate not adjacent (" + to_string(d.verdict) + ")");
  return y;
}

}  // namespace baire
