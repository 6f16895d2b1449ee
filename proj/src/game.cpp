#include "baire/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace baire {

GameState initial_game_state(const Ordinal& alpha, const Ordinal& gamma) {
  const GammaCodec codec(alpha);
  if (!(gamma < alpha))
    throw DomainViolation("pending ordinal " + format_ordinal(gamma) + " is not below " + format_ordinal(alpha));
  return GameState{FinSeq{0, 1}, FinSeq{codec.encode(GammaLetter{1, Label::ord(gamma)})}, gamma, 0};
}

std::string to_string(GameOutcome o) {
  switch (o) {
    case GameOutcome::kRefuted:
      return "refuted";
    case GameOutcome::kRoundLimit:
      return "round_limit";
    case GameOutcome::kRejected:
      return "rejected";
    case GameOutcome::kProverStuck:
      return "prover_stuck";
  }
  return "?";
}

namespace {

// The first `window` notations below a nonzero gamma, or all of them.
std::vector<Ordinal> claim_candidates(const Ordinal& gamma, std::uint64_t window) {
  const BelowEnumerator below(gamma);
  std::uint64_t n = window;
  if (const auto size = below.size()) n = std::min(n, *size);
  std::vector<Ordinal> out;
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(below.at(k));
  return out;
}

class GreedyChallenger : public Challenger {
 public:
  std::string name() const override { return "greedy"; }
  ChallengerMove move(const GameState& state) override {
    ChallengerMove m;
    if (state.pending.is_successor()) {
      m.claim = state.pending.predecessor();
    } else if (!state.pending.is_zero()) {
      const auto c = claim_candidates(state.pending, kClaimWindow);
      m.claim = *std::max_element(c.begin(), c.end());
    }
    m.left = ClopenPartition::finest_level(state.s, 3);
    m.right = ClopenPartition::finest_level(state.t, 3);
    return m;
  }
};

class RandomChallenger : public Challenger {
 public:
  explicit RandomChallenger(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  ChallengerMove move(const GameState& state) override {
    ChallengerMove m;
    if (!state.pending.is_zero()) {
      const auto c = claim_candidates(state.pending, kClaimWindow);
      m.claim = c[rng_.uniform(c.size())];
    }
    m.left = level_partition(state.s);
    m.right = level_partition(state.t);
    return m;
  }

 private:
  // Cylinders of depth 1 or 2 below base with entries < width, grouped into
  // random pieces; the remainder joins one of them.
  ClopenPartition level_partition(const FinSeq& base) {
    const std::uint64_t depth = rng_.range(1, 2);
    const std::uint64_t width = rng_.range(1, 3);
    const std::uint64_t n_pieces = rng_.range(1, 3);
    ClopenPartition p;
    p.base = base;
    p.pieces.resize(n_pieces);
    for (std::uint64_t i = 0; i < width; ++i) {
      if (depth == 1) {
        p.pieces[rng_.uniform(n_pieces)].push_back(base.child(i));
        continue;
      }
      for (std::uint64_t j = 0; j < width; ++j) p.pieces[rng_.uniform(n_pieces)].push_back(base.child(i).child(j));
    }
    p.remainder = rng_.uniform(n_pieces);
    return p;
  }

  Rng rng_;
};

FinSeq with_entry(const FinSeq& t, std::uint64_t index, std::uint64_t code) {
  std::vector<FinSeq::value_type> v(t.begin(), t.end());
  if (v.size() <= index) v.resize(index + 1, 0);
  v[index] = code;
  return FinSeq(std::move(v));
}

Point zero_tail(const FinSeq& prefix) { return Point::eventually_periodic(prefix); }

// Checks claim shape and returns m_N.
std::optional<std::uint64_t> stalled_index(const GammaCodec& codec, const GameState& st) {
  const RectOutcome r = r_alpha_rect(codec, st.s, st.t);
  if (!r.pending || !r.pending->claim_shape()) return std::nullopt;
  if (*r.pending->last_ordinal() != st.pending) return std::nullopt;
  return r.pending->index;
}

Certificate refute(const Ordinal& alpha, const GammaCodec& codec, const GameState& st, std::uint64_t m_n) {
  Certificate c;
  c.s = st.s;
  c.t_in = with_entry(st.t, m_n, codec.encode(GammaLetter{0, Label::in()}));
  c.t_out = with_entry(st.t, m_n, codec.encode(GammaLetter{0, Label::out()}));
  c.in_trace = r_alpha_decide(alpha, zero_tail(c.s), GammaPoint::from_codes(zero_tail(c.t_in), codec));
  c.out_trace = r_alpha_decide(alpha, zero_tail(c.s), GammaPoint::from_codes(zero_tail(c.t_out), codec));
  return c;
}

}  // namespace

std::unique_ptr<Challenger> greedy_challenger(const Ordinal&) { return std::make_unique<GreedyChallenger>(); }

std::unique_ptr<Challenger> random_challenger(const Ordinal&, std::uint64_t seed) {
  return std::make_unique<RandomChallenger>(seed);
}

std::unique_ptr<Challenger> make_challenger(const std::string& name, const Ordinal& alpha, std::uint64_t seed) {
  if (name == "greedy") return greedy_challenger(alpha);
  if (name == "random") return random_challenger(alpha, seed);
  throw std::invalid_argument("unknown challenger '" + name + "' (expected greedy or random)");
}

bool verify_certificate(const Ordinal& alpha, const GameState& state, const Certificate& c) {
  if (c.s != state.s || !state.t.is_prefix_of(c.t_in) || !state.t.is_prefix_of(c.t_out)) return false;
  const GammaCodec codec(alpha);
  const DescentTrace in =
      r_alpha_decide(alpha, zero_tail(c.s), GammaPoint::from_codes(zero_tail(c.t_in), codec));
  const DescentTrace out =
      r_alpha_decide(alpha, zero_tail(c.s), GammaPoint::from_codes(zero_tail(c.t_out), codec));
  return in.verdict == Verdict::kIn && out.verdict == Verdict::kOut && in == c.in_trace && out == c.out_trace;
}

Transcript rank_game_play(const Ordinal& alpha, const GameState& initial, Challenger& challenger,
                          std::size_t max_rounds) {
  const GammaCodec codec(alpha);
  Transcript tr;
  tr.alpha = alpha;
  tr.challenger = challenger.name();
  tr.initial = initial;
  GameState st = initial;

  auto m_n = stalled_index(codec, st);
  if (!m_n) {
    tr.outcome = GameOutcome::kRejected;
    tr.diagnosis = "initial rectangle is not a stalled run with pending " + format_ordinal(st.pending);
    return tr;
  }

  while (tr.rounds.size() < max_rounds) {
    GameRound round;
    round.challenge = challenger.move(st);
    const Ordinal& beta = round.challenge.claim;

    if (beta.is_zero()) {
      tr.certificate = refute(alpha, codec, st, *m_n);
      st.round += 1;
      round.state = st;
      tr.rounds.push_back(std::move(round));
      if (!verify_certificate(alpha, st, *tr.certificate)) {
        tr.outcome = GameOutcome::kProverStuck;
        tr.diagnosis = "refutation certificate failed to verify";
      } else {
        tr.outcome = GameOutcome::kRefuted;
      }
      return tr;
    }
    if (!(beta < st.pending)) {
      tr.outcome = GameOutcome::kRejected;
      tr.diagnosis = "claim " + format_ordinal(beta) + " is not below pending " + format_ordinal(st.pending);
      tr.rounds.push_back(std::move(round));
      return tr;
    }
    std::optional<std::string> defect;
    if (round.challenge.left.base != st.s) defect = "left partition is not of [s]";
    else if (round.challenge.right.base != st.t) defect = "right partition is not of [t]";
    else if (auto d = round.challenge.left.validate()) defect = "left partition: " + *d;
    else if (auto d2 = round.challenge.right.validate()) defect = "right partition: " + *d2;
    if (defect) {
      tr.outcome = GameOutcome::kRejected;
      tr.diagnosis = *defect;
      tr.rounds.push_back(std::move(round));
      return tr;
    }

    ProverMove pm;
    const auto [s_prime, left_piece] = round.challenge.left.settle(zero_tail(st.s), st.s.size());
    pm.s_prime = s_prime;
    pm.left_piece = left_piece;
    const FinSeq y_seed = with_entry(st.t, *m_n, codec.encode(GammaLetter{s_prime.size(), Label::ord(beta)}));
    const auto [t_prime, right_piece] = round.challenge.right.settle(zero_tail(y_seed), y_seed.size());
    pm.t_prime = t_prime;
    pm.right_piece = right_piece;
    pm.s_double_prime = s_prime.child(t_prime.size());

    st = GameState{pm.s_double_prime, pm.t_prime, beta, st.round + 1};
    round.prover = pm;
    round.state = st;
    tr.rounds.push_back(std::move(round));

    m_n = stalled_index(codec, st);
    if (!m_n) {
      tr.outcome = GameOutcome::kProverStuck;
      tr.diagnosis = "new rectangle is not stalled with pending " + format_ordinal(beta);
      return tr;
    }
  }
  tr.outcome = GameOutcome::kRoundLimit;
  return tr;
}

std::optional<std::string> audit_transcript(const Transcript& t) {
  const GammaCodec codec(t.alpha);
  GameState prev = t.initial;
  if (!stalled_index(codec, prev)) return "initial state not stalled";
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const GameRound& r = t.rounds[i];
    const std::string at = "round " + std::to_string(i + 1) + ": ";
    if (!r.prover) {
      if (i + 1 != t.rounds.size()) return at + "refutation before the last round";
      if (!r.challenge.claim.is_zero()) return at + "refutation of a nonzero claim";
      break;
    }
    const ProverMove& pm = *r.prover;
    if (!prev.s.is_prefix_of(pm.s_prime) || !pm.s_prime.is_prefix_of(pm.s_double_prime) ||
        pm.s_double_prime.size() != pm.s_prime.size() + 1)
      return at + "s extensions are not nested";
    if (!prev.t.is_prefix_of(pm.t_prime)) return at + "t' does not extend t";
    if (r.challenge.left.piece_of(pm.s_prime) != pm.left_piece) return at + "[s'] not inside its piece";
    if (r.challenge.right.piece_of(pm.t_prime) != pm.right_piece) return at + "[t'] not inside its piece";
    if (!(r.state.pending < prev.pending)) return at + "pending ordinal did not descend";
    if (r.state.pending != r.challenge.claim) return at + "pending ordinal differs from the claim";
    if (r.state.s != pm.s_double_prime || r.state.t != pm.t_prime) return at + "state differs from prover move";
    if (!stalled_index(codec, r.state)) return at + "state not stalled with its pending ordinal";
    prev = r.state;
  }
  if (t.outcome == GameOutcome::kRefuted) {
    if (!t.certificate) return "refuted without certificate";
    if (!verify_certificate(t.alpha, prev, *t.certificate)) return "certificate does not verify";
  }
  return std::nullopt;
}

}  // namespace baire
