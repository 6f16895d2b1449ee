#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "baire/hierarchy.hpp"
#include "baire/ordinal.hpp"
#include "baire/random.hpp"
#include "baire/rank.hpp"
#include "baire/seqspace.hpp"

namespace baire {

// A rectangle [s]x[t] of R_alpha (t holds Gamma codes) whose run stalls in
// claim shape with alpha_{N-1} = pending.
struct GameState {
  FinSeq s;
  FinSeq t;
  Ordinal pending;
  std::uint64_t round = 0;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// s = (0,1), t = ((1, gamma)). Throws DomainViolation unless gamma < alpha
// and alpha is a limit.
GameState initial_game_state(const Ordinal& alpha, const Ordinal& gamma);

// The challenger asserts every piece product has rank < claim. A claim of 0
// asserts [s]x[t] is homogeneous.
struct ChallengerMove {
  Ordinal claim;
  ClopenPartition left;   // of [s]
  ClopenPartition right;  // of [t]
};

class Challenger {
 public:
  virtual ~Challenger() = default;
  virtual std::string name() const = 0;
  virtual ChallengerMove move(const GameState& state) = 0;
};

// Number of notations below a limit pending ordinal the shipped challengers
// choose from.
inline constexpr std::uint64_t kClaimWindow = 31;

// Finest level partition of width 3, claim pending - 1 or the largest of the
// first kClaimWindow notations below a limit.
std::unique_ptr<Challenger> greedy_challenger(const Ordinal& alpha);
// Seeded random level partitions and claims.
std::unique_ptr<Challenger> random_challenger(const Ordinal& alpha, std::uint64_t seed);
// "greedy" or "random"; throws std::invalid_argument otherwise.
std::unique_ptr<Challenger> make_challenger(const std::string& name, const Ordinal& alpha, std::uint64_t seed);

struct ProverMove {
  FinSeq s_prime;
  FinSeq t_prime;
  FinSeq s_double_prime;
  std::size_t left_piece = 0;
  std::size_t right_piece = 0;
};

// Completions x = s⌢0^w, y_in = t_in⌢0^w, y_out = t_out⌢0^w of the
// rectangle, one in R_alpha and one not.
struct Certificate {
  FinSeq s;
  FinSeq t_in;
  FinSeq t_out;
  DescentTrace in_trace;
  DescentTrace out_trace;
};

struct GameRound {
  ChallengerMove challenge;
  std::optional<ProverMove> prover;  // absent in the refutation round
  GameState state;                   // after the round
};

enum class GameOutcome {
  kRefuted,     // challenger claimed 0 and the certificate verified
  kRoundLimit,  // max_rounds claims answered without a refutation
  kRejected,    // challenger move malformed
  kProverStuck, // strategy failure; never expected
};
std::string to_string(GameOutcome o);

struct Transcript {
  Ordinal alpha;
  std::string challenger;
  GameState initial;
  std::vector<GameRound> rounds;
  GameOutcome outcome = GameOutcome::kRoundLimit;
  std::optional<Certificate> certificate;
  std::string diagnosis;
};

// The prover strategy from the proof that stalled rectangles have rank at
// least their pending ordinal. Rounds count challenger claims, the
// refuted claim included.
Transcript rank_game_play(const Ordinal& alpha, const GameState& initial, Challenger& challenger,
                          std::size_t max_rounds);

// Replays a certificate through r_alpha_decide.
bool verify_certificate(const Ordinal& alpha, const GameState& state, const Certificate& c);

// Independent audit: states extend each other, re-run to claim shape with the
// recorded pending ordinal, pending ordinals strictly descend, and the
// certificate verifies. Returns the first defect.
std::optional<std::string> audit_transcript(const Transcript& t);

}  // namespace baire
