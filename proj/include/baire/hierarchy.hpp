#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "baire/clopen.hpp"
#include "baire/ordinal.hpp"
#include "baire/point_spec.hpp"
#include "baire/seqspace.hpp"

namespace baire {

// Raised when a point of Gamma_alpha^w carries a label outside Q ∪ alpha, or
// when a construction needs a limit ordinal and gets something else.
class DomainViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

// Bijection Gamma_alpha <-> w:  (n, label) |-> cantor_pair(n, labelcode) with
// labelcode 0 = in, 1 = out, 2 + k = enumerate_below(alpha, k).
// Copies share the enumeration cache.
class GammaCodec {
 public:
  // Throws DomainViolation unless alpha is a limit.
  explicit GammaCodec(Ordinal alpha);

  const Ordinal& alpha() const { return below_.bound(); }
  const BelowEnumerator& below() const { return below_; }

  std::uint64_t label_code(const Label& l) const;
  Label label_of(std::uint64_t code) const;
  std::uint64_t encode(const GammaLetter& letter) const;
  GammaLetter decode(std::uint64_t code) const;

 private:
  BelowEnumerator below_;
};

// A point of Gamma_alpha^w.
class GammaPoint {
 public:
  using Coord = std::function<GammaLetter(std::uint64_t)>;

  explicit GammaPoint(Coord coord) : coord_(std::move(coord)) {}
  static GammaPoint eventually_periodic(std::vector<GammaLetter> prefix,
                                        std::vector<GammaLetter> cycle);
  // Reads a point of w^w through the codec.
  static GammaPoint from_codes(Point codes, GammaCodec codec);
  // Naturals in a point spec are taken as codes.
  static GammaPoint from_spec(const PointSpec& spec, const GammaCodec& codec);

  GammaLetter at(std::uint64_t k) const { return coord_(k); }

 private:
  Coord coord_;
};

struct DescentStep {
  std::uint64_t m = 0;  // index into y
  std::uint64_t n = 0;  // next index into x
  Label label;

  friend bool operator==(const DescentStep&, const DescentStep&) = default;
};

// The pointer-chasing run deciding (x, y) ∈ R_alpha.
struct DescentTrace {
  std::vector<DescentStep> steps;  // steps[0..i0]
  std::size_t i0 = 0;
  Verdict verdict = Verdict::kOut;
  // Prefix lengths of x and y read by the run.
  std::size_t x_depth = 0;
  std::size_t y_depth = 0;

  std::size_t depth() const { return std::max(x_depth, y_depth); }
  friend bool operator==(const DescentTrace&, const DescentTrace&) = default;
};

// Throws DomainViolation if alpha is not a limit or y emits a label >= alpha.
DescentTrace r_alpha_decide(const Ordinal& alpha, const Point& x, const GammaPoint& y);

// Independent check of the trace invariants; returns a description of the
// first violated invariant.
std::optional<std::string> check_trace(const DescentTrace& trace);

// The run stalled on a finite rectangle.
struct PendingState {
  enum class Awaiting { kX, kY };

  std::vector<DescentStep> steps;  // complete steps 0..N-1
  Awaiting awaiting = Awaiting::kX;
  // Index needed next: into s when awaiting x, into t (this is m_N) when
  // awaiting y.
  std::uint64_t index = 0;

  std::size_t n_steps() const { return steps.size(); }
  // alpha_{N-1}; present when N >= 1.
  std::optional<Ordinal> last_ordinal() const;
  // N >= 1, m_N known and m_N >= |t|: the situation where rank >= alpha_{N-1}.
  bool claim_shape() const { return awaiting == Awaiting::kY && !steps.empty(); }

  friend bool operator==(const PendingState&, const PendingState&) = default;
};

struct RectOutcome {
  Verdict verdict = Verdict::kUndecided;
  std::optional<PendingState> pending;  // set iff undecided
  std::vector<DescentStep> steps;       // run so far (for decided outcomes, steps[0..i0])
};

// Runs the procedure on prefixes s ∈ w^<w and t ∈ Gamma_alpha^<w (codes)
// as far as they allow.
RectOutcome r_alpha_rect(const GammaCodec& codec, const FinSeq& s, const FinSeq& t);

// Regions of w^w according to the first coordinate:
//   C = [<0>], D = [<1>], C1 = [<2>], D1 = union of [<i>] for i >= 3;
//   A = C ∪ C1, B = D ∪ D1.
enum class Region { kC, kD, kC1, kD1 };
Region region_of(std::uint64_t first);
inline bool in_a(Region r) { return r == Region::kC || r == Region::kC1; }

// S_alpha = {(0⌢x, 1⌢y) : (x, y) ∈ R_alpha} as a one-sided relation.
GraphOracle s_alpha(const Ordinal& alpha);
// P_alpha = S_alpha ∪ (C1 x D) ∪ (C x D1), one-sided.
GraphOracle p_alpha(const Ordinal& alpha);
// E_alpha, the symmetrisation of P_alpha. Carries a rank hint: rectangles of
// C x D whose run stalls in claim shape have rank >= alpha_{N-1}.
GraphOracle e_alpha(const Ordinal& alpha);

// A neighbour of x in E_alpha, chosen in the opposite half, verified with
// decide_pair. Throws std::logic_error if the verification fails.
Point witness_neighbor(const Ordinal& alpha, const Point& x, std::size_t fuel);

}  // namespace baire
