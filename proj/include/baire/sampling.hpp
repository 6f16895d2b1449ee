#pragma once

#include <cstdint>

#include "baire/hierarchy.hpp"
#include "baire/point_spec.hpp"
#include "baire/random.hpp"
#include "baire/seqspace.hpp"

namespace baire {

struct SpecShape {
  std::size_t max_prefix = 8;
  std::size_t max_cycle = 3;  // periodic tail length is 1..max_cycle
  std::uint64_t entry_bound = 8;
};

// Eventually periodic point of w^w with entries < entry_bound.
PointSpec random_natural_spec(Rng& rng, const SpecShape& shape = {});

// Eventually periodic point of Gamma_alpha^w: pointers n < entry_bound; a
// label is in or out with probability 1/8 each, otherwise one of the first
// `window` notations below alpha.
PointSpec random_gamma_spec(Rng& rng, const GammaCodec& codec, const SpecShape& shape = {},
                            std::uint64_t window = 48);

FinSeq random_seq(Rng& rng, std::size_t length, std::uint64_t bound);

}  // namespace baire
