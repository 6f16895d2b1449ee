#include "baire/sampling.hpp"

#include <algorithm>

namespace baire {

PointSpec random_natural_spec(Rng& rng, const SpecShape& shape) {
  PointSpec spec;
  const std::size_t prefix = rng.uniform(shape.max_prefix + 1);
  const std::size_t cycle = 1 + rng.uniform(std::max<std::size_t>(shape.max_cycle, 1));
  for (std::size_t i = 0; i < prefix; ++i) spec.prefix.emplace_back(rng.uniform(shape.entry_bound));
  for (std::size_t i = 0; i < cycle; ++i) spec.cycle.emplace_back(rng.uniform(shape.entry_bound));
  return spec;
}

namespace {

GammaLetter random_letter(Rng& rng, const GammaCodec& codec, std::uint64_t entry_bound, std::uint64_t window) {
  GammaLetter l;
  l.n = rng.uniform(entry_bound);
  const std::uint64_t pick = rng.uniform(8);
  if (pick == 0) {
    l.label = Label::in();
  } else if (pick == 1) {
    l.label = Label::out();
  } else {
    std::uint64_t n = window;
    if (const auto size = codec.below().size()) n = std::min(n, *size);
    l.label = n == 0 ? Label::out() : Label::ord(codec.below().at(rng.uniform(n)));
  }
  return l;
}

}  // namespace

PointSpec random_gamma_spec(Rng& rng, const GammaCodec& codec, const SpecShape& shape, std::uint64_t window) {
  PointSpec spec;
  const std::size_t prefix = rng.uniform(shape.max_prefix + 1);
  const std::size_t cycle = 1 + rng.uniform(std::max<std::size_t>(shape.max_cycle, 1));
  for (std::size_t i = 0; i < prefix; ++i) spec.prefix.emplace_back(random_letter(rng, codec, shape.entry_bound, window));
  for (std::size_t i = 0; i < cycle; ++i) spec.cycle.emplace_back(random_letter(rng, codec, shape.entry_bound, window));
  return spec;
}

FinSeq random_seq(Rng& rng, std::size_t length, std::uint64_t bound) {
  std::vector<FinSeq::value_type> v(length);
  for (auto& e : v) e = rng.uniform(bound);
  return FinSeq(std::move(v));
}

}  // namespace baire
