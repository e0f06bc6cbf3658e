#pragma once

#include <cstdint>
#include <string>

#include "rts/corpus.hpp"

namespace rts {

/// A corpus whose surface statistics grow with the gold score: longer
/// sentences, longer and rarer words. Golds cycle through the lattice so
/// every score is populated; each text carries its id, so texts are unique.
Dataset synthetic_dataset(const PromptSpec& prompt, std::size_t n, std::uint64_t seed);

}  // namespace rts
