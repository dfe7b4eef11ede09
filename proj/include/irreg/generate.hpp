#pragma once

#include <cstdint>

#include "irreg/graph.hpp"

namespace irreg {

/// Random simple d-regular graph on n vertices from the pairing
/// (configuration) model.
///
/// Stubs are paired one random pair at a time; a pair that would create a
/// loop or a parallel edge is rejected and redrawn. When no admissible pair
/// is left among the remaining stubs the whole matching is discarded and
/// restarted. `max_attempts` bounds the number of matchings (0 selects the
/// default of 10*n). Deterministic for a fixed seed.
///
/// Throws ParameterError if n*d is odd or d is outside [0, n), and
/// GenerationError once the attempt budget is spent.
Graph generate_random_regular(Vertex n, int d, std::uint64_t seed,
                              std::uint64_t max_attempts = 0);

}  // namespace irreg
