#pragma once

// Seeded random generator matrices. mt19937_64 is fully specified by the
// standard and the bounded draw below avoids the implementation-defined
// distributions, so a seed produces the same matrices everywhere.

#include <cstddef>
#include <cstdint>
#include <random>

#include "conedec/exact_linalg.hpp"

namespace conedec {

/// Entry bound by dimension: 100 up to d = 6, 30 from d = 7 on.
long default_entry_bound(std::size_t d);

/// Uniform integer in [-bound, bound] by rejection sampling.
long uniform_entry(std::mt19937_64& rng, long bound);

/// d x d matrix with uniform entries; singular draws are discarded and redrawn.
IntMatrix random_nonsingular(std::size_t d, long bound, std::mt19937_64& rng);

/// Same, then primitive-reduced.
IntMatrix random_primitive(std::size_t d, long bound, std::mt19937_64& rng);

}  // namespace conedec
