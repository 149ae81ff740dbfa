#include "conedec/random_input.hpp"

#include <limits>
#include <stdexcept>

namespace conedec {

long default_entry_bound(std::size_t d) { return d >= 7 ? 30 : 100; }

long uniform_entry(std::mt19937_64& rng, long bound) {
  if (bound < 0) throw PreconditionError("uniform_entry: negative bound");
  const std::uint64_t range = 2 * static_cast<std::uint64_t>(bound) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<long>(x % range) - bound;
}

IntMatrix random_nonsingular(std::size_t d, long bound, std::mt19937_64& rng) {
  if (d == 0) throw PreconditionError("random_nonsingular: dimension must be positive");
  if (bound < 1) throw PreconditionError("random_nonsingular: bound must be at least 1");
  for (;;) {
    IntMatrix a(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) a(i, j) = uniform_entry(rng, bound);
    if (sgn(determinant(a)) != 0) return a;
  }
}

IntMatrix random_primitive(std::size_t d, long bound, std::mt19937_64& rng) {
  return primitive_reduce(random_nonsingular(d, bound, rng));
}

}  // namespace conedec
