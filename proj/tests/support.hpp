#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conedec/exact_linalg.hpp"
#include "conedec/random_input.hpp"

namespace testing_support {

using namespace conedec;

/// Laplace expansion along the first row; slow but shares nothing with the
/// library's elimination code.
inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(m(0, j)) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const Integer t = m(0, j) * laplace_det(minor);
    if (j % 2 == 0)
      s += t;
    else
      s -= t;
  }
  return s;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t d, long bound) {
  IntMatrix a(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) a(i, j) = uniform_entry(rng, bound);
  return a;
}

inline IntMatrix replace_column(IntMatrix a, std::size_t i, std::span<const Integer> v) {
  a.set_column(i, v);
  return a;
}

}  // namespace testing_support
