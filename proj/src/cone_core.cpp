#include "conedec/cone_core.hpp"

#include <algorithm>
#include <string>

namespace conedec {

std::size_t HalfOpenCone::open_count() const {
  return static_cast<std::size_t>(std::count(open.begin(), open.end(), true));
}

Integer cone_index(const IntMatrix& a) {
  const Integer det = determinant(primitive_reduce(a));
  if (sgn(det) == 0) throw SingularMatrixError("cone_index: singular generator matrix");
  return abs(det);
}

bool contains(const HalfOpenCone& c, std::span<const Integer> m) {
  const auto x = solve(c.generators, m);
  if (!x) return false;
  for (std::size_t j = 0; j < x->size(); ++j) {
    const int s = sgn((*x)[j]);
    if (s < 0 || (s == 0 && c.open[j])) return false;
  }
  return true;
}

std::vector<ChildSpec> primal_children(std::span<const Rational> beta) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (sgn(beta[i]) > 0) pos.push_back(i);
    if (sgn(beta[i]) < 0) neg.push_back(i);
  }
  if (pos.empty() && neg.empty()) throw PreconditionError("primal_step: beta is zero");

  std::vector<ChildSpec> out;
  out.reserve(pos.size() + neg.size());
  auto emit = [&out](const std::vector<std::size_t>& group, bool negate_gamma) {
    for (std::size_t t = 0; t < group.size(); ++t) {
      ChildSpec c;
      c.sign = (t % 2 == 0) ? 1 : -1;
      c.replaced = group[t];
      c.negate_gamma = negate_gamma;
      c.negated.assign(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(t));
      out.push_back(std::move(c));
    }
  };
  emit(pos, false);
  emit(neg, true);
  return out;
}

std::vector<ChildSpec> dual_children(std::span<const Rational> beta) {
  if (std::none_of(beta.begin(), beta.end(), [](const Rational& k) { return sgn(k) != 0; }))
    throw PreconditionError("dual_step: beta is zero");
  if (std::none_of(beta.begin(), beta.end(), [](const Rational& k) { return sgn(k) > 0; }))
    throw PreconditionError("dual_step: beta has no positive coefficient");
  std::vector<ChildSpec> out;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (sgn(beta[i]) == 0) continue;
    out.push_back({sgn(beta[i]), i, false, {}});
  }
  return out;
}

IntMatrix apply_child(const IntMatrix& a, const ChildSpec& spec, std::span<const Integer> gamma) {
  IntMatrix b = a;
  b.set_column(spec.replaced, gamma);
  if (spec.negate_gamma) b.negate_column(spec.replaced);
  for (std::size_t j : spec.negated) b.negate_column(j);
  return b;
}

IntVector primitive_gamma(const IntMatrix& a, std::span<const Rational> beta) {
  if (beta.size() != a.cols()) throw PreconditionError("gamma: beta has the wrong length");
  const RatVector g = a * beta;
  if (!is_integral(g)) throw PreconditionError("gamma: A beta is not integral");
  IntVector gamma(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) gamma[i] = g[i].get_num();
  const Integer c = content(gamma);
  if (sgn(c) == 0) throw PreconditionError("gamma: A beta is zero");
  for (auto& x : gamma) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return gamma;
}

std::vector<SignedCone> primal_step(const IntMatrix& a, std::span<const Rational> beta) {
  const auto specs = primal_children(beta);
  const IntVector gamma = primitive_gamma(a, beta);
  std::vector<SignedCone> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back({s.sign, apply_child(a, s, gamma)});
  return out;
}

std::vector<SignedCone> dual_step(const IntMatrix& a, std::span<const Rational> beta) {
  const auto specs = dual_children(beta);
  const IntVector gamma = primitive_gamma(a, beta);
  std::vector<SignedCone> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back({s.sign, apply_child(a, s, gamma)});
  return out;
}

SignedCone half_open_to_closed(const HalfOpenCone& c) {
  SignedCone out{1, c.generators};
  for (std::size_t j = 0; j < c.open.size(); ++j) {
    if (!c.open[j]) continue;
    out.sign = -out.sign;
    out.generators.negate_column(j);
  }
  return out;
}

std::vector<HalfOpenCone> half_open_primal_step(const IntMatrix& a, std::span<const Rational> beta) {
  const auto specs = primal_children(beta);
  const IntVector gamma = primitive_gamma(a, beta);
  std::vector<HalfOpenCone> out;
  out.reserve(specs.size());
  for (const auto& s : specs) {
    HalfOpenCone c = HalfOpenCone::closed(a);
    c.generators.set_column(s.replaced, gamma);
    if (s.negate_gamma) c.generators.negate_column(s.replaced);
    for (std::size_t j : s.negated) c.open[j] = true;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<HalfOpenCone> interior_partition(const IntMatrix& a, std::span<const Rational> coefficients) {
  const std::size_t r = coefficients.size();
  if (r == 0 || r > a.cols()) throw PreconditionError("interior_partition: need 1 <= r <= d coefficients");
  if (std::any_of(coefficients.begin(), coefficients.end(), [](const Rational& k) { return sgn(k) <= 0; }))
    throw PreconditionError("interior_partition: coefficients must be strictly positive");

  RatVector beta(a.cols());
  std::copy(coefficients.begin(), coefficients.end(), beta.begin());
  // Positive rescaling of gamma does not change any of the cones.
  const RatVector gq = a * std::span<const Rational>(beta);
  IntVector gamma = clear_denominators(gq);
  const Integer c = content(gamma);
  for (auto& x : gamma) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());

  std::vector<HalfOpenCone> out;
  for (std::size_t i = 0; i < r; ++i) {
    HalfOpenCone piece = HalfOpenCone::closed(a);
    piece.generators.set_column(i, gamma);
    for (std::size_t j = 0; j < i; ++j) piece.open[j] = true;
    out.push_back(std::move(piece));
  }
  return out;
}

std::pair<std::vector<HalfOpenCone>, HalfOpenCone> face_decomposition(const IntMatrix& a, std::size_t r) {
  const std::size_t n = a.cols();
  if (r < 1 || r > n) throw PreconditionError("face_decomposition: r must satisfy 1 <= r <= d");
  std::vector<HalfOpenCone> faces;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    IntMatrix f(a.rows(), n - 1);
    for (std::size_t j = 0, k = 0; j < n; ++j) {
      if (j == i) continue;
      f.set_column(k++, a.column(j));
    }
    HalfOpenCone face = HalfOpenCone::closed(std::move(f));
    for (std::size_t j = 0; j < i; ++j) face.open[j] = true;
    faces.push_back(std::move(face));
  }
  HalfOpenCone rest = HalfOpenCone::closed(a);
  for (std::size_t j = 0; j + 1 < r; ++j) rest.open[j] = true;
  return {std::move(faces), std::move(rest)};
}

}  // namespace conedec
