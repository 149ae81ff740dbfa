#include "conedec/lattice_reduction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace conedec {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Integral LLL state, 1-based as in the textbook formulation: d[0] = 1,
// d[i] = prod_{j<=i} |b*_j|^2, lambda[k][j] = d[j] * mu_{k,j}.
class IntegralLll {
 public:
  IntegralLll(std::vector<IntVector>& basis, const Rational& delta)
      : b_(basis), n_(basis.size()), d_(n_ + 1), lambda_(n_ + 1, IntVector(n_ + 1)),
        p_(delta.get_num()), q_(delta.get_den()) {}

  void run() {
    if (n_ == 0) return;
    d_[0] = 1;
    d_[1] = dot(vec(1), vec(1));
    if (sgn(d_[1]) == 0) throw SingularMatrixError("lll: zero basis vector");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      for (;;) {
        reduce(k, k - 1);
        if (lovasz_fails(k)) {
          swap(k, kmax);
          k = std::max<std::size_t>(2, k - 1);
          continue;
        }
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
        break;
      }
    }
  }

 private:
  IntVector& vec(std::size_t i) { return b_[i - 1]; }

  void gram_schmidt_row(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      Integer u = dot(vec(k), vec(j));
      for (std::size_t i = 1; i < j; ++i) {
        t_ = d_[i] * u;
        t_ -= lambda_[k][i] * lambda_[j][i];
        mpz_divexact(u.get_mpz_t(), t_.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lambda_[k][j] = std::move(u);
      } else {
        if (sgn(u) == 0) throw SingularMatrixError("lll: basis vectors are linearly dependent");
        d_[k] = std::move(u);
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    t_ = 2 * abs(lambda_[k][l]);
    if (t_ <= d_[l]) return;
    // r = floor((2 lambda + d) / (2 d)), the nearest integer to lambda / d.
    t_ = 2 * lambda_[k][l] + d_[l];
    u_ = 2 * d_[l];
    mpz_fdiv_q(r_.get_mpz_t(), t_.get_mpz_t(), u_.get_mpz_t());
    IntVector& bk = vec(k);
    const IntVector& bl = vec(l);
    for (std::size_t i = 0; i < bk.size(); ++i) bk[i] -= r_ * bl[i];
    lambda_[k][l] -= r_ * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= r_ * lambda_[l][i];
  }

  bool lovasz_fails(std::size_t k) {
    // q (d_k d_{k-2} + lambda^2) < p d_{k-1}^2
    t_ = d_[k] * d_[k - 2];
    t_ += lambda_[k][k - 1] * lambda_[k][k - 1];
    t_ *= q_;
    u_ = d_[k - 1] * d_[k - 1];
    u_ *= p_;
    return t_ < u_;
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(vec(k), vec(k - 1));
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const Integer lam = lambda_[k][k - 1];
    Integer big_b = d_[k - 2] * d_[k];
    big_b += lam * lam;
    mpz_divexact(big_b.get_mpz_t(), big_b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const Integer t = lambda_[i][k];
      u_ = d_[k] * lambda_[i][k - 1];
      u_ -= lam * t;
      mpz_divexact(lambda_[i][k].get_mpz_t(), u_.get_mpz_t(), d_[k - 1].get_mpz_t());
      u_ = big_b * t;
      u_ += lam * lambda_[i][k];
      mpz_divexact(lambda_[i][k - 1].get_mpz_t(), u_.get_mpz_t(), d_[k].get_mpz_t());
    }
    d_[k - 1] = std::move(big_b);
  }

  std::vector<IntVector>& b_;
  std::size_t n_;
  IntVector d_;
  std::vector<IntVector> lambda_;
  Integer p_, q_;
  Integer t_, u_, r_;
};

void check_delta(const Rational& delta) {
  if (!(delta > Rational(1, 4) && delta < 1)) throw PreconditionError("lll: delta must lie in (1/4, 1)");
}

// Rounds to nearest integer, ties toward zero.
Integer round_ties_to_zero(const Rational& x) {
  Integer q;
  Integer r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (2 * abs(r) > x.get_den()) q += sgn(x.get_num());
  return q;
}

Integer int_norm(const IntVector& v, Norm norm) {
  Integer s = 0;
  for (const auto& x : v) {
    if (norm == Norm::one)
      s += abs(x);
    else if (abs(x) > s)
      s = abs(x);
  }
  return s;
}

}  // namespace

void lll_reduce_integral(std::vector<IntVector>& basis, const Rational& delta) {
  check_delta(delta);
  IntegralLll(basis, delta).run();
}

ReducedBasis lll_reduce(const RatMatrix& basis, const Rational& delta) {
  if (!basis.square()) throw PreconditionError("lll_reduce: basis must be square");
  const std::size_t n = basis.cols();
  Integer l = 1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), basis(i, j).get_den_mpz_t());
  std::vector<IntVector> vecs(n, IntVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) vecs[j][i] = basis(i, j).get_num() * (l / basis(i, j).get_den());
  lll_reduce_integral(vecs, delta);
  ReducedBasis rb;
  rb.vectors.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    rb.vectors[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      rb.vectors[j][i] = Rational(vecs[j][i], l);
      rb.vectors[j][i].canonicalize();
    }
  }
  return rb;
}

bool is_lll_reduced(const ReducedBasis& rb, const Rational& delta) {
  const std::size_t n = rb.dim();
  std::vector<RatVector> star(n);
  std::vector<Rational> norm2(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = rb.vectors[i];
    Rational last_mu = 0;
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0;
      for (std::size_t t = 0; t < star[i].size(); ++t) num += rb.vectors[i][t] * star[j][t];
      const Rational mu = num / norm2[j];
      if (abs(mu) > Rational(1, 2)) return false;
      for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= mu * star[j][t];
      last_mu = mu;
    }
    norm2[i] = 0;
    for (const auto& x : star[i]) norm2[i] += x * x;
    if (sgn(norm2[i]) == 0) return false;
    if (i > 0 && norm2[i] < (delta - last_mu * last_mu) * norm2[i - 1]) return false;
  }
  return true;
}

Rational norm_of(std::span<const Rational> v, Norm norm) {
  Rational s = 0;
  for (const auto& x : v) {
    if (norm == Norm::one)
      s += abs(x);
    else if (abs(x) > s)
      s = abs(x);
  }
  return s;
}

std::size_t select_direction_index(const ReducedBasis& rb, Norm norm) {
  if (rb.vectors.empty()) throw PreconditionError("select_direction: empty basis");
  std::size_t best = 0;
  Rational best_norm = norm_of(rb.vectors[0], norm);
  for (std::size_t i = 1; i < rb.dim(); ++i) {
    Rational v = norm_of(rb.vectors[i], norm);
    if (v < best_norm) {
      best = i;
      best_norm = std::move(v);
    }
  }
  return best;
}

RatVector select_direction(const ReducedBasis& rb, Norm norm) {
  return rb.vectors[select_direction_index(rb, norm)];
}

std::optional<RatVector> round_adjust(std::span<const Rational> beta) {
  RatVector out(beta.begin(), beta.end());
  bool nonzero = false;
  for (auto& k : out) {
    k -= round_ties_to_zero(k);
    nonzero = nonzero || sgn(k) != 0;
  }
  if (!nonzero) return std::nullopt;
  return out;
}

ReducedBasis reduced_inverse_basis(const GammaBundle& bundle, const Rational& delta) {
  const IntMatrix adj = bundle.adjugate();
  const std::size_t n = bundle.dim();
  std::vector<IntVector> vecs(n);
  for (std::size_t j = 0; j < n; ++j) vecs[j] = adj.column_vector(j);
  lll_reduce_integral(vecs, delta);
  ReducedBasis rb;
  rb.vectors.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    rb.vectors[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      rb.vectors[j][i] = Rational(vecs[j][i], bundle.det_a);
      rb.vectors[j][i].canonicalize();
    }
  }
  return rb;
}

Direction pick_beta(const GammaBundle& bundle, const PickOptions& options) {
  if (bundle.index() <= 1) throw PreconditionError("pick_beta: cone is already unimodular");
  const std::size_t n = bundle.dim();

  // Work on the integer lattice L(adj A) = det(A) L(A^{-1}); norms compare
  // the same way after scaling.
  const IntMatrix adj = bundle.adjugate();
  std::vector<IntVector> vecs(n);
  for (std::size_t j = 0; j < n; ++j) vecs[j] = adj.column_vector(j);
  lll_reduce_integral(vecs, options.delta);

  std::vector<Integer> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = int_norm(vecs[j], options.norm);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });

  for (std::size_t idx : order) {
    RatVector beta(n);
    for (std::size_t i = 0; i < n; ++i) {
      beta[i] = Rational(vecs[idx][i], bundle.det_a);
      beta[i].canonicalize();
    }
    if (options.adjust) {
      auto adjusted = round_adjust(beta);
      if (!adjusted) continue;
      beta = *std::move(adjusted);
    }
    const RatVector gamma_q = bundle.a * std::span<const Rational>(beta);
    IntVector gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (gamma_q[i].get_den() != 1) throw std::logic_error("pick_beta: gamma is not integral");
      gamma[i] = gamma_q[i].get_num();
    }
    const Integer g = content(gamma);
    if (sgn(g) == 0) continue;
    if (g != 1) {
      for (auto& x : gamma) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      for (auto& k : beta) k /= g;
    }
    if (is_integral(beta)) continue;
    return {std::move(beta), std::move(gamma)};
  }
  throw std::logic_error("pick_beta: every reduced basis vector is integral although ind(A) > 1");
}

}  // namespace conedec
