#include "conedec/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace conedec {

namespace {

// coef . m >= threshold, or coef . m == threshold for an equality.
struct Form {
  IntVector coef;
  Integer threshold;
  bool equality = false;
};

struct FormCone {
  int sign = 1;
  std::vector<Form> forms;
};

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntMatrix submatrix(const IntMatrix& g, const std::vector<std::size_t>& rows) {
  IntMatrix s(rows.size(), g.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t j = 0; j < g.cols(); ++j) s(k, j) = g(rows[k], j);
  return s;
}

// First n-subset of rows (lexicographic) whose square submatrix is nonsingular.
std::vector<std::size_t> pivot_rows(const IntMatrix& g) {
  const std::size_t d = g.rows();
  const std::size_t n = g.cols();
  std::vector<std::size_t> pick(n);
  for (std::size_t k = 0; k < n; ++k) pick[k] = k;
  for (;;) {
    if (sgn(determinant(submatrix(g, pick))) != 0) return pick;
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == d - n + k - 1) --k;
    if (k == 0) throw SingularMatrixError("oracle: generators are linearly dependent");
    ++pick[k - 1];
    for (std::size_t t = k; t < n; ++t) pick[t] = pick[t - 1] + 1;
  }
}

// Membership forms of a half-open simplicial cone. With generators G (d x n)
// and a nonsingular n-row block S, the coefficients are x = adj(S) m_S / det S
// and the remaining rows must satisfy det(S) m_r = G_r adj(S) m_S.
std::vector<Form> cone_forms(const HalfOpenCone& c) {
  const IntMatrix& g = c.generators;
  const std::size_t d = g.rows();
  const std::size_t n = g.cols();
  std::vector<Form> forms;
  if (n == 0) {
    for (std::size_t r = 0; r < d; ++r) {
      Form f{IntVector(d), 0, true};
      f.coef[r] = 1;
      forms.push_back(std::move(f));
    }
    return forms;
  }
  std::vector<std::size_t> rows(n);
  for (std::size_t k = 0; k < n; ++k) rows[k] = k;
  if (n < d) rows = pivot_rows(g);
  const IntMatrix s = submatrix(g, rows);
  const Integer det = determinant(s);
  if (sgn(det) == 0) throw SingularMatrixError("oracle: singular cone");
  const IntMatrix adj = adjugate(s);
  const int sd = sgn(det);

  for (std::size_t j = 0; j < n; ++j) {
    Form f{IntVector(d), c.open[j] ? 1 : 0, false};
    for (std::size_t k = 0; k < n; ++k) f.coef[rows[k]] = sd * adj(j, k);
    forms.push_back(std::move(f));
  }
  std::vector<bool> in_s(d, false);
  for (auto r : rows) in_s[r] = true;
  for (std::size_t r = 0; r < d; ++r) {
    if (in_s[r]) continue;
    Form f{IntVector(d), 0, true};
    f.coef[r] = det;
    for (std::size_t k = 0; k < n; ++k) {
      Integer acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += g(r, j) * adj(j, k);
      f.coef[rows[k]] = -acc;
    }
    forms.push_back(std::move(f));
  }
  return forms;
}

FormCone to_form_cone(const SignedHalfOpenCone& c) { return {c.sign, cone_forms(c.cone)}; }

SignedHalfOpenCone flip_toward(const SignedHalfOpenCone& c, std::span<const Integer> l) {
  SignedHalfOpenCone out = c;
  for (std::size_t j = 0; j < out.cone.generators.cols(); ++j) {
    const int s = sgn(dot(l, out.cone.generators.column(j)));
    if (s == 0) throw std::logic_error("oracle: expansion direction is orthogonal to a generator");
    if (s > 0) continue;
    out.cone.generators.negate_column(j);
    out.cone.open[j] = !out.cone.open[j];
    out.sign = -out.sign;
  }
  return out;
}

IntVector normalized_plane(IntVector v) {
  const Integer c = content(v);
  if (sgn(c) == 0) return v;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
  if (first != v.end() && sgn(*first) < 0)
    for (auto& x : v) x = -x;
  return v;
}

struct Box {
  std::vector<long> lo;
  std::vector<long> hi;
};

Box cube(std::size_t d, int radius) { return {std::vector<long>(d, -radius), std::vector<long>(d, radius)}; }

// Scalar helpers so the scan runs on either __int128 or mpz.
using Wide = __int128;

inline bool is_zero(const Wide& x) { return x == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline Wide floor_div(const Wide& a, const Wide& b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline Wide ceil_div(const Wide& a, const Wide& b) { return -floor_div(-a, b); }
inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline bool divides(const Wide& b, const Wide& a) { return a % b == 0; }
inline bool divides(const Integer& b, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0; }
inline long to_long(const Wide& x) { return static_cast<long>(x); }
inline long to_long(const Integer& x) { return x.get_si(); }
inline Wide from_integer(const Integer& x, Wide*) { return static_cast<Wide>(x.get_si()); }
inline Integer from_integer(const Integer& x, Integer*) { return x; }

template <typename T>
struct LineForm {
  std::vector<T> coef;
  T threshold;
  bool equality;
};

template <typename T>
struct LineCone {
  int sign;
  std::vector<LineForm<T>> forms;
};

template <typename T>
std::vector<LineCone<T>> convert(const std::vector<FormCone>& cones) {
  std::vector<LineCone<T>> out;
  out.reserve(cones.size());
  for (const auto& c : cones) {
    LineCone<T> lc{c.sign, {}};
    for (const auto& f : c.forms) {
      LineForm<T> lf{{}, from_integer(f.threshold, static_cast<T*>(nullptr)), f.equality};
      for (const auto& x : f.coef) lf.coef.push_back(from_integer(x, static_cast<T*>(nullptr)));
      lc.forms.push_back(std::move(lf));
    }
    out.push_back(std::move(lc));
  }
  return out;
}

template <typename T>
std::vector<std::vector<T>> convert_planes(const std::vector<IntVector>& planes) {
  std::vector<std::vector<T>> out;
  for (const auto& p : planes) {
    std::vector<T> v;
    for (const auto& x : p) v.push_back(from_integer(x, static_cast<T*>(nullptr)));
    out.push_back(std::move(v));
  }
  return out;
}

// Values of sum sign [m in C] along one coordinate line, as a difference array.
template <typename T>
class LineScanner {
 public:
  LineScanner(const Box& box, std::vector<LineCone<T>> lhs, std::vector<LineCone<T>> rhs,
              std::vector<std::vector<T>> planes)
      : box_(box), lhs_(std::move(lhs)), rhs_(std::move(rhs)), planes_(std::move(planes)), d_(box.lo.size()) {}

  template <typename OnLine>
  void run(OnLine&& on_line) {
    const long lo = box_.lo.back();
    const long len = box_.hi.back() - lo + 1;
    std::vector<long> prefix(box_.lo.begin(), box_.lo.end() - 1);
    std::vector<std::int64_t> ldiff(len + 1), rdiff(len + 1);
    std::vector<std::int64_t> lval(len), rval(len);
    std::vector<char> exempt(len);
    for (;;) {
      std::fill(ldiff.begin(), ldiff.end(), 0);
      std::fill(rdiff.begin(), rdiff.end(), 0);
      std::fill(exempt.begin(), exempt.end(), 0);
      for (const auto& c : lhs_) add_cone(c, prefix, ldiff);
      for (const auto& c : rhs_) add_cone(c, prefix, rdiff);
      for (const auto& p : planes_) mark_plane(p, prefix, exempt);
      std::int64_t la = 0, ra = 0;
      for (long x = 0; x < len; ++x) {
        la += ldiff[x];
        ra += rdiff[x];
        lval[x] = la;
        rval[x] = ra;
      }
      if (!on_line(prefix, lval, rval, exempt)) return;
      if (!advance(prefix)) return;
    }
  }

 private:
  bool advance(std::vector<long>& prefix) const {
    for (std::size_t k = prefix.size(); k-- > 0;) {
      if (prefix[k] < box_.hi[k]) {
        ++prefix[k];
        return true;
      }
      prefix[k] = box_.lo[k];
    }
    return false;
  }

  T base_of(const std::vector<T>& coef, const std::vector<long>& prefix) const {
    T base = 0;
    for (std::size_t k = 0; k + 1 < d_; ++k)
      if (!is_zero(coef[k]) && prefix[k] != 0) base += coef[k] * T(prefix[k]);
    return base;
  }

  void add_cone(const LineCone<T>& c, const std::vector<long>& prefix, std::vector<std::int64_t>& diff) const {
    T lo = T(box_.lo.back());
    T hi = T(box_.hi.back());
    for (const auto& f : c.forms) {
      const T base = base_of(f.coef, prefix);
      const T& s = f.coef.back();
      // base + s x (>= or ==) threshold
      const T rest = f.threshold - base;
      if (f.equality) {
        if (is_zero(s)) {
          if (!is_zero(rest)) return;
          continue;
        }
        if (!divides(s, rest)) return;
        const T x = rest / s;
        if (x < lo || x > hi) return;
        lo = x;
        hi = x;
      } else if (is_zero(s)) {
        if (rest > 0) return;
      } else if (s > 0) {
        const T x = ceil_div(rest, s);
        if (x > lo) lo = x;
      } else {
        const T x = floor_div(rest, s);
        if (x < hi) hi = x;
      }
      if (lo > hi) return;
    }
    const long origin = box_.lo.back();
    diff[to_long(lo) - origin] += c.sign;
    diff[to_long(hi) - origin + 1] -= c.sign;
  }

  void mark_plane(const std::vector<T>& p, const std::vector<long>& prefix, std::vector<char>& exempt) const {
    const T base = base_of(p, prefix);
    const T& s = p.back();
    if (is_zero(s)) {
      if (is_zero(base)) std::fill(exempt.begin(), exempt.end(), 1);
      return;
    }
    const T rest = -base;
    if (!divides(s, rest)) return;
    const T x = rest / s;
    if (x < T(box_.lo.back()) || x > T(box_.hi.back())) return;
    exempt[to_long(x) - box_.lo.back()] = 1;
  }

  Box box_;
  std::vector<LineCone<T>> lhs_;
  std::vector<LineCone<T>> rhs_;
  std::vector<std::vector<T>> planes_;
  std::size_t d_;
};

bool fits_fast(const std::vector<FormCone>& a, const std::vector<FormCone>& b, const std::vector<IntVector>& planes,
               const Box& box) {
  constexpr long kCoordLimit = 1L << 40;
  for (std::size_t k = 0; k < box.lo.size(); ++k)
    if (box.lo[k] < -kCoordLimit || box.hi[k] > kCoordLimit) return false;
  auto ok = [](const Integer& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; };
  for (const auto* side : {&a, &b})
    for (const auto& c : *side)
      for (const auto& f : c.forms) {
        if (!ok(f.threshold)) return false;
        if (!std::all_of(f.coef.begin(), f.coef.end(), ok)) return false;
      }
  for (const auto& p : planes)
    if (!std::all_of(p.begin(), p.end(), ok)) return false;
  return true;
}

template <typename OnLine>
void scan(const Box& box, const std::vector<FormCone>& lhs, const std::vector<FormCone>& rhs,
          const std::vector<IntVector>& planes, OnLine&& on_line) {
  if (box.lo.empty()) throw PreconditionError("oracle: dimension must be positive");
  if (fits_fast(lhs, rhs, planes, box)) {
    LineScanner<Wide>(box, convert<Wide>(lhs), convert<Wide>(rhs), convert_planes<Wide>(planes)).run(on_line);
  } else {
    LineScanner<Integer>(box, convert<Integer>(lhs), convert<Integer>(rhs), convert_planes<Integer>(planes))
        .run(on_line);
  }
}

VerifyReport compare(const Box& box, int radius, const std::vector<FormCone>& lhs, const std::vector<FormCone>& rhs,
                     const std::vector<IntVector>& planes) {
  VerifyReport report;
  report.box_radius = radius;
  const long lo = box.lo.back();
  scan(box, lhs, rhs, planes,
       [&](const std::vector<long>& prefix, const std::vector<std::int64_t>& l, const std::vector<std::int64_t>& r,
           const std::vector<char>& exempt) {
         for (std::size_t x = 0; x < l.size(); ++x) {
           if (exempt[x]) {
             ++report.points_exempted;
             continue;
           }
           ++report.points_checked;
           if (l[x] == r[x] || report.first_failure) continue;
           report.passed = false;
           VerifyFailure f;
           for (long p : prefix) f.point.emplace_back(p);
           f.point.emplace_back(lo + static_cast<long>(x));
           f.expected = r[x];
           f.got = l[x];
           report.first_failure = std::move(f);
         }
         return true;
       });
  return report;
}

std::vector<IntMatrix> generator_sets(std::span<const SignedHalfOpenCone> a, std::span<const SignedHalfOpenCone> b) {
  std::vector<IntMatrix> out;
  for (const auto& c : a) out.push_back(c.cone.generators);
  for (const auto& c : b) out.push_back(c.cone.generators);
  return out;
}

void check_dims(std::span<const SignedHalfOpenCone> cones, std::size_t d) {
  for (const auto& c : cones) {
    if (c.cone.generators.rows() != d) throw PreconditionError("oracle: cones of different ambient dimension");
    if (c.cone.open.size() != c.cone.generators.cols()) throw PreconditionError("oracle: open flags mismatch");
  }
}

}  // namespace

int default_box_radius(std::size_t d) {
  if (d <= 4) return 6;
  if (d == 5) return 3;
  return 2;
}

IntVector aligned_direction(const IntMatrix& aligned, std::span<const IntMatrix> others) {
  const std::size_t d = aligned.rows() != 0 ? aligned.rows() : (others.empty() ? 0 : others.front().rows());
  IntVector base(d, 0);
  if (aligned.square() && aligned.cols() > 0) {
    const Integer det = determinant(aligned);
    if (sgn(det) != 0) {
      // sum of the rows of adj(A) takes the value det(A) on every column of A
      const IntMatrix adj = adjugate(aligned);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) base[k] += sgn(det) * adj(r, k);
    }
  }
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < aligned.cols(); ++j) gens.push_back(aligned.column_vector(j));
  for (const auto& m : others)
    for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(m.column_vector(j));

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    IntVector p(d);
    for (auto& x : p) x = static_cast<long>(rng() % 2001) - 1000;
    Integer bound = 0;
    for (const auto& g : gens) bound = std::max(bound, Integer(abs(dot(p, g))));
    IntVector l(d);
    for (std::size_t k = 0; k < d; ++k) l[k] = (bound + 1) * base[k] + p[k];
    bool generic = std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return sgn(dot(l, g)) != 0; });
    for (std::size_t j = 0; generic && j < aligned.cols(); ++j) generic = sgn(dot(l, aligned.column(j))) > 0;
    if (generic) return l;
  }
  throw std::logic_error("aligned_direction: no generic direction found");
}

VerifyReport series_check(std::span<const SignedHalfOpenCone> lhs, std::span<const SignedHalfOpenCone> rhs,
                          const CheckOptions& options) {
  if (lhs.empty() && rhs.empty()) throw PreconditionError("series_check: nothing to compare");
  const std::size_t d = (lhs.empty() ? rhs : lhs).front().cone.generators.rows();
  check_dims(lhs, d);
  check_dims(rhs, d);

  std::vector<FormCone> lf, rf;
  std::vector<IntVector> planes;
  if (options.expansion == Expansion::directional) {
    IntVector l;
    if (options.direction) {
      l = *options.direction;
    } else {
      const auto gens = generator_sets(lhs, rhs);
      l = aligned_direction(IntMatrix(d, 0), gens);
    }
    if (l.size() != d) throw PreconditionError("series_check: direction has the wrong length");
    for (const auto& c : lhs) lf.push_back(to_form_cone(flip_toward(c, l)));
    for (const auto& c : rhs) rf.push_back(to_form_cone(flip_toward(c, l)));
  } else {
    for (const auto& c : lhs) lf.push_back(to_form_cone(c));
    for (const auto& c : rhs) rf.push_back(to_form_cone(c));
    if (options.skip_lower_dim) {
      std::set<IntVector> seen;
      for (const auto* side : {&lf, &rf})
        for (const auto& c : *side)
          for (const auto& f : c.forms) seen.insert(normalized_plane(f.coef));
      planes.assign(seen.begin(), seen.end());
    }
  }
  return compare(cube(d, options.radius), options.radius, lf, rf, planes);
}

VerifyReport signed_indicator_check(const IntMatrix& target, std::span<const SignedCone> parts,
                                    const CheckOptions& options) {
  if (parts.empty()) throw PreconditionError("signed_indicator_check: no parts");
  std::vector<SignedHalfOpenCone> lhs;
  lhs.reserve(parts.size());
  for (const auto& p : parts) lhs.push_back({p.sign, HalfOpenCone::closed(p.generators)});
  const std::vector<SignedHalfOpenCone> rhs{{1, HalfOpenCone::closed(target)}};
  CheckOptions opt = options;
  if (opt.expansion == Expansion::directional && !opt.direction) {
    std::vector<IntMatrix> others;
    others.reserve(parts.size());
    for (const auto& p : parts) others.push_back(p.generators);
    opt.direction = aligned_direction(target, others);
  }
  return series_check(lhs, rhs, opt);
}

VerifyReport signed_indicator_check(const IntMatrix& target, std::span<const SignedCone> parts, int box_radius,
                                    bool skip_lower_dim) {
  CheckOptions opt;
  opt.radius = box_radius;
  opt.skip_lower_dim = skip_lower_dim;
  opt.expansion = skip_lower_dim ? Expansion::plain : Expansion::directional;
  return signed_indicator_check(target, parts, opt);
}

VerifyReport partition_check(const IntMatrix& target, std::span<const HalfOpenCone> parts, int box_radius) {
  if (parts.empty()) throw PreconditionError("partition_check: no parts");
  std::vector<SignedHalfOpenCone> lhs;
  for (const auto& p : parts) lhs.push_back({1, p});
  const std::vector<SignedHalfOpenCone> rhs{{1, HalfOpenCone::closed(target)}};
  CheckOptions opt;
  opt.radius = box_radius;
  opt.expansion = Expansion::plain;
  return series_check(lhs, rhs, opt);
}

Lemma33Report lemma33_check(const IntMatrix& a, std::size_t i, const std::vector<bool>& theta, int box_radius) {
  const std::size_t n = a.cols();
  if (i >= n) throw PreconditionError("lemma33_check: column out of range");
  if (theta.size() != n) throw PreconditionError("lemma33_check: theta has the wrong length");
  if (sgn(determinant(a)) == 0) throw SingularMatrixError("lemma33_check: singular matrix");

  IntMatrix neg_i = a;
  neg_i.negate_column(i);
  IntMatrix neg_theta = a;
  std::size_t theta_size = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (theta[j]) {
      neg_theta.negate_column(j);
      ++theta_size;
    }
  IntMatrix face(a.rows(), n - 1);
  for (std::size_t j = 0, k = 0; j < n; ++j)
    if (j != i) face.set_column(k++, a.column(j));

  CheckOptions opt;
  opt.radius = box_radius;
  const std::vector<IntMatrix> others{neg_i, neg_theta};
  opt.direction = aligned_direction(a, others);

  Lemma33Report out;
  {
    HalfOpenCone open_i = HalfOpenCone::closed(a);
    open_i.open[i] = true;
    const std::vector<SignedHalfOpenCone> lhs{{1, open_i}};
    const std::vector<SignedHalfOpenCone> rhs{{-1, HalfOpenCone::closed(neg_i)}};
    out.single_open = series_check(lhs, rhs, opt);
  }
  {
    const std::vector<SignedHalfOpenCone> lhs{{1, HalfOpenCone{a, theta}}};
    const std::vector<SignedHalfOpenCone> rhs{{theta_size % 2 == 0 ? 1 : -1, HalfOpenCone::closed(neg_theta)}};
    out.open_set = series_check(lhs, rhs, opt);
  }
  {
    const std::vector<SignedHalfOpenCone> lhs{{1, HalfOpenCone::closed(a)}, {1, HalfOpenCone::closed(neg_i)}};
    const std::vector<SignedHalfOpenCone> rhs{{1, HalfOpenCone::closed(face)}};
    out.line_and_face = series_check(lhs, rhs, opt);
  }
  return out;
}

std::uint64_t brute_force_cone_box_count(const HalfOpenCone& c, int box_radius) {
  const std::vector<FormCone> cones{{1, cone_forms(c)}};
  std::uint64_t count = 0;
  scan(cube(c.generators.rows(), box_radius), cones, {}, {},
       [&](const std::vector<long>&, const std::vector<std::int64_t>& l, const std::vector<std::int64_t>&,
           const std::vector<char>&) {
         for (auto v : l) count += static_cast<std::uint64_t>(v);
         return true;
       });
  return count;
}

std::uint64_t brute_force_cone_box_count(const IntMatrix& a, int box_radius) {
  return brute_force_cone_box_count(HalfOpenCone::closed(a), box_radius);
}

ParallelepipedSet enumerate_parallelepiped(const IntMatrix& a, const Integer& max_det) {
  if (!a.square() || a.cols() == 0) throw PreconditionError("enumerate_parallelepiped: matrix must be square");
  const std::size_t d = a.rows();
  const Integer det = determinant(a);
  if (sgn(det) == 0) throw SingularMatrixError("enumerate_parallelepiped: singular matrix");
  if (abs(det) > max_det) throw OracleBudgetError("enumerate_parallelepiped: |det| exceeds the budget");

  // Bounding box of the vertices sum_{j in S} alpha_j.
  Box box{std::vector<long>(d), std::vector<long>(d)};
  Integer lines = 1;
  for (std::size_t r = 0; r < d; ++r) {
    Integer lo = 0, hi = 0;
    for (std::size_t j = 0; j < d; ++j) (sgn(a(r, j)) < 0 ? lo : hi) += a(r, j);
    if (!mpz_fits_slong_p(lo.get_mpz_t()) || !mpz_fits_slong_p(hi.get_mpz_t()))
      throw OracleBudgetError("enumerate_parallelepiped: bounding box too large");
    box.lo[r] = lo.get_si();
    box.hi[r] = hi.get_si();
    if (r + 1 < d) lines *= hi - lo + 1;
  }
  if (lines > 100000000) throw OracleBudgetError("enumerate_parallelepiped: bounding box too large");

  // 0 <= sgn(det) adj_j . m <= |det| - 1 for every j.
  const IntMatrix adj = adjugate(a);
  FormCone cone;
  for (std::size_t j = 0; j < d; ++j) {
    Form lower{IntVector(d), 0, false};
    Form upper{IntVector(d), 1 - abs(det), false};
    for (std::size_t k = 0; k < d; ++k) {
      lower.coef[k] = sgn(det) * adj(j, k);
      upper.coef[k] = -lower.coef[k];
    }
    cone.forms.push_back(std::move(lower));
    cone.forms.push_back(std::move(upper));
  }
  ParallelepipedSet out;
  const long lo = box.lo.back();
  scan(box, {cone}, {}, {},
       [&](const std::vector<long>& prefix, const std::vector<std::int64_t>& l, const std::vector<std::int64_t>&,
           const std::vector<char>&) {
         for (std::size_t x = 0; x < l.size(); ++x) {
           if (l[x] == 0) continue;
           IntVector p;
           for (long v : prefix) p.emplace_back(v);
           p.emplace_back(lo + static_cast<long>(x));
           out.points.push_back(std::move(p));
         }
         return true;
       });
  return out;
}

}  // namespace conedec
