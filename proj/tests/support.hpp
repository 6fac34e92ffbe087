#pragma once

// Random generators and independent oracles shared by the unit and
// acceptance tests.

#include <random>
#include <vector>

#include "lamring/errors.hpp"
#include "lamring/forms.hpp"

namespace testsupport {

using lamring::BigInt;
using lamring::Rational;
using namespace lamring::forms;

inline Scalar random_scalar(std::mt19937_64& rng, const FieldModel& f, int spread = 4) {
  if (f.kind() == FieldKind::FinitePrime) return f.normalize(Rational(static_cast<long>(rng() % static_cast<unsigned long>(f.q()))));
  std::uniform_int_distribution<int> num(-spread, spread), den(1, 2);
  return f.normalize(Rational(num(rng), den(rng)));
}

inline Scalar random_nonzero(std::mt19937_64& rng, const FieldModel& f) {
  Scalar s;
  do s = random_scalar(rng, f); while (f.is_zero(s));
  return s;
}

inline GramForm random_diagonal_form(std::mt19937_64& rng, const FieldModel& f, std::size_t dim) {
  std::vector<Scalar> d;
  for (std::size_t i = 0; i < dim; ++i) d.push_back(random_nonzero(rng, f));
  return GramForm::diagonal(f, d);
}

inline GramForm random_form(std::mt19937_64& rng, const FieldModel& f, std::size_t dim) {
  while (true) {
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) g(i, j) = g(j, i) = random_scalar(rng, f);
    try {
      return GramForm(f, g);
    } catch (const lamring::DegenerateFormError&) {
    }
  }
}

inline Matrix random_invertible(std::mt19937_64& rng, const FieldModel& f, std::size_t n) {
  while (true) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(rng, f, 2);
    if (!f.is_zero(determinant(f, m))) return m;
  }
}

struct Metabolic {
  GramForm form;
  std::vector<std::vector<Scalar>> lagrangian;
};

// Gram [[0, A], [A^T, B]] in a random basis; the first block is a Lagrangian.
inline Metabolic random_metabolic(std::mt19937_64& rng, const FieldModel& f, std::size_t half) {
  Matrix a = random_invertible(rng, f, half);
  Matrix g(2 * half, 2 * half);
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      g(i, half + j) = a(i, j);
      g(half + j, i) = a(i, j);
    }
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = i; j < half; ++j) g(half + i, half + j) = g(half + j, half + i) = random_scalar(rng, f);
  Matrix p = random_invertible(rng, f, 2 * half);
  Matrix conj = mat_mul(f, mat_mul(f, p.transpose(), g), p);
  // new coordinates of the old basis vectors e_1..e_half are the columns of P^{-1}
  Matrix p_inv = mat_inverse(f, p);
  Metabolic out{GramForm(f, conj), {}};
  for (std::size_t t = 0; t < half; ++t) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < 2 * half; ++i) v.push_back(p_inv(i, t));
    out.lagrangian.push_back(v);
  }
  return out;
}

// Determinant by Laplace expansion along rows, memoized on the used columns.
inline Scalar laplace_det(const FieldModel& f, const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Scalar> memo(std::size_t{1} << n, Scalar(0));
  std::vector<bool> known(std::size_t{1} << n, false);
  auto go = [&](auto&& self, std::size_t row, std::size_t used) -> Scalar {
    if (row == n) return 1;
    if (known[used]) return memo[used];
    Scalar total = 0;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (std::size_t{1} << c)) continue;
      if (!f.is_zero(m(row, c))) total += sign * m(row, c) * self(self, row + 1, used | (std::size_t{1} << c));
      sign = -sign;
    }
    known[used] = true;
    return memo[used] = f.normalize(total);
  };
  return go(go, 0, 0);
}

// Independent class oracle. Over F_q: Legendre symbol by listing squares.
// Over a real closed field: positive eigenvalues by Descartes' rule on the
// characteristic polynomial (exact, since all roots are real).
struct OracleClass {
  long rank;
  bool disc_is_square;  // signed discriminant
  long signature;
};

inline bool is_square_mod(const Scalar& a, long q) {
  const long v = a.get_num().get_si();
  for (long x = 1; x < q; ++x)
    if ((x * x) % q == v) return true;
  return false;
}

inline std::vector<Rational> charpoly(const Matrix& a) {
  // Faddeev-LeVerrier: coefficients c_n..c_0 of det(tI - A), c_n = 1.
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix mk(n, n);
  FieldModel rc = FieldModel::real_closed();
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = mat_mul(rc, a, mk);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    Matrix amk = mat_mul(rc, a, mk);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

inline long sign_changes(const std::vector<Rational>& coeffs) {
  long changes = 0;
  int last = 0;
  for (const auto& v : coeffs) {
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline OracleClass oracle_class(const GramForm& a) {
  const FieldModel& f = a.field();
  const auto n = static_cast<long>(a.dim());
  OracleClass out{n, true, 0};
  Scalar det = laplace_det(f, a.gram());
  Scalar sdisc = ((n * (n - 1) / 2) % 2 == 0) ? det : f.neg(det);
  if (f.kind() == FieldKind::FinitePrime) out.disc_is_square = is_square_mod(sdisc, f.q());
  if (f.kind() == FieldKind::RealClosed) {
    out.disc_is_square = sgn(sdisc) > 0;
    auto c = charpoly(a.gram());
    // roots of p(t): positives = sign changes of p(t); negatives = of p(-t)
    std::vector<Rational> rev(c.rbegin(), c.rend());
    long pos = sign_changes(rev);
    std::vector<Rational> neg_t = c;
    for (std::size_t i = 1; i < neg_t.size(); i += 2) neg_t[i] = -neg_t[i];
    std::vector<Rational> rev_neg(neg_t.rbegin(), neg_t.rend());
    long negs = sign_changes(rev_neg);
    out.signature = pos - negs;
  }
  return out;
}

inline bool matches_oracle(const GWClass& c, const OracleClass& o) {
  if (c.rank() != o.rank) return false;
  const FieldModel& f = c.field();
  if (f.kind() == FieldKind::FinitePrime && (c.disc() == 1) != o.disc_is_square) return false;
  if (f.kind() == FieldKind::RealClosed && (*c.signature() != o.signature || (c.disc() == 1) != o.disc_is_square))
    return false;
  return true;
}

}  // namespace testsupport
