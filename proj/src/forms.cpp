#include "lamring/forms.hpp"

#include <numeric>
#include <sstream>

#include "lamring/errors.hpp"

namespace lamring::forms {

namespace {

// (-1)^{n(n-1)/2}, also for negative n.
int disc_sign(const BigInt& n) {
  BigInt r = n % 4;
  if (r < 0) r += 4;
  return (r == 0 || r == 1) ? 1 : -1;
}

void require_same_field(const GramForm& a, const GramForm& b) {
  if (a.field() != b.field()) throw RingMismatchError("forms live over different fields");
}

bool is_odd(const BigInt& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

}  // namespace

// ---------------------------------------------------------------- GramForm

GramForm::GramForm(FieldModel field, const Matrix& gram) : field_(field), gram_(mat_normalize(field, gram)) {
  if (!gram_.is_square()) throw DegenerateFormError("Gram matrix is not square");
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (gram_(i, j) != gram_(j, i)) throw DegenerateFormError("Gram matrix is not symmetric");
  if (dim() > 0 && field_.is_zero(determinant(field_, gram_)))
    throw DegenerateFormError("Gram matrix is singular (form is degenerate)");
}

GramForm GramForm::diagonal(const FieldModel& field, const std::vector<Scalar>& entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return GramForm(field, m);
}

// ---------------------------------------------------------------- GWClass

GWClass::GWClass(FieldModel field, BigInt rank, Scalar disc, BigInt signature)
    : field_(field), rank_(std::move(rank)), disc_(field.square_class(disc)), signature_(std::move(signature)) {
  if (field_.kind() != FieldKind::RealClosed) signature_ = 0;
}

GWClass GWClass::zero(const FieldModel& field) { return GWClass(field, 0, 1, 0); }

GWClass GWClass::line(const FieldModel& field, const Scalar& a) {
  const Scalar n = field.normalize(a);
  return GWClass(field, 1, n, field.kind() == FieldKind::RealClosed ? field.sign(n) : 0);
}

std::optional<BigInt> GWClass::signature() const {
  if (field_.kind() != FieldKind::RealClosed) return std::nullopt;
  return signature_;
}

Scalar GWClass::det_class() const { return field_.square_class(field_.mul(disc_, field_.from_int(disc_sign(rank_)))); }

void GWClass::check_field(const GWClass& o) const {
  if (field_ != o.field_) throw RingMismatchError("GW classes over different fields");
}

// Sums and products go through the plain determinant, which is
// multiplicative under orthogonal sum; the sign of the discriminant
// is reapplied for the new rank.
GWClass GWClass::operator+(const GWClass& o) const {
  check_field(o);
  const BigInt rank = rank_ + o.rank_;
  const Scalar det = field_.mul(det_class(), o.det_class());
  return GWClass(field_, rank, field_.mul(det, field_.from_int(disc_sign(rank))), signature_ + o.signature_);
}

GWClass GWClass::operator-() const {
  const BigInt rank = -rank_;
  return GWClass(field_, rank, field_.mul(det_class(), field_.from_int(disc_sign(rank))), -signature_);
}

GWClass GWClass::operator-(const GWClass& o) const { return *this + (-o); }

GWClass GWClass::operator*(const GWClass& o) const {
  check_field(o);
  const BigInt rank = rank_ * o.rank_;
  Scalar det = field_.from_int(1);
  if (is_odd(o.rank_)) det = field_.mul(det, det_class());
  if (is_odd(rank_)) det = field_.mul(det, o.det_class());
  return GWClass(field_, rank, field_.mul(det, field_.from_int(disc_sign(rank))), signature_ * o.signature_);
}

GWClass GWClass::scaled(const BigInt& n) const {
  const BigInt rank = rank_ * n;
  const Scalar det = is_odd(n) ? det_class() : field_.from_int(1);
  return GWClass(field_, rank, field_.mul(det, field_.from_int(disc_sign(rank))), signature_ * n);
}

bool GWClass::operator==(const GWClass& o) const {
  if (field_ != o.field_ || rank_ != o.rank_) return false;
  switch (field_.kind()) {
    case FieldKind::QuadraticallyClosed:
      return true;
    case FieldKind::RealClosed:
      return signature_ == o.signature_;
    case FieldKind::FinitePrime:
      return disc_ == o.disc_;
  }
  return false;
}

std::string GWClass::to_string() const {
  std::ostringstream os;
  os << "{field=" << field_.tag() << ", rank=" << rank_.get_str() << ", disc=" << disc_.get_str();
  if (field_.kind() == FieldKind::RealClosed) os << ", signature=" << signature_.get_str();
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------- constructions

GramForm perp_sum(const GramForm& a, const GramForm& b) {
  require_same_field(a, b);
  const std::size_t n = a.dim(), m = b.dim();
  Matrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return GramForm(a.field(), g);
}

GramForm tensor(const GramForm& a, const GramForm& b) {
  require_same_field(a, b);
  const std::size_t n = a.dim(), m = b.dim();
  Matrix g(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) g(i * m + k, j * m + l) = a.gram()(i, j) * b.gram()(k, l);
  return GramForm(a.field(), g);
}

GramForm negate(const GramForm& a) {
  Matrix g = a.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
  return GramForm(a.field(), g);
}

GramForm exterior_power(const GramForm& a, int k) {
  const auto n = static_cast<int>(a.dim());
  if (k < 0 || k > n) throw DomainError("exterior power degree must satisfy 0 <= k <= dim");
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < a.dim(); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);

  const auto ks = static_cast<std::size_t>(k);
  Matrix g(subsets.size(), subsets.size());
  Matrix minor(ks, ks);
  for (std::size_t I = 0; I < subsets.size(); ++I) {
    for (std::size_t J = I; J < subsets.size(); ++J) {
      for (std::size_t r = 0; r < ks; ++r)
        for (std::size_t c = 0; c < ks; ++c) minor(r, c) = a.gram()(subsets[I][r], subsets[J][c]);
      g(I, J) = g(J, I) = ks == 0 ? Scalar(1) : determinant(a.field(), minor);
    }
  }
  return GramForm(a.field(), g);
}

GramForm hyperbolic(const FieldModel& field, int n) {
  if (n < 1) throw DomainError("hyperbolic rank must be >= 1");
  const auto m = static_cast<std::size_t>(2 * n);
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; i += 2) g(i, i + 1) = g(i + 1, i) = 1;
  return GramForm(field, g);
}

// ---------------------------------------------------------------- invariants

Diagonalization diagonalize_with_basis(const GramForm& a) {
  const FieldModel& f = a.field();
  const std::size_t n = a.dim();
  Matrix g = a.gram();
  Matrix basis = Matrix::identity(n);

  // Simultaneous row/column operation: e_i <- e_i + s e_j.
  auto add_multiple = [&](std::size_t i, std::size_t j, const Scalar& s) {
    for (std::size_t c = 0; c < n; ++c) g(i, c) = f.add(g(i, c), f.mul(s, g(j, c)));
    for (std::size_t r = 0; r < n; ++r) g(r, i) = f.add(g(r, i), f.mul(s, g(r, j)));
    for (std::size_t r = 0; r < n; ++r) basis(r, i) = f.add(basis(r, i), f.mul(s, basis(r, j)));
  };
  auto swap_vectors = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(g(i, c), g(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(g(r, i), g(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(basis(r, i), basis(r, j));
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (f.is_zero(g(j, j))) {
      std::size_t l = j + 1;
      while (l < n && f.is_zero(g(l, l))) ++l;
      if (l < n) {
        swap_vectors(j, l);
      } else {
        l = j + 1;
        while (l < n && f.is_zero(g(j, l))) ++l;
        if (l == n) throw DegenerateFormError("Gram matrix is singular (form is degenerate)");
        // new diagonal entry is 2 g(j,l), nonzero since char != 2
        add_multiple(j, l, 1);
      }
    }
    const Scalar piv_inv = f.inv(g(j, j));
    for (std::size_t i = j + 1; i < n; ++i)
      if (!f.is_zero(g(i, j))) add_multiple(i, j, f.neg(f.mul(g(i, j), piv_inv)));
  }
  Diagonalization out;
  for (std::size_t i = 0; i < n; ++i) out.entries.push_back(g(i, i));
  out.basis = std::move(basis);
  return out;
}

std::vector<Scalar> diagonalize(const GramForm& a) { return diagonalize_with_basis(a).entries; }

GWClass gw_class(const GramForm& a) {
  const FieldModel& f = a.field();
  GWClass total = GWClass::zero(f);
  for (const auto& d : diagonalize(a)) total = total + GWClass::line(f, d);
  return total;
}

// ---------------------------------------------------------------- sub-Lagrangians

std::pair<GramForm, int> sublagrangian_reduce(const GramForm& a, const std::vector<std::vector<Scalar>>& n_basis) {
  const FieldModel& f = a.field();
  const std::size_t n = a.dim(), m = n_basis.size();
  Matrix b(n, m);
  for (std::size_t t = 0; t < m; ++t) {
    if (n_basis[t].size() != n) throw DomainError("sub-Lagrangian vector has wrong length");
    for (std::size_t i = 0; i < n; ++i) b(i, t) = f.normalize(n_basis[t][i]);
  }
  if (mat_rank(f, b) != m) throw DomainError("sub-Lagrangian basis vectors are linearly dependent");
  const Matrix bt_g = mat_mul(f, b.transpose(), a.gram());
  const Matrix restricted = mat_mul(f, bt_g, b);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!f.is_zero(restricted(i, j))) throw NotSublagrangianError();

  // N^perp = ker(B^T G); complete the basis of N to one of N^perp.
  const Matrix perp = nullspace(f, bt_g);
  std::vector<std::size_t> chosen;
  Matrix span = b;
  for (std::size_t c = 0; c < perp.cols(); ++c) {
    Matrix trial(n, span.cols() + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < span.cols(); ++t) trial(i, t) = span(i, t);
      trial(i, span.cols()) = perp(i, c);
    }
    if (mat_rank(f, trial) == trial.cols()) {
      span = trial;
      chosen.push_back(c);
    }
  }
  Matrix w(n, chosen.size());
  for (std::size_t t = 0; t < chosen.size(); ++t)
    for (std::size_t i = 0; i < n; ++i) w(i, t) = perp(i, chosen[t]);
  const Matrix reduced = mat_mul(f, mat_mul(f, w.transpose(), a.gram()), w);
  return {GramForm(f, reduced), static_cast<int>(m)};
}

// ---------------------------------------------------------------- hyperbolic lemma

// With G the Gram matrix of a, the map C = diag(I, G) * [[I, I], [1/2 I, -1/2 I]]
// carries a + (-a) onto the pairing of M with its dual, whose Gram matrix
// in block coordinates is [[0, I], [I, 0]]. The permutation P reorders the
// block coordinates into the interleaved hyperbolic basis.
HyperbolicWitness hyperbolic_lemma_witness(const GramForm& a) {
  const FieldModel& f = a.field();
  const std::size_t n = a.dim();
  if (n == 0) throw DomainError("hyperbolic lemma witness needs a form of positive dimension");
  const Matrix& g = a.gram();
  const Matrix g_inv = mat_inverse(f, g);
  const Scalar half = f.inv(f.from_int(2));

  Matrix p_mat(2 * n, 2 * n), p_inv(2 * n, 2 * n), q_mat(2 * n, 2 * n), q_inv(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p_mat(i, i) = 1;
    p_mat(i, n + i) = 1;
    p_mat(n + i, i) = half;
    p_mat(n + i, n + i) = f.neg(half);
    p_inv(i, i) = half;
    p_inv(i, n + i) = 1;
    p_inv(n + i, i) = half;
    p_inv(n + i, n + i) = f.from_int(-1);
    q_mat(i, i) = 1;
    q_inv(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) {
      q_mat(n + i, n + j) = g(i, j);
      q_inv(n + i, n + j) = g_inv(i, j);
    }
  }
  Matrix perm(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    perm(i, 2 * i) = 1;
    perm(n + i, 2 * i + 1) = 1;
  }

  HyperbolicWitness w;
  w.basis = mat_mul(f, mat_mul(f, p_inv, q_inv), perm);
  w.isometry = mat_mul(f, perm.transpose(), mat_mul(f, q_mat, p_mat));

  const GramForm doubled = perp_sum(a, negate(a));
  const GramForm hyp = hyperbolic(f, static_cast<int>(n));
  if (mat_mul(f, mat_mul(f, w.basis.transpose(), doubled.gram()), w.basis) != hyp.gram())
    throw InternalError("hyperbolic lemma witness: change of basis check failed");
  if (mat_mul(f, mat_mul(f, w.isometry.transpose(), hyp.gram()), w.isometry) != doubled.gram())
    throw InternalError("hyperbolic lemma witness: isometry check failed");
  return w;
}

}  // namespace lamring::forms
