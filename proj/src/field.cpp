#include "lamring/field.hpp"

#include <utility>

#include "lamring/errors.hpp"

namespace lamring::forms {

namespace {

bool is_odd_prime(long q) {
  if (q < 3 || q % 2 == 0) return false;
  for (long d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

BigInt mod_q(const BigInt& v, long q) {
  BigInt r = v % q;
  if (r < 0) r += q;
  return r;
}

BigInt powmod(const BigInt& base, long e, long q) {
  BigInt r;
  BigInt m = q;
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  return r;
}

bool is_residue(const BigInt& a, long q) { return powmod(a, (q - 1) / 2, q) == 1; }

long least_nonresidue(long q) {
  for (long u = 2; u < q; ++u)
    if (!is_residue(u, q)) return u;
  throw InternalError("no quadratic non-residue found");
}

}  // namespace

FieldModel FieldModel::quadratically_closed() { return {FieldKind::QuadraticallyClosed, 0}; }
FieldModel FieldModel::real_closed() { return {FieldKind::RealClosed, 0}; }

FieldModel FieldModel::finite_prime(long q) {
  if (!is_odd_prime(q)) throw DomainError("field size must be an odd prime, got " + std::to_string(q));
  return {FieldKind::FinitePrime, q};
}

FieldModel FieldModel::parse(const std::string& tag) {
  if (tag == "qc") return quadratically_closed();
  if (tag == "rc") return real_closed();
  if (tag.rfind("fq:", 0) == 0) {
    const std::string digits = tag.substr(3);
    if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("unknown field tag '" + tag + "'");
    const long q = std::stol(digits);
    if (!is_odd_prime(q)) throw ParseError("field tag '" + tag + "': size must be an odd prime");
    return finite_prime(q);
  }
  throw ParseError("unknown field tag '" + tag + "' (expected qc, rc or fq:<prime>)");
}

std::string FieldModel::tag() const {
  switch (kind_) {
    case FieldKind::QuadraticallyClosed:
      return "qc";
    case FieldKind::RealClosed:
      return "rc";
    case FieldKind::FinitePrime:
      return "fq:" + std::to_string(q_);
  }
  return "?";
}

Scalar FieldModel::normalize(const Rational& v) const {
  if (kind_ != FieldKind::FinitePrime) {
    Scalar c = v;
    c.canonicalize();
    return c;
  }
  const BigInt den = mod_q(v.get_den(), q_);
  if (den == 0) throw DomainError("denominator is divisible by the field characteristic");
  BigInt den_inv;
  BigInt m = q_;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return Scalar(mod_q(mod_q(v.get_num(), q_) * den_inv, q_));
}

Scalar FieldModel::add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
Scalar FieldModel::sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
Scalar FieldModel::mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
Scalar FieldModel::neg(const Scalar& a) const { return normalize(-a); }

Scalar FieldModel::inv(const Scalar& a) const {
  if (is_zero(a)) throw DomainError("division by zero");
  return normalize(1 / a);
}

Scalar FieldModel::pow(const Scalar& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  Scalar r = from_int(1);
  for (long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Scalar FieldModel::square_class(const Scalar& a) const {
  if (is_zero(a)) throw DomainError("zero has no square class");
  switch (kind_) {
    case FieldKind::QuadraticallyClosed:
      return 1;
    case FieldKind::RealClosed:
      return sgn(a) > 0 ? 1 : -1;
    case FieldKind::FinitePrime:
      return is_residue(normalize(a).get_num(), q_) ? 1 : least_nonresidue(q_);
  }
  return 1;
}

std::vector<Scalar> FieldModel::square_class_reps() const {
  switch (kind_) {
    case FieldKind::QuadraticallyClosed:
      return {Scalar(1)};
    case FieldKind::RealClosed:
      return {Scalar(1), Scalar(-1)};
    case FieldKind::FinitePrime:
      return {Scalar(1), Scalar(least_nonresidue(q_))};
  }
  return {};
}

int FieldModel::sign(const Scalar& a) const { return sgn(a); }

// ---------------------------------------------------------------- matrices

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix mat_mul(const FieldModel& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimensions do not match");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s = 0;
      for (std::size_t t = 0; t < a.cols(); ++t)
        if (sgn(a(i, t)) != 0 && sgn(b(t, j)) != 0) s += a(i, t) * b(t, j);
      c(i, j) = f.normalize(s);
    }
  return c;
}

Matrix mat_normalize(const FieldModel& f, const Matrix& a) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f.normalize(a(i, j));
  return r;
}

namespace {

// In-place row echelon form; returns pivot columns and the determinant
// factor from row swaps and pivots (product of pivots, sign-adjusted).
struct Echelon {
  std::vector<std::size_t> pivots;
  Scalar det_factor;
};

Echelon row_reduce(const FieldModel& f, Matrix& m, bool reduced) {
  Echelon out{{}, Scalar(1)};
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && f.is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      out.det_factor = f.neg(out.det_factor);
    }
    const Scalar piv = m(row, col);
    out.det_factor = f.mul(out.det_factor, piv);
    const Scalar piv_inv = f.inv(piv);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), piv_inv);
    for (std::size_t i = reduced ? 0 : row + 1; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, col))) continue;
      const Scalar factor = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

}  // namespace

Scalar determinant(const FieldModel& f, const Matrix& a) {
  if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
  Matrix m = mat_normalize(f, a);
  auto e = row_reduce(f, m, false);
  return e.pivots.size() == a.rows() ? e.det_factor : Scalar(0);
}

std::size_t mat_rank(const FieldModel& f, const Matrix& a) {
  Matrix m = mat_normalize(f, a);
  return row_reduce(f, m, false).pivots.size();
}

Matrix mat_inverse(const FieldModel& f, const Matrix& a) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = f.normalize(a(i, j));
    aug(i, n + i) = 1;
  }
  auto e = row_reduce(f, aug, true);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n)) throw DomainError("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Matrix nullspace(const FieldModel& f, const Matrix& a) {
  Matrix m = mat_normalize(f, a);
  auto e = row_reduce(f, m, true);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix basis(a.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    basis(free_cols[t], t) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], t) = f.neg(m(r, free_cols[t]));
  }
  return basis;
}

}  // namespace lamring::forms
