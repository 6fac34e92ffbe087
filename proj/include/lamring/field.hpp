#pragma once

// Model fields of characteristic not two, their scalars and square classes,
// and dense matrices over them.

#include <string>
#include <vector>

#include "lamring/bigint.hpp"

namespace lamring::forms {

enum class FieldKind { QuadraticallyClosed, RealClosed, FinitePrime };

// Scalars are rationals; over F_q they are kept reduced to an integer in [0, q).
using Scalar = Rational;

class FieldModel {
 public:
  static FieldModel quadratically_closed();
  static FieldModel real_closed();
  static FieldModel finite_prime(long q);

  /// "qc", "rc" or "fq:<q>".
  static FieldModel parse(const std::string& tag);
  std::string tag() const;

  FieldKind kind() const { return kind_; }
  long q() const { return q_; }

  Scalar normalize(const Rational& v) const;
  Scalar from_int(long v) const { return normalize(Rational(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar pow(const Scalar& a, long e) const;
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

  /// Canonical representative of the square class of a nonzero scalar:
  /// 1 or the least non-residue over F_q, 1 or -1 over a real closed
  /// field, and 1 over a quadratically closed one.
  Scalar square_class(const Scalar& a) const;

  /// All canonical square-class representatives, 1 first.
  std::vector<Scalar> square_class_reps() const;

  /// Sign of a nonzero scalar; only meaningful for RealClosed.
  int sign(const Scalar& a) const;

  bool operator==(const FieldModel& o) const { return kind_ == o.kind_ && q_ == o.q_; }
  bool operator!=(const FieldModel& o) const { return !(*this == o); }

 private:
  FieldModel(FieldKind kind, long q) : kind_(kind), q_(q) {}

  FieldKind kind_;
  long q_;
};

/// Row-major dense matrix of scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  bool is_square() const { return rows_ == cols_; }
  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix mat_mul(const FieldModel& f, const Matrix& a, const Matrix& b);
Matrix mat_normalize(const FieldModel& f, const Matrix& a);
Scalar determinant(const FieldModel& f, const Matrix& a);
std::size_t mat_rank(const FieldModel& f, const Matrix& a);
/// Throws DomainError when singular.
Matrix mat_inverse(const FieldModel& f, const Matrix& a);
/// Columns form a basis of {v : a v = 0}.
Matrix nullspace(const FieldModel& f, const Matrix& a);

}  // namespace lamring::forms
