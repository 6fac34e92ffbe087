#pragma once

// Nondegenerate symmetric bilinear forms over model fields and their
// Grothendieck-Witt invariants.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamring/field.hpp"

namespace lamring::forms {

/// A symmetric, nondegenerate Gram matrix. The 0-dimensional form is allowed.
class GramForm {
 public:
  /// Throws DegenerateFormError if asymmetric or singular.
  GramForm(FieldModel field, const Matrix& gram);

  static GramForm zero(const FieldModel& field) { return GramForm(field, Matrix(0, 0)); }
  static GramForm diagonal(const FieldModel& field, const std::vector<Scalar>& entries);

  const FieldModel& field() const { return field_; }
  const Matrix& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }

  bool operator==(const GramForm& o) const { return field_ == o.field_ && gram_ == o.gram_; }

 private:
  FieldModel field_;
  Matrix gram_;
};

/// Complete isometry invariants: rank, signed discriminant class
/// (-1)^{n(n-1)/2} det, and the signature over a real closed field.
/// Virtual classes may have negative rank.
class GWClass {
 public:
  static GWClass zero(const FieldModel& field);
  /// Class of the rank-one form <a>.
  static GWClass line(const FieldModel& field, const Scalar& a);

  GWClass(FieldModel field, BigInt rank, Scalar disc, BigInt signature);

  const FieldModel& field() const { return field_; }
  const BigInt& rank() const { return rank_; }
  const Scalar& disc() const { return disc_; }
  /// Present only over a real closed field.
  std::optional<BigInt> signature() const;

  /// Square class of the plain determinant.
  Scalar det_class() const;

  GWClass operator+(const GWClass& o) const;
  GWClass operator-(const GWClass& o) const;
  GWClass operator-() const;
  GWClass operator*(const GWClass& o) const;
  /// n-fold sum, n may be negative.
  GWClass scaled(const BigInt& n) const;

  /// Equality of the complete invariant for the model.
  bool operator==(const GWClass& o) const;
  bool operator!=(const GWClass& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_field(const GWClass& o) const;

  FieldModel field_;
  BigInt rank_;
  Scalar disc_;
  BigInt signature_;
};

GramForm perp_sum(const GramForm& a, const GramForm& b);
GramForm tensor(const GramForm& a, const GramForm& b);
/// Form scaled by -1.
GramForm negate(const GramForm& a);

/// Gram matrix on k-subsets in lexicographic order, entries are k x k minors.
GramForm exterior_power(const GramForm& a, int k);

/// Orthogonal sum of n copies of [[0,1],[1,0]].
GramForm hyperbolic(const FieldModel& field, int n);

GWClass gw_class(const GramForm& a);

struct Diagonalization {
  std::vector<Scalar> entries;
  /// Columns are the new basis: basis^T * gram * basis = diag(entries).
  Matrix basis;
};

Diagonalization diagonalize_with_basis(const GramForm& a);
std::vector<Scalar> diagonalize(const GramForm& a);

/// Pass to N^perp / N for an isotropic subspace N spanned by the given
/// vectors. Returns the induced form and dim N.
std::pair<GramForm, int> sublagrangian_reduce(const GramForm& a, const std::vector<std::vector<Scalar>>& n_basis);

struct HyperbolicWitness {
  /// B with B^T (a + (-a)) B = hyperbolic(dim a).
  Matrix basis;
  /// C with C^T hyperbolic(dim a) C = a + (-a).
  Matrix isometry;
};

/// Explicit isometry between a + (-a) and the hyperbolic form, verified
/// exactly before returning.
HyperbolicWitness hyperbolic_lemma_witness(const GramForm& a);

}  // namespace lamring::forms
