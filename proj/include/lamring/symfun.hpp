#pragma once

// Symmetric polynomials over one or two alphabets and the universal
// lambda-ring polynomials P_k and P_{k,j}.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "lamring/bigint.hpp"

namespace lamring::symfun {

using Exponents = std::vector<int>;

// Terms are kept in descending lexicographic order of their exponent vectors.
using TermMap = std::map<Exponents, BigInt, std::greater<Exponents>>;

/// Sparse polynomial in n_vars variables per alphabet ("x", optionally "y").
/// Exponent vectors concatenate the x-exponents and then the y-exponents.
class SymPolynomial {
 public:
  SymPolynomial(int n_vars, int alphabets);

  static SymPolynomial constant(int n_vars, int alphabets, const BigInt& c);
  static SymPolynomial variable(int n_vars, int alphabets, int alphabet, int index);

  int n_vars() const { return n_vars_; }
  int alphabets() const { return alphabets_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const BigInt& c);
  BigInt coefficient(const Exponents& e) const;

  /// Invariant under every adjacent transposition inside each alphabet.
  bool is_symmetric() const;

  SymPolynomial operator+(const SymPolynomial& o) const;
  SymPolynomial operator-(const SymPolynomial& o) const;
  SymPolynomial operator*(const SymPolynomial& o) const;
  bool operator==(const SymPolynomial& o) const = default;

  /// Value at integer points for both alphabets.
  BigInt evaluate(const std::vector<BigInt>& x, const std::vector<BigInt>& y = {}) const;

  std::string to_string() const;

 private:
  void check_compatible(const SymPolynomial& o) const;

  int n_vars_;
  int alphabets_;
  TermMap terms_;
};

/// e_i(x_1..x_n) in the given alphabet of an (n, alphabets) polynomial ring.
SymPolynomial elem_sym(int n, int i, int alphabets = 1, int alphabet = 0);

/// Integer polynomial in the elementary symmetric functions e_1..e_d of one
/// or two alphabets. Exponent vectors are (ex_1..ex_d, ey_1..ey_d).
class EPolynomial {
 public:
  EPolynomial(int degree_bound, int alphabets);

  int degree_bound() const { return degree_bound_; }
  int alphabets() const { return alphabets_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const BigInt& c);
  BigInt coefficient(const Exponents& e) const;

  /// Change the number of e-variables per alphabet. Shrinking is only
  /// allowed when no term uses a dropped variable.
  EPolynomial resized(int degree_bound) const;

  /// Drop every term that mentions e_i with i > max_index, i.e. set those
  /// e-variables to zero.
  EPolynomial specialized(int max_index) const;

  /// Expand back into n variables per alphabet (requires n >= 1).
  SymPolynomial substitute(int n) const;

  /// Sum of i * (exponent of e_i) over the given alphabet, for each term.
  std::vector<int> weighted_degrees(int alphabet) const;

  /// Canonical text, e.g. "ex1^2*ey2 + ex2*ey1^2 - 2*ex2*ey2".
  std::string to_string() const;

  bool operator==(const EPolynomial& o) const = default;

 private:
  int degree_bound_;
  int alphabets_;
  TermMap terms_;
};

/// Express a symmetric (per alphabet) polynomial in elementary symmetric
/// functions. Throws NotSymmetricError otherwise.
EPolynomial reduce_to_elementary(const SymPolynomial& p);

/// Coefficient of T^k in prod_{i,j <= n} (1 + x_i y_j T), as a polynomial.
/// n = 0 selects n = k.
SymPolynomial universal_P_expansion(int k, int n = 0);

/// Coefficient of T^k in prod_{i_1<...<i_j} (1 + x_{i_1}...x_{i_j} T).
/// n = 0 selects n = k*j.
SymPolynomial universal_P_kj_expansion(int k, int j, int n = 0);

/// P_k in e-variables of both alphabets, degree bound k.
EPolynomial universal_P(int k, int n = 0);

/// P_{k,j} in e-variables, degree bound k*j.
EPolynomial universal_P_kj(int k, int j, int n = 0);

/// Thread-safe memo of P_k and P_{k,j}; entries are computed once and
/// shared read-only.
class UniversalTable {
 public:
  std::shared_ptr<const EPolynomial> P(int k);
  std::shared_ptr<const EPolynomial> P_kj(int k, int j);

  static UniversalTable& shared();

 private:
  std::mutex mutex_;
  std::map<int, std::shared_ptr<const EPolynomial>> p_;
  std::map<std::pair<int, int>, std::shared_ptr<const EPolynomial>> p_kj_;
};

/// Evaluate an EPolynomial in a commutative ring, with ex_i := x[i-1] and
/// ey_i := y[i-1]. Missing values are treated as zero.
template <class Ring>
typename Ring::Elt evaluate(const Ring& ring, const EPolynomial& p,
                            const std::vector<typename Ring::Elt>& x,
                            const std::vector<typename Ring::Elt>& y = {}) {
  using Elt = typename Ring::Elt;
  const int d = p.degree_bound();
  auto value_of = [&](int slot) -> Elt {
    const auto& src = slot < d ? x : y;
    const std::size_t idx = static_cast<std::size_t>(slot % d);
    return idx < src.size() ? src[idx] : ring.zero();
  };
  // powers[slot][e] = value_of(slot)^e, grown on demand
  std::vector<std::vector<Elt>> powers(static_cast<std::size_t>(d * p.alphabets()));
  auto power = [&](int slot, int e) -> const Elt& {
    auto& cache = powers[static_cast<std::size_t>(slot)];
    if (cache.empty()) {
      cache.push_back(ring.one());
      cache.push_back(value_of(slot));
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(ring.mul(cache.back(), cache[1]));
    return cache[static_cast<std::size_t>(e)];
  };
  Elt total = ring.zero();
  for (const auto& [exps, coeff] : p.terms()) {
    Elt term = ring.one();
    for (int slot = 0; slot < static_cast<int>(exps.size()); ++slot)
      if (exps[static_cast<std::size_t>(slot)] > 0)
        term = ring.mul(term, power(slot, exps[static_cast<std::size_t>(slot)]));
    total = ring.add(total, ring.scale(term, coeff));
  }
  return total;
}

}  // namespace lamring::symfun
