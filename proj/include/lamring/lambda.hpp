#pragma once

// Pre-lambda-rings: the integers, GW(F), K(T), and the representation rings
// K and GW of the extended torus T x| Z/2, with a checker for the
// lambda-ring identities.

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lamring/bigint.hpp"
#include "lamring/errors.hpp"
#include "lamring/forms.hpp"
#include "lamring/symfun.hpp"

namespace lamring::lambda {

using Lattice = std::vector<long>;

template <class Ring>
using Series = std::vector<typename Ring::Elt>;

// ---------------------------------------------------------------- Z

class IntegerRing {
 public:
  using Elt = BigInt;

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt scale(const Elt& a, const BigInt& c) const { return a * c; }
  bool equal(const Elt& a, const Elt& b) const { return a == b; }
  bool is_zero(const Elt& a) const { return a == 0; }
  BigInt augmentation(const Elt& a) const { return a; }
  bool is_line(const Elt& a) const { return a == 1; }

  /// lambda^i(n) = binomial(n, i), also for negative n.
  Series<IntegerRing> direct_lambda_t(const Elt& a, int d) const;

  // Coefficient-ring hooks used by the extended torus rings.
  Elt line(const forms::Scalar&) const { return 1; }
  std::vector<std::pair<Elt, BigInt>> line_decomposition(const Elt& c) const { return {{1, c}}; }
  Elt line_square(const Elt&) const { return 1; }

  std::string to_string(const Elt& a) const { return a.get_str(); }
};

// ---------------------------------------------------------------- GW(F)

/// Virtual sum of rank-one forms <a>, keyed by canonical square-class
/// representative. Over F_q at most one copy of the non-residue class is
/// kept, using <u,u> = <1,1>.
struct GWElt {
  std::map<forms::Scalar, BigInt> counts;
  bool operator==(const GWElt&) const = default;
};

class GWFieldRing {
 public:
  using Elt = GWElt;

  explicit GWFieldRing(forms::FieldModel field) : field_(field) {}
  const forms::FieldModel& field() const { return field_; }

  Elt zero() const { return {}; }
  Elt one() const { return line(1); }
  /// The class <a> of a nonzero scalar.
  Elt line(const forms::Scalar& a) const;
  /// Normal form of an arbitrary count map (keys are any nonzero scalars).
  Elt from_counts(const std::map<forms::Scalar, BigInt>& counts) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }
  Elt mul(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt scale(const Elt& a, const BigInt& c) const;
  /// Compares the complete invariants of module forms.
  bool equal(const Elt& a, const Elt& b) const { return to_class(a) == to_class(b); }
  bool is_zero(const Elt& a) const { return a.counts.empty(); }
  BigInt augmentation(const Elt& a) const;
  bool is_line(const Elt& a) const;

  forms::GWClass to_class(const Elt& a) const;

  std::vector<std::pair<Series<GWFieldRing>, BigInt>> line_factors(const Elt& a) const;
  std::vector<std::pair<Elt, BigInt>> line_decomposition(const Elt& c) const;
  Elt line_square(const Elt&) const { return one(); }

  /// e.g. "<1,1,3>" or "<1> - <3>"; zero is "0".
  std::string to_string(const Elt& a) const;

 private:
  Elt normalized(std::map<forms::Scalar, BigInt> counts) const;

  forms::FieldModel field_;
};

// ---------------------------------------------------------------- K(T)

class KTorusRing {
 public:
  using Elt = std::map<Lattice, BigInt>;

  explicit KTorusRing(int rank);
  int rank() const { return rank_; }

  Elt zero() const { return {}; }
  Elt one() const { return character(Lattice(static_cast<std::size_t>(rank_), 0)); }
  Elt character(const Lattice& w) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }
  Elt mul(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const { return scale(a, -1); }
  Elt scale(const Elt& a, const BigInt& c) const;
  bool equal(const Elt& a, const Elt& b) const { return a == b; }
  bool is_zero(const Elt& a) const { return a.empty(); }
  BigInt augmentation(const Elt& a) const;
  bool is_line(const Elt& a) const;

  std::vector<std::pair<Series<KTorusRing>, BigInt>> line_factors(const Elt& a) const;

  std::string to_string(const Elt& a) const;

 private:
  int rank_;
};

// ---------------------------------------------------------------- extended torus

struct BasisSym {
  enum class Kind { One, Delta, Pair };
  Kind kind = Kind::One;
  Lattice gamma;  // only for Pair: nonzero, first nonzero entry positive

  static BasisSym one() { return {Kind::One, {}}; }
  static BasisSym delta() { return {Kind::Delta, {}}; }
  /// Canonical symbol for the orbit {gamma, -gamma}; gamma must be nonzero.
  static BasisSym pair(Lattice gamma);

  int rank() const { return kind == Kind::Pair ? 2 : 1; }

  /// Exchange spelling: "one", "delta", "pair:c1,...,cr".
  std::string key() const;
  /// Human spelling: "1", "d", "[c1,...,cr]".
  std::string label() const;

  auto operator<=>(const BasisSym&) const = default;
};

bool is_zero_vector(const Lattice& v);

/// The overridable structure constants of the extended torus rings.
struct StructureConstants {
  BasisSym::Kind delta_delta = BasisSym::Kind::One;
  BasisSym::Kind lambda2_pair = BasisSym::Kind::Delta;
  /// [e^0] is rewritten as <c>1 + <c>delta with this c.
  forms::Scalar zero_pair_coeff = 2;
};

template <class C>
class ExtTorusRing {
 public:
  using Coeff = typename C::Elt;
  using Elt = std::map<BasisSym, Coeff>;

  ExtTorusRing(C coeff, int rank, StructureConstants sc = {}) : coeff_(std::move(coeff)), rank_(rank), sc_(sc) {
    if (rank < 1) throw DomainError("torus rank must be >= 1");
  }

  const C& coeff_ring() const { return coeff_; }
  int rank() const { return rank_; }
  const StructureConstants& constants() const { return sc_; }

  Elt zero() const { return {}; }
  Elt one() const { return basis(BasisSym::one()); }
  Elt term(const BasisSym& b, const Coeff& c) const {
    Elt out;
    add_term(out, b, c);
    return out;
  }
  Elt basis(const BasisSym& b) const { return term(b, coeff_.one()); }

  /// [e^gamma]; gamma = 0 gives the rewritten form <c>1 + <c>delta.
  Elt pair(const Lattice& gamma) const {
    check_length(gamma);
    if (is_zero_vector(gamma)) {
      const Coeff c = coeff_.line(sc_.zero_pair_coeff);
      Elt out;
      add_term(out, BasisSym::one(), c);
      add_term(out, BasisSym::delta(), c);
      return out;
    }
    return basis(BasisSym::pair(gamma));
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt out = a;
    for (const auto& [s, c] : b) add_term(out, s, c);
    return out;
  }
  Elt sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }
  Elt neg(const Elt& a) const {
    Elt out;
    for (const auto& [s, c] : a) add_term(out, s, coeff_.neg(c));
    return out;
  }
  Elt scale(const Elt& a, const BigInt& k) const {
    Elt out;
    for (const auto& [s, c] : a) add_term(out, s, coeff_.scale(c, k));
    return out;
  }
  Elt scale_coeff(const Elt& a, const Coeff& k) const {
    Elt out;
    for (const auto& [s, c] : a) add_term(out, s, coeff_.mul(c, k));
    return out;
  }

  Elt basis_product(const BasisSym& a, const BasisSym& b) const {
    using K = BasisSym::Kind;
    if (a.kind == K::One) return basis(b);
    if (b.kind == K::One) return basis(a);
    if (a.kind == K::Delta && b.kind == K::Delta) return basis({sc_.delta_delta, {}});
    if (a.kind == K::Delta) return basis(b);
    if (b.kind == K::Delta) return basis(a);
    Lattice sum(a.gamma.size()), diff(a.gamma.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] = a.gamma[i] + b.gamma[i];
      diff[i] = a.gamma[i] - b.gamma[i];
    }
    return add(pair(sum), pair(diff));
  }

  Elt mul(const Elt& a, const Elt& b) const {
    Elt out;
    for (const auto& [sa, ca] : a)
      for (const auto& [sb, cb] : b) out = add(out, scale_coeff(basis_product(sa, sb), coeff_.mul(ca, cb)));
    return out;
  }

  bool equal(const Elt& a, const Elt& b) const {
    for (const auto& [s, c] : a) {
      auto it = b.find(s);
      if (!coeff_.equal(c, it == b.end() ? coeff_.zero() : it->second)) return false;
    }
    for (const auto& [s, c] : b)
      if (!a.count(s) && !coeff_.is_zero(c)) return false;
    return true;
  }
  bool is_zero(const Elt& a) const { return a.empty(); }

  BigInt augmentation(const Elt& a) const {
    BigInt total = 0;
    for (const auto& [s, c] : a) total += s.rank() * coeff_.augmentation(c);
    return total;
  }

  /// <a>1 or <a>delta for a single square class a.
  bool is_line(const Elt& a) const {
    if (a.size() != 1) return false;
    const auto& [s, c] = *a.begin();
    return s.kind != BasisSym::Kind::Pair && coeff_.is_line(c);
  }

  Elt lambda2_pair() const { return basis({sc_.lambda2_pair, {}}); }

  // lambda_t(<u> b) = 1 + <u> b t + <u^2> lambda^2(b) t^2, with lambda^2(b)
  // nonzero only for pairs.
  std::vector<std::pair<Series<ExtTorusRing>, BigInt>> line_factors(const Elt& a) const {
    std::vector<std::pair<Series<ExtTorusRing>, BigInt>> out;
    for (const auto& [s, c] : a) {
      for (const auto& [u, n] : coeff_.line_decomposition(c)) {
        Series<ExtTorusRing> series{one(), term(s, u)};
        if (s.kind == BasisSym::Kind::Pair) series.push_back(scale_coeff(lambda2_pair(), coeff_.line_square(u)));
        out.emplace_back(std::move(series), n);
      }
    }
    return out;
  }

  std::string to_string(const Elt& a) const {
    if (a.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : a) {
      if (!out.empty()) out += " + ";
      out += "(" + coeff_.to_string(c) + ")" + s.label();
    }
    return out;
  }

  void check_length(const Lattice& g) const {
    if (g.size() != static_cast<std::size_t>(rank_))
      throw DomainError("character has length " + std::to_string(g.size()) + ", expected " + std::to_string(rank_));
  }

 private:
  void add_term(Elt& out, const BasisSym& s, const Coeff& c) const {
    if (s.kind == BasisSym::Kind::Pair) check_length(s.gamma);
    auto it = out.find(s);
    Coeff next = it == out.end() ? c : coeff_.add(it->second, c);
    if (coeff_.is_zero(next)) {
      if (it != out.end()) out.erase(it);
    } else if (it == out.end()) {
      out.emplace(s, std::move(next));
    } else {
      it->second = std::move(next);
    }
  }

  C coeff_;
  int rank_;
  StructureConstants sc_;
};

using KExtTorusRing = ExtTorusRing<IntegerRing>;
using GWExtTorusRing = ExtTorusRing<GWFieldRing>;

/// Replace every GW coefficient by its rank.
KExtTorusRing::Elt forgetful(const GWExtTorusRing& from, const KExtTorusRing& to, const GWExtTorusRing::Elt& x);
/// H(b) = <1,-1> b on basis symbols, extended additively.
GWExtTorusRing::Elt hyperbolic_map(const KExtTorusRing& from, const GWExtTorusRing& to, const KExtTorusRing::Elt& x);

// ---------------------------------------------------------------- lambda operations

template <class Ring>
Series<Ring> series_mul(const Ring& R, const Series<Ring>& a, const Series<Ring>& b, int d) {
  Series<Ring> out(static_cast<std::size_t>(d) + 1, R.zero());
  for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(d); ++i) {
    if (R.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(d); ++j) {
      if (R.is_zero(b[j])) continue;
      out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
    }
  }
  return out;
}

/// Inverse of a series with constant term 1, truncated at degree d.
template <class Ring>
Series<Ring> series_inverse(const Ring& R, const Series<Ring>& s, int d) {
  Series<Ring> inv(static_cast<std::size_t>(d) + 1, R.zero());
  inv[0] = R.one();
  for (std::size_t n = 1; n <= static_cast<std::size_t>(d); ++n) {
    auto acc = R.zero();
    for (std::size_t i = 1; i <= n && i < s.size(); ++i) acc = R.add(acc, R.mul(s[i], inv[n - i]));
    inv[n] = R.neg(acc);
  }
  return inv;
}

template <class Ring>
Series<Ring> series_pow(const Ring& R, Series<Ring> base, const BigInt& e, int d) {
  if (!e.fits_ulong_p()) throw DomainError("multiplicity too large for lambda operations");
  unsigned long n = e.get_ui();
  Series<Ring> result{R.one()};
  while (n) {
    if (n & 1UL) result = series_mul(R, result, base, d);
    n >>= 1;
    if (n) base = series_mul(R, base, base, d);
  }
  result.resize(static_cast<std::size_t>(d) + 1, R.zero());
  return result;
}

/// (1, lambda^1 x, ..., lambda^d x). Virtual parts are handled by
/// inverting the truncated series.
template <class Ring>
Series<Ring> lambda_t(const Ring& R, const typename Ring::Elt& x, int d) {
  if (d < 0) throw DomainError("truncation degree must be >= 0");
  if constexpr (requires { R.direct_lambda_t(x, d); }) {
    return R.direct_lambda_t(x, d);
  } else {
    Series<Ring> out{R.one()};
    out.resize(static_cast<std::size_t>(d) + 1, R.zero());
    for (const auto& [series, mult] : R.line_factors(x)) {
      if (mult == 0) continue;
      Series<Ring> s = mult > 0 ? series : series_inverse(R, series, d);
      out = series_mul(R, out, series_pow(R, s, abs(mult), d), d);
    }
    return out;
  }
}

template <class Ring>
typename Ring::Elt lambda_k(const Ring& R, const typename Ring::Elt& x, int k) {
  if (k < 0) throw DomainError("lambda degree must be >= 0");
  return lambda_t(R, x, k)[static_cast<std::size_t>(k)];
}

template <class Ring>
typename Ring::Elt ring_pow(const Ring& R, const typename Ring::Elt& x, int k) {
  auto out = R.one();
  for (int i = 0; i < k; ++i) out = R.mul(out, x);
  return out;
}

// ---------------------------------------------------------------- identity checks

template <class Ring>
struct CheckResult {
  std::string check;  // "lambda1", "lambda2" or "line_special"
  int k = 0;
  int j = 0;  // lambda2 only
  typename Ring::Elt lhs;
  typename Ring::Elt rhs;
  bool pass = false;
};

/// Default degree bound for (lambda1): augmentation(x) * augmentation(y), at least 1.
template <class Ring>
int default_kmax_lambda1(const Ring& R, const typename Ring::Elt& x, const typename Ring::Elt& y) {
  BigInt v = abs(R.augmentation(x) * R.augmentation(y));
  if (v < 1) v = 1;
  if (v > 64) throw DomainError("default kmax too large; pass kmax explicitly");
  return static_cast<int>(v.get_si());
}

/// Default degree bound for (lambda2): binomial(augmentation(x), j), at least 1.
template <class Ring>
int default_kmax_lambda2(const Ring& R, const typename Ring::Elt& x, int j) {
  BigInt v = abs(binomial(R.augmentation(x), j));
  if (v < 1) v = 1;
  if (v > 64) throw DomainError("default kmax too large; pass kmax explicitly");
  return static_cast<int>(v.get_si());
}

/// lambda^k(xy) against P_k(lambda^1 x, ..., lambda^k y) for k = 1..kmax.
template <class Ring>
std::vector<CheckResult<Ring>> check_lambda1(const Ring& R, const typename Ring::Elt& x, const typename Ring::Elt& y,
                                             int kmax) {
  if (kmax < 1) throw DomainError("kmax must be >= 1");
  auto lx = lambda_t(R, x, kmax), ly = lambda_t(R, y, kmax), lxy = lambda_t(R, R.mul(x, y), kmax);
  std::vector<CheckResult<Ring>> out;
  for (int k = 1; k <= kmax; ++k) {
    auto p = symfun::UniversalTable::shared().P(k);
    std::vector<typename Ring::Elt> ex(lx.begin() + 1, lx.begin() + 1 + k), ey(ly.begin() + 1, ly.begin() + 1 + k);
    CheckResult<Ring> r{"lambda1", k, 0, lxy[static_cast<std::size_t>(k)], symfun::evaluate(R, *p, ex, ey), false};
    r.pass = R.equal(r.lhs, r.rhs);
    out.push_back(std::move(r));
  }
  return out;
}

/// lambda^k(lambda^j x) against P_{k,j}(lambda^1 x, ..., lambda^{kj} x).
template <class Ring>
std::vector<CheckResult<Ring>> check_lambda2(const Ring& R, const typename Ring::Elt& x, int j, int kmax) {
  if (j < 1) throw DomainError("j must be >= 1");
  if (kmax < 1) throw DomainError("kmax must be >= 1");
  auto lx = lambda_t(R, x, kmax * j);
  auto lz = lambda_t(R, lx[static_cast<std::size_t>(j)], kmax);
  std::vector<CheckResult<Ring>> out;
  for (int k = 1; k <= kmax; ++k) {
    auto p = symfun::UniversalTable::shared().P_kj(k, j);
    std::vector<typename Ring::Elt> ex(lx.begin() + 1, lx.begin() + 1 + k * j);
    CheckResult<Ring> r{"lambda2", k, j, lz[static_cast<std::size_t>(k)], symfun::evaluate(R, *p, ex), false};
    r.pass = R.equal(r.lhs, r.rhs);
    out.push_back(std::move(r));
  }
  return out;
}

/// lambda^k(l x) against l^k lambda^k(x) for a line element l.
template <class Ring>
std::vector<CheckResult<Ring>> check_line_special(const Ring& R, const typename Ring::Elt& l,
                                                  const typename Ring::Elt& x, int kmax) {
  if (!R.is_line(l)) throw DomainError("not a line element");
  if (kmax < 1) throw DomainError("kmax must be >= 1");
  auto lx = lambda_t(R, x, kmax), llx = lambda_t(R, R.mul(l, x), kmax);
  std::vector<CheckResult<Ring>> out;
  for (int k = 1; k <= kmax; ++k) {
    CheckResult<Ring> r{"line_special", k, 0, llx[static_cast<std::size_t>(k)],
                        R.mul(ring_pow(R, l, k), lx[static_cast<std::size_t>(k)]), false};
    r.pass = R.equal(r.lhs, r.rhs);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lamring::lambda
