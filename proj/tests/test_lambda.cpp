#include <doctest.h>

#include "lamring/lambda.hpp"
#include "support.hpp"

using namespace lamring;
using namespace lamring::lambda;
using forms::FieldModel;

namespace {

const std::vector<FieldModel>& models() {
  static const std::vector<FieldModel> m = {FieldModel::quadratically_closed(), FieldModel::real_closed(),
                                            FieldModel::finite_prime(5), FieldModel::finite_prime(7)};
  return m;
}

GWElt gw(const GWFieldRing& R, std::initializer_list<long> pos, std::initializer_list<long> neg = {}) {
  GWElt out = R.zero();
  for (long a : pos) out = R.add(out, R.line(a));
  for (long a : neg) out = R.sub(out, R.line(a));
  return out;
}

GWElt random_gw(std::mt19937_64& rng, const GWFieldRing& R, bool positive) {
  std::uniform_int_distribution<int> count(positive ? 0 : -2, 2);
  std::map<forms::Scalar, BigInt> c;
  for (const auto& rep : R.field().square_class_reps()) c[rep] = count(rng);
  return R.from_counts(c);
}

Lattice random_gamma(std::mt19937_64& rng, int r, int bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  Lattice g(static_cast<std::size_t>(r));
  for (auto& v : g) v = d(rng);
  return g;
}

template <class C, class CoeffGen>
typename ExtTorusRing<C>::Elt random_ext(std::mt19937_64& rng, const ExtTorusRing<C>& R, CoeffGen&& coeff, int terms) {
  auto out = R.zero();
  for (int t = 0; t < terms; ++t) {
    auto c = coeff();
    switch (rng() % 3) {
      case 0:
        out = R.add(out, R.term(BasisSym::one(), c));
        break;
      case 1:
        out = R.add(out, R.term(BasisSym::delta(), c));
        break;
      default:
        out = R.add(out, R.scale_coeff(R.pair(random_gamma(rng, R.rank(), 2)), c));
    }
  }
  return out;
}

template <class Ring>
bool all_pass(const std::vector<CheckResult<Ring>>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

// Coefficients of (1+t)^n, n >= 0, by repeated multiplication.
std::vector<BigInt> binomial_row(long n, int d) {
  std::vector<BigInt> s(static_cast<std::size_t>(d) + 1, 0);
  s[0] = 1;
  for (long i = 0; i < n; ++i)
    for (std::size_t k = static_cast<std::size_t>(d); k >= 1; --k) s[k] += s[k - 1];
  return s;
}

}  // namespace

TEST_CASE("integers") {
  IntegerRing Z;
  CHECK(lambda_k(Z, BigInt(-1), 2) == 1);
  CHECK(lambda_k(Z, BigInt(-1), 3) == -1);
  for (long n = 0; n <= 9; ++n) {
    auto row = binomial_row(n, 6);
    auto lt = lambda_t(Z, BigInt(n), 6);
    CHECK(lt == row);
    // negative n: inverse series of (1+t)^n
    auto inv = series_inverse(Z, row, 6);
    CHECK(lambda_t(Z, BigInt(-n), 6) == inv);
  }
  CHECK_THROWS_AS(lambda_k(Z, BigInt(3), -1), DomainError);

  auto r = check_lambda2(Z, BigInt(5), 2, 2);
  REQUIRE(r.size() == 2);
  CHECK(r[1].lhs == 45);
  // P_{2,2} = e1 e3 - e4 evaluated at e_i = binomial(5, i)
  CHECK(r[1].rhs == BigInt(5) * 10 - 5);
  CHECK(all_pass(r));
  CHECK(all_pass(check_lambda1(Z, BigInt(5), BigInt(-3), 5)));
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) CHECK(all_pass(check_lambda1(Z, BigInt(x), BigInt(y), 5)));
  for (long x = -3; x <= 5; ++x)
    for (int j = 1; j <= 3; ++j) CHECK(all_pass(check_lambda2(Z, BigInt(x), j, 3)));
}

TEST_CASE("GW of a field") {
  for (const auto& f : models()) {
    GWFieldRing R(f);
    CHECK(R.equal(gw(R, {1, 1}), gw(R, {2, 2})));
    CHECK(R.augmentation(gw(R, {1, 2, 3}, {6})) == 2);
    CHECK(R.equal(R.mul(R.one(), gw(R, {2, 3})), gw(R, {2, 3})));
  }

  GWFieldRing F7(FieldModel::finite_prime(7));
  CHECK(F7.equal(lambda_k(F7, gw(F7, {1, 2, 3}), 2), gw(F7, {2, 3, 6})));

  // the normal form is exact: equality of invariants agrees with equality of normal forms
  std::mt19937_64 rng(1);
  for (const auto& f : models()) {
    GWFieldRing R(f);
    for (int t = 0; t < 200; ++t) {
      auto a = random_gw(rng, R, false), b = random_gw(rng, R, false);
      CHECK(R.equal(a, b) == (a == b));
    }
  }
}

TEST_CASE("GW lambda operations agree with exterior powers of forms") {
  std::mt19937_64 rng(2);
  for (const auto& f : models()) {
    GWFieldRing R(f);
    for (int t = 0; t < 20; ++t) {
      auto form = testsupport::random_diagonal_form(rng, f, 1 + rng() % 4);
      GWElt x = R.zero();
      for (std::size_t i = 0; i < form.dim(); ++i) x = R.add(x, R.line(form.gram()(i, i)));
      for (int k = 0; k <= static_cast<int>(form.dim()); ++k)
        CHECK(R.to_class(lambda_k(R, x, k)) == forms::gw_class(forms::exterior_power(form, k)));
      CHECK(R.is_zero(lambda_k(R, x, static_cast<int>(form.dim()) + 1)));
    }
  }
}

TEST_CASE("extended torus structure constants") {
  GWExtTorusRing R(GWFieldRing(FieldModel::finite_prime(5)), 1);
  const auto& C = R.coeff_ring();
  auto p1 = R.pair({1});
  auto expected = R.add(R.pair({2}), R.add(R.term(BasisSym::one(), C.line(2)), R.term(BasisSym::delta(), C.line(2))));
  CHECK(R.equal(R.mul(p1, p1), expected));
  CHECK(R.equal(R.mul(R.basis(BasisSym::delta()), R.basis(BasisSym::delta())), R.one()));
  CHECK(R.equal(R.mul(R.basis(BasisSym::delta()), p1), p1));
  CHECK(R.equal(R.pair({-3}), R.pair({3})));
  CHECK(BasisSym::pair({0, -2}) == BasisSym::pair({0, 2}));
  CHECK(BasisSym::pair({-1, 2}).gamma == Lattice{1, -2});
  CHECK_THROWS_AS(BasisSym::pair({0, 0}), DomainError);
  CHECK_THROWS_AS(R.pair({1, 2}), DomainError);

  // [e^0] is never stored
  auto z = R.pair({0});
  CHECK(z.size() == 2);
  CHECK(!z.count(BasisSym{BasisSym::Kind::Pair, {0}}));

  std::mt19937_64 rng(3);
  for (const auto& f : models()) {
    GWExtTorusRing S(GWFieldRing(f), 2);
    auto coeff = [&] { return random_gw(rng, S.coeff_ring(), false); };
    for (int t = 0; t < 20; ++t) {
      auto a = random_ext(rng, S, coeff, 3), b = random_ext(rng, S, coeff, 3), c = random_ext(rng, S, coeff, 2);
      CHECK(S.equal(S.mul(a, S.one()), a));
      CHECK(S.equal(S.mul(a, b), S.mul(b, a)));
      CHECK(S.equal(S.mul(S.mul(a, b), c), S.mul(a, S.mul(b, c))));
      CHECK(S.equal(S.mul(a, S.add(b, c)), S.add(S.mul(a, b), S.mul(a, c))));
      CHECK(S.augmentation(S.mul(a, b)) == S.augmentation(a) * S.augmentation(b));
    }
  }
}

TEST_CASE("key identity 2*1 + 2*delta = 2[e^0]") {
  for (const auto& f : models()) {
    GWExtTorusRing R(GWFieldRing(f), 1);
    auto lhs = R.scale(R.add(R.one(), R.basis(BasisSym::delta())), 2);
    CHECK(R.equal(lhs, R.scale(R.pair({0}), 2)));
  }
  GWExtTorusRing F7(GWFieldRing(FieldModel::finite_prime(7)), 1);
  CHECK(F7.equal(F7.pair({0}), F7.add(F7.one(), F7.basis(BasisSym::delta()))));
  GWExtTorusRing F5(GWFieldRing(FieldModel::finite_prime(5)), 1);
  CHECK(!F5.equal(F5.pair({0}), F5.add(F5.one(), F5.basis(BasisSym::delta()))));
}

TEST_CASE("lambda series on the extended torus") {
  GWExtTorusRing R(GWFieldRing(FieldModel::real_closed()), 2);
  auto g = R.pair({1, -1});
  auto lt = lambda_t(R, g, 3);
  REQUIRE(lt.size() == 4);
  CHECK(R.equal(lt[0], R.one()));
  CHECK(R.equal(lt[1], g));
  CHECK(R.equal(lt[2], R.basis(BasisSym::delta())));
  CHECK(R.is_zero(lt[3]));
  auto l1 = lambda_t(R, R.one(), 2);
  CHECK(R.equal(l1[1], R.one()));
  CHECK(R.is_zero(l1[2]));
  CHECK_THROWS_AS(lambda_k(R, g, -1), DomainError);

  std::mt19937_64 rng(4);
  for (const auto& f : models()) {
    GWExtTorusRing S(GWFieldRing(f), 2);
    auto coeff = [&] { return random_gw(rng, S.coeff_ring(), false); };
    for (int t = 0; t < 10; ++t) {
      auto x = random_ext(rng, S, coeff, 2), y = random_ext(rng, S, coeff, 2);
      auto lhs = lambda_t(S, S.add(x, y), 4);
      auto rhs = series_mul(S, lambda_t(S, x, 4), lambda_t(S, y, 4), 4);
      for (std::size_t k = 0; k <= 4; ++k) CHECK(S.equal(lhs[k], rhs[k]));
      auto inv = lambda_t(S, S.neg(x), 4);
      auto prod = series_mul(S, lambda_t(S, x, 4), inv, 4);
      CHECK(S.equal(prod[0], S.one()));
      for (std::size_t k = 1; k <= 4; ++k) CHECK(S.is_zero(prod[k]));
    }
  }

  KTorusRing T(2);
  auto cx = T.add(T.character({1, 0}), T.scale(T.character({0, -1}), 2));
  auto cy = T.sub(T.character({1, 1}), T.one());
  auto lhs = lambda_t(T, T.add(cx, cy), 4);
  auto rhs = series_mul(T, lambda_t(T, cx, 4), lambda_t(T, cy, 4), 4);
  CHECK(lhs == rhs);
  CHECK(all_pass(check_lambda1(T, cx, cy, 4)));
  CHECK(all_pass(check_lambda2(T, cx, 2, 3)));
}

TEST_CASE("augmentation is a lambda-homomorphism on positive elements") {
  std::mt19937_64 rng(5);
  for (const auto& f : models()) {
    GWExtTorusRing S(GWFieldRing(f), 1);
    CHECK(S.augmentation(S.pair({3})) == 2);
    CHECK(S.augmentation(S.pair({0})) == 2);
    auto coeff = [&] { return random_gw(rng, S.coeff_ring(), true); };
    for (int t = 0; t < 10; ++t) {
      auto x = random_ext(rng, S, coeff, 2);
      auto lt = lambda_t(S, x, 5);
      for (int k = 0; k <= 5; ++k) CHECK(S.augmentation(lt[static_cast<std::size_t>(k)]) == binomial(S.augmentation(x), k));
    }
  }
}

TEST_CASE("forgetful and hyperbolic maps") {
  std::mt19937_64 rng(6);
  for (const auto& f : models()) {
    GWExtTorusRing G(GWFieldRing(f), 2);
    KExtTorusRing K(IntegerRing{}, 2);
    const auto& C = G.coeff_ring();
    CHECK(K.equal(forgetful(G, K, G.term(BasisSym::one(), C.line(2))), K.one()));
    CHECK(K.equal(forgetful(G, K, G.pair({1, 2})), K.pair({1, 2})));

    // H(One) is the class of the hyperbolic plane, diagonalized by module forms
    auto h1 = hyperbolic_map(K, G, K.one());
    auto diag = forms::diagonalize(forms::hyperbolic(f, 1));
    CHECK(G.equal(h1, G.term(BasisSym::one(), C.add(C.line(diag[0]), C.line(diag[1])))));
    CHECK(G.equal(h1, G.term(BasisSym::one(), gw(C, {1, -1}))));

    auto coeff = [&] { return random_gw(rng, C, false); };
    std::uniform_int_distribution<int> icoeff(-2, 2);
    auto kcoeff = [&] { return BigInt(icoeff(rng)); };
    for (int t = 0; t < 10; ++t) {
      auto a = random_ext(rng, G, coeff, 3), b = random_ext(rng, G, coeff, 3);
      CHECK(K.equal(forgetful(G, K, G.mul(a, b)), K.mul(forgetful(G, K, a), forgetful(G, K, b))));
      CHECK(K.equal(forgetful(G, K, G.add(a, b)), K.add(forgetful(G, K, a), forgetful(G, K, b))));
      for (int k = 0; k <= 3; ++k)
        CHECK(K.equal(forgetful(G, K, lambda_k(G, a, k)), lambda_k(K, forgetful(G, K, a), k)));

      auto x = random_ext(rng, K, kcoeff, 3), y = random_ext(rng, K, kcoeff, 3);
      CHECK(K.equal(forgetful(G, K, hyperbolic_map(K, G, x)), K.scale(x, 2)));
      CHECK(G.equal(hyperbolic_map(K, G, K.add(x, y)), G.add(hyperbolic_map(K, G, x), hyperbolic_map(K, G, y))));
    }
  }
}

TEST_CASE("lambda identity checks: worked cases") {
  GWExtTorusRing R(GWFieldRing(FieldModel::finite_prime(7)), 2);
  auto x = R.pair({1, 0}), y = R.pair({1, 2});
  auto r1 = check_lambda1(R, x, y, 4);
  CHECK(all_pass(r1));
  CHECK(R.equal(r1[3].lhs, R.one()));
  CHECK(R.equal(r1[3].rhs, R.one()));
  auto sum_diff = R.add(R.pair({2, 2}), R.pair({0, -2}));
  CHECK(R.equal(r1[2].lhs, sum_diff));
  CHECK(R.equal(r1[2].rhs, sum_diff));

  CHECK(all_pass(check_lambda1(R, R.one(), R.one(), 4)));
  for (int j = 1; j <= 3; ++j) {
    CHECK(all_pass(check_lambda2(R, x, j, 4)));
    CHECK(all_pass(check_lambda2(R, R.one(), j, 4)));
  }

  const auto& C = R.coeff_ring();
  auto l = R.term(BasisSym::delta(), C.line(3));
  auto rs = check_line_special(R, l, x, 2);
  CHECK(all_pass(rs));
  CHECK(R.equal(rs[1].lhs, R.basis(BasisSym::delta())));
  CHECK(all_pass(check_line_special(R, R.one(), x, 4)));
  CHECK_THROWS_AS(check_line_special(R, x, x, 2), DomainError);
  CHECK_THROWS_AS(check_line_special(R, R.scale(R.one(), 2), x, 2), DomainError);

  std::mt19937_64 rng(7);
  GWExtTorusRing F5(GWFieldRing(FieldModel::finite_prime(5)), 2);
  const auto& C5 = F5.coeff_ring();
  auto coeff = [&] { return random_gw(rng, C5, false); };
  for (int t = 0; t < 10; ++t) {
    auto reps = C5.field().square_class_reps();
    auto line = F5.term(rng() % 2 ? BasisSym::one() : BasisSym::delta(), C5.line(reps[rng() % reps.size()]));
    CHECK(all_pass(check_line_special(F5, line, random_ext(rng, F5, coeff, 3), 4)));
  }
}

TEST_CASE("lambda identities hold on random virtual elements") {
  std::mt19937_64 rng(8);
  for (const auto& f : models()) {
    GWExtTorusRing S(GWFieldRing(f), 2);
    auto coeff = [&] { return random_gw(rng, S.coeff_ring(), false); };
    for (int t = 0; t < 3; ++t) {
      auto x = random_ext(rng, S, coeff, 2), y = random_ext(rng, S, coeff, 2);
      CHECK(all_pass(check_lambda1(S, x, y, 3)));
      CHECK(all_pass(check_lambda2(S, x, 2, 2)));
    }
  }
}

TEST_CASE("basis sweep with r = 1 and coordinates up to 3") {
  for (const auto& f : models()) {
    GWExtTorusRing R(GWFieldRing(f), 1);
    std::vector<GWExtTorusRing::Elt> basis = {R.one(), R.basis(BasisSym::delta())};
    for (long g = 1; g <= 3; ++g) basis.push_back(R.pair({g}));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) CHECK(all_pass(check_lambda1(R, basis[i], basis[j], 4)));
      for (int jj = 1; jj <= 2; ++jj) CHECK(all_pass(check_lambda2(R, basis[i], jj, 4)));
    }
  }
}

TEST_CASE("a corrupted structure constant is detected") {
  StructureConstants bad;
  bad.lambda2_pair = BasisSym::Kind::One;
  GWExtTorusRing R(GWFieldRing(FieldModel::finite_prime(7)), 1, bad);
  CHECK(!all_pass(check_lambda1(R, R.pair({1}), R.pair({2}), 4)));
}
