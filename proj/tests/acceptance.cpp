// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "lamring/forms.hpp"
#include "lamring/lambda.hpp"
#include "lamring/symfun.hpp"
#include "lamring/weights.hpp"
#include "support.hpp"

using namespace lamring;
using lamring::forms::FieldModel;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

bool criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  if (o.ok && !in_time) o.detail = "runtime limit exceeded";
  const bool pass = o.ok && in_time;
  char timing[64];
  if (limit_s > 0)
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit_s);
  else
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << "AC" << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << name << " (" << timing << ")";
  if (!pass) std::cout << ": " << o.detail;
  std::cout << std::endl;
  return pass;
}

std::vector<FieldModel> lambda_models() {
  return {FieldModel::quadratically_closed(), FieldModel::real_closed(), FieldModel::finite_prime(5),
          FieldModel::finite_prime(7)};
}

template <class Ring>
bool all_pass(const std::vector<lambda::CheckResult<Ring>>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

// ------------------------------------------------------------------ AC1

Outcome ac1() {
  using namespace symfun;
  Outcome o;
  o.require(universal_P(2).specialized(2).to_string() == "ex1^2*ey2 + ex2*ey1^2 - 2*ex2*ey2", "P_2 rank-two form");
  // lambda^3(xy) = xy lambda^2(x) lambda^2(y) and lambda^4(xy) = (lambda^2 x)^2 (lambda^2 y)^2 for rank two
  o.require(universal_P(3).specialized(2).to_string() == "ex1*ex2*ey1*ey2", "P_3 rank-two form");
  o.require(universal_P(4).specialized(2).to_string() == "ex2^2*ey2^2", "P_4 rank-two form");
  for (int k = 1; k <= 5; ++k)
    o.require(universal_P(k, k) == universal_P(k, k + 1), "P_" + std::to_string(k) + " unstable in n");
  for (int k = 1; k <= 9; ++k)
    for (int j = 1; k * j <= 9; ++j)
      o.require(universal_P_kj(k, j, k * j) == universal_P_kj(k, j, k * j + 1),
                "P_{" + std::to_string(k) + "," + std::to_string(j) + "} unstable in n");
  return o;
}

// ------------------------------------------------------------------ AC2

Outcome ac2() {
  using namespace lambda;
  Outcome o;
  for (const auto& f : lambda_models()) {
    for (int r = 1; r <= 2; ++r) {
      GWExtTorusRing R(GWFieldRing(f), r);
      const auto& G = R.coeff_ring();
      std::vector<BasisSym> basis{BasisSym::one(), BasisSym::delta()};
      std::vector<Lattice> pairs;
      Lattice g(static_cast<std::size_t>(r), -2);
      while (true) {
        if (!is_zero_vector(g) && BasisSym::pair(g).gamma == g) {
          basis.push_back(BasisSym::pair(g));
          pairs.push_back(g);
        }
        std::size_t i = g.size();
        while (i > 0 && g[i - 1] == 2) g[--i] = -2;
        if (i == 0) break;
        ++g[i - 1];
      }
      std::vector<GWExtTorusRing::Elt> gens;
      for (const auto& b : basis)
        for (const auto& u : G.field().square_class_reps()) gens.push_back(R.term(b, G.line(u)));

      const std::string where = f.tag() + " r=" + std::to_string(r);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t k = 0; k < gens.size(); ++k)
          o.require(all_pass(check_lambda1(R, gens[i], gens[k], 4)),
                    "lambda1 " + where + " x=" + R.to_string(gens[i]) + " y=" + R.to_string(gens[k]));
        for (int j = 1; j <= 2; ++j)
          o.require(all_pass(check_lambda2(R, gens[i], j, 4)), "lambda2 " + where + " x=" + R.to_string(gens[i]));
      }

      // the three rank-two identities for x = [e^g], y = [e^k]
      for (const auto& a : pairs)
        for (const auto& b : pairs) {
          const auto x = R.pair(a), y = R.pair(b), xy = R.mul(x, y);
          const auto lxy = lambda_t(R, xy, 4);
          const auto l2x = lambda_k(R, x, 2), l2y = lambda_k(R, y, 2);
          o.require(R.equal(lxy[4], R.one()), "lambda^4(xy) != 1 over " + where);
          o.require(R.equal(R.mul(R.mul(l2x, l2x), R.mul(l2y, l2y)), R.one()),
                    "(lambda^2 x)^2 (lambda^2 y)^2 != 1 over " + where);
          Lattice s(a.size()), d(a.size());
          for (std::size_t t = 0; t < a.size(); ++t) {
            s[t] = b[t] + a[t];
            d[t] = b[t] - a[t];
          }
          o.require(R.equal(lxy[3], R.add(R.pair(s), R.pair(d))), "lambda^3(xy) over " + where);
          o.require(R.equal(lxy[3], R.mul(xy, R.mul(l2x, l2y))), "identity (2) over " + where);
        }
      const auto delta = R.basis(BasisSym::delta());
      o.require(R.equal(R.scale(R.add(R.one(), delta), 2), R.scale(R.pair(Lattice(static_cast<std::size_t>(r), 0)), 2)),
                "2*1 + 2*delta != 2[e^0] over " + where);
    }
  }
  return o;
}

// ------------------------------------------------------------------ AC3

bool oracle_equal(const testsupport::OracleClass& a, const testsupport::OracleClass& b) {
  return a.rank == b.rank && a.disc_is_square == b.disc_is_square && a.signature == b.signature;
}

// Lambda^k vanishes above the dimension.
forms::GramForm ext(const forms::GramForm& a, int k) {
  return k > static_cast<int>(a.dim()) ? forms::GramForm::zero(a.field()) : forms::exterior_power(a, k);
}

Outcome ac3() {
  using namespace forms;
  Outcome o;
  std::mt19937_64 rng(2024);
  const std::vector<FieldModel> models{FieldModel::finite_prime(5), FieldModel::finite_prime(7),
                                       FieldModel::real_closed()};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& f = models[static_cast<std::size_t>(trial) % models.size()];
    const std::size_t total = 1 + rng() % 4;
    const std::size_t da = rng() % (total + 1);
    const auto a = testsupport::random_diagonal_form(rng, f, da);
    const auto b = testsupport::random_diagonal_form(rng, f, total - da);
    const auto s = perp_sum(a, b);
    for (int n = 0; n <= 4; ++n) {
      GWClass conv = GWClass::zero(f);
      GramForm conv_form = GramForm::zero(f);
      for (int i = 0; i <= n; ++i) {
        const auto term = tensor(ext(a, i), ext(b, n - i));
        conv = conv + gw_class(term);
        conv_form = perp_sum(conv_form, term);
      }
      const auto lhs = ext(s, n);
      const std::string where = "trial " + std::to_string(trial) + " n=" + std::to_string(n) + " over " + f.tag();
      o.require(gw_class(lhs) == conv, "lambda_t additivity, " + where);
      o.require(oracle_equal(testsupport::oracle_class(lhs), testsupport::oracle_class(conv_form)),
                "oracle additivity, " + where);
      o.require(testsupport::matches_oracle(gw_class(lhs), testsupport::oracle_class(lhs)), "class oracle, " + where);
    }
  }
  for (const auto& f : models)
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = testsupport::random_metabolic(rng, f, 1 + rng() % 2);
      const int half = static_cast<int>(m.lagrangian.size());
      const auto h = hyperbolic(f, half);
      const std::string where = "metabolic trial " + std::to_string(trial) + " over " + f.tag();
      o.require(gw_class(m.form) == gw_class(h), "class(M) != class(H(L)), " + where);
      o.require(sublagrangian_reduce(m.form, m.lagrangian).first.dim() == 0, "Lagrangian does not reduce, " + where);
      for (int n = 0; n <= 4; ++n) {
        o.require(gw_class(ext(m.form, n)) == gw_class(ext(h, n)), "lambda^n, " + where);
        o.require(oracle_equal(testsupport::oracle_class(ext(m.form, n)), testsupport::oracle_class(ext(h, n))),
                  "oracle lambda^n, " + where);
      }
    }
  return o;
}

// ------------------------------------------------------------------ AC4

Outcome ac4() {
  using namespace forms;
  Outcome o;
  std::mt19937_64 rng(77);
  const std::vector<FieldModel> models{FieldModel::quadratically_closed(), FieldModel::real_closed(),
                                       FieldModel::finite_prime(5), FieldModel::finite_prime(7)};
  for (const auto& f : models)
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = testsupport::random_form(rng, f, 1 + rng() % 3);
      const auto w = hyperbolic_lemma_witness(a);
      const auto sum = perp_sum(a, negate(a));
      const auto h = hyperbolic(f, static_cast<int>(a.dim()));
      const Matrix lhs = mat_mul(f, mat_mul(f, w.basis.transpose(), sum.gram()), w.basis);
      const std::string where = "trial " + std::to_string(trial) + " over " + f.tag();
      o.require(lhs == h.gram(), "B^T (a + -a) B != H, " + where);
      o.require(mat_mul(f, mat_mul(f, w.isometry.transpose(), h.gram()), w.isometry) == sum.gram(),
                "C^T H C != a + -a, " + where);
    }
  return o;
}

// ------------------------------------------------------------------ AC5

Outcome ac5() {
  using namespace forms;
  Outcome o;
  std::vector<FieldModel> models{FieldModel::quadratically_closed(), FieldModel::real_closed()};
  for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) models.push_back(FieldModel::finite_prime(q));
  for (const auto& f : models) {
    const auto a = GramForm::diagonal(f, {1, 1}), b = GramForm::diagonal(f, {2, 2});
    o.require(gw_class(a) == gw_class(b), "<1,1> != <2,2> over " + f.tag());
    // the isometry (1 1; 1 -1) carries <1,1> to <2,2>
    Matrix p(2, 2);
    p(0, 0) = p(0, 1) = p(1, 0) = 1;
    p(1, 1) = f.from_int(-1);
    o.require(mat_mul(f, mat_mul(f, p.transpose(), a.gram()), p) == b.gram(), "isometry fails over " + f.tag());
  }
  using namespace lambda;
  GWExtTorusRing R(GWFieldRing(FieldModel::finite_prime(7)), 1);
  const auto& G = R.coeff_ring();
  const auto delta = BasisSym::delta();
  const auto two = R.add(R.term(BasisSym::one(), G.line(2)), R.term(delta, G.line(2)));
  const auto one = R.add(R.term(BasisSym::one(), G.line(1)), R.term(delta, G.line(1)));
  o.require(R.equal(two, one), "<2>1 + <2>delta != <1>1 + <1>delta over fq:7");
  return o;
}

// ------------------------------------------------------------------ AC6

BigInt weyl_dim(const weights::Weight& w, const weights::Flavor& f) {
  const std::size_t n = w.size();
  std::vector<long> rho(n), lam(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = f.kind == weights::FlavorKind::B ? 2 * static_cast<long>(n - i) - 1 : 2 * static_cast<long>(n - i) - 2;
    lam[i] = 2 * w[i] + rho[i];
  }
  Rational v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      v *= Rational(lam[i] - lam[j], rho[i] - rho[j]);
      v *= Rational(lam[i] + lam[j], rho[i] + rho[j]);
    }
    if (f.kind == weights::FlavorKind::B) v *= Rational(lam[i], rho[i]);
  }
  v.canonicalize();
  return v.get_num();
}

void box(std::size_t n, long radius, const std::function<void(const weights::Weight&)>& fn) {
  std::vector<long> g(n, -radius);
  while (true) {
    fn(weights::Weight(g));
    std::size_t i = n;
    while (i > 0 && g[i - 1] == radius) g[--i] = -radius;
    if (i == 0) return;
    ++g[i - 1];
  }
}

Outcome ac6() {
  using namespace weights;
  Outcome o;
  o.require(weyl_character(Weight({1}), Flavor::B(1)).mass() == 3, "B1 (1)");
  o.require(weyl_character(Weight({1, 0}), Flavor::B(2)).mass() == 5, "B2 (1,0)");
  o.require(weyl_character(Weight({1, 0}), Flavor::D(2)).mass() == 4, "D2 (1,0)");
  for (int n = 1; n <= 3; ++n)
    for (bool is_b : {true, false}) {
      if (!is_b && n < 2) continue;
      const Flavor f = is_b ? Flavor::B(n) : Flavor::D(n);
      box(static_cast<std::size_t>(n), 3, [&](const Weight& w) {
        if (!is_dominant(w, f)) return;
        const auto c = weyl_character(w, f);
        o.require(c.mass() == weyl_dim(w, f), "mass of " + f.tag() + std::to_string(n) + " " + w.to_string());
        o.require(check_triangularity(w, f), "triangularity of " + f.tag() + std::to_string(n) + " " + w.to_string());
      });
    }
  for (int n = 2; n <= 3; ++n) {
    const Flavor B = Flavor::B(n), D = Flavor::D(n);
    std::vector<Weight> all, dom;
    box(static_cast<std::size_t>(n), 3, [&](const Weight& w) { all.push_back(w); });
    for (const auto& w : all) {
      const long last = w.coords.back();
      if (last >= 0) o.require(is_dominant(w, D) == is_dominant(w, B), "dominance lemma at " + w.to_string());
      if (last <= 0) o.require(is_dominant(w, D) == is_dominant(minus(w), B), "dominance lemma at " + w.to_string());
      if (is_dominant(w, B)) dom.push_back(w);
    }
    for (const auto& lo : dom)
      for (const auto& hi : dom)
        if (dominance_leq(lo, minus(hi), B))
          o.require(dominance_leq(lo, hi, D), "ordering lemma at " + lo.to_string() + ", " + hi.to_string());
  }
  return o;
}

// ------------------------------------------------------------------ AC7

Outcome ac7() {
  using namespace weights;
  Outcome o;
  const auto s = classify_semidirect(1, 2);
  o.require(s.size() == 4, "expected four simples");
  if (s.size() == 4) {
    o.require(s[0].kind == OrbitSimple::Kind::FixedLift && s[0].label == "1", "first lift");
    o.require(s[1].kind == OrbitSimple::Kind::FixedLift && s[1].label == "delta", "second lift");
    o.require(s[2].kind == OrbitSimple::Kind::Induced && s[2].rep == Weight({1}), "Induced(1)");
    o.require(s[3].kind == OrbitSimple::Kind::Induced && s[3].rep == Weight({2}), "Induced(2)");
  }
  for (long p : {2L, 3L})
    for (long endH : {1L, 2L, 3L}) {
      o.require(endo_dim(OrbitKind::FixedWithLift, p, endH) == endH, "fixed with lift");
      o.require(endo_dim(OrbitKind::Free, p, endH) == endH, "free orbit");
      o.require(endo_dim(OrbitKind::FixedWithoutLift, p, endH) == p * endH, "fixed without lift");
    }
  return o;
}

// ------------------------------------------------------------------ AC8

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LAMRING_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac8() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "lamring_acceptance_a.jsonl").string();
  const std::string b = (dir / "lamring_acceptance_b.jsonl").string();
  const std::string sweep =
      "--format records --seed 3 check --ring gw-ext-torus --field fq:7 --r 1 --sweep --bound 2 --kmax 4";
  o.require(run_cli("--out " + a + " " + sweep) == 0, "sweep run 1 did not pass");
  o.require(run_cli("--out " + b + " " + sweep) == 0, "sweep run 2 did not pass");
  const std::string ra = slurp(a), rb = slurp(b);
  o.require(!ra.empty() && ra == rb, "reports differ");
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  const std::string fixtures = FIXTURE_DIR;
  o.require(run_cli("check --ring gw-ext-torus --field fq:7 --r 1 --sweep --bound 2 --kmax 4") == 0, "pass scenario");
  o.require(run_cli("check --ring gw-ext-torus --field fq:7 --r 1 --sweep --bound 2 --kmax 4 --constants " + fixtures +
                    "/corrupt_constants.json") == 1,
            "identity failure scenario");
  o.require(run_cli("check --ring gw-ext-torus --field fq:7 --r 1 --x " + fixtures + "/malformed_element.json") == 2,
            "parse error scenario");
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion(1, "universal polynomials", 10, ac1);
  ok &= criterion(2, "lambda identities for GW(T x| Z/2)", 60, ac2);
  ok &= criterion(3, "forms oracle equivalence", 30, ac3);
  ok &= criterion(4, "hyperbolic lemma witness", 5, ac4);
  ok &= criterion(5, "<1,1> vs <2,2>", 0, ac5);
  ok &= criterion(6, "weights", 60, ac6);
  ok &= criterion(7, "semidirect classification", 0, ac7);
  ok &= criterion(8, "CLI determinism and exit codes", 0, ac8);
  return ok ? 0 : 1;
}
