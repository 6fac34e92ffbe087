#include "lamring/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "lamring/errors.hpp"

namespace lamring::weights {

namespace {

void require_length(const Weight& w, const Flavor& f) {
  if (w.size() != static_cast<std::size_t>(f.n))
    throw DomainError("weight has length " + std::to_string(w.size()) + ", expected " + std::to_string(f.n));
}

// Laurent polynomials on the doubled lattice, leading term first.
using Poly = std::map<std::vector<long>, BigInt, std::greater<>>;

void poly_add(Poly& p, const std::vector<long>& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

struct SignedPerm {
  std::vector<std::size_t> perm;
  std::vector<int> signs;
  int det;
};

std::vector<SignedPerm> weyl_group(const Flavor& f) {
  const auto n = static_cast<std::size_t>(f.n);
  std::vector<SignedPerm> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int perm_sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) perm_sign = -perm_sign;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      const int flips = __builtin_popcountl(mask);
      if (f.kind == FlavorKind::D && flips % 2) continue;
      SignedPerm w{perm, std::vector<int>(n, 1), perm_sign * (flips % 2 ? -1 : 1)};
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1UL << i)) w.signs[i] = -1;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// sum over w of det(w) e^{w(mu)}
Poly alternating_sum(const std::vector<long>& mu, const std::vector<SignedPerm>& group) {
  Poly out;
  std::vector<long> image(mu.size());
  for (const auto& w : group) {
    for (std::size_t i = 0; i < mu.size(); ++i) image[i] = w.signs[i] * mu[w.perm[i]];
    poly_add(out, image, w.det);
  }
  return out;
}

// Exact division by leading terms; the divisor's leading coefficient is +-1.
Poly exact_divide(Poly num, const Poly& den) {
  if (den.empty()) throw InternalError("division by the zero polynomial");
  const auto& [lead_e, lead_c] = *den.begin();
  if (abs(lead_c) != 1) throw InternalError("divisor leading coefficient is not a unit");
  Poly quotient;
  const std::size_t guard = 1'000'000;
  for (std::size_t step = 0; !num.empty(); ++step) {
    if (step > guard) throw InternalError("Weyl character division did not terminate");
    const std::vector<long> e = num.begin()->first;
    const BigInt c = num.begin()->second * lead_c;
    std::vector<long> q(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - lead_e[i];
    poly_add(quotient, q, c);
    for (const auto& [de, dc] : den) {
      std::vector<long> t(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) t[i] = q[i] + de[i];
      poly_add(num, t, -c * dc);
    }
    if (num.count(e)) throw InternalError("Weyl character division is not exact");
  }
  return quotient;
}

}  // namespace

std::string Weight::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? "," : "") + std::to_string(coords[i]);
  return out + ")";
}

Flavor Flavor::B(int n) {
  if (n < 1) throw DomainError("type B needs n >= 1");
  return {FlavorKind::B, n};
}

Flavor Flavor::D(int n) {
  if (n < 2) throw DomainError("type D needs n >= 2");
  return {FlavorKind::D, n};
}

Flavor Flavor::parse(const std::string& tag, int n) {
  if (tag == "B") return B(n);
  if (tag == "D") return D(n);
  throw ParseError("unknown type '" + tag + "' (expected B or D)");
}

BigInt LaurentChar::mass() const {
  BigInt total = 0;
  for (const auto& [w, c] : terms) total += c;
  return total;
}

BigInt LaurentChar::at(const Weight& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? BigInt(0) : it->second;
}

void LaurentChar::add(const Weight& w, const BigInt& c) {
  if (c == 0) return;
  auto& slot = terms[w];
  slot += c;
  if (slot == 0) terms.erase(w);
}

bool is_dominant(const Weight& w, const Flavor& f) {
  require_length(w, f);
  const std::size_t n = w.size();
  for (std::size_t i = 0; i + 2 < n; ++i)
    if (w[i] < w[i + 1]) return false;
  if (f.kind == FlavorKind::B) {
    if (n >= 2 && w[n - 2] < w[n - 1]) return false;
    return w[n - 1] >= 0;
  }
  return w[n - 2] >= std::labs(w[n - 1]);
}

bool dominance_leq(const Weight& lo, const Weight& hi, const Flavor& f) {
  require_length(lo, f);
  require_length(hi, f);
  long s_lo = 0, s_hi = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    s_lo += lo[i];
    s_hi += hi[i];
    if (s_lo > s_hi) return false;
  }
  if (f.kind == FlavorKind::D) {
    const std::size_t last = lo.size() - 1;
    if (s_lo - 2 * lo[last] > s_hi - 2 * hi[last]) return false;
  }
  return true;
}

Weight minus(const Weight& w) {
  Weight out = w;
  if (!out.coords.empty()) out.coords.back() = -out.coords.back();
  return out;
}

int weyl_rank_cap() {
  if (const char* env = std::getenv("LAMRING_WEYL_RANK_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 8) return static_cast<int>(v);
  }
  return 4;
}

LaurentChar weyl_character(const Weight& w, const Flavor& f) {
  if (!is_dominant(w, f)) throw DomainError("weight " + w.to_string() + " is not dominant for type " + f.tag());
  if (f.n > weyl_rank_cap())
    throw DomainError("rank " + std::to_string(f.n) + " exceeds the Weyl group cap " + std::to_string(weyl_rank_cap()));
  const auto n = static_cast<std::size_t>(f.n);
  // 2 rho: (2n-1, 2n-3, ..., 1) for B and (2n-2, ..., 2, 0) for D
  std::vector<long> two_rho(n), shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long ni = static_cast<long>(n - i);
    two_rho[i] = f.kind == FlavorKind::B ? 2 * ni - 1 : 2 * ni - 2;
    shifted[i] = 2 * w[i] + two_rho[i];
  }
  const auto group = weyl_group(f);
  const Poly q = exact_divide(alternating_sum(shifted, group), alternating_sum(two_rho, group));
  LaurentChar out;
  for (const auto& [e, c] : q) {
    std::vector<long> half(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] % 2) throw InternalError("Weyl character has a weight off the lattice");
      half[i] = e[i] / 2;
    }
    out.add(Weight(half), c);
  }
  return out;
}

bool check_triangularity(const Weight& w, const Flavor& f) {
  const LaurentChar c = weyl_character(w, f);
  if (c.at(w) != 1) return false;
  for (const auto& [v, m] : c.terms)
    if (is_dominant(v, f) && !dominance_leq(v, w, f)) return false;
  return true;
}

Folded fold_restriction(const LaurentChar& c) {
  Folded out{{}, 0};
  for (const auto& [w, m] : c.terms) {
    Weight neg = w;
    for (auto& v : neg.coords) v = -v;
    if (c.at(neg) != m) throw DomainError("not self-dual at torus level");
    auto first = std::find_if(w.coords.begin(), w.coords.end(), [](long v) { return v != 0; });
    if (first == w.coords.end())
      out.zero_mass += m;
    else if (*first > 0)
      out.pairs[w] = m;
  }
  return out;
}

std::vector<OrbitSimple> classify_semidirect(int r, int bound) {
  if (r < 1) throw DomainError("torus rank must be >= 1");
  if (bound < 0) throw DomainError("bound must be >= 0");
  std::vector<OrbitSimple> out;
  out.push_back({OrbitSimple::Kind::FixedLift, "1", Weight(std::vector<long>(static_cast<std::size_t>(r), 0)),
                 endo_dim(OrbitKind::FixedWithLift, 2, 1)});
  out.push_back({OrbitSimple::Kind::FixedLift, "delta", Weight(std::vector<long>(static_cast<std::size_t>(r), 0)),
                 endo_dim(OrbitKind::FixedWithLift, 2, 1)});
  std::vector<long> g(static_cast<std::size_t>(r), -bound);
  while (true) {
    auto first = std::find_if(g.begin(), g.end(), [](long v) { return v != 0; });
    if (first != g.end() && *first > 0)
      out.push_back({OrbitSimple::Kind::Induced, "", Weight(g), endo_dim(OrbitKind::Free, 2, 1)});
    std::size_t i = g.size();
    while (i > 0 && g[i - 1] == bound) g[--i] = -bound;
    if (i == 0) break;
    ++g[i - 1];
  }
  return out;
}

long endo_dim(OrbitKind kind, long p, long endH) {
  if (endH < 1) throw DomainError("endomorphism dimension must be >= 1");
  if (p < 2) throw DomainError("p must be prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("p must be prime");
  switch (kind) {
    case OrbitKind::FixedWithLift:
    case OrbitKind::Free:
      return endH;
    case OrbitKind::FixedWithoutLift:
      return p * endH;
  }
  return endH;
}

}  // namespace lamring::weights
