#include "lamring/symfun.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lamring/errors.hpp"

namespace lamring::symfun {

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : e) h = (h ^ static_cast<std::size_t>(v + 0x51)) * 0x100000001b3ULL;
    return h;
  }
};

void add_into(TermMap& terms, const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

// Visit every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

// e_k of a list of monomials, i.e. the T^k coefficient of prod (1 + m T).
SymPolynomial elementary_of_monomials(int n_vars, int alphabets, const std::vector<Exponents>& monomials,
                                      int k) {
  const std::size_t width = static_cast<std::size_t>(n_vars * alphabets);
  std::unordered_map<Exponents, long long, ExponentsHash> counts;
  Exponents acc(width, 0);
  for_each_subset(static_cast<int>(monomials.size()), k, [&](const std::vector<int>& subset) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int s : subset) {
      const auto& m = monomials[static_cast<std::size_t>(s)];
      for (std::size_t v = 0; v < width; ++v) acc[v] += m[v];
    }
    ++counts[acc];
  });
  SymPolynomial out(n_vars, alphabets);
  for (const auto& [e, c] : counts) out.add_term(e, BigInt(static_cast<long>(c)));
  return out;
}

bool is_partition(const Exponents& e, std::size_t from, std::size_t len) {
  for (std::size_t i = from + 1; i < from + len; ++i)
    if (e[i] > e[i - 1]) return false;
  return true;
}

// Number of 0-1 matrices with the given row sums and column sums. Columns
// are interchangeable, so the state is the sorted multiset of remaining
// column sums.
class ZeroOneCounter {
 public:
  BigInt count(std::vector<int> rows, std::vector<int> cols) {
    std::sort(rows.begin(), rows.end(), std::greater<>());
    std::sort(cols.begin(), cols.end());
    rows_ = std::move(rows);
    memo_.clear();
    return go(0, cols);
  }

 private:
  BigInt go(std::size_t row, const std::vector<int>& cols) {
    if (row == rows_.size()) {
      for (int c : cols)
        if (c != 0) return 0;
      return 1;
    }
    auto key = std::make_pair(row, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Group columns by remaining sum.
    std::vector<std::pair<int, int>> groups;  // (value, multiplicity)
    for (int c : cols) {
      if (!groups.empty() && groups.back().first == c)
        ++groups.back().second;
      else
        groups.emplace_back(c, 1);
    }
    BigInt total = 0;
    std::vector<int> take(groups.size(), 0);
    const int need = rows_[row];
    // Distribute `need` picks over groups with positive value.
    auto recurse = [&](auto&& self, std::size_t g, int left, BigInt ways) -> void {
      if (g == groups.size()) {
        if (left != 0) return;
        std::vector<int> next;
        next.reserve(cols.size());
        for (std::size_t t = 0; t < groups.size(); ++t) {
          for (int i = 0; i < take[t]; ++i) next.push_back(groups[t].first - 1);
          for (int i = take[t]; i < groups[t].second; ++i) next.push_back(groups[t].first);
        }
        std::sort(next.begin(), next.end());
        total += ways * go(row + 1, next);
        return;
      }
      const int cap = groups[g].first > 0 ? std::min(groups[g].second, left) : 0;
      for (int t = 0; t <= cap; ++t) {
        take[g] = t;
        self(self, g + 1, left - t, ways * binomial(groups[g].second, t));
      }
      take[g] = 0;
    };
    recurse(recurse, 0, need, BigInt(1));
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<int> rows_;
  std::map<std::pair<std::size_t, std::vector<int>>, BigInt> memo_;
};

// All partitions of `size` with at most `parts` parts, each at most `max_part`,
// padded with zeros to length `parts`.
void partitions(int size, int parts, int max_part, std::vector<Exponents>& out, Exponents& cur) {
  if (static_cast<int>(cur.size()) == parts) {
    if (size == 0) out.push_back(cur);
    return;
  }
  const int remaining_slots = parts - static_cast<int>(cur.size());
  for (int v = std::min(size, max_part); v >= 0; --v) {
    if (v * remaining_slots < size) break;
    cur.push_back(v);
    partitions(size - v, parts, v, out, cur);
    cur.pop_back();
  }
}

// Coefficients of the partition monomials of prod_i e_i^{a_i} in n variables,
// where a is derived from the leading partition `lambda`.
std::vector<std::pair<Exponents, BigInt>> expand_e_monomial(const Exponents& lambda, ZeroOneCounter& counter) {
  const int n = static_cast<int>(lambda.size());
  std::vector<int> rows;
  int size = 0;
  for (int i = 0; i < n; ++i) {
    const int next = i + 1 < n ? lambda[static_cast<std::size_t>(i + 1)] : 0;
    for (int rep = 0; rep < lambda[static_cast<std::size_t>(i)] - next; ++rep) rows.push_back(i + 1);
    size += lambda[static_cast<std::size_t>(i)];
  }
  std::vector<Exponents> mus;
  Exponents cur;
  partitions(size, n, static_cast<int>(rows.size()), mus, cur);
  std::vector<std::pair<Exponents, BigInt>> out;
  for (auto& mu : mus) {
    BigInt c = counter.count(rows, mu);
    if (c != 0) out.emplace_back(std::move(mu), std::move(c));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- SymPolynomial

SymPolynomial::SymPolynomial(int n_vars, int alphabets) : n_vars_(n_vars), alphabets_(alphabets) {
  if (n_vars < 0) throw DomainError("variable count must be nonnegative");
  if (alphabets != 1 && alphabets != 2) throw DomainError("one or two alphabets supported");
}

SymPolynomial SymPolynomial::constant(int n_vars, int alphabets, const BigInt& c) {
  SymPolynomial p(n_vars, alphabets);
  p.add_term(Exponents(static_cast<std::size_t>(n_vars * alphabets), 0), c);
  return p;
}

SymPolynomial SymPolynomial::variable(int n_vars, int alphabets, int alphabet, int index) {
  if (alphabet < 0 || alphabet >= alphabets || index < 0 || index >= n_vars)
    throw DomainError("variable index out of range");
  SymPolynomial p(n_vars, alphabets);
  Exponents e(static_cast<std::size_t>(n_vars * alphabets), 0);
  e[static_cast<std::size_t>(alphabet * n_vars + index)] = 1;
  p.add_term(e, 1);
  return p;
}

void SymPolynomial::add_term(const Exponents& e, const BigInt& c) {
  if (e.size() != static_cast<std::size_t>(n_vars_ * alphabets_))
    throw DomainError("exponent vector has wrong length");
  for (int v : e)
    if (v < 0) throw DomainError("negative exponent");
  add_into(terms_, e, c);
}

BigInt SymPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool SymPolynomial::is_symmetric() const {
  for (int a = 0; a < alphabets_; ++a) {
    for (int i = 0; i + 1 < n_vars_; ++i) {
      const auto lo = static_cast<std::size_t>(a * n_vars_ + i);
      for (const auto& [e, c] : terms_) {
        if (e[lo] == e[lo + 1]) continue;
        Exponents swapped = e;
        std::swap(swapped[lo], swapped[lo + 1]);
        auto it = terms_.find(swapped);
        if (it == terms_.end() || it->second != c) return false;
      }
    }
  }
  return true;
}

void SymPolynomial::check_compatible(const SymPolynomial& o) const {
  if (n_vars_ != o.n_vars_ || alphabets_ != o.alphabets_) throw DomainError("polynomial rings differ");
}

SymPolynomial SymPolynomial::operator+(const SymPolynomial& o) const {
  check_compatible(o);
  SymPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) add_into(r.terms_, e, c);
  return r;
}

SymPolynomial SymPolynomial::operator-(const SymPolynomial& o) const {
  check_compatible(o);
  SymPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) add_into(r.terms_, e, -c);
  return r;
}

SymPolynomial SymPolynomial::operator*(const SymPolynomial& o) const {
  check_compatible(o);
  SymPolynomial r(n_vars_, alphabets_);
  Exponents sum(static_cast<std::size_t>(n_vars_ * alphabets_));
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = e1[v] + e2[v];
      add_into(r.terms_, sum, c1 * c2);
    }
  }
  return r;
}

BigInt SymPolynomial::evaluate(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
  if (x.size() != static_cast<std::size_t>(n_vars_) ||
      (alphabets_ == 2 && y.size() != static_cast<std::size_t>(n_vars_)))
    throw DomainError("evaluation point has wrong length");
  BigInt total = 0;
  for (const auto& [e, c] : terms_) {
    BigInt term = c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      const BigInt& base = v < x.size() ? x[v] : y[v - x.size()];
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e[v]));
      term *= pw;
    }
    total += term;
  }
  return total;
}

std::string SymPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    std::vector<std::string> factors;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      const int alphabet = static_cast<int>(v) / std::max(n_vars_, 1);
      std::string f = (alphabet == 0 ? "x" : "y") + std::to_string(static_cast<int>(v) % n_vars_ + 1);
      if (e[v] > 1) f += "^" + std::to_string(e[v]);
      factors.push_back(std::move(f));
    }
    if (factors.empty() || mag != 1) factors.insert(factors.begin(), mag.get_str());
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    first = false;
  }
  return os.str();
}

SymPolynomial elem_sym(int n, int i, int alphabets, int alphabet) {
  if (i < 0 || i > n) throw DomainError("elem_sym: degree must satisfy 0 <= i <= n");
  if (alphabet < 0 || alphabet >= alphabets) throw DomainError("elem_sym: alphabet out of range");
  SymPolynomial p(n, alphabets);
  Exponents e(static_cast<std::size_t>(n * alphabets), 0);
  for_each_subset(n, i, [&](const std::vector<int>& subset) {
    std::fill(e.begin(), e.end(), 0);
    for (int s : subset) e[static_cast<std::size_t>(alphabet * n + s)] = 1;
    p.add_term(e, 1);
  });
  return p;
}

// ---------------------------------------------------------------- EPolynomial

EPolynomial::EPolynomial(int degree_bound, int alphabets) : degree_bound_(degree_bound), alphabets_(alphabets) {
  if (degree_bound < 0) throw DomainError("degree bound must be nonnegative");
  if (alphabets != 1 && alphabets != 2) throw DomainError("one or two alphabets supported");
}

void EPolynomial::add_term(const Exponents& e, const BigInt& c) {
  if (e.size() != static_cast<std::size_t>(degree_bound_ * alphabets_))
    throw DomainError("e-exponent vector has wrong length");
  for (int v : e)
    if (v < 0) throw DomainError("negative exponent");
  add_into(terms_, e, c);
}

BigInt EPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

EPolynomial EPolynomial::resized(int degree_bound) const {
  EPolynomial out(degree_bound, alphabets_);
  for (const auto& [e, c] : terms_) {
    Exponents f(static_cast<std::size_t>(degree_bound * alphabets_), 0);
    for (int a = 0; a < alphabets_; ++a) {
      for (int i = 0; i < degree_bound_; ++i) {
        const int v = e[static_cast<std::size_t>(a * degree_bound_ + i)];
        if (i >= degree_bound) {
          if (v != 0) throw DomainError("resized: term uses e-variable beyond new bound");
          continue;
        }
        f[static_cast<std::size_t>(a * degree_bound + i)] = v;
      }
    }
    out.add_term(f, c);
  }
  return out;
}

EPolynomial EPolynomial::specialized(int max_index) const {
  EPolynomial out(degree_bound_, alphabets_);
  for (const auto& [e, c] : terms_) {
    bool keep = true;
    for (int a = 0; a < alphabets_ && keep; ++a)
      for (int i = max_index; i < degree_bound_; ++i)
        if (e[static_cast<std::size_t>(a * degree_bound_ + i)] != 0) keep = false;
    if (keep) out.add_term(e, c);
  }
  return out;
}

SymPolynomial EPolynomial::substitute(int n) const {
  if (n < 1) throw DomainError("substitute: need at least one variable");
  std::vector<SymPolynomial> e_polys;  // index a*d + (i-1)
  for (int a = 0; a < alphabets_; ++a)
    for (int i = 1; i <= degree_bound_; ++i)
      e_polys.push_back(i <= n ? elem_sym(n, i, alphabets_, a) : SymPolynomial(n, alphabets_));
  SymPolynomial total(n, alphabets_);
  for (const auto& [e, c] : terms_) {
    SymPolynomial term = SymPolynomial::constant(n, alphabets_, c);
    for (std::size_t slot = 0; slot < e.size(); ++slot)
      for (int rep = 0; rep < e[slot]; ++rep) term = term * e_polys[slot];
    total = total + term;
  }
  return total;
}

std::vector<int> EPolynomial::weighted_degrees(int alphabet) const {
  std::vector<int> out;
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (int i = 0; i < degree_bound_; ++i) w += (i + 1) * e[static_cast<std::size_t>(alphabet * degree_bound_ + i)];
    out.push_back(w);
  }
  return out;
}

std::string EPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    std::vector<std::string> factors;
    for (int a = 0; a < alphabets_; ++a) {
      for (int i = 0; i < degree_bound_; ++i) {
        const int v = e[static_cast<std::size_t>(a * degree_bound_ + i)];
        if (v == 0) continue;
        std::string f = (a == 0 ? "ex" : "ey") + std::to_string(i + 1);
        if (v > 1) f += "^" + std::to_string(v);
        factors.push_back(std::move(f));
      }
    }
    if (factors.empty() || mag != 1) factors.insert(factors.begin(), mag.get_str());
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- reduction

namespace {

// Leading-term elimination on the partition-shaped coefficients of a
// symmetric polynomial. A symmetric polynomial is determined by these.
EPolynomial reduce_partition_part(TermMap remainder, int n, int alphabets) {
  const auto un = static_cast<std::size_t>(n);
  EPolynomial result(n, alphabets);
  ZeroOneCounter counter;
  std::map<Exponents, std::vector<std::pair<Exponents, BigInt>>> expansions;
  auto expansion = [&](const Exponents& lambda) -> const std::vector<std::pair<Exponents, BigInt>>& {
    auto it = expansions.find(lambda);
    if (it == expansions.end()) it = expansions.emplace(lambda, expand_e_monomial(lambda, counter)).first;
    return it->second;
  };

  while (!remainder.empty()) {
    const Exponents lead = remainder.begin()->first;
    const BigInt c = remainder.begin()->second;

    Exponents e_exps(static_cast<std::size_t>(n * alphabets), 0);
    std::vector<Exponents> lambdas;
    for (int a = 0; a < alphabets; ++a) {
      Exponents lambda(lead.begin() + a * n, lead.begin() + (a + 1) * n);
      for (int i = 0; i < n; ++i) {
        const int next = i + 1 < n ? lambda[static_cast<std::size_t>(i + 1)] : 0;
        e_exps[static_cast<std::size_t>(a * n + i)] = lambda[static_cast<std::size_t>(i)] - next;
      }
      lambdas.push_back(std::move(lambda));
    }
    result.add_term(e_exps, c);

    // remainder -= c * prod e^{a}, restricted to partition monomials
    const auto& ex = expansion(lambdas[0]);
    if (alphabets == 1) {
      for (const auto& [mu, cnt] : ex) add_into(remainder, mu, -c * cnt);
    } else {
      const auto& ey = expansion(lambdas[1]);
      Exponents joint(2 * un);
      for (const auto& [mx, cx] : ex) {
        std::copy(mx.begin(), mx.end(), joint.begin());
        for (const auto& [my, cy] : ey) {
          std::copy(my.begin(), my.end(), joint.begin() + static_cast<std::ptrdiff_t>(un));
          add_into(remainder, joint, -c * cx * cy);
        }
      }
    }
    if (remainder.count(lead)) throw InternalError("reduce_to_elementary: leading term did not cancel");
  }
  return result;
}

// Number of k-sets of distinct j-subsets of [n] whose union, counted with
// multiplicity, is mu. Subsets are chosen in increasing index order.
class SubsetCoverCounter {
 public:
  SubsetCoverCounter(int n, int j) {
    for_each_subset(n, j, [&](const std::vector<int>& s) { subsets_.push_back(s); });
  }

  BigInt count(const Exponents& mu) {
    memo_.clear();
    Exponents rem = mu;
    return go(0, rem);
  }

 private:
  BigInt go(std::size_t from, Exponents& rem) {
    bool done = true;
    for (int v : rem)
      if (v) done = false;
    if (done) return 1;
    auto key = std::make_pair(from, rem);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    // The lowest still-uncovered index must be covered by the next subset
    // chosen, because later subsets have lexicographically larger minima.
    int first = 0;
    while (rem[static_cast<std::size_t>(first)] == 0) ++first;
    for (std::size_t s = from; s < subsets_.size(); ++s) {
      const auto& sub = subsets_[s];
      if (sub[0] > first) break;
      if (sub[0] < first) continue;
      bool fits = true;
      for (int v : sub)
        if (rem[static_cast<std::size_t>(v)] == 0) fits = false;
      if (!fits) continue;
      for (int v : sub) --rem[static_cast<std::size_t>(v)];
      total += go(s + 1, rem);
      for (int v : sub) ++rem[static_cast<std::size_t>(v)];
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<std::vector<int>> subsets_;
  std::map<std::pair<std::size_t, Exponents>, BigInt> memo_;
};

}  // namespace

EPolynomial reduce_to_elementary(const SymPolynomial& p) {
  if (!p.is_symmetric()) throw NotSymmetricError();
  const int n = p.n_vars();
  const int alphabets = p.alphabets();
  const auto un = static_cast<std::size_t>(n);
  TermMap part;
  for (const auto& [e, c] : p.terms()) {
    bool ok = true;
    for (int a = 0; a < alphabets && ok; ++a) ok = is_partition(e, static_cast<std::size_t>(a) * un, un);
    if (ok) part.emplace(e, c);
  }
  return reduce_partition_part(std::move(part), n, alphabets);
}

// ---------------------------------------------------------------- universal polynomials

SymPolynomial universal_P_expansion(int k, int n) {
  if (k < 1) throw DomainError("universal_P: k must be >= 1");
  if (n == 0) n = k;
  if (n < 1) throw DomainError("universal_P: n must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  std::vector<Exponents> monomials;
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      Exponents m(2 * un, 0);
      m[i] = 1;
      m[un + j] = 1;
      monomials.push_back(std::move(m));
    }
  }
  return elementary_of_monomials(n, 2, monomials, k);
}

SymPolynomial universal_P_kj_expansion(int k, int j, int n) {
  if (k < 1 || j < 1) throw DomainError("universal_P_kj: k and j must be >= 1");
  if (n == 0) n = k * j;
  if (n < 1) throw DomainError("universal_P_kj: n must be >= 1");
  std::vector<Exponents> monomials;
  for_each_subset(n, j, [&](const std::vector<int>& subset) {
    Exponents m(static_cast<std::size_t>(n), 0);
    for (int s : subset) m[static_cast<std::size_t>(s)] = 1;
    monomials.push_back(std::move(m));
  });
  return elementary_of_monomials(n, 1, monomials, k);
}

// The generators below only produce the partition-shaped coefficients,
// which is all the reduction reads. The coefficient of x^lambda y^nu in
// e_k({x_i y_j}) counts 0-1 matrices with row sums lambda and column sums nu.
EPolynomial universal_P(int k, int n) {
  if (k < 1) throw DomainError("universal_P: k must be >= 1");
  if (n == 0) n = k;
  if (n < 1) throw DomainError("universal_P: n must be >= 1");
  std::vector<Exponents> parts;
  Exponents cur;
  partitions(k, n, n, parts, cur);
  ZeroOneCounter counter;
  TermMap coeffs;
  for (const auto& lambda : parts) {
    for (const auto& nu : parts) {
      BigInt c = counter.count(lambda, nu);
      if (c == 0) continue;
      Exponents joint = lambda;
      joint.insert(joint.end(), nu.begin(), nu.end());
      coeffs.emplace(std::move(joint), std::move(c));
    }
  }
  return reduce_partition_part(std::move(coeffs), n, 2).resized(k);
}

EPolynomial universal_P_kj(int k, int j, int n) {
  if (k < 1 || j < 1) throw DomainError("universal_P_kj: k and j must be >= 1");
  if (n == 0) n = k * j;
  if (n < 1) throw DomainError("universal_P_kj: n must be >= 1");
  std::vector<Exponents> parts;
  Exponents cur;
  partitions(k * j, n, k, parts, cur);
  SubsetCoverCounter counter(n, j);
  TermMap coeffs;
  for (const auto& mu : parts) {
    BigInt c = counter.count(mu);
    if (c != 0) coeffs.emplace(mu, std::move(c));
  }
  return reduce_partition_part(std::move(coeffs), n, 1).resized(k * j);
}

std::shared_ptr<const EPolynomial> UniversalTable::P(int k) {
  std::lock_guard lock(mutex_);
  auto& slot = p_[k];
  if (!slot) slot = std::make_shared<const EPolynomial>(universal_P(k));
  return slot;
}

std::shared_ptr<const EPolynomial> UniversalTable::P_kj(int k, int j) {
  std::lock_guard lock(mutex_);
  auto& slot = p_kj_[{k, j}];
  if (!slot) slot = std::make_shared<const EPolynomial>(universal_P_kj(k, j));
  return slot;
}

UniversalTable& UniversalTable::shared() {
  static UniversalTable table;
  return table;
}

}  // namespace lamring::symfun
