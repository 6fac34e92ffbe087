#include "lamring/lambda.hpp"

#include <sstream>

namespace lamring::lambda {

namespace {

std::string join_lattice(const Lattice& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

bool is_zero_vector(const Lattice& v) {
  for (long c : v)
    if (c != 0) return false;
  return true;
}

// ---------------------------------------------------------------- Z

Series<IntegerRing> IntegerRing::direct_lambda_t(const Elt& a, int d) const {
  Series<IntegerRing> out;
  for (int i = 0; i <= d; ++i) out.push_back(binomial(a, i));
  return out;
}

// ---------------------------------------------------------------- GW(F)

GWElt GWFieldRing::normalized(std::map<forms::Scalar, BigInt> raw) const {
  std::map<forms::Scalar, BigInt> counts;
  for (auto& [a, n] : raw) {
    if (n == 0) continue;
    counts[field_.square_class(a)] += n;
  }
  if (field_.kind() == forms::FieldKind::FinitePrime) {
    const auto reps = field_.square_class_reps();
    auto it = counts.find(reps[1]);
    if (it != counts.end()) {
      // 2<u> = 2<1>: keep the non-residue count in {0, 1}
      BigInt n = it->second;
      BigInt r = n % 2;
      if (r < 0) r += 2;
      counts[reps[0]] += n - r;
      counts[reps[1]] = r;
    }
  }
  GWElt out;
  for (auto& [a, n] : counts)
    if (n != 0) out.counts.emplace(a, n);
  return out;
}

GWElt GWFieldRing::line(const forms::Scalar& a) const {
  const forms::Scalar n = field_.normalize(a);
  if (field_.is_zero(n)) throw DomainError("a rank-one form needs a nonzero scalar");
  return normalized({{n, BigInt(1)}});
}

GWElt GWFieldRing::from_counts(const std::map<forms::Scalar, BigInt>& counts) const {
  std::map<forms::Scalar, BigInt> raw;
  for (const auto& [a, n] : counts) {
    const forms::Scalar s = field_.normalize(a);
    if (field_.is_zero(s)) throw DomainError("a rank-one form needs a nonzero scalar");
    raw[field_.square_class(s)] += n;
  }
  return normalized(std::move(raw));
}

GWElt GWFieldRing::add(const Elt& a, const Elt& b) const {
  auto raw = a.counts;
  for (const auto& [s, n] : b.counts) raw[s] += n;
  return normalized(std::move(raw));
}

GWElt GWFieldRing::mul(const Elt& a, const Elt& b) const {
  std::map<forms::Scalar, BigInt> raw;
  for (const auto& [s, n] : a.counts)
    for (const auto& [t, m] : b.counts) raw[field_.square_class(field_.mul(s, t))] += n * m;
  return normalized(std::move(raw));
}

GWElt GWFieldRing::neg(const Elt& a) const { return scale(a, -1); }

GWElt GWFieldRing::scale(const Elt& a, const BigInt& c) const {
  auto raw = a.counts;
  for (auto& [s, n] : raw) n *= c;
  return normalized(std::move(raw));
}

BigInt GWFieldRing::augmentation(const Elt& a) const {
  BigInt total = 0;
  for (const auto& [s, n] : a.counts) total += n;
  return total;
}

bool GWFieldRing::is_line(const Elt& a) const { return a.counts.size() == 1 && a.counts.begin()->second == 1; }

forms::GWClass GWFieldRing::to_class(const Elt& a) const {
  auto total = forms::GWClass::zero(field_);
  for (const auto& [s, n] : a.counts) total = total + forms::GWClass::line(field_, s).scaled(n);
  return total;
}

std::vector<std::pair<Series<GWFieldRing>, BigInt>> GWFieldRing::line_factors(const Elt& a) const {
  std::vector<std::pair<Series<GWFieldRing>, BigInt>> out;
  for (const auto& [s, n] : a.counts) out.push_back({{one(), line(s)}, n});
  return out;
}

std::vector<std::pair<GWElt, BigInt>> GWFieldRing::line_decomposition(const Elt& c) const {
  std::vector<std::pair<GWElt, BigInt>> out;
  for (const auto& [s, n] : c.counts) out.emplace_back(line(s), n);
  return out;
}

std::string GWFieldRing::to_string(const Elt& a) const {
  std::vector<std::string> pos, neg;
  for (const auto& [s, n] : a.counts) {
    auto& dst = n > 0 ? pos : neg;
    for (BigInt i = 0; i < abs(n); ++i) dst.push_back(s.get_str());
  }
  auto bracket = [](const std::vector<std::string>& v) {
    std::string out = "<";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out + ">";
  };
  if (pos.empty() && neg.empty()) return "0";
  std::string out;
  if (!pos.empty()) out = bracket(pos);
  if (!neg.empty()) out += (out.empty() ? "-" : " - ") + bracket(neg);
  return out;
}

// ---------------------------------------------------------------- K(T)

KTorusRing::KTorusRing(int rank) : rank_(rank) {
  if (rank < 1) throw DomainError("torus rank must be >= 1");
}

KTorusRing::Elt KTorusRing::character(const Lattice& w) const {
  if (w.size() != static_cast<std::size_t>(rank_)) throw DomainError("character has wrong length");
  return {{w, BigInt(1)}};
}

KTorusRing::Elt KTorusRing::add(const Elt& a, const Elt& b) const {
  Elt out = a;
  for (const auto& [w, n] : b) {
    auto& slot = out[w];
    slot += n;
    if (slot == 0) out.erase(w);
  }
  return out;
}

KTorusRing::Elt KTorusRing::mul(const Elt& a, const Elt& b) const {
  Elt out;
  for (const auto& [v, n] : a)
    for (const auto& [w, m] : b) {
      Lattice s(v.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = v[i] + w[i];
      out = add(out, {{s, n * m}});
    }
  return out;
}

KTorusRing::Elt KTorusRing::scale(const Elt& a, const BigInt& c) const {
  Elt out;
  if (c == 0) return out;
  for (const auto& [w, n] : a) out.emplace(w, n * c);
  return out;
}

BigInt KTorusRing::augmentation(const Elt& a) const {
  BigInt total = 0;
  for (const auto& [w, n] : a) total += n;
  return total;
}

bool KTorusRing::is_line(const Elt& a) const { return a.size() == 1 && a.begin()->second == 1; }

std::vector<std::pair<Series<KTorusRing>, BigInt>> KTorusRing::line_factors(const Elt& a) const {
  std::vector<std::pair<Series<KTorusRing>, BigInt>> out;
  for (const auto& [w, n] : a) out.push_back({{one(), character(w)}, n});
  return out;
}

std::string KTorusRing::to_string(const Elt& a) const {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, n] : a) {
    os << (first ? "" : " + ") << n.get_str() << "*e^(" << join_lattice(w) << ")";
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- basis symbols

BasisSym BasisSym::pair(Lattice gamma) {
  if (is_zero_vector(gamma)) throw DomainError("pair symbol needs a nonzero character");
  for (long c : gamma) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& v : gamma) v = -v;
    break;
  }
  return {Kind::Pair, std::move(gamma)};
}

std::string BasisSym::key() const {
  switch (kind) {
    case Kind::One:
      return "one";
    case Kind::Delta:
      return "delta";
    case Kind::Pair:
      return "pair:" + join_lattice(gamma);
  }
  return "?";
}

std::string BasisSym::label() const {
  switch (kind) {
    case Kind::One:
      return "1";
    case Kind::Delta:
      return "d";
    case Kind::Pair:
      return "[" + join_lattice(gamma) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------- maps between rings

KExtTorusRing::Elt forgetful(const GWExtTorusRing& from, const KExtTorusRing& to, const GWExtTorusRing::Elt& x) {
  if (from.rank() != to.rank()) throw RingMismatchError("torus ranks differ");
  KExtTorusRing::Elt out;
  for (const auto& [s, c] : x) out = to.add(out, to.term(s, from.coeff_ring().augmentation(c)));
  return out;
}

GWExtTorusRing::Elt hyperbolic_map(const KExtTorusRing& from, const GWExtTorusRing& to, const KExtTorusRing::Elt& x) {
  if (from.rank() != to.rank()) throw RingMismatchError("torus ranks differ");
  const auto& gw = to.coeff_ring();
  const GWElt h = gw.add(gw.line(1), gw.line(-1));
  GWExtTorusRing::Elt out;
  for (const auto& [s, n] : x) out = to.add(out, to.term(s, gw.scale(h, n)));
  return out;
}

}  // namespace lamring::lambda
