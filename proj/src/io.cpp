#include "lamring/io.hpp"

#include <charconv>

#include "lamring/errors.hpp"

namespace lamring::io {

using forms::FieldModel;
using forms::Scalar;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

BigInt parse_bigint(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<long>());
  if (!v.is_string()) throw ParseError(where + ": expected an integer string");
  BigInt out;
  const std::string s = v.get<std::string>();
  if (s.empty() || out.set_str(s, 10) != 0) throw ParseError(where + ": '" + s + "' is not an integer");
  return out;
}

long parse_long(const std::string& s, const std::string& where) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(where + ": '" + s + "' is not an integer");
  return v;
}

lambda::Lattice parse_lattice(const std::string& text, const std::string& where) {
  lambda::Lattice out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_long(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start), where));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const lambda::Lattice& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

FieldModel parse_field(const json& j, const std::string& where) {
  const std::string tag = require_string(j, "field", where);
  try {
    return FieldModel::parse(tag);
  } catch (const Error& e) {
    throw ParseError(where + ".field: " + e.what());
  }
}

void check_ring(const json& j, const std::string& expected) {
  const std::string ring = require_string(j, "ring", "element");
  if (ring != expected) throw RingMismatchError("element.ring: '" + ring + "' does not match ring '" + expected + "'");
}

void check_rank(const json& j, int rank) {
  const json& r = require(j, "rank_r", "element");
  if (!r.is_number_integer()) throw ParseError("element.rank_r: expected an integer");
  if (r.get<long>() != rank)
    throw RingMismatchError("element.rank_r: " + std::to_string(r.get<long>()) + " does not match torus rank " +
                            std::to_string(rank));
}

void check_field(const json& j, const FieldModel& f) {
  const FieldModel g = parse_field(j, "element");
  if (g != f) throw RingMismatchError("element.field: '" + g.tag() + "' does not match field '" + f.tag() + "'");
}

const json& terms_of(const json& j) {
  const json& t = require(j, "terms", "element");
  if (!t.is_array()) throw ParseError("element.terms: expected an array");
  return t;
}

std::string term_where(std::size_t i) { return "element.terms[" + std::to_string(i) + "]"; }

json header(const std::string& ring) {
  json out;
  out["ring"] = ring;
  return out;
}

json gw_coeff_to_json(const lambda::GWElt& c) {
  json pos = json::array(), neg = json::array();
  for (const auto& [s, n] : c.counts) {
    auto& dst = n > 0 ? pos : neg;
    for (BigInt i = 0; i < abs(n); ++i) dst.push_back(scalar_to_string(s));
  }
  return json{{"pos", pos}, {"neg", neg}};
}

lambda::GWElt gw_coeff_from_json(const lambda::GWFieldRing& R, const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected {pos, neg}");
  std::map<Scalar, BigInt> counts;
  for (const char* key : {"pos", "neg"}) {
    auto it = j.find(key);
    if (it == j.end()) continue;
    if (!it->is_array()) throw ParseError(where + "." + key + ": expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = where + "." + key + "[" + std::to_string(i) + "]";
      const json& v = (*it)[i];
      std::string text = v.is_string() ? v.get<std::string>() : v.is_number_integer() ? v.dump() : "";
      if (text.empty()) throw ParseError(w + ": expected a scalar string");
      const Scalar s = parse_scalar(R.field(), text, w);
      if (R.field().is_zero(s)) throw ParseError(w + ": scalar must be nonzero");
      counts[s] += std::string(key) == "pos" ? 1 : -1;
    }
  }
  for (const auto& [k, v] : j.items())
    if (k != "pos" && k != "neg") throw ParseError(where + ": unknown field '" + k + "'");
  return R.from_counts(counts);
}

template <class C, class CoeffToJson>
json ext_to_json(const lambda::ExtTorusRing<C>& R, const typename lambda::ExtTorusRing<C>::Elt& x,
                 const std::string& ring, CoeffToJson coeff) {
  json out = header(ring);
  out["rank_r"] = R.rank();
  json terms = json::array();
  for (const auto& [s, c] : x) terms.push_back(json{{"basis", s.key()}, {"coeff", coeff(c)}});
  out["terms"] = terms;
  return out;
}

template <class C, class CoeffFromJson>
typename lambda::ExtTorusRing<C>::Elt ext_from_json(const lambda::ExtTorusRing<C>& R, const json& j,
                                                   CoeffFromJson coeff) {
  check_rank(j, R.rank());
  typename lambda::ExtTorusRing<C>::Elt out;
  const json& terms = terms_of(j);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = term_where(i);
    const std::string key = require_string(terms[i], "basis", where);
    const auto c = coeff(require(terms[i], "coeff", where), where + ".coeff");
    typename lambda::ExtTorusRing<C>::Elt b;
    if (key == "one") {
      b = R.basis(lambda::BasisSym::one());
    } else if (key == "delta") {
      b = R.basis(lambda::BasisSym::delta());
    } else if (key.rfind("pair:", 0) == 0) {
      const auto g = parse_lattice(key.substr(5), where + ".basis");
      if (g.size() != static_cast<std::size_t>(R.rank()))
        throw ParseError(where + ".basis: character '" + key + "' has the wrong length");
      b = R.pair(g);
    } else {
      throw ParseError(where + ".basis: unknown basis '" + key + "'");
    }
    out = R.add(out, R.scale_coeff(b, c));
  }
  return out;
}

lambda::BasisSym::Kind parse_kind(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected \"one\" or \"delta\"");
  const std::string s = v.get<std::string>();
  if (s == "one") return lambda::BasisSym::Kind::One;
  if (s == "delta") return lambda::BasisSym::Kind::Delta;
  throw ParseError(where + ": expected \"one\" or \"delta\", got '" + s + "'");
}

}  // namespace

std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(const FieldModel& f, const std::string& text, const std::string& where) {
  Rational v;
  if (text.empty() || v.set_str(text, 10) != 0 || v.get_den() == 0)
    throw ParseError(where + ": '" + text + "' is not a rational number");
  v.canonicalize();
  try {
    return f.normalize(v);
  } catch (const DomainError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json matrix_to_json(const forms::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_to_text(const forms::Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t k = 0; k < m.cols(); ++k) out += (k ? "," : "") + scalar_to_string(m(i, k));
    out += "]";
  }
  return out + "]";
}

json form_to_json(const forms::GramForm& a) { return json{{"field", a.field().tag()}, {"gram", matrix_to_json(a.gram())}}; }

forms::GramForm form_from_json(const json& j) {
  const FieldModel f = parse_field(j, "form");
  const json& g = require(j, "gram", "form");
  if (!g.is_array()) throw ParseError("form.gram: expected a 2-D array");
  const std::size_t n = g.size();
  forms::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n) throw ParseError("form.gram: matrix is not square");
    for (std::size_t k = 0; k < n; ++k) {
      const json& v = g[i][k];
      const std::string w = "form.gram[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      std::string text = v.is_string() ? v.get<std::string>() : v.is_number_integer() ? v.dump() : "";
      if (text.empty()) throw ParseError(w + ": expected a scalar string");
      m(i, k) = parse_scalar(f, text, w);
    }
  }
  return forms::GramForm(f, m);
}

json class_to_json(const forms::GWClass& c) {
  json out{{"field", c.field().tag()}, {"rank", c.rank().get_str()}, {"disc", scalar_to_string(c.disc())}};
  if (auto s = c.signature()) out["signature"] = s->get_str();
  return out;
}

json element_to_json(const lambda::IntegerRing&, const BigInt& x) {
  json out = header("integers");
  json terms = json::array();
  if (x != 0) terms.push_back(json{{"basis", "one"}, {"coeff", x.get_str()}});
  out["terms"] = terms;
  return out;
}

json element_to_json(const lambda::GWFieldRing& R, const lambda::GWElt& x) {
  json out = header("gw-field");
  out["field"] = R.field().tag();
  json terms = json::array();
  if (!x.counts.empty()) terms.push_back(json{{"basis", "one"}, {"coeff", gw_coeff_to_json(x)}});
  out["terms"] = terms;
  return out;
}

json element_to_json(const lambda::KTorusRing& R, const lambda::KTorusRing::Elt& x) {
  json out = header("k-torus");
  out["rank_r"] = R.rank();
  json terms = json::array();
  for (const auto& [w, n] : x) terms.push_back(json{{"basis", "char:" + join(w)}, {"coeff", n.get_str()}});
  out["terms"] = terms;
  return out;
}

json element_to_json(const lambda::KExtTorusRing& R, const lambda::KExtTorusRing::Elt& x) {
  return ext_to_json(R, x, "k-ext-torus", [](const BigInt& c) { return json(c.get_str()); });
}

json element_to_json(const lambda::GWExtTorusRing& R, const lambda::GWExtTorusRing::Elt& x) {
  json out = ext_to_json(R, x, "gw-ext-torus", gw_coeff_to_json);
  out["field"] = R.coeff_ring().field().tag();
  return out;
}

BigInt element_from_json(const lambda::IntegerRing&, const json& j) {
  check_ring(j, "integers");
  BigInt out = 0;
  const json& terms = terms_of(j);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = term_where(i);
    const std::string key = require_string(terms[i], "basis", where);
    if (key != "one") throw ParseError(where + ".basis: unknown basis '" + key + "'");
    out += parse_bigint(require(terms[i], "coeff", where), where + ".coeff");
  }
  return out;
}

lambda::GWElt element_from_json(const lambda::GWFieldRing& R, const json& j) {
  check_ring(j, "gw-field");
  check_field(j, R.field());
  lambda::GWElt out = R.zero();
  const json& terms = terms_of(j);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = term_where(i);
    const std::string key = require_string(terms[i], "basis", where);
    if (key != "one") throw ParseError(where + ".basis: unknown basis '" + key + "'");
    out = R.add(out, gw_coeff_from_json(R, require(terms[i], "coeff", where), where + ".coeff"));
  }
  return out;
}

lambda::KTorusRing::Elt element_from_json(const lambda::KTorusRing& R, const json& j) {
  check_ring(j, "k-torus");
  check_rank(j, R.rank());
  lambda::KTorusRing::Elt out;
  const json& terms = terms_of(j);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = term_where(i);
    const std::string key = require_string(terms[i], "basis", where);
    if (key.rfind("char:", 0) != 0) throw ParseError(where + ".basis: unknown basis '" + key + "'");
    const auto w = parse_lattice(key.substr(5), where + ".basis");
    if (w.size() != static_cast<std::size_t>(R.rank()))
      throw ParseError(where + ".basis: character '" + key + "' has the wrong length");
    out = R.add(out, R.scale(R.character(w), parse_bigint(require(terms[i], "coeff", where), where + ".coeff")));
  }
  return out;
}

lambda::KExtTorusRing::Elt element_from_json(const lambda::KExtTorusRing& R, const json& j) {
  check_ring(j, "k-ext-torus");
  return ext_from_json(R, j, parse_bigint);
}

lambda::GWExtTorusRing::Elt element_from_json(const lambda::GWExtTorusRing& R, const json& j) {
  check_ring(j, "gw-ext-torus");
  check_field(j, R.coeff_ring().field());
  return ext_from_json(R, j, [&](const json& c, const std::string& where) {
    return gw_coeff_from_json(R.coeff_ring(), c, where);
  });
}

lambda::StructureConstants constants_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("constants: expected an object");
  lambda::StructureConstants sc;
  for (const auto& [k, v] : j.items()) {
    if (k == "delta_delta") {
      sc.delta_delta = parse_kind(v, "constants.delta_delta");
    } else if (k == "lambda2_pair") {
      sc.lambda2_pair = parse_kind(v, "constants.lambda2_pair");
    } else if (k == "zero_pair_coeff") {
      Rational c;
      const std::string text = v.is_string() ? v.get<std::string>() : v.is_number_integer() ? v.dump() : "";
      if (text.empty() || c.set_str(text, 10) != 0 || c == 0)
        throw ParseError("constants.zero_pair_coeff: expected a nonzero rational string");
      c.canonicalize();
      sc.zero_pair_coeff = c;
    } else {
      throw ParseError("constants: unknown field '" + k + "'");
    }
  }
  return sc;
}

json char_to_json(const weights::LaurentChar& c, const weights::Flavor& f) {
  json terms = json::array();
  for (const auto& [w, m] : c.terms) terms.push_back(json{{"weight", w.coords}, {"mult", m.get_str()}});
  return json{{"n", f.n}, {"flavor", f.tag()}, {"terms", terms}};
}

weights::LaurentChar char_from_json(const json& j) {
  const json& n = require(j, "n", "character");
  if (!n.is_number_integer()) throw ParseError("character.n: expected an integer");
  const json& terms = require(j, "terms", "character");
  if (!terms.is_array()) throw ParseError("character.terms: expected an array");
  weights::LaurentChar out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "character.terms[" + std::to_string(i) + "]";
    const json& w = require(terms[i], "weight", where);
    if (!w.is_array() || w.size() != n.get<std::size_t>())
      throw ParseError(where + ".weight: expected " + n.dump() + " integers");
    std::vector<long> coords;
    for (const auto& v : w) {
      if (!v.is_number_integer()) throw ParseError(where + ".weight: expected integers");
      coords.push_back(v.get<long>());
    }
    out.add(weights::Weight(coords), parse_bigint(require(terms[i], "mult", where), where + ".mult"));
  }
  return out;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace lamring::io
