// lamring: command-line front end.
//
//   lamring poly --k 2
//   lamring check --ring gw-ext-torus --field fq:7 --r 1 --sweep --bound 2 --kmax 4
//   lamring forms exterior --k 2 --hyperbolic 1 --field qc
//   lamring char --type B --n 2 --hw 1,0
//
// Exit codes: 0 all checks pass, 1 an identity failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "lamring/errors.hpp"
#include "lamring/forms.hpp"
#include "lamring/io.hpp"
#include "lamring/lambda.hpp"
#include "lamring/symfun.hpp"
#include "lamring/weights.hpp"

namespace {

using namespace lamring;
using io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string format = "human";
  std::string out;
  std::uint64_t seed = 0;
  bool records() const { return format == "records"; }
};

struct PolyArgs {
  int k = 0;
  int j = 0;
};

struct CheckArgs {
  std::string ring;
  std::string field;
  int r = 1;
  bool sweep = false;
  int bound = 1;
  int kmax = 0;
  int jmax = 2;
  std::string x, y, constants;
  int random = 0;
};

struct FormsArgs {
  std::string sub;
  std::string form;
  std::string field;
  int hyperbolic = -1;
  int k = 1;
  std::string lagrangian;
};

struct CharArgs {
  std::string type;
  int n = 0;
  std::string hw;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, a JSON file, or nothing (the caller treats the text as a literal).
std::optional<json> json_source(const std::string& text, const std::string& what) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return io::parse_json(text, what);
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) return io::parse_json(read_file(text), what + " '" + text + "'");
  return std::nullopt;
}

lambda::Lattice parse_coords(const std::string& text, const std::string& what) {
  lambda::Lattice out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError(what + ": '" + text + "' is not a comma-separated list of integers");
    }
  }
  if (out.empty()) throw ParseError(what + ": empty coordinate list");
  return out;
}

BigInt parse_integer_literal(const std::string& text, const std::string& what) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) throw ParseError(what + ": '" + text + "' is not an integer");
  return v;
}

void box_for_each(int r, int bound, const std::function<void(const lambda::Lattice&)>& fn) {
  lambda::Lattice g(static_cast<std::size_t>(r), -bound);
  while (true) {
    fn(g);
    std::size_t i = g.size();
    while (i > 0 && g[i - 1] == bound) g[--i] = -bound;
    if (i == 0) return;
    ++g[i - 1];
  }
}

std::vector<lambda::BasisSym> ext_basis(int r, int bound) {
  std::vector<lambda::BasisSym> out{lambda::BasisSym::one(), lambda::BasisSym::delta()};
  box_for_each(r, bound, [&](const lambda::Lattice& g) {
    for (long c : g) {
      if (c == 0) continue;
      if (c > 0) out.push_back(lambda::BasisSym::pair(g));
      break;
    }
  });
  return out;
}

template <class C>
typename lambda::ExtTorusRing<C>::Elt ext_literal(const lambda::ExtTorusRing<C>& R, const std::string& text,
                                                  const std::string& what) {
  if (text == "one") return R.one();
  if (text == "delta") return R.basis(lambda::BasisSym::delta());
  if (text.rfind("pair:", 0) == 0) {
    const auto g = parse_coords(text.substr(5), what);
    if (g.size() != static_cast<std::size_t>(R.rank())) throw ParseError(what + ": character has the wrong length");
    return R.pair(g);
  }
  throw ParseError(what + ": expected one, delta, pair:<c1,...>, inline JSON or a file");
}

struct Case {
  std::size_t x;
  std::optional<std::size_t> y;
  bool lambda2;
};

template <class Ring>
class CheckRunner {
 public:
  using Elt = typename Ring::Elt;
  using Literal = std::function<Elt(const std::string&, const std::string&)>;

  CheckRunner(const Ring& R, const CheckArgs& a, const Globals& g, Literal literal, std::vector<Elt> generators)
      : R_(R), a_(a), g_(g), literal_(std::move(literal)), gens_(std::move(generators)) {}

  int run(std::ostream& os) {
    std::vector<Elt> elems;
    std::vector<Case> cases;
    if (!a_.x.empty()) {
      elems.push_back(element(a_.x, "--x"));
      std::optional<std::size_t> y;
      if (!a_.y.empty()) {
        elems.push_back(element(a_.y, "--y"));
        y = 1;
      }
      cases.push_back({0, y, true});
    } else if (!a_.y.empty()) {
      throw ParseError("--y needs --x");
    }
    if (a_.sweep) {
      const std::size_t base = elems.size();
      elems.insert(elems.end(), gens_.begin(), gens_.end());
      for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t k = 0; k < gens_.size(); ++k) cases.push_back({base + i, base + k, k == 0});
    }
    if (a_.random > 0) {
      std::mt19937_64 rng(g_.seed);
      for (int i = 0; i < a_.random; ++i) {
        elems.push_back(random_element(rng));
        elems.push_back(random_element(rng));
        cases.push_back({elems.size() - 2, elems.size() - 1, true});
      }
    }
    if (cases.empty()) throw ParseError("check needs --x, --sweep or --random");

    std::size_t total = 0, failed = 0;
    auto emit = [&](const lambda::CheckResult<Ring>& r, const Elt& x, const Elt* y) {
      ++total;
      if (!r.pass) ++failed;
      if (g_.records()) {
        os << io::report_to_json(R_, r, x, y).dump() << '\n';
        return;
      }
      os << (r.pass ? "PASS " : "FAIL ") << r.check << " k=" << r.k;
      if (r.check == "lambda2") os << " j=" << r.j;
      os << " x=" << R_.to_string(x);
      if (y) os << " y=" << R_.to_string(*y);
      os << " lhs=" << R_.to_string(r.lhs) << " rhs=" << R_.to_string(r.rhs) << '\n';
    };
    for (const auto& c : cases) {
      const Elt& x = elems[c.x];
      if (c.y) {
        const Elt& y = elems[*c.y];
        const int k1 = a_.kmax ? a_.kmax : lambda::default_kmax_lambda1(R_, x, y);
        for (const auto& r : lambda::check_lambda1(R_, x, y, k1)) emit(r, x, &y);
        if (R_.is_line(x))
          for (const auto& r : lambda::check_line_special(R_, x, y, k1)) emit(r, x, &y);
      }
      if (c.lambda2)
        for (int j = 1; j <= a_.jmax; ++j) {
          const int k2 = a_.kmax ? a_.kmax : lambda::default_kmax_lambda2(R_, x, j);
          for (const auto& r : lambda::check_lambda2(R_, x, j, k2)) emit(r, x, nullptr);
        }
    }
    if (!g_.records()) os << total << " checks, " << failed << " failed\n";
    return failed ? kExitFail : kExitPass;
  }

 private:
  Elt element(const std::string& text, const std::string& what) {
    if (auto j = json_source(text, what)) return io::element_from_json(R_, *j);
    return literal_(text, what);
  }

  Elt random_element(std::mt19937_64& rng) {
    if (gens_.empty()) return R_.zero();
    std::uniform_int_distribution<std::size_t> pick(0, gens_.size() - 1);
    std::uniform_int_distribution<int> terms(1, 3), coeff(-2, 2);
    Elt out = R_.zero();
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
      int c = coeff(rng);
      if (c == 0) c = 1;
      out = R_.add(out, R_.scale(gens_[pick(rng)], c));
    }
    return out;
  }

  const Ring& R_;
  const CheckArgs& a_;
  const Globals& g_;
  Literal literal_;
  std::vector<Elt> gens_;
};

forms::FieldModel require_field(const std::string& tag, const std::string& ring) {
  if (tag.empty()) throw ParseError("--field is required for ring " + ring);
  return forms::FieldModel::parse(tag);
}

int cmd_check(const CheckArgs& a, const Globals& g, std::ostream& os) {
  if (a.bound < 0) throw ParseError("--bound must be >= 0");
  if (a.kmax < 0 || a.kmax > 64) throw ParseError("--kmax must be between 1 and 64");
  if (a.jmax < 1 || a.jmax > 8) throw ParseError("--jmax must be between 1 and 8");
  if (a.random < 0) throw ParseError("--random must be >= 0");
  if (a.r < 1) throw ParseError("--r must be >= 1");
  lambda::StructureConstants sc;
  if (!a.constants.empty()) {
    auto j = json_source(a.constants, "--constants");
    if (!j) throw ParseError("--constants: expected inline JSON or a file");
    sc = io::constants_from_json(*j);
  }

  if (a.ring == "integers") {
    lambda::IntegerRing R;
    std::vector<BigInt> gens;
    for (long v = -a.bound; v <= a.bound; ++v) gens.emplace_back(v);
    CheckRunner<lambda::IntegerRing> runner(R, a, g, parse_integer_literal, gens);
    return runner.run(os);
  }
  if (a.ring == "gw-field") {
    lambda::GWFieldRing R(require_field(a.field, a.ring));
    std::vector<lambda::GWElt> gens;
    for (const auto& u : R.field().square_class_reps()) gens.push_back(R.line(u));
    auto literal = [&](const std::string& t, const std::string& w) {
      const auto s = io::parse_scalar(R.field(), t, w);
      if (R.field().is_zero(s)) throw ParseError(w + ": scalar must be nonzero");
      return R.line(s);
    };
    CheckRunner<lambda::GWFieldRing> runner(R, a, g, literal, gens);
    return runner.run(os);
  }
  if (a.ring == "k-torus") {
    lambda::KTorusRing R(a.r);
    std::vector<lambda::KTorusRing::Elt> gens;
    box_for_each(a.r, a.bound, [&](const lambda::Lattice& w) { gens.push_back(R.character(w)); });
    auto literal = [&](const std::string& t, const std::string& w) {
      if (t.rfind("char:", 0) != 0) throw ParseError(w + ": expected char:<c1,...>, inline JSON or a file");
      const auto c = parse_coords(t.substr(5), w);
      if (c.size() != static_cast<std::size_t>(a.r)) throw ParseError(w + ": character has the wrong length");
      return R.character(c);
    };
    CheckRunner<lambda::KTorusRing> runner(R, a, g, literal, gens);
    return runner.run(os);
  }
  if (a.ring == "k-ext-torus") {
    lambda::KExtTorusRing R(lambda::IntegerRing{}, a.r, sc);
    std::vector<lambda::KExtTorusRing::Elt> gens;
    for (const auto& b : ext_basis(a.r, a.bound)) gens.push_back(R.basis(b));
    auto literal = [&](const std::string& t, const std::string& w) { return ext_literal(R, t, w); };
    CheckRunner<lambda::KExtTorusRing> runner(R, a, g, literal, gens);
    return runner.run(os);
  }
  if (a.ring == "gw-ext-torus") {
    lambda::GWExtTorusRing R(lambda::GWFieldRing(require_field(a.field, a.ring)), a.r, sc);
    std::vector<lambda::GWExtTorusRing::Elt> gens;
    for (const auto& b : ext_basis(a.r, a.bound))
      for (const auto& u : R.coeff_ring().field().square_class_reps())
        gens.push_back(R.term(b, R.coeff_ring().line(u)));
    auto literal = [&](const std::string& t, const std::string& w) { return ext_literal(R, t, w); };
    CheckRunner<lambda::GWExtTorusRing> runner(R, a, g, literal, gens);
    return runner.run(os);
  }
  throw ParseError("unknown ring '" + a.ring + "'");
}

int cmd_poly(const PolyArgs& a, const Globals& g, std::ostream& os) {
  if (a.k < 1) throw ParseError("--k must be >= 1");
  if (a.j < 0) throw ParseError("--j must be >= 1");
  auto& table = symfun::UniversalTable::shared();
  const std::string text = a.j ? table.P_kj(a.k, a.j)->to_string() : table.P(a.k)->to_string();
  if (g.records()) {
    json rec{{"k", a.k}, {"poly", text}};
    if (a.j) rec["j"] = a.j;
    os << rec.dump() << '\n';
  } else {
    os << text << '\n';
  }
  return kExitPass;
}

forms::GramForm load_form(const FormsArgs& a) {
  if (a.hyperbolic >= 0) {
    if (!a.form.empty()) throw ParseError("--form and --hyperbolic are exclusive");
    return forms::hyperbolic(require_field(a.field, "hyperbolic"), a.hyperbolic);
  }
  if (a.form.empty()) throw ParseError("forms needs --form or --hyperbolic");
  auto j = json_source(a.form, "--form");
  if (!j) throw ParseError("--form: expected inline JSON or a file");
  return io::form_from_json(*j);
}

void print_form(const forms::GramForm& f, const Globals& g, std::ostream& os, json extra = json::object()) {
  if (g.records()) {
    json rec = io::form_to_json(f);
    rec.update(extra);
    os << rec.dump() << '\n';
  } else {
    os << io::matrix_to_text(f.gram());
    for (const auto& [k, v] : extra.items()) os << ' ' << k << '=' << v.dump();
    os << '\n';
  }
}

int cmd_forms(const FormsArgs& a, const Globals& g, std::ostream& os) {
  const forms::GramForm form = load_form(a);
  if (a.sub == "exterior") {
    if (a.k < 0) throw ParseError("--k must be >= 0");
    print_form(forms::exterior_power(form, a.k), g, os);
  } else if (a.sub == "class") {
    const auto c = forms::gw_class(form);
    os << (g.records() ? io::class_to_json(c).dump() : c.to_string()) << '\n';
  } else if (a.sub == "reduce") {
    if (a.lagrangian.empty()) throw ParseError("reduce needs --lagrangian");
    auto j = json_source(a.lagrangian, "--lagrangian");
    if (!j || !j->is_array()) throw ParseError("--lagrangian: expected a JSON array of vectors");
    std::vector<std::vector<forms::Scalar>> vecs;
    for (std::size_t i = 0; i < j->size(); ++i) {
      const json& v = (*j)[i];
      if (!v.is_array()) throw ParseError("--lagrangian[" + std::to_string(i) + "]: expected an array");
      std::vector<forms::Scalar> vec;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string w = "--lagrangian[" + std::to_string(i) + "][" + std::to_string(k) + "]";
        const std::string text = v[k].is_string() ? v[k].get<std::string>() : v[k].dump();
        vec.push_back(io::parse_scalar(form.field(), text, w));
      }
      vecs.push_back(std::move(vec));
    }
    const auto [reduced, n] = forms::sublagrangian_reduce(form, vecs);
    print_form(reduced, g, os, json{{"n", n}});
  } else if (a.sub == "hyperbolic-witness") {
    const auto w = forms::hyperbolic_lemma_witness(form);
    if (g.records()) {
      os << json{{"field", form.field().tag()},
                 {"basis", io::matrix_to_json(w.basis)},
                 {"isometry", io::matrix_to_json(w.isometry)}}
                .dump()
         << '\n';
    } else {
      os << "basis " << io::matrix_to_text(w.basis) << '\n' << "isometry " << io::matrix_to_text(w.isometry) << '\n';
    }
  } else {
    throw ParseError("unknown forms subcommand '" + a.sub + "'");
  }
  return kExitPass;
}

int cmd_char(const CharArgs& a, const Globals& g, std::ostream& os) {
  const auto flavor = weights::Flavor::parse(a.type, a.n);
  const weights::Weight hw(parse_coords(a.hw, "--hw"));
  const auto c = weights::weyl_character(hw, flavor);
  const bool tri = weights::check_triangularity(hw, flavor);
  if (g.records()) {
    json rec = io::char_to_json(c, flavor);
    rec["hw"] = hw.coords;
    rec["mass"] = c.mass().get_str();
    rec["triangular"] = tri;
    os << rec.dump() << '\n';
  } else {
    os << "character " << flavor.tag() << flavor.n << " hw " << hw.to_string() << '\n';
    for (const auto& [w, m] : c.terms) os << "  " << w.to_string() << ": " << m.get_str() << '\n';
    os << "mass: " << c.mass().get_str() << '\n' << "triangular: " << (tri ? "true" : "false") << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lambda-ring computations on representation rings"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "human or records (one JSON object per line)")
      ->check(CLI::IsMember({"human", "records"}));
  app.add_option("--out", g.out, "write output to this file");
  app.add_option("--seed", g.seed, "seed for randomized sweeps");

  PolyArgs poly;
  auto* poly_cmd = app.add_subcommand("poly", "print P_k or P_{k,j} in elementary symmetric functions");
  poly_cmd->add_option("--k", poly.k, "degree")->required();
  poly_cmd->add_option("--j", poly.j, "inner degree for P_{k,j}");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "verify the lambda-ring identities");
  check_cmd->add_option("--ring", check.ring, "ring")
      ->required()
      ->check(CLI::IsMember({"integers", "gw-field", "k-torus", "k-ext-torus", "gw-ext-torus"}));
  check_cmd->add_option("--field", check.field, "qc, rc or fq:<q>");
  check_cmd->add_option("--r", check.r, "torus rank");
  check_cmd->add_flag("--sweep", check.sweep, "all pairs of generators within --bound");
  check_cmd->add_option("--bound", check.bound, "coordinate bound for --sweep");
  check_cmd->add_option("--kmax", check.kmax, "largest k (default from the augmentation)");
  check_cmd->add_option("--jmax", check.jmax, "largest j for lambda^k(lambda^j x)");
  check_cmd->add_option("--x", check.x, "element: literal, inline JSON or file");
  check_cmd->add_option("--y", check.y, "element: literal, inline JSON or file");
  check_cmd->add_option("--constants", check.constants, "structure constants override (JSON)");
  check_cmd->add_option("--random", check.random, "number of random virtual pairs");

  FormsArgs fa;
  auto* forms_cmd = app.add_subcommand("forms", "operations on symmetric bilinear forms");
  forms_cmd->add_option("sub", fa.sub, "exterior, class, reduce or hyperbolic-witness")
      ->required()
      ->check(CLI::IsMember({"exterior", "class", "reduce", "hyperbolic-witness"}));
  forms_cmd->add_option("--form", fa.form, "form: inline JSON or file");
  forms_cmd->add_option("--hyperbolic", fa.hyperbolic, "use the hyperbolic form of this rank");
  forms_cmd->add_option("--field", fa.field, "field for --hyperbolic");
  forms_cmd->add_option("--k", fa.k, "exterior degree");
  forms_cmd->add_option("--lagrangian", fa.lagrangian, "isotropic vectors: JSON array or file");

  CharArgs ca;
  auto* char_cmd = app.add_subcommand("char", "Weyl character of a highest weight");
  char_cmd->add_option("--type", ca.type, "B or D")->required();
  char_cmd->add_option("--n", ca.n, "rank")->required();
  char_cmd->add_option("--hw", ca.hw, "highest weight, e.g. 1,0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      std::cerr << "error: cannot write '" << g.out << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& os = g.out.empty() ? std::cout : file;

  try {
    if (*poly_cmd) return cmd_poly(poly, g, os);
    if (*check_cmd) return cmd_check(check, g, os);
    if (*forms_cmd) return cmd_forms(fa, g, os);
    if (*char_cmd) return cmd_char(ca, g, os);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return kExitUsage;
}
