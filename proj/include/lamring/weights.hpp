#pragma once

// Weights of types B_n and D_n: dominance, Weyl characters, folding of
// torus characters, and the simple modules of T x| Z/2.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "lamring/bigint.hpp"

namespace lamring::weights {

struct Weight {
  std::vector<long> coords;

  Weight() = default;
  explicit Weight(std::vector<long> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  long operator[](std::size_t i) const { return coords[i]; }
  auto operator<=>(const Weight&) const = default;

  std::string to_string() const;
};

enum class FlavorKind { B, D };

/// B: SO(2n+1), n >= 1. D: SO(2n), n >= 2.
struct Flavor {
  FlavorKind kind;
  int n;

  static Flavor B(int n);
  static Flavor D(int n);
  /// "B" or "D".
  static Flavor parse(const std::string& tag, int n);
  std::string tag() const { return kind == FlavorKind::B ? "B" : "D"; }
};

/// Finitely supported integer function on the weight lattice.
struct LaurentChar {
  std::map<Weight, BigInt> terms;

  BigInt mass() const;
  BigInt at(const Weight& w) const;
  void add(const Weight& w, const BigInt& c);
  bool operator==(const LaurentChar&) const = default;
};

bool is_dominant(const Weight& w, const Flavor& f);

/// lo <= hi: partial sums (C_1)..(C_n), plus (C_n^-) for D.
bool dominance_leq(const Weight& lo, const Weight& hi, const Flavor& f);

/// Flip the sign of the last coordinate.
Weight minus(const Weight& w);

/// Largest rank accepted by weyl_character; LAMRING_WEYL_RANK_CAP overrides the default of 4.
int weyl_rank_cap();

/// Character of the simple module of highest weight w.
LaurentChar weyl_character(const Weight& w, const Flavor& f);

/// Coefficient of w is 1 and every dominant weight of the character is <= w.
bool check_triangularity(const Weight& w, const Flavor& f);

struct Folded {
  /// canonical representative of {g, -g} -> multiplicity
  std::map<Weight, BigInt> pairs;
  BigInt zero_mass;
};

/// Group the weights of a negation-symmetric character into pairs.
Folded fold_restriction(const LaurentChar& c);

struct OrbitSimple {
  enum class Kind { FixedLift, Induced };
  Kind kind;
  std::string label;  // "1" or "delta" for lifts
  Weight rep;         // canonical orbit representative for induced simples
  long endo_dim;
};

/// Simple T x| Z/2-modules whose characters lie in [-bound, bound]^r.
std::vector<OrbitSimple> classify_semidirect(int r, int bound);

enum class OrbitKind { FixedWithLift, Free, FixedWithoutLift };

/// Endomorphism dimension of the simple attached to an orbit of the
/// Z/p-action, given the endomorphism dimension endH over the normal subgroup.
long endo_dim(OrbitKind kind, long p, long endH);

}  // namespace lamring::weights
