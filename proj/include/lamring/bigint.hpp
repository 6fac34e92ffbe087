#pragma once

#include <gmpxx.h>

#include <string>

namespace lamring {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
  // mpq prints integers without a denominator already
  return v.get_str();
}

// Generalized binomial coefficient n(n-1)...(n-k+1)/k!, valid for negative n.
inline BigInt binomial(const BigInt& n, long k) {
  if (k < 0) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

}  // namespace lamring
