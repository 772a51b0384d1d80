#pragma once

#include <gmpxx.h>
#include <string>

namespace modhecke {

using Int = mpz_class;
using Rat = mpq_class;

/// Serialize as "p/q" with q > 0 and gcd(p,q) = 1 (denominator kept even when 1).
std::string rat_to_string(const Rat& r);

/// Accepts "p" or "p/q"; canonicalizes.
Rat rat_from_string(const std::string& s);

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace modhecke
