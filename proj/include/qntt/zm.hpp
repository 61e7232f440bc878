#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qntt/errors.hpp"

namespace qntt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Element of Z_m, always the canonical representative in [0, m).
using Residue = u64;

// Products of two residues must fit in a double-width machine integer.
inline constexpr u64 kModulusLimit = u64{1} << 62;

inline Residue mod_add(Residue x, Residue y, u64 m) {
  Residue s = x + y; // no overflow: x, y < 2^62
  return s >= m ? s - m : s;
}

inline Residue mod_sub(Residue x, Residue y, u64 m) {
  return x >= y ? x - y : x + (m - y);
}

inline Residue mod_neg(Residue x, u64 m) { return x == 0 ? 0 : m - x; }

inline Residue mod_mul(Residue x, Residue y, u64 m) {
  return static_cast<Residue>(static_cast<u128>(x) * y % m);
}

/// base^exp mod m by square-and-multiply; exp = 0 gives 1 mod m.
Residue mod_pow(Residue base, u64 exp, u64 m);

struct BezoutTriple {
  i64 g; // gcd(a, b) >= 0
  i64 r; // a*r + b*s = g
  i64 s;
};

/// Extended Euclid. Rejects a = b = 0.
BezoutTriple ext_gcd(i64 a, i64 b);

/// Inverse of x mod m; throws NotInvertible (with the witness gcd) when
/// gcd(x, m) > 1.
Residue mod_inverse(Residue x, u64 m);

/// Legendre symbol (u/p) in {+1, -1, 0}, computed as u^((p-1)/2) mod p.
int legendre_symbol(Residue u, u64 p);

/// Unique x mod prod(moduli) with x = value_i (mod modulus_i). Moduli must be
/// pairwise coprime (NonCoprimeModuli names the offending pair) and their
/// product must stay below 2^62.
Residue crt_combine(const std::vector<std::pair<u64, u64>>& residues);

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(u64 n);

struct PrimePower {
  u64 p;      // odd prime
  unsigned e; // exponent >= 1
  u64 pe;     // p^e
};

// Odd modulus 3 <= m < 2^62 together with its verified prime factorization.
class Modulus {
public:
  /// Factorize by trial division (m < 2^40); larger m must supply factors.
  static Modulus from_value(u64 m);
  /// Build from (p, e) pairs; verifies primality, oddness and the product.
  static Modulus from_factors(const std::vector<std::pair<u64, unsigned>>& factors);

  u64 value() const { return m_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

private:
  Modulus(u64 m, std::vector<PrimePower> factors)
      : m_(m), factors_(std::move(factors)) {}

  u64 m_;
  std::vector<PrimePower> factors_; // primes strictly increasing
};

/// Spec-level alias for Modulus::from_value.
Modulus factorize(u64 m);

} // namespace qntt
