#include "qntt/zm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qntt {

Residue mod_pow(Residue base, u64 exp, u64 m) {
  Residue acc = 1 % m;
  Residue cur = base % m;
  while (exp != 0) {
    if (exp & 1) acc = mod_mul(acc, cur, m);
    cur = mod_mul(cur, cur, m);
    exp >>= 1;
  }
  return acc;
}

BezoutTriple ext_gcd(i64 a, i64 b) {
  if (a == 0 && b == 0)
    throw std::invalid_argument("ext_gcd(0, 0) is undefined");
  // Iterative Euclid carrying both Bezout coefficient rows.
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  return {old_r, old_s, old_t};
}

Residue mod_inverse(Residue x, u64 m) {
  x %= m;
  auto [g, r, s] = ext_gcd(static_cast<i64>(x), static_cast<i64>(m));
  if (g != 1) throw NotInvertible(x, static_cast<u64>(g), m);
  i64 inv = r % static_cast<i64>(m);
  if (inv < 0) inv += static_cast<i64>(m);
  return static_cast<Residue>(inv);
}

int legendre_symbol(Residue u, u64 p) {
  Residue t = mod_pow(u % p, (p - 1) / 2, p);
  if (t == 0) return 0;
  if (t == 1) return 1;
  if (t == p - 1) return -1;
  throw VerificationFailed("legendre: p is not prime");
}

Residue crt_combine(const std::vector<std::pair<u64, u64>>& residues) {
  if (residues.empty())
    throw std::invalid_argument("crt_combine: empty residue list");
  u64 acc_mod = residues[0].second;
  Residue acc = residues[0].first % acc_mod;
  for (std::size_t i = 1; i < residues.size(); ++i) {
    auto [v, mi] = residues[i];
    auto g = ext_gcd(static_cast<i64>(acc_mod % mi), static_cast<i64>(mi)).g;
    if (g != 1) throw NonCoprimeModuli(acc_mod, mi);
    if (static_cast<u128>(acc_mod) * mi >= kModulusLimit)
      throw TooLarge("crt_combine: product of moduli exceeds 2^62");
    // x = acc + acc_mod * t with t = (v - acc) / acc_mod (mod mi)
    Residue diff = mod_sub(v % mi, acc % mi, mi);
    Residue t = mod_mul(diff, mod_inverse(acc_mod % mi, mi), mi);
    acc = acc + acc_mod * t;
    acc_mod *= mi;
  }
  return acc;
}

namespace {

// Witness set deterministic for all n < 3.3 * 10^24, amply covering u64.
constexpr u64 kMrWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool mr_composite_witness(u64 n, u64 a, u64 d, int r) {
  a %= n;
  if (a == 0) return false;
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mod_mul(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

} // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  for (u64 a : kMrWitnesses)
    if (mr_composite_witness(n, a, d, r)) return false;
  return true;
}

namespace {

void validate_modulus_range(u64 m) {
  if (m % 2 == 0)
    throw std::invalid_argument("modulus must be odd (2 must be invertible)");
  if (m < 3 || m >= kModulusLimit)
    throw std::invalid_argument("modulus must satisfy 3 <= m < 2^62");
}

} // namespace

Modulus Modulus::from_value(u64 m) {
  validate_modulus_range(m);
  if (m >= (u64{1} << 40))
    throw TooLarge("factorize: m >= 2^40; supply the factorization instead");
  std::vector<PrimePower> factors;
  u64 rest = m;
  for (u64 p = 3; p <= (u64{1} << 20) && p * p <= rest; p += 2) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    u64 pe = 1;
    while (rest % p == 0) { rest /= p; ++e; pe *= p; }
    factors.push_back({p, e, pe});
  }
  if (rest > 1) {
    // Any cofactor below 2^40 with no divisor up to 2^20 is prime.
    if (!is_prime(rest))
      throw VerificationFailed("factorize: composite cofactor " +
                               std::to_string(rest));
    factors.push_back({rest, 1, rest});
  }
  return Modulus(m, std::move(factors));
}

Modulus Modulus::from_factors(
    const std::vector<std::pair<u64, unsigned>>& factors) {
  if (factors.empty())
    throw std::invalid_argument("modulus needs at least one prime factor");
  std::vector<PrimePower> parsed;
  u128 product = 1;
  u64 prev_p = 0;
  for (auto [p, e] : factors) {
    if (p <= prev_p)
      throw std::invalid_argument("prime factors must be strictly increasing");
    prev_p = p;
    if (p % 2 == 0 || !is_prime(p))
      throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
    if (e < 1) throw std::invalid_argument("exponent must be >= 1");
    u64 pe = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (static_cast<u128>(pe) * p >= kModulusLimit)
        throw TooLarge("prime power exceeds 2^62");
      pe *= p;
    }
    product *= pe;
    if (product >= kModulusLimit) throw TooLarge("modulus exceeds 2^62");
    parsed.push_back({p, e, pe});
  }
  u64 m = static_cast<u64>(product);
  validate_modulus_range(m);
  return Modulus(m, std::move(parsed));
}

Modulus factorize(u64 m) { return Modulus::from_value(m); }

} // namespace qntt
