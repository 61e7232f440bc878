#pragma once

#include <cstddef>
#include <vector>

#include "qntt/zm.hpp"

namespace qntt {

// Dense polynomial over Z_m, little-endian: coeffs[i] is the x^i coefficient.
// The modulus travels as a separate argument; every stored coefficient is a
// canonical representative < m.
using Poly = std::vector<Residue>;

/// Exact product in Z_m[x], length |g| + |h| - 1 (empty if either is empty).
Poly schoolbook_mul(const Poly& g, const Poly& h, u64 m);

/// Canonical length-n representative of g modulo x^n - a: coefficient i >= n
/// folds into position i - n scaled by a (cascading for i >= 2n).
Poly reduce_mod_xn_minus_a(const Poly& g, std::size_t n, Residue a, u64 m);

/// schoolbook_mul followed by the x^n - a reduction. For a = +-1 this is the
/// (anti)cyclic convolution.
Poly schoolbook_mul_mod(const Poly& g, const Poly& h, std::size_t n, Residue a,
                        u64 m);

/// Subquadratic exact product in Z_m[x]. Inputs of unequal or non-power-of-two
/// length are zero-padded internally; the result is trimmed back to
/// |g| + |h| - 1.
Poly karatsuba(const Poly& g, const Poly& h, u64 m);

/// Product in Z_m[x]/<x^n - (-sign)>: sign = +1 works modulo x^n + 1,
/// sign = -1 modulo x^n - 1. Splits into even/odd halves and reduces at every
/// recursion level.
Poly dual_karatsuba_mod(const Poly& g, const Poly& h, std::size_t n, int sign,
                        u64 m);

} // namespace qntt
