#pragma once

#include <vector>

#include "qntt/fft.hpp"
#include "qntt/poly.hpp"

namespace qntt {

// g rewritten as sum_j c_j(x) y^j with y = x^(n/d): d coefficient polynomials
// of length n/d each. No bivariate type is ever materialized; the chunk
// vector is the whole encoding.
struct StridedPoly {
  std::vector<Poly> y_coeffs;
};

/// Pure re-chunking: y_coeffs[j][i] = g[j*(n/d) + i]. |g| = n, d | n.
StridedPoly stride(const Poly& g, u64 n, u64 d);

/// Concatenation inverse of stride.
Poly unstride(const StridedPoly& s, u64 n, u64 d);

/// (g * h) rem x^n - a for a partially splitting ring: stride, d-point
/// transform over the coefficient ring Z_m[x], one Karatsuba product per
/// evaluation point reduced mod x^(n/d) - a_i, inverse transform, unstride.
/// Accepts d <= n; d = n degenerates to the full-split pipeline.
Poly generalized_fft_mul(const Poly& g, const Poly& h, const NttPlan& plan);

// Splitting x^n + 1 = prod (x^(n/d) - alpha_i) mod m.
struct SplitFactors {
  u64 n = 0;
  u64 d = 0;
  TwofoldSet set; // the d constants, certified as d-th roots of -1
};

/// Constructive factorization of x^n + 1 into d factors of degree n/d.
/// Every prime of m must satisfy p = 2d+1 (mod 4d), or p = 1 (mod 4d) when
/// the modulus splits further than requested; otherwise CongruenceFailed.
/// The expanded product is verified against x^n + 1 before returning.
SplitFactors factor_xn_plus_1(const Modulus& m, u64 n, u64 d, Rng& rng);

} // namespace qntt
