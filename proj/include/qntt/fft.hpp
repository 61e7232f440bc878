#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qntt/poly.hpp"
#include "qntt/roots.hpp"

namespace qntt {

// Transform-domain image <g(a_0), ..., g(a_{d-1})> of a full split.
// Deliberately distinct from CrtForm even though d = n makes them isomorphic.
struct EvalVector {
  std::vector<Residue> values;
};

// The d residue polynomials g rem (x^(n/d) - a_i), index order matching the
// twofold set.
struct CrtForm {
  std::vector<Poly> parts;
};

// Precomputed domain for Z_m[x]/<x^n - a> with splitting degree d (d = n for
// the full split). levels[0] holds the evaluation points; levels[k] the
// iterated squares of the first half, down to a single element. The inverse
// tables mean no inverses are ever computed inside a transform loop.
struct NttPlan {
  Modulus mod;
  u64 n = 1;
  Residue a = 1;
  u64 d = 1;
  TwofoldSet set;
  Residue inv_two = 1;
  Residue inv_d = 1;
  std::vector<std::vector<Residue>> levels;
  std::vector<std::vector<Residue>> point_inv; // per level, first-half a_i^-1
  std::vector<std::vector<Residue>> half_inv;  // per level, (2 a_i)^-1
  std::optional<AlphaOmegaPair> pair; // present when built from (alpha, omega)
  bool defer_scaling = false; // crt_ifft: one division by d at the end
};

/// Assemble a plan from a certified twofold set of d-th roots of a with
/// d | n. Throws CertificationFailed if the set is not fully certified.
NttPlan make_plan(const Modulus& m, u64 n, Residue a, const TwofoldSet& set,
                  std::optional<AlphaOmegaPair> pair = std::nullopt);

/// Generate the evaluation set for the given target a and splitting degree d,
/// certify it, and build the plan. a = -1 uses the nonresidue construction
/// for roots of -1; a = 1 anchors alpha = 1; other units go through the
/// square-root chain.
NttPlan generate_plan(const Modulus& m, u64 n, Residue a, u64 d, Rng& rng);

/// Evaluations of g at every point of a full-split plan, by even/odd
/// recursion on the squared half-set. |g| = n = d.
EvalVector fft_forward(const Poly& g, const NttPlan& plan);

/// The unique length-n polynomial interpolating y on the plan's points.
Poly ifft(const EvalVector& y, const NttPlan& plan);

/// (g * h) rem x^n - a through transform, pointwise product, inverse
/// transform. Full-split plans only.
Poly fft_mul(const Poly& g, const Poly& h, const NttPlan& plan);

/// Quadratic direct evaluation at arbitrary points; oracle for fft_forward.
EvalVector vandermonde_apply(const Poly& g, std::span<const Residue> points,
                             u64 m);

/// Closed-form inverse V^-1[i][j] = (1/n) (alpha^-1 omega^-j)^i applied
/// directly in O(n^2); requires the plan to carry its (alpha, omega) pair,
/// otherwise throws StructureMissing.
Poly vandermonde_invert(const EvalVector& y, const NttPlan& plan);

/// Remainders of g modulo every x^(n/d) - a_i, by halving splits that reuse
/// the shared high-half product for both children. O(n log d).
CrtForm crt_fft(const Poly& g, const NttPlan& plan);

/// Inverse of crt_fft: pairwise combine with 2^-1 and a_i^-1 per level (or a
/// single division by d at the end when the plan defers scaling).
Poly crt_ifft(const CrtForm& parts, const NttPlan& plan);

} // namespace qntt
