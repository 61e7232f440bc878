#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qntt/rng.hpp"
#include "qntt/zm.hpp"

namespace qntt {

struct TwofoldCertificate {
  bool cond1 = false; // pairwise differences invertible
  bool cond2 = false; // every point is a d-th root of the target a
  bool cond3 = false; // twofold structure under the stored indexing
  bool all() const { return cond1 && cond2 && cond3; }
};

// Indexed evaluation points a_0..a_{d-1} in Z_m for the ring Z_m[x]/<x^d - a>,
// d a power of two, plus the certification state of conditions 1-3.
struct TwofoldSet {
  Modulus m;
  Residue a = 0;
  std::vector<Residue> points;
  TwofoldCertificate certified;

  u64 d() const { return points.size(); }
};

// alpha is an n-th root of a, omega a root of unity of order n whose power
// differences are invertible; the evaluation set is alpha * omega^i.
struct AlphaOmegaPair {
  Residue alpha = 1;
  Residue omega = 1;
  u64 n = 1;
  Residue a = 1; // alpha^n mod m
};

/// Quadratic nonresidue mod p drawn from the seeded source (expected two
/// draws; a 10^4 draw cap guards against a non-prime p).
Residue sample_nonresidue(u64 p, Rng& rng);

/// Square root of a mod an odd prime p, given a nonresidue u. Returns 0 for
/// a = 0; throws NotAResidue when (a/p) = -1.
Residue tonelli_shanks(u64 p, Residue a, Residue u);

/// One Hensel step for f(x) = x^n - a: lifts a root mod p^e_from to the unique
/// root mod p^(e_from+1) congruent to it. Throws DerivativeVanishes when
/// p | n*root^(n-1).
Residue hensel_lift(Residue root, u64 p, unsigned e_from, u64 n, Residue a);

/// Iterated lift from mod p to mod p^e; the derivative inverse is computed
/// once mod p and reused across steps. a is interpreted mod p^e.
Residue hensel_lift_to(Residue root, u64 p, unsigned e, u64 n, Residue a);

/// (alpha, omega) for the ring Z_m[x]/<x^n + 1>: per prime p, a nonresidue u
/// gives alpha = u^((p-1)/2n) and omega = u^((p-1)/n); both are lifted to p^e
/// and recombined by CRT. Requires 2n | p - 1 for every prime (checked for
/// all primes before any work).
AlphaOmegaPair compute_alpha_omega(const Modulus& m, u64 n, Rng& rng);

/// Root of unity of order exactly n with invertible power differences;
/// requires n | p - 1 for every prime.
Residue compute_root_of_unity(const Modulus& m, u64 n, Rng& rng);

/// n-th root of a general invertible a: per prime, a chain of log2(n)
/// Tonelli-Shanks square roots, then Hensel lifting and CRT. The chain
/// follows a single square-root branch; when an intermediate 2^i-th root is
/// a nonresidue this throws NoRoot(p, level) rather than searching sibling
/// branches.
Residue find_root_of_a(const Modulus& m, u64 n, Residue a, Rng& rng);

/// (alpha, omega) generators of a twofold set of d-th roots of a: a = -1 goes
/// through compute_alpha_omega, a = 1 anchors alpha = 1, other units combine
/// find_root_of_a with an order-d root of unity. d = 1 degenerates to {a}.
AlphaOmegaPair generate_evaluation_pair(const Modulus& m, u64 d, Residue a,
                                        Rng& rng);

/// Points alpha * omega^i in natural index order, with all three conditions
/// explicitly verified; throws CertificationFailed on any miss.
TwofoldSet build_twofold_set(const AlphaOmegaPair& pair, const Modulus& m);

struct DifferenceWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  u64 gcd = 0;
};

/// Condition 1. Empty result means every pairwise difference is invertible;
/// otherwise the first offending pair and its gcd with m.
std::optional<DifferenceWitness>
check_invertible_differences(std::span<const Residue> points, u64 m);

/// Condition 2. Empty result means every point satisfies x^d = a mod m;
/// otherwise the first failing index.
std::optional<std::size_t> check_roots_of(std::span<const Residue> points,
                                          u64 m, Residue a, u64 d);

/// Condition 3 for the given indexing: indices congruent mod 2^(log d - k)
/// must share equal 2^k-th powers for every k.
bool check_twofold(std::span<const Residue> points, u64 m);

/// Some twofold ordering of the given points, found by recursive {x, -x}
/// pairing, or nullopt when no pairing exists. Complete for sets with
/// invertible differences (the pairing partition is then unique).
std::optional<std::vector<Residue>>
normalize_twofold(std::span<const Residue> points, u64 m);

/// Condition 4: is some reordering an (alpha, omega)-set? Anchors
/// alpha = points[0] (any member can serve) and brute-forces omega among
/// points[j]/alpha. Bounded to |points| <= 1024; throws NotInvertible when a
/// point shares a factor with m (condition 4 is then impossible).
std::optional<AlphaOmegaPair> check_alpha_omega(std::span<const Residue> points,
                                                u64 m);

struct SetCounts {
  u64 twofold_invdiff = 0; // sets of n roots of a, invertible differences,
                           // admitting some twofold ordering
  u64 alpha_omega = 0;     // the subset that are (alpha, omega)-sets
};

/// Exhaustive desk-scale enumeration (m <= 10^4, n <= 8). Candidates with
/// invertible differences are exactly the CRT matchings of the per-prime root
/// sets, so those are enumerated with the first prime's order fixed; every
/// candidate is still explicitly re-checked before counting.
SetCounts enumerate_sets(const Modulus& m, u64 n, Residue a);

} // namespace qntt
