#include "qntt/roots.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qntt {

namespace {

bool is_pow2(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

} // namespace

Residue sample_nonresidue(u64 p, Rng& rng) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("sample_nonresidue: p must be an odd prime");
  for (int draws = 0; draws < 10000; ++draws) {
    Residue u = 1 + rng.below(p - 1);
    if (legendre_symbol(u, p) == -1) return u;
  }
  throw VerificationFailed("sample_nonresidue: no nonresidue in 10^4 draws; "
                           "is p prime?");
}

Residue tonelli_shanks(u64 p, Residue a, Residue u) {
  a %= p;
  if (a == 0) return 0;
  if (legendre_symbol(u, p) != -1)
    throw std::invalid_argument("tonelli_shanks: u is not a nonresidue");
  if (legendre_symbol(a, p) == -1) throw NotAResidue(a, p);

  // p - 1 = v * 2^s with v odd
  u64 v = p - 1;
  unsigned s = 0;
  while ((v & 1) == 0) { v >>= 1; ++s; }

  unsigned k = s;
  Residue c = mod_pow(u, v, p);
  Residue t = mod_pow(a, v, p);
  Residue r = mod_pow(a, (v + 1) / 2, p);
  while (t != 0 && t != 1) {
    unsigned i = 0;
    Residue sq = t;
    for (unsigned cand = 1; cand < k; ++cand) {
      sq = mod_mul(sq, sq, p);
      if (sq == 1) { i = cand; break; }
    }
    if (i == 0)
      throw VerificationFailed("tonelli_shanks: loop invariant broken");
    Residue d = mod_pow(c, u64{1} << (k - i - 1), p);
    k = i;
    c = mod_mul(d, d, p);
    t = mod_mul(t, c, p);
    r = mod_mul(r, d, p);
  }
  return r;
}

namespace {

u64 checked_pow_u64(u64 p, unsigned e) {
  u64 out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (static_cast<u128>(out) * p >= kModulusLimit)
      throw TooLarge("prime power exceeds 2^62");
    out *= p;
  }
  return out;
}

// Single correction step mod `pe_next`, with the derivative inverse already
// reduced mod p.
Residue hensel_step(Residue root, u64 pe_next, u64 n, Residue a_mod,
                    Residue deriv_inv) {
  Residue f = mod_sub(mod_pow(root, n, pe_next), a_mod, pe_next);
  return mod_sub(root, mod_mul(f, deriv_inv, pe_next), pe_next);
}

Residue derivative_inverse(Residue root, u64 p, u64 n) {
  Residue x1 = root % p;
  Residue fp = mod_mul(n % p, mod_pow(x1, n - 1, p), p);
  if (fp == 0) throw DerivativeVanishes(root, p);
  return mod_inverse(fp, p);
}

} // namespace

Residue hensel_lift(Residue root, u64 p, unsigned e_from, u64 n, Residue a) {
  u64 pe_next = checked_pow_u64(p, e_from + 1);
  Residue inv = derivative_inverse(root, p, n);
  return hensel_step(root % pe_next, pe_next, n, a % pe_next, inv);
}

Residue hensel_lift_to(Residue root, u64 p, unsigned e, u64 n, Residue a) {
  checked_pow_u64(p, e); // range guard
  Residue inv = derivative_inverse(root, p, n);
  u64 cur = p;
  Residue r = root % p;
  for (unsigned level = 1; level < e; ++level) {
    cur *= p;
    r = hensel_step(r, cur, n, a % cur, inv);
  }
  return r;
}

namespace {

void require_pow2_degree(u64 n, const char* who) {
  if (!is_pow2(n))
    throw std::invalid_argument(std::string(who) + ": n must be a power of two");
}

// Per-prime root of unity u^((p-1)/n) lifted to p^e. For n >= 2 its order is
// exactly n: omega^(n/2) = u^((p-1)/2) = -1.
Residue omega_mod_prime_power(u64 p, unsigned e, u64 n, Rng& rng) {
  Residue u = sample_nonresidue(p, rng);
  Residue w = mod_pow(u, (p - 1) / n, p);
  return hensel_lift_to(w, p, e, n, 1);
}

} // namespace

AlphaOmegaPair compute_alpha_omega(const Modulus& m, u64 n, Rng& rng) {
  require_pow2_degree(n, "compute_alpha_omega");
  if (n < 2)
    throw std::invalid_argument("compute_alpha_omega: n must be >= 2");
  // Fail fast: every prime must satisfy the congruence before any work.
  for (const auto& f : m.factors())
    if ((f.p - 1) % (2 * n) != 0) throw UnsupportedModulus(f.p, 2 * n);

  std::vector<std::pair<u64, u64>> alpha_parts, omega_parts;
  for (const auto& f : m.factors()) {
    Residue u = sample_nonresidue(f.p, rng);
    Residue alpha_p = mod_pow(u, (f.p - 1) / (2 * n), f.p);
    Residue omega_p = mod_pow(u, (f.p - 1) / n, f.p);
    alpha_parts.emplace_back(hensel_lift_to(alpha_p, f.p, f.e, n, f.pe - 1),
                             f.pe);
    omega_parts.emplace_back(hensel_lift_to(omega_p, f.p, f.e, n, 1), f.pe);
  }
  AlphaOmegaPair pair;
  pair.alpha = crt_combine(alpha_parts);
  pair.omega = crt_combine(omega_parts);
  pair.n = n;
  pair.a = m.value() - 1;

  const u64 mv = m.value();
  if (mod_pow(pair.alpha, n, mv) != mv - 1)
    throw VerificationFailed("alpha^n != -1");
  if (mod_pow(pair.omega, n, mv) != 1 ||
      mod_pow(pair.omega, n / 2, mv) != mv - 1)
    throw VerificationFailed("omega does not have order n");
  Residue wk = 1;
  for (u64 k = 1; k < n; ++k) {
    wk = mod_mul(wk, pair.omega, mv);
    if (gcd_u64(mod_sub(wk, 1, mv), mv) != 1)
      throw VerificationFailed("omega power difference not invertible");
  }
  return pair;
}

Residue compute_root_of_unity(const Modulus& m, u64 n, Rng& rng) {
  require_pow2_degree(n, "compute_root_of_unity");
  if (n == 1) return 1;
  for (const auto& f : m.factors())
    if ((f.p - 1) % n != 0) throw UnsupportedModulus(f.p, n);

  std::vector<std::pair<u64, u64>> parts;
  for (const auto& f : m.factors())
    parts.emplace_back(omega_mod_prime_power(f.p, f.e, n, rng), f.pe);
  Residue omega = crt_combine(parts);

  const u64 mv = m.value();
  if (mod_pow(omega, n, mv) != 1 ||
      (n >= 2 && mod_pow(omega, n / 2, mv) != mv - 1))
    throw VerificationFailed("root of unity does not have order n");
  return omega;
}

Residue find_root_of_a(const Modulus& m, u64 n, Residue a, Rng& rng) {
  require_pow2_degree(n, "find_root_of_a");
  const u64 mv = m.value();
  a %= mv;
  u64 g = gcd_u64(a, mv);
  if (g != 1) throw NotInvertible(a, g, mv);
  if (a == 1) return 1;
  if (n == 1) return a;
  if (a == mv - 1) return compute_alpha_omega(m, n, rng).alpha;

  const unsigned levels = static_cast<unsigned>(std::countr_zero(n));
  std::vector<std::pair<u64, u64>> parts;
  for (const auto& f : m.factors()) {
    Residue u = sample_nonresidue(f.p, rng);
    Residue r = a % f.p;
    for (unsigned level = 1; level <= levels; ++level) {
      if (legendre_symbol(r, f.p) == -1) throw NoRoot(f.p, level);
      r = tonelli_shanks(f.p, r, u);
    }
    parts.emplace_back(hensel_lift_to(r, f.p, f.e, n, a % f.pe), f.pe);
  }
  Residue alpha = crt_combine(parts);
  if (mod_pow(alpha, n, mv) != a)
    throw VerificationFailed("find_root_of_a: alpha^n != a");
  return alpha;
}

std::optional<DifferenceWitness>
check_invertible_differences(std::span<const Residue> points, u64 m) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      u64 g = gcd_u64(mod_sub(points[i], points[j], m), m);
      if (g != 1) return DifferenceWitness{i, j, g};
    }
  return std::nullopt;
}

std::optional<std::size_t> check_roots_of(std::span<const Residue> points,
                                          u64 m, Residue a, u64 d) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (mod_pow(points[i], d, m) != a % m) return i;
  return std::nullopt;
}

bool check_twofold(std::span<const Residue> points, u64 m) {
  if (!is_pow2(points.size()))
    throw std::invalid_argument("check_twofold: size must be a power of two");
  std::vector<Residue> cur(points.begin(), points.end());
  // Indices i and i + d/2 must square to the same value; the squared first
  // half must satisfy the same property recursively, which together covers
  // every k in the definition.
  while (cur.size() > 1) {
    const std::size_t half = cur.size() / 2;
    std::vector<Residue> squares(half);
    for (std::size_t i = 0; i < half; ++i) {
      Residue s0 = mod_mul(cur[i], cur[i], m);
      Residue s1 = mod_mul(cur[i + half], cur[i + half], m);
      if (s0 != s1) return false;
      squares[i] = s0;
    }
    cur = std::move(squares);
  }
  return true;
}

std::optional<std::vector<Residue>>
normalize_twofold(std::span<const Residue> points, u64 m) {
  if (!is_pow2(points.size()))
    throw std::invalid_argument("normalize_twofold: size must be a power of two");
  if (points.size() == 1) return std::vector<Residue>(points.begin(), points.end());

  // Pair every x with -x. Any twofold ordering must put paired opposites half
  // an index apart, so a missing partner rules out every ordering.
  std::map<Residue, std::size_t> remaining;
  for (Residue x : points) ++remaining[x % m];
  std::vector<Residue> reps;
  for (Residue x : points) {
    x %= m;
    auto it = remaining.find(x);
    if (it == remaining.end() || it->second == 0) continue; // already paired
    Residue neg = mod_neg(x, m);
    auto jt = remaining.find(neg);
    if (x == neg) {
      if (it->second < 2) return std::nullopt;
      it->second -= 2;
    } else {
      if (jt == remaining.end() || jt->second == 0) return std::nullopt;
      --it->second;
      --jt->second;
    }
    reps.push_back(x);
  }

  std::vector<Residue> squares(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    squares[i] = mod_mul(reps[i], reps[i], m);
  auto sub = normalize_twofold(squares, m);
  if (!sub) return std::nullopt;

  // Reorder representatives to follow the normalized ordering of squares.
  std::multimap<Residue, Residue> by_square;
  for (std::size_t i = 0; i < reps.size(); ++i)
    by_square.emplace(squares[i], reps[i]);
  std::vector<Residue> out;
  out.reserve(points.size());
  for (Residue s : *sub) {
    auto it = by_square.find(s);
    if (it == by_square.end())
      throw VerificationFailed("normalize_twofold: lost representative");
    out.push_back(it->second);
    by_square.erase(it);
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    out.push_back(mod_neg(out[i], m));
  if (!check_twofold(out, m))
    throw VerificationFailed("normalize_twofold: produced ordering not twofold");
  return out;
}

std::optional<AlphaOmegaPair> check_alpha_omega(std::span<const Residue> points,
                                                u64 m) {
  const std::size_t n = points.size();
  if (!is_pow2(n))
    throw std::invalid_argument("check_alpha_omega: size must be a power of two");
  if (n > 1024) throw TooLarge("check_alpha_omega: brute force bounded to 1024");
  for (Residue x : points) {
    u64 g = gcd_u64(x % m, m);
    if (g != 1) throw NotInvertible(x % m, g, m);
  }

  const Residue alpha = points[0] % m;
  AlphaOmegaPair pair;
  pair.alpha = alpha;
  pair.n = n;
  pair.a = mod_pow(alpha, n, m);
  if (n == 1) {
    pair.omega = 1;
    return pair;
  }

  std::vector<Residue> sorted_input(points.begin(), points.end());
  for (Residue& x : sorted_input) x %= m;
  std::sort(sorted_input.begin(), sorted_input.end());

  const Residue alpha_inv = mod_inverse(alpha, m);
  for (std::size_t j = 1; j < n; ++j) {
    Residue omega = mod_mul(points[j] % m, alpha_inv, m);
    if (mod_pow(omega, n, m) != 1) continue;
    std::vector<Residue> candidate(n);
    Residue cur = alpha;
    candidate[0] = cur;
    for (std::size_t i = 1; i < n; ++i) {
      cur = mod_mul(cur, omega, m);
      candidate[i] = cur;
    }
    std::sort(candidate.begin(), candidate.end());
    if (candidate != sorted_input) continue;
    bool invertible_powers = true;
    Residue wk = 1;
    for (std::size_t k = 1; k < n && invertible_powers; ++k) {
      wk = mod_mul(wk, omega, m);
      if (gcd_u64(mod_sub(wk, 1, m), m) != 1) invertible_powers = false;
    }
    if (!invertible_powers) continue;
    pair.omega = omega;
    return pair;
  }
  return std::nullopt;
}

AlphaOmegaPair generate_evaluation_pair(const Modulus& m, u64 d, Residue a,
                                        Rng& rng) {
  require_pow2_degree(d, "generate_evaluation_pair");
  const u64 mv = m.value();
  a %= mv;
  if (d == 1) return {a, 1, 1, a};
  if (a == mv - 1) return compute_alpha_omega(m, d, rng);
  Residue alpha = a == 1 ? 1 : find_root_of_a(m, d, a, rng);
  Residue omega = compute_root_of_unity(m, d, rng);
  return {alpha, omega, d, a};
}

TwofoldSet build_twofold_set(const AlphaOmegaPair& pair, const Modulus& m) {
  const u64 mv = m.value();
  const u64 d = pair.n;
  std::vector<Residue> points(d);
  Residue cur = pair.alpha % mv;
  for (u64 i = 0; i < d; ++i) {
    points[i] = cur;
    cur = mod_mul(cur, pair.omega, mv);
  }

  if (check_roots_of(points, mv, pair.a % mv, d)) throw CertificationFailed(2);
  if (!check_twofold(points, mv)) throw CertificationFailed(3);
  if (d <= 512) {
    if (check_invertible_differences(points, mv)) throw CertificationFailed(1);
  } else {
    // For points alpha*omega^i the pairwise differences factor as
    // alpha * omega^j * (omega^(i-j) - 1), so they are all units exactly when
    // alpha and every omega^k - 1 are.
    if (gcd_u64(pair.alpha % mv, mv) != 1) throw CertificationFailed(1);
    Residue wk = 1;
    for (u64 k = 1; k < d; ++k) {
      wk = mod_mul(wk, pair.omega, mv);
      if (gcd_u64(mod_sub(wk, 1, mv), mv) != 1) throw CertificationFailed(1);
    }
  }

  TwofoldSet set{m, pair.a % mv, std::move(points), {}};
  set.certified.cond1 = set.certified.cond2 = set.certified.cond3 = true;
  return set;
}

namespace {

std::vector<Residue> nth_roots_mod(u64 modulus, u64 n, Residue a) {
  std::vector<Residue> roots;
  for (Residue x = 0; x < modulus; ++x)
    if (mod_pow(x, n, modulus) == a % modulus) roots.push_back(x);
  return roots;
}

} // namespace

SetCounts enumerate_sets(const Modulus& m, u64 n, Residue a) {
  if (m.value() > 10000 || n > 8)
    throw TooLarge("enumerate_sets: bounded to m <= 10^4, n <= 8");
  require_pow2_degree(n, "enumerate_sets");
  a %= m.value();

  std::vector<std::vector<Residue>> prime_roots;
  for (const auto& f : m.factors()) {
    auto roots = nth_roots_mod(f.pe, n, a % f.pe);
    if (roots.size() != n) return {0, 0};
    prime_roots.push_back(std::move(roots));
  }

  const std::size_t k = prime_roots.size();
  double combos = 1;
  for (std::size_t j = 1; j < k; ++j)
    for (u64 t = 2; t <= n; ++t) combos *= static_cast<double>(t);
  if (combos > 1e7) throw TooLarge("enumerate_sets: too many matchings");

  // Odometer over permutations of every prime's root list but the first.
  std::vector<std::vector<std::size_t>> perm(k >= 1 ? k - 1 : 0);
  for (auto& pm : perm) {
    pm.resize(n);
    std::iota(pm.begin(), pm.end(), 0);
  }

  SetCounts counts;
  std::vector<std::pair<u64, u64>> residues(k);
  std::vector<Residue> candidate(n);
  while (true) {
    for (u64 i = 0; i < n; ++i) {
      residues[0] = {prime_roots[0][i], m.factors()[0].pe};
      for (std::size_t j = 1; j < k; ++j)
        residues[j] = {prime_roots[j][perm[j - 1][i]], m.factors()[j].pe};
      candidate[i] = crt_combine(residues);
    }
    if (!check_invertible_differences(candidate, m.value())) {
      if (normalize_twofold(candidate, m.value())) {
        ++counts.twofold_invdiff;
        bool is_ao = false;
        try {
          is_ao = check_alpha_omega(candidate, m.value()).has_value();
        } catch (const NotInvertible&) {
          is_ao = false;
        }
        if (is_ao) ++counts.alpha_omega;
      }
    }

    // advance the odometer
    std::size_t pos = 0;
    while (pos < perm.size() &&
           !std::next_permutation(perm[pos].begin(), perm[pos].end()))
      ++pos;
    if (pos == perm.size()) break;
  }
  return counts;
}

} // namespace qntt
