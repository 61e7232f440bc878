#include "qntt/poly.hpp"

#include <algorithm>
#include <bit>
#include <span>
#include <stdexcept>

namespace qntt {

namespace {

// Below this size the schoolbook loop beats the recursion overhead.
constexpr std::size_t kKaratsubaCutoff = 16;

Poly schoolbook_span(std::span<const Residue> g, std::span<const Residue> h,
                     u64 m) {
  if (g.empty() || h.empty()) return {};
  Poly out(g.size() + h.size() - 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    for (std::size_t j = 0; j < h.size(); ++j)
      out[i + j] = mod_add(out[i + j], mod_mul(g[i], h[j], m), m);
  }
  return out;
}

Poly add_spans(std::span<const Residue> a, std::span<const Residue> b, u64 m) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_add(a[i], b[i], m);
  return out;
}

// g, h of equal power-of-two length; exact product of length 2n - 1.
Poly karatsuba_rec(std::span<const Residue> g, std::span<const Residue> h,
                   u64 m) {
  const std::size_t n = g.size();
  if (n <= kKaratsubaCutoff) return schoolbook_span(g, h, m);
  const std::size_t half = n / 2;
  auto g_lo = g.subspan(0, half), g_hi = g.subspan(half);
  auto h_lo = h.subspan(0, half), h_hi = h.subspan(half);

  Poly a = karatsuba_rec(g_hi, h_hi, m);
  Poly b = karatsuba_rec(g_lo, h_lo, m);
  Poly gs = add_spans(g_lo, g_hi, m);
  Poly hs = add_spans(h_lo, h_hi, m);
  Poly c = karatsuba_rec(gs, hs, m);

  Poly out(2 * n - 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i];
  for (std::size_t i = 0; i < a.size(); ++i) out[n + i] = a[i];
  for (std::size_t i = 0; i < c.size(); ++i) {
    Residue mid = mod_sub(mod_sub(c[i], a[i], m), b[i], m);
    out[half + i] = mod_add(out[half + i], mid, m);
  }
  return out;
}

} // namespace

Poly schoolbook_mul(const Poly& g, const Poly& h, u64 m) {
  return schoolbook_span(g, h, m);
}

Poly reduce_mod_xn_minus_a(const Poly& g, std::size_t n, Residue a, u64 m) {
  if (n == 0) throw std::invalid_argument("reduce_mod_xn_minus_a: n >= 1");
  Poly out(n, 0);
  Residue block_scale = 1 % m; // a^(i/n) for the current block
  for (std::size_t base = 0; base < g.size() || base == 0; base += n) {
    for (std::size_t i = 0; i < n && base + i < g.size(); ++i) {
      Residue term = base == 0 ? g[base + i] % m
                               : mod_mul(g[base + i] % m, block_scale, m);
      out[i] = mod_add(out[i], term, m);
    }
    block_scale = mod_mul(block_scale, a % m, m);
    if (base + n >= g.size()) break;
  }
  return out;
}

Poly schoolbook_mul_mod(const Poly& g, const Poly& h, std::size_t n, Residue a,
                        u64 m) {
  if (g.size() > n || h.size() > n)
    throw std::invalid_argument("schoolbook_mul_mod: inputs longer than n");
  return reduce_mod_xn_minus_a(schoolbook_mul(g, h, m), n, a, m);
}

Poly karatsuba(const Poly& g, const Poly& h, u64 m) {
  if (g.empty() || h.empty()) return {};
  const std::size_t out_len = g.size() + h.size() - 1;
  const std::size_t n = std::bit_ceil(std::max(g.size(), h.size()));
  Poly gp(n, 0), hp(n, 0);
  std::copy(g.begin(), g.end(), gp.begin());
  std::copy(h.begin(), h.end(), hp.begin());
  Poly out = karatsuba_rec(gp, hp, m);
  out.resize(out_len);
  return out;
}

namespace {

// c is the constant of the modulus x^n - c, restricted to +-1 here so the
// split halves live modulo y^(n/2) - c with the same constant.
Poly dual_rec(std::span<const Residue> g, std::span<const Residue> h,
              Residue c, u64 m) {
  const std::size_t n = g.size();
  if (n == 1) return {mod_mul(g[0], h[0], m)};
  const std::size_t half = n / 2;

  Poly g0(half), g1(half), h0(half), h1(half);
  for (std::size_t i = 0; i < half; ++i) {
    g0[i] = g[2 * i]; g1[i] = g[2 * i + 1];
    h0[i] = h[2 * i]; h1[i] = h[2 * i + 1];
  }

  Poly a = dual_rec(g1, h1, c, m);
  Poly b = dual_rec(g0, h0, c, m);
  Poly sg = add_spans(g0, g1, m);
  Poly sh = add_spans(h0, h1, m);
  Poly cc = dual_rec(sg, sh, c, m);

  // even part: b + y*a  (mod y^half - c), odd part: cc - a - b
  Poly out(n);
  out[0] = mod_add(b[0], mod_mul(c, a[half - 1], m), m);
  for (std::size_t i = 1; i < half; ++i)
    out[2 * i] = mod_add(b[i], a[i - 1], m);
  for (std::size_t i = 0; i < half; ++i)
    out[2 * i + 1] = mod_sub(mod_sub(cc[i], a[i], m), b[i], m);
  return out;
}

} // namespace

Poly dual_karatsuba_mod(const Poly& g, const Poly& h, std::size_t n, int sign,
                        u64 m) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("dual_karatsuba_mod: sign must be +-1");
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("dual_karatsuba_mod: n must be a power of two");
  if (g.size() > n || h.size() > n)
    throw std::invalid_argument("dual_karatsuba_mod: inputs longer than n");
  Poly gp(n, 0), hp(n, 0);
  std::copy(g.begin(), g.end(), gp.begin());
  std::copy(h.begin(), h.end(), hp.begin());
  const Residue c = sign == 1 ? mod_neg(1 % m, m) : 1 % m;
  return dual_rec(gp, hp, c, m);
}

} // namespace qntt
