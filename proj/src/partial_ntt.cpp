#include "qntt/partial_ntt.hpp"

#include <bit>
#include <stdexcept>

namespace qntt {

namespace {

bool is_pow2(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_split(u64 n, u64 d) {
  require(is_pow2(n) && is_pow2(d) && d <= n, "n and d must be powers of two with d <= n");
}

} // namespace

StridedPoly stride(const Poly& g, u64 n, u64 d) {
  require_split(n, d);
  require(g.size() == n, "stride: |g| must equal n");
  const std::size_t chunk = n / d;
  StridedPoly out;
  out.y_coeffs.reserve(d);
  for (u64 j = 0; j < d; ++j)
    out.y_coeffs.emplace_back(g.begin() + j * chunk,
                              g.begin() + (j + 1) * chunk);
  return out;
}

Poly unstride(const StridedPoly& s, u64 n, u64 d) {
  require_split(n, d);
  require(s.y_coeffs.size() == d, "unstride: need d chunks");
  const std::size_t chunk = n / d;
  Poly out;
  out.reserve(n);
  for (const Poly& c : s.y_coeffs) {
    require(c.size() == chunk, "unstride: chunk of wrong length");
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

namespace {

Poly scale_add(const Poly& base, const Poly& other, Residue scale, u64 m) {
  Poly out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    out[i] = mod_add(base[i], mod_mul(scale, other[i], m), m);
  return out;
}

// The transform recursion of the scalar FFT, run elementwise over chunks:
// chunks are only added and scaled by constants, so their degree never grows.
std::vector<Poly> poly_fft_rec(const std::vector<Poly>& g, const NttPlan& plan,
                               std::size_t level, u64 m) {
  const std::size_t r = g.size();
  if (r == 1) return g;
  const std::size_t half = r / 2;
  std::vector<Poly> even(half), odd(half);
  for (std::size_t i = 0; i < half; ++i) {
    even[i] = g[2 * i];
    odd[i] = g[2 * i + 1];
  }
  auto y0 = poly_fft_rec(even, plan, level + 1, m);
  auto y1 = poly_fft_rec(odd, plan, level + 1, m);
  const auto& pts = plan.levels[level];
  std::vector<Poly> out(r);
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = scale_add(y0[i], y1[i], pts[i], m);
    out[i + half] = scale_add(y0[i], y1[i], pts[i + half], m);
  }
  return out;
}

std::vector<Poly> poly_ifft_rec(const std::vector<Poly>& y, const NttPlan& plan,
                                std::size_t level, u64 m) {
  const std::size_t r = y.size();
  if (r == 1) return y;
  const std::size_t half = r / 2;
  const auto& hinv = plan.half_inv[level];
  std::vector<Poly> y0(half), y1(half);
  for (std::size_t i = 0; i < half; ++i) {
    const Poly& hiv = y[i + half];
    const Poly& lov = y[i];
    Poly s(lov.size()), t(lov.size());
    for (std::size_t c = 0; c < lov.size(); ++c) {
      s[c] = mod_mul(mod_add(lov[c], hiv[c], m), plan.inv_two, m);
      t[c] = mod_mul(mod_sub(lov[c], hiv[c], m), hinv[i], m);
    }
    y0[i] = std::move(s);
    y1[i] = std::move(t);
  }
  auto g0 = poly_ifft_rec(y0, plan, level + 1, m);
  auto g1 = poly_ifft_rec(y1, plan, level + 1, m);
  std::vector<Poly> out(r);
  for (std::size_t i = 0; i < half; ++i) {
    out[2 * i] = std::move(g0[i]);
    out[2 * i + 1] = std::move(g1[i]);
  }
  return out;
}

} // namespace

Poly generalized_fft_mul(const Poly& g, const Poly& h, const NttPlan& plan) {
  const u64 n = plan.n, d = plan.d;
  require(g.size() == n && h.size() == n,
          "generalized_fft_mul: inputs must have length n");
  const u64 m = plan.mod.value();
  const std::size_t chunk = n / d;

  auto sg = stride(g, n, d);
  auto sh = stride(h, n, d);
  auto eg = poly_fft_rec(sg.y_coeffs, plan, 0, m);
  auto eh = poly_fft_rec(sh.y_coeffs, plan, 0, m);

  std::vector<Poly> prod(d);
  for (u64 i = 0; i < d; ++i)
    prod[i] = reduce_mod_xn_minus_a(karatsuba(eg[i], eh[i], m), chunk,
                                    plan.levels[0][i], m);

  auto combined = poly_ifft_rec(prod, plan, 0, m);
  return unstride(StridedPoly{std::move(combined)}, n, d);
}

SplitFactors factor_xn_plus_1(const Modulus& m, u64 n, u64 d, Rng& rng) {
  require(is_pow2(n) && is_pow2(d) && 1 <= d && d <= n,
          "factor_xn_plus_1: need powers of two with d <= n");
  require(d >= 2, "factor_xn_plus_1: d must be at least 2");
  for (const auto& f : m.factors()) {
    u64 r = f.p % (4 * d);
    if (r != 2 * d + 1 && r != 1) throw CongruenceFailed(f.p, d);
  }

  AlphaOmegaPair pair = compute_alpha_omega(m, d, rng);
  TwofoldSet set = build_twofold_set(pair, m);

  // expand prod (x^(n/d) - alpha_i) and compare against x^n + 1
  const u64 mv = m.value();
  const std::size_t chunk = n / d;
  Poly acc{1};
  for (Residue alpha : set.points) {
    Poly factor(chunk + 1, 0);
    factor[0] = mod_neg(alpha, mv);
    factor[chunk] = 1;
    acc = schoolbook_mul(acc, factor, mv);
  }
  Poly expect(n + 1, 0);
  expect[0] = 1 % mv;
  expect[n] = 1 % mv;
  if (acc != expect)
    throw VerificationFailed("factor_xn_plus_1: expansion is not x^n + 1");

  return SplitFactors{n, d, std::move(set)};
}

} // namespace qntt
