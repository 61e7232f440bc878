#include "qntt/fft.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qntt {

namespace {

bool is_pow2(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

unsigned log2_u64(u64 x) { return static_cast<unsigned>(std::countr_zero(x)); }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

} // namespace

NttPlan make_plan(const Modulus& m, u64 n, Residue a, const TwofoldSet& set,
                  std::optional<AlphaOmegaPair> pair) {
  require(is_pow2(n), "make_plan: n must be a power of two");
  const u64 d = set.d();
  require(is_pow2(d) && d <= n && n % d == 0, "make_plan: d must divide n");
  require(set.a == a % m.value(), "make_plan: set targets a different a");
  if (!set.certified.all()) {
    int failing = !set.certified.cond1 ? 1 : (!set.certified.cond2 ? 2 : 3);
    throw CertificationFailed(failing);
  }

  NttPlan plan{m, n, a % m.value(), d, set, 1, 1, {}, {}, {}, std::nullopt,
               false};
  const u64 mv = m.value();
  plan.inv_two = mod_inverse(2 % mv, mv);
  plan.inv_d = mod_inverse(d % mv, mv);
  plan.pair = std::move(pair);

  plan.levels.push_back(set.points);
  while (plan.levels.back().size() > 1) {
    const auto& prev = plan.levels.back();
    std::vector<Residue> next(prev.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = mod_mul(prev[i], prev[i], mv);
    plan.levels.push_back(std::move(next));
  }
  for (const auto& level : plan.levels) {
    std::vector<Residue> pinv(level.size() / 2), hinv(level.size() / 2);
    for (std::size_t i = 0; i < pinv.size(); ++i) {
      pinv[i] = mod_inverse(level[i], mv);
      hinv[i] = mod_mul(plan.inv_two, pinv[i], mv);
    }
    plan.point_inv.push_back(std::move(pinv));
    plan.half_inv.push_back(std::move(hinv));
  }
  return plan;
}

NttPlan generate_plan(const Modulus& m, u64 n, Residue a, u64 d, Rng& rng) {
  require(is_pow2(n) && is_pow2(d) && d <= n, "generate_plan: bad n or d");
  a %= m.value();
  AlphaOmegaPair pair = generate_evaluation_pair(m, d, a, rng);
  TwofoldSet set = build_twofold_set(pair, m);
  return make_plan(m, n, a, set, pair);
}

namespace {

std::vector<Residue> fft_rec(const std::vector<Residue>& g, const NttPlan& plan,
                             std::size_t level, u64 m) {
  const std::size_t r = g.size();
  if (r == 1) return g;
  const std::size_t half = r / 2;
  std::vector<Residue> even(half), odd(half);
  for (std::size_t i = 0; i < half; ++i) {
    even[i] = g[2 * i];
    odd[i] = g[2 * i + 1];
  }
  auto y0 = fft_rec(even, plan, level + 1, m);
  auto y1 = fft_rec(odd, plan, level + 1, m);
  const auto& pts = plan.levels[level];
  std::vector<Residue> out(r);
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = mod_add(y0[i], mod_mul(pts[i], y1[i], m), m);
    out[i + half] = mod_add(y0[i], mod_mul(pts[i + half], y1[i], m), m);
  }
  return out;
}

std::vector<Residue> ifft_rec(const std::vector<Residue>& y,
                              const NttPlan& plan, std::size_t level, u64 m) {
  const std::size_t r = y.size();
  if (r == 1) return y;
  const std::size_t half = r / 2;
  const auto& hinv = plan.half_inv[level];
  std::vector<Residue> y0(half), y1(half);
  for (std::size_t i = 0; i < half; ++i) {
    // denominator a_i - a_{i+half} = 2 a_i; the a_i factor of the even part
    // cancels, leaving a plain division by two
    y0[i] = mod_mul(mod_add(y[i], y[i + half], m), plan.inv_two, m);
    y1[i] = mod_mul(mod_sub(y[i], y[i + half], m), hinv[i], m);
  }
  auto g0 = ifft_rec(y0, plan, level + 1, m);
  auto g1 = ifft_rec(y1, plan, level + 1, m);
  std::vector<Residue> out(r);
  for (std::size_t i = 0; i < half; ++i) {
    out[2 * i] = g0[i];
    out[2 * i + 1] = g1[i];
  }
  return out;
}

} // namespace

EvalVector fft_forward(const Poly& g, const NttPlan& plan) {
  require(plan.d == plan.n, "fft_forward: plan is not a full split");
  require(g.size() == plan.n, "fft_forward: |g| must equal n");
  return EvalVector{fft_rec(g, plan, 0, plan.mod.value())};
}

Poly ifft(const EvalVector& y, const NttPlan& plan) {
  require(plan.d == plan.n, "ifft: plan is not a full split");
  require(y.values.size() == plan.n, "ifft: |y| must equal n");
  return ifft_rec(y.values, plan, 0, plan.mod.value());
}

Poly fft_mul(const Poly& g, const Poly& h, const NttPlan& plan) {
  auto tg = fft_forward(g, plan);
  auto th = fft_forward(h, plan);
  const u64 m = plan.mod.value();
  for (std::size_t i = 0; i < tg.values.size(); ++i)
    tg.values[i] = mod_mul(tg.values[i], th.values[i], m);
  return ifft(tg, plan);
}

EvalVector vandermonde_apply(const Poly& g, std::span<const Residue> points,
                             u64 m) {
  require(points.size() == g.size(),
          "vandermonde_apply: need as many points as coefficients");
  EvalVector out;
  out.values.reserve(points.size());
  for (Residue x : points) {
    Residue acc = 0;
    for (std::size_t i = g.size(); i-- > 0;)
      acc = mod_add(mod_mul(acc, x, m), g[i], m);
    out.values.push_back(acc);
  }
  return out;
}

Poly vandermonde_invert(const EvalVector& y, const NttPlan& plan) {
  require(plan.d == plan.n, "vandermonde_invert: plan is not a full split");
  require(y.values.size() == plan.n, "vandermonde_invert: |y| must equal n");
  if (!plan.pair)
    throw StructureMissing(
        "vandermonde_invert: plan lacks the (alpha, omega) structure");
  const u64 m = plan.mod.value();
  const u64 n = plan.n;
  const Residue inv_n = mod_inverse(n % m, m);
  const Residue alpha_inv = mod_inverse(plan.pair->alpha, m);
  const Residue omega_inv = mod_inverse(plan.pair->omega, m);

  Poly out(n);
  Residue row_scale = inv_n; // (1/n) * alpha^-i
  Residue omega_inv_i = 1;   // omega^-i
  for (u64 i = 0; i < n; ++i) {
    Residue acc = 0;
    Residue w = 1; // omega^(-i j)
    for (u64 j = 0; j < n; ++j) {
      acc = mod_add(acc, mod_mul(w, y.values[j], m), m);
      w = mod_mul(w, omega_inv_i, m);
    }
    out[i] = mod_mul(acc, row_scale, m);
    row_scale = mod_mul(row_scale, alpha_inv, m);
    omega_inv_i = mod_mul(omega_inv_i, omega_inv, m);
  }
  return out;
}

CrtForm crt_fft(const Poly& g, const NttPlan& plan) {
  require(g.size() == plan.n, "crt_fft: |g| must equal n");
  const u64 m = plan.mod.value();
  const unsigned logd = log2_u64(plan.d);
  std::vector<Poly> cur{g};
  for (unsigned t = 0; t < logd; ++t) {
    const std::size_t count = std::size_t{1} << t;
    const std::size_t half = (plan.n >> t) / 2;
    const auto& nodes = plan.levels[logd - t - 1];
    std::vector<Poly> next(2 * count);
    for (std::size_t v = 0; v < count; ++v) {
      const Poly& parent = cur[v];
      const Residue alpha = nodes[v];
      Poly lo(half), hi(half);
      for (std::size_t i = 0; i < half; ++i) {
        Residue scaled = mod_mul(parent[half + i], alpha, m);
        lo[i] = mod_add(parent[i], scaled, m);
        hi[i] = mod_sub(parent[i], scaled, m);
      }
      next[v] = std::move(lo);
      next[v + count] = std::move(hi);
    }
    cur = std::move(next);
  }
  return CrtForm{std::move(cur)};
}

Poly crt_ifft(const CrtForm& parts, const NttPlan& plan) {
  require(parts.parts.size() == plan.d, "crt_ifft: need d parts");
  const std::size_t part_len = plan.n / plan.d;
  for (const Poly& p : parts.parts)
    require(p.size() == part_len, "crt_ifft: parts must have length n/d");
  const u64 m = plan.mod.value();
  const unsigned logd = log2_u64(plan.d);
  std::vector<Poly> cur = parts.parts;
  for (unsigned t = logd; t-- > 0;) {
    const std::size_t count = std::size_t{1} << t;
    const std::size_t half = (plan.n >> t) / 2;
    const auto& pinv = plan.point_inv[logd - t - 1];
    const auto& hinv = plan.half_inv[logd - t - 1];
    std::vector<Poly> next(count);
    for (std::size_t v = 0; v < count; ++v) {
      const Poly& c0 = cur[v];
      const Poly& c1 = cur[v + count];
      Poly parent(2 * half);
      for (std::size_t i = 0; i < half; ++i) {
        Residue sum = mod_add(c0[i], c1[i], m);
        Residue diff = mod_sub(c0[i], c1[i], m);
        if (plan.defer_scaling) {
          parent[i] = sum;
          parent[half + i] = mod_mul(diff, pinv[v], m);
        } else {
          parent[i] = mod_mul(sum, plan.inv_two, m);
          parent[half + i] = mod_mul(diff, hinv[v], m);
        }
      }
      next[v] = std::move(parent);
    }
    cur = std::move(next);
  }
  Poly out = std::move(cur[0]);
  if (plan.defer_scaling)
    for (Residue& c : out) c = mod_mul(c, plan.inv_d, m);
  return out;
}

} // namespace qntt
