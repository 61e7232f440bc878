// qntt: parameter generation, multiplication, condition checking,
// factorization, enumeration and benchmarking for Z_m[x]/<x^n - a>.
//
// Exit codes: 0 success, 1 malformed input, 2 mathematical infeasibility.

#include <chrono>
#include <cstdlib>
#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qntt/fft.hpp"
#include "qntt/partial_ntt.hpp"
#include "qntt/poly.hpp"
#include "qntt/roots.hpp"
#include "qntt/serialize.hpp"
#include "qntt/zm.hpp"

namespace {

using namespace qntt;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

u64 resolve_seed(const CLI::Option* seed_opt, u64 seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("QNTT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("QNTT_SEED must be an unsigned integer");
    }
  }
  return 0;
}

bool is_pow2(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "p^e,p^e,..." with "^e" optional
std::vector<std::pair<u64, unsigned>> parse_factors(const std::string& text) {
  std::vector<std::pair<u64, unsigned>> out;
  for (const std::string& part : split_csv(text)) {
    auto caret = part.find('^');
    u64 p = std::stoull(part.substr(0, caret));
    unsigned e = caret == std::string::npos
                     ? 1
                     : static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
    out.emplace_back(p, e);
  }
  if (out.empty()) throw std::invalid_argument("no factors given");
  return out;
}

Modulus modulus_from_flags(u64 m_flag, const std::string& factors_flag) {
  if (m_flag != 0 && !factors_flag.empty())
    throw std::invalid_argument("give either --m or --factors, not both");
  if (m_flag != 0) return Modulus::from_value(m_flag);
  if (!factors_flag.empty())
    return Modulus::from_factors(parse_factors(factors_flag));
  throw std::invalid_argument("one of --m or --factors is required");
}

Residue canonical_target(std::int64_t a, u64 m) {
  std::int64_t r = a % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<Residue>(r);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

// ---------------------------------------------------------------------------
// params
// ---------------------------------------------------------------------------

struct ParamsArgs {
  u64 m = 0;
  std::string factors;
  u64 n = 0;
  std::int64_t a = -1;
  u64 d = 0; // 0 = full split
  u64 seed = 0;
  const CLI::Option* seed_opt = nullptr;
};

int run_params(const ParamsArgs& args) {
  Modulus m = modulus_from_flags(args.m, args.factors);
  if (!is_pow2(args.n)) throw std::invalid_argument("--n must be a power of two");
  u64 d = args.d == 0 ? args.n : args.d;
  if (!is_pow2(d) || d > args.n)
    throw std::invalid_argument("--d must be a power of two dividing n");
  Residue a = canonical_target(args.a, m.value());

  Rng rng(resolve_seed(args.seed_opt, args.seed));
  AlphaOmegaPair pair = generate_evaluation_pair(m, d, a, rng);
  TwofoldSet set = build_twofold_set(pair, m);
  ParameterSet params{std::move(m), args.n, a, pair, std::move(set)};
  std::cout << params_to_json(params).dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mul
// ---------------------------------------------------------------------------

Poly crt_pipeline_mul(const Poly& g, const Poly& h, const NttPlan& plan) {
  auto fg = crt_fft(g, plan);
  auto fh = crt_fft(h, plan);
  const std::size_t chunk = plan.n / plan.d;
  CrtForm prod;
  prod.parts.reserve(plan.d);
  for (u64 i = 0; i < plan.d; ++i)
    prod.parts.push_back(
        reduce_mod_xn_minus_a(karatsuba(fg.parts[i], fh.parts[i],
                                        plan.mod.value()),
                              chunk, plan.levels[0][i], plan.mod.value()));
  return crt_ifft(prod, plan);
}

struct MulArgs {
  std::string params_path, g_path, h_path, algo;
};

int run_mul(const MulArgs& args) {
  ParameterSet params = params_from_json(read_json_file(args.params_path));
  auto [g, gm] = poly_from_json(read_json_file(args.g_path));
  auto [h, hm] = poly_from_json(read_json_file(args.h_path));
  if (gm != params.m.value() || hm != params.m.value())
    throw std::invalid_argument("polynomial modulus does not match params");
  if (g.size() > params.n || h.size() > params.n)
    throw std::invalid_argument("polynomial degree exceeds n");
  g.resize(params.n, 0);
  h.resize(params.n, 0);

  NttPlan plan = plan_from_params(params);
  const u64 m = params.m.value();
  Poly out;
  if (args.algo == "schoolbook") {
    out = schoolbook_mul_mod(g, h, params.n, params.a, m);
  } else if (args.algo == "karatsuba") {
    out = reduce_mod_xn_minus_a(karatsuba(g, h, m), params.n, params.a, m);
  } else if (args.algo == "fft") {
    if (plan.d != plan.n)
      throw StructureMissing("--algo fft needs a full split; params have d = " +
                             std::to_string(plan.d));
    out = fft_mul(g, h, plan);
  } else if (args.algo == "partial") {
    out = generalized_fft_mul(g, h, plan);
  } else if (args.algo == "crt") {
    out = crt_pipeline_mul(g, h, plan);
  } else {
    throw std::invalid_argument("unknown algorithm " + args.algo);
  }
  std::cout << poly_to_json(out, m).dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckArgs {
  u64 m = 0;
  std::string points;
  std::int64_t a = 1;
  u64 d = 0;
};

int run_check(const CheckArgs& args) {
  if (args.m == 0) throw std::invalid_argument("--m is required");
  const u64 m = args.m;
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("modulus must be odd and >= 3");
  std::vector<Residue> points;
  for (const std::string& p : split_csv(args.points))
    points.push_back(std::stoull(p) % m);
  if (points.empty() || !is_pow2(points.size()))
    throw std::invalid_argument("point count must be a nonzero power of two");
  u64 d = args.d == 0 ? points.size() : args.d;
  Residue a = canonical_target(args.a, m);

  Json report;
  Json witnesses = Json::object();

  auto w1 = check_invertible_differences(points, m);
  report["cond1"] = !w1.has_value();
  if (w1)
    witnesses["cond1"] = {{"i", w1->i}, {"j", w1->j}, {"gcd", json_int(w1->gcd)}};

  auto w2 = check_roots_of(points, m, a, d);
  report["cond2"] = !w2.has_value();
  if (w2) witnesses["cond2"] = {{"index", *w2}};

  auto ordering = normalize_twofold(points, m);
  report["cond3_some_ordering"] = ordering.has_value();
  if (ordering) {
    Json order = Json::array();
    for (Residue x : *ordering) order.push_back(json_int(x));
    witnesses["cond3_ordering"] = std::move(order);
  }

  bool cond4 = false;
  try {
    auto pair = check_alpha_omega(points, m);
    cond4 = pair.has_value();
    if (pair)
      witnesses["cond4"] = {{"alpha", json_int(pair->alpha)},
                            {"omega", json_int(pair->omega)}};
  } catch (const NotInvertible& e) {
    witnesses["cond4"] = {{"non_invertible_gcd", json_int(e.gcd())}};
  }
  report["cond4"] = cond4;
  report["witnesses"] = std::move(witnesses);
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// factor
// ---------------------------------------------------------------------------

struct FactorArgs {
  u64 m = 0;
  std::string factors;
  u64 n = 0;
  u64 d = 0;
  u64 seed = 0;
  const CLI::Option* seed_opt = nullptr;
};

int run_factor(const FactorArgs& args) {
  Modulus m = modulus_from_flags(args.m, args.factors);
  Rng rng(resolve_seed(args.seed_opt, args.seed));
  SplitFactors f = factor_xn_plus_1(m, args.n, args.d, rng);
  std::cout << split_factors_to_json(f).dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

struct EnumArgs {
  u64 m = 0;
  u64 n = 0;
  std::int64_t a = 1;
};

int run_enumerate(const EnumArgs& args) {
  Modulus m = Modulus::from_value(args.m);
  Residue a = canonical_target(args.a, m.value());
  SetCounts counts = enumerate_sets(m, args.n, a);
  Json out;
  out["m"] = json_int(m.value());
  out["n"] = json_int(args.n);
  out["a"] = json_int(a);
  out["twofold_invdiff"] = json_int(counts.twofold_invdiff);
  out["alpha_omega"] = json_int(counts.alpha_omega);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string params_path;
  std::string sizes;
  u64 trials = 11;
  std::string algos = "schoolbook,karatsuba,fft";
  std::string out_path;
  u64 seed = 0;
  const CLI::Option* seed_opt = nullptr;
};

struct BenchRecord {
  std::string algo;
  u64 m, n, d, trials;
  u64 mean_ns, p50_ns, p95_ns;
};

u64 time_once_ns(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return static_cast<u64>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

BenchRecord measure(const std::string& algo, u64 m, u64 n, u64 d, u64 trials,
                    const std::function<void()>& fn) {
  std::vector<u64> samples;
  samples.reserve(trials);
  for (u64 t = 0; t < trials; ++t) samples.push_back(time_once_ns(fn));
  std::sort(samples.begin(), samples.end());
  u64 mean = std::accumulate(samples.begin(), samples.end(), u64{0}) / trials;
  u64 p50 = samples[(trials - 1) / 2];
  u64 p95 = samples[std::min<u64>(trials - 1, trials * 95 / 100)];
  return {algo, m, n, d, trials, mean, p50, p95};
}

int run_bench(const BenchArgs& args) {
  ParameterSet base = params_from_json(read_json_file(args.params_path));
  const u64 m = base.m.value();
  const Residue a = base.a;
  if (args.trials < 1) throw std::invalid_argument("--trials must be >= 1");

  std::vector<u64> sizes;
  for (const std::string& s : split_csv(args.sizes)) {
    u64 n = std::stoull(s);
    if (!is_pow2(n)) throw std::invalid_argument("sizes must be powers of two");
    sizes.push_back(n);
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes is empty");

  auto requested = split_csv(args.algos);
  auto wants = [&](const std::string& name) {
    return std::find(requested.begin(), requested.end(), name) !=
           requested.end();
  };
  for (const std::string& r : requested)
    if (r != "schoolbook" && r != "karatsuba" && r != "fft" && r != "partial" &&
        r != "crt")
      throw std::invalid_argument("unknown algorithm " + r);

  const u64 seed = resolve_seed(args.seed_opt, args.seed);
  std::vector<BenchRecord> records;
  for (u64 n : sizes) {
    Rng data_rng(seed ^ n);
    Poly g(n), h(n);
    for (Residue& c : g) c = data_rng.below(m);
    for (Residue& c : h) c = data_rng.below(m);

    // full-split and partial plans are built once per size
    std::optional<NttPlan> full_plan, partial_plan;
    Rng plan_rng(seed);
    if (wants("fft") || wants("crt"))
      full_plan = generate_plan(base.m, n, a, n, plan_rng);
    if (wants("partial")) {
      if (base.set.d() > n)
        throw StructureMissing("params d exceeds bench size");
      partial_plan = generate_plan(base.m, n, a, base.set.d(), plan_rng);
    }

    Poly sink;
    if (wants("schoolbook"))
      records.push_back(measure("schoolbook", m, n, 0, args.trials, [&] {
        sink = schoolbook_mul_mod(g, h, n, a, m);
      }));
    if (wants("karatsuba"))
      records.push_back(measure("karatsuba", m, n, 0, args.trials, [&] {
        sink = reduce_mod_xn_minus_a(karatsuba(g, h, m), n, a, m);
      }));
    if (wants("fft"))
      records.push_back(measure("fft", m, n, n, args.trials,
                                [&] { sink = fft_mul(g, h, *full_plan); }));
    if (wants("partial"))
      records.push_back(
          measure("partial", m, n, partial_plan->d, args.trials,
                  [&] { sink = generalized_fft_mul(g, h, *partial_plan); }));
    if (wants("crt"))
      records.push_back(measure("crt", m, n, n, args.trials, [&] {
        sink = crt_pipeline_mul(g, h, *full_plan);
      }));
  }

  std::ostringstream csv;
  csv << "algo,m,n,d,trials,mean_ns,p50_ns,p95_ns\n";
  for (const BenchRecord& r : records)
    csv << r.algo << ',' << r.m << ',' << r.n << ',' << r.d << ',' << r.trials
        << ',' << r.mean_ns << ',' << r.p50_ns << ',' << r.p95_ns << "\n";
  std::cout << csv.str();
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw std::invalid_argument("cannot write " + args.out_path);
    out << csv.str();
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast multiplication in Z_m[x]/<x^n - a>"};
  app.require_subcommand(1);
  // --h is a real option of mul, so help lives on --help alone
  app.set_help_flag("--help", "print help");

  ParamsArgs params_args;
  auto* params = app.add_subcommand("params", "generate evaluation parameters");
  params->add_option("--m", params_args.m, "odd modulus (factorized here)");
  params->add_option("--factors", params_args.factors,
                     "modulus as p^e,p^e,... (for large m)");
  params->add_option("--n", params_args.n, "ring degree (power of two)")
      ->required();
  params->add_option("--a", params_args.a, "target constant of x^n - a")
      ->default_val(-1);
  params->add_option("--d", params_args.d, "splitting degree (default: n)");
  params_args.seed_opt =
      params->add_option("--seed", params_args.seed, "RNG seed");

  MulArgs mul_args;
  auto* mul = app.add_subcommand("mul", "multiply two polynomials");
  mul->set_help_flag("--help", "print help");
  mul->add_option("--params", mul_args.params_path, "parameter JSON file")
      ->required();
  mul->add_option("--g", mul_args.g_path, "first polynomial JSON")->required();
  mul->add_option("--h", mul_args.h_path, "second polynomial JSON")->required();
  mul->add_option("--algo", mul_args.algo, "multiplication algorithm")
      ->required()
      ->check(CLI::IsMember({"schoolbook", "karatsuba", "fft", "partial",
                             "crt"}));

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "report conditions 1-4 for a set");
  check->add_option("--m", check_args.m, "odd modulus")->required();
  check->add_option("--points", check_args.points, "comma-separated points")
      ->required();
  check->add_option("--a", check_args.a, "target constant")->default_val(1);
  check->add_option("--d", check_args.d, "root degree (default: point count)");

  FactorArgs factor_args;
  auto* factor = app.add_subcommand("factor", "split x^n + 1 mod m");
  factor->add_option("--m", factor_args.m, "odd modulus");
  factor->add_option("--factors", factor_args.factors, "modulus as p^e,...");
  factor->add_option("--n", factor_args.n, "ring degree")->required();
  factor->add_option("--d", factor_args.d, "number of factors")->required();
  factor_args.seed_opt =
      factor->add_option("--seed", factor_args.seed, "RNG seed");

  EnumArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate",
                                       "count twofold / (alpha,omega) sets");
  enumerate->add_option("--m", enum_args.m, "odd modulus <= 10^4")->required();
  enumerate->add_option("--n", enum_args.n, "root degree <= 8")->required();
  enumerate->add_option("--a", enum_args.a, "target constant")->default_val(1);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time the multipliers, CSV output");
  bench->add_option("--params", bench_args.params_path, "parameter JSON file")
      ->required();
  bench->add_option("--sizes", bench_args.sizes, "comma-separated ring degrees")
      ->required();
  bench->add_option("--trials", bench_args.trials, "timed runs per row")
      ->default_val(11);
  bench->add_option("--algos", bench_args.algos, "subset of algorithms")
      ->default_val("schoolbook,karatsuba,fft");
  bench->add_option("--out", bench_args.out_path, "also write the CSV here");
  bench_args.seed_opt = bench->add_option("--seed", bench_args.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (params->parsed()) return run_params(params_args);
    if (mul->parsed()) return run_mul(mul_args);
    if (check->parsed()) return run_check(check_args);
    if (factor->parsed()) return run_factor(factor_args);
    if (enumerate->parsed()) return run_enumerate(enum_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
