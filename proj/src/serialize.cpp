#include "qntt/serialize.hpp"

#include <stdexcept>

namespace qntt {

namespace {

constexpr u64 kJsonExactLimit = u64{1} << 53;

} // namespace

Json json_int(u64 v) {
  if (v >= kJsonExactLimit) return std::to_string(v);
  return v;
}

u64 parse_int(const Json& j) {
  if (j.is_number_unsigned()) return j.get<u64>();
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw std::invalid_argument("expected a non-negative integer");
    return static_cast<u64>(v);
  }
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("expected a decimal integer string");
    return std::stoull(s);
  }
  throw std::invalid_argument("expected an integer or decimal string");
}

Json params_to_json(const ParameterSet& params) {
  Json j;
  j["m"] = json_int(params.m.value());
  Json factors = Json::array();
  for (const auto& f : params.m.factors())
    factors.push_back(Json::array({json_int(f.p), f.e}));
  j["factors"] = std::move(factors);
  j["n"] = json_int(params.n);
  j["a"] = json_int(params.a);
  j["alpha"] = json_int(params.pair.alpha);
  j["omega"] = json_int(params.pair.omega);
  Json points = Json::array();
  for (Residue p : params.set.points) points.push_back(json_int(p));
  j["points"] = std::move(points);
  return j;
}

ParameterSet params_from_json(const Json& j) {
  std::vector<std::pair<u64, unsigned>> factors;
  for (const auto& f : j.at("factors"))
    factors.emplace_back(parse_int(f.at(0)),
                         static_cast<unsigned>(parse_int(f.at(1))));
  Modulus m = Modulus::from_factors(factors);
  if (m.value() != parse_int(j.at("m")))
    throw std::invalid_argument("params: factors do not multiply to m");
  const u64 mv = m.value();

  u64 n = parse_int(j.at("n"));
  Residue a = parse_int(j.at("a")) % mv;
  std::vector<Residue> points;
  for (const auto& p : j.at("points")) points.push_back(parse_int(p) % mv);
  if (points.empty() || (points.size() & (points.size() - 1)) != 0)
    throw std::invalid_argument("params: point count must be a power of two");

  AlphaOmegaPair pair{parse_int(j.at("alpha")) % mv,
                      parse_int(j.at("omega")) % mv, points.size(), a};

  TwofoldSet set{m, a, points, {}};
  set.certified.cond1 = !check_invertible_differences(points, mv).has_value();
  set.certified.cond2 = !check_roots_of(points, mv, a, points.size()).has_value();
  set.certified.cond3 = check_twofold(points, mv);
  if (!set.certified.all()) {
    int failing = !set.certified.cond1 ? 1 : (!set.certified.cond2 ? 2 : 3);
    throw CertificationFailed(failing);
  }
  return ParameterSet{std::move(m), n, a, pair, std::move(set)};
}

Json poly_to_json(const Poly& g, u64 m) {
  Json j;
  j["m"] = json_int(m);
  Json coeffs = Json::array();
  for (Residue c : g) coeffs.push_back(json_int(c % m));
  j["coeffs"] = std::move(coeffs);
  return j;
}

std::pair<Poly, u64> poly_from_json(const Json& j) {
  u64 m = parse_int(j.at("m"));
  if (m < 2) throw std::invalid_argument("poly: modulus must be >= 2");
  Poly g;
  for (const auto& c : j.at("coeffs")) g.push_back(parse_int(c) % m);
  return {std::move(g), m};
}

Json eval_vector_to_json(const EvalVector& v) {
  Json j;
  j["d"] = json_int(v.values.size());
  Json parts = Json::array();
  for (Residue x : v.values) parts.push_back(Json::array({json_int(x)}));
  j["parts"] = std::move(parts);
  return j;
}

EvalVector eval_vector_from_json(const Json& j) {
  EvalVector v;
  u64 d = parse_int(j.at("d"));
  for (const auto& part : j.at("parts")) {
    if (part.size() != 1)
      throw std::invalid_argument("eval vector: parts must be singletons");
    v.values.push_back(parse_int(part.at(0)));
  }
  if (v.values.size() != d)
    throw std::invalid_argument("eval vector: d does not match part count");
  return v;
}

Json crt_form_to_json(const CrtForm& f) {
  Json j;
  j["d"] = json_int(f.parts.size());
  Json parts = Json::array();
  for (const Poly& p : f.parts) {
    Json part = Json::array();
    for (Residue c : p) part.push_back(json_int(c));
    parts.push_back(std::move(part));
  }
  j["parts"] = std::move(parts);
  return j;
}

CrtForm crt_form_from_json(const Json& j) {
  CrtForm f;
  u64 d = parse_int(j.at("d"));
  for (const auto& part : j.at("parts")) {
    Poly p;
    for (const auto& c : part) p.push_back(parse_int(c));
    f.parts.push_back(std::move(p));
  }
  if (f.parts.size() != d)
    throw std::invalid_argument("crt form: d does not match part count");
  return f;
}

Json split_factors_to_json(const SplitFactors& f) {
  Json j;
  j["n"] = json_int(f.n);
  j["d"] = json_int(f.d);
  Json alphas = Json::array();
  for (Residue a : f.set.points) alphas.push_back(json_int(a));
  j["alphas"] = std::move(alphas);
  return j;
}

NttPlan plan_from_params(const ParameterSet& params) {
  return make_plan(params.m, params.n, params.a, params.set, params.pair);
}

} // namespace qntt
