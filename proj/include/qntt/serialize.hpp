#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "qntt/fft.hpp"
#include "qntt/partial_ntt.hpp"
#include "qntt/poly.hpp"
#include "qntt/roots.hpp"

namespace qntt {

// Insertion order is part of the wire contract, so everything below works on
// ordered_json.
using Json = nlohmann::ordered_json;

// Generated parameter document: modulus, ring degree, target constant and the
// certified evaluation set (points.size() is the splitting degree d).
struct ParameterSet {
  Modulus m;
  u64 n = 1;
  Residue a = 1;
  AlphaOmegaPair pair;
  TwofoldSet set;
};

/// Integers >= 2^53 are emitted as decimal strings so lossy JSON readers
/// survive them; smaller values stay plain numbers.
Json json_int(u64 v);

/// Accepts either encoding.
u64 parse_int(const Json& j);

Json params_to_json(const ParameterSet& params);

/// Parses and re-certifies: the embedded points are re-checked against
/// conditions 1-3 so a hand-edited document cannot produce an uncertified
/// plan.
ParameterSet params_from_json(const Json& j);

Json poly_to_json(const Poly& g, u64 m);
std::pair<Poly, u64> poly_from_json(const Json& j);

Json eval_vector_to_json(const EvalVector& v);
EvalVector eval_vector_from_json(const Json& j);
Json crt_form_to_json(const CrtForm& f);
CrtForm crt_form_from_json(const Json& j);

Json split_factors_to_json(const SplitFactors& f);

/// Plan from a parsed parameter document.
NttPlan plan_from_params(const ParameterSet& params);

} // namespace qntt
