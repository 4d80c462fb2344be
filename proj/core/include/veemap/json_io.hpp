#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "veemap/bowenfranks.hpp"
#include "veemap/flow.hpp"
#include "veemap/lang.hpp"
#include "veemap/subshift.hpp"
#include "veemap/thompson.hpp"
#include "veemap/veelike.hpp"

// Keys come out sorted (nlohmann::json's default object), so equal values
// serialize to identical bytes.

namespace veemap {

using Json = nlohmann::json;

Json to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j);

Json to_json(const VElement& g);
VElement v_element_from_json(const Json& j);

Json to_json(const TwoVElement& g);
TwoVElement two_v_element_from_json(const Json& j);

/// {"alphabet": [...], "n": 2, "short": {"": "1", ...}, "long": {"00": "10", ...}}
Json to_json(const VeelikeRule& r);
/// "alphabet" may be omitted for binary rules.
VeelikeRule veelike_rule_from_json(const Json& j);

Json to_json(const PairVeelikeRule& r);
PairVeelikeRule pair_rule_from_json(const Json& j);

/// {"symbols": [...], "matrix": [[...]]}
Json to_json(const VertexShift& v);
VertexShift vertex_shift_from_json(const Json& j);

Json to_json(const IntMatrix& m);
/// Accepts a bare array of rows or an object with a "matrix" field.
IntMatrix int_matrix_from_json(const Json& j);

Json to_json(const BigInt& x);
Json to_json(const AbelianGroup& g);
/// [{"matrix": ..., "bf_invariant_factors": [...], "det_i_minus_a": ..., "trivial": ...}, ...]
Json to_json(const BfReport& r);

/// {"tiles": [{"s": "#", "len": "2/1"}, ...], "base": {"tile": 0, "off": "0/1"}}
Json to_json(const FlowOrbit& o);
FlowOrbit orbit_from_json(const Json& j);

Json to_json(const VerifyResult& r, const Alphabet& alphabet);
Json to_json(const PairVerifyResult& r, const Alphabet& left, const Alphabet& right);

/// Reads and parses a JSON file; throws Error with the path on failure.
Json read_json_file(const std::string& path);

}  // namespace veemap
