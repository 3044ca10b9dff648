#pragma once

#include <string>

#include <json.hpp>

#include "catembed/circuit.hpp"
#include "catembed/matrix.hpp"
#include "catembed/ring.hpp"

namespace catembed {

using json = nlohmann::json;

// Expressions over rationals and roots of unity:
//   zN (= zeta_N), i, sqrt2, sqrt3, sqrt5, integers, p/q, + - * / ^ ( ).
// Accepts the output of CycElement::to_string.
CycElement parse_cyc(const std::string& text);

json cyc_to_json(const CycElement& a);
CycElement cyc_from_json(const json& j);

// {"rows": r, "cols": c, "entries": [[...], ...]}; a bare array of rows is also accepted.
json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& j);

json polynomial_to_json(const Polynomial& p);

// Node tags: id, swap, gate, seq, par.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j, const GateSet& gs);
// Either an S-expression string or a tagged JSON object.
Circuit circuit_from_any(const json& j, const GateSet& gs);

json ring_to_json(const RingSpec& r);
RingSpec ring_from_json(const json& j);

}  // namespace catembed
