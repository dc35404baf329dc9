#pragma once

#include <json.hpp>

#include "fsmkit/atoms.hpp"
#include "fsmkit/element.hpp"
#include "fsmkit/setexpr.hpp"

namespace fsmkit {

using json = nlohmann::json;

json to_json(const Element& x);
Element element_from_json(const json& j);
json to_json(const SetExpr& e);
SetExpr setexpr_from_json(const json& j);
// Atoms as "a3" strings, in order.
json atoms_json(const AtomSet& s);

}  // namespace fsmkit
