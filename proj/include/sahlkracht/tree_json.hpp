#pragma once

// JSON mirrors of the syntax trees: one object per node, `kind` names the
// node kind, children under `child` / `left` / `right` / `body`.

#include <json.hpp>

#include "sahlkracht/core.hpp"
#include "sahlkracht/correspond.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/safety.hpp"
#include "sahlkracht/semantics.hpp"

namespace sahlkracht {

nlohmann::json to_json(const Modal& f);
nlohmann::json to_json(const Expr& e);
nlohmann::json to_json(const Fo& f);
nlohmann::json to_json(const AnyTree& t);
/// {"worlds": n, "relations": {"1": [[i, j], ...], ...}}
nlohmann::json to_json(const Frame& F);
nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const LabelledTree& t);
nlohmann::json to_json(const Decomposition& d);
/// Nodes in preorder with their printed form and safe flag.
nlohmann::json to_json(const SafetyVerdict& v);

}  // namespace sahlkracht
