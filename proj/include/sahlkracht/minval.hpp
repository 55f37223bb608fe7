#pragma once

// KP / KV / KF: positive formulas and regular box-formulas as set
// expressions, and the minimal valuation they describe.

#include <map>
#include <vector>

#include "sahlkracht/core.hpp"
#include "sahlkracht/semantics.hpp"

namespace sahlkracht {

/// Object variable -> regular box-formulas required to hold there.
using RequirementMap = std::map<ObjVar, std::vector<Modal>>;

/// Throws NotPositive.
Expr kp(const Modal& pos);

/// Relative minimal valuation of a ranked regular box-formula, with the
/// evaluation point left as the hole. Throws NotRegular.
Expr kv(const Modal& phi);

/// Rank every variable of the map jointly. Throws NotRegular when the
/// formulas do not form a regular set.
RequirementMap rank_requirements(const RequirementMap& f);

/// One union branch of kf: the contribution of phi required at x.
Expr kf_branch(const RequirementMap& f, ObjVar x, const Modal& phi);

/// The union branches of the absolute minimal valuation of p (empty: F).
std::vector<Expr> kf(const RequirementMap& f, const PropVar& p);

/// Set-theoretic value. Throws UnboundVariable for unassigned variables and
/// IllFormed on holes.
WorldSet eval_expr(const Expr& e, const Frame& F, const Env& env, const Valuation& v = {});

/// Smallest valuation making every f(x) true at env(x).
Valuation minimal_valuation(const RequirementMap& f, const Frame& F, const Env& env);

/// All variables mentioned by the map, ranked as given.
std::vector<PropVar> requirement_vars(const RequirementMap& f);

}  // namespace sahlkracht
