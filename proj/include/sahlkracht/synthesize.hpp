#pragma once

// First-order to modal: generalized Kracht recognition, quantifier
// elimination and synthesis of a Sahlqvist-shaped correspondent.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sahlkracht/core.hpp"
#include "sahlkracht/minval.hpp"
#include "sahlkracht/semantics.hpp"

namespace sahlkracht {

/// Free variables and variables bound by a restricted universal that is not
/// under any existential.
std::set<ObjVar> inherently_universal(const Fo& f);

/// Clean the formula, read `exists y.(x R y & a)` / `forall y.(x R y -> a)`
/// as restricted quantifiers, turn relational and equality atoms into
/// membership atoms, and peel quasi-safe atoms until every atom is safe.
/// Throws NotNormalizable when an atom's expression is neither.
Fo normalize_kracht(const Fo& f);

struct KrachtVerdict {
  bool kracht = false;
  std::set<ObjVar> universal;
  std::vector<std::string> reasons;
  std::optional<Fo> normalized;
};

KrachtVerdict check_kracht(const Fo& f);

/// Replace every subformula headed by a restricted existential (innermost
/// first) by a quantifier-free combination of quasi-safe atoms. Input must be
/// a normalized generalized Kracht formula.
Fo quantifier_eliminate(const Fo& f);

/// Merge same-subject membership atoms inside conjunctions (intersection)
/// and disjunctions (union).
Fo fuse_atoms(const Fo& f);

/// Requirement maps for a set of safe expressions, one disjoint variable pool
/// per expression.
struct ExprSynthesis {
  RequirementMap f;
  std::map<Expr, PropVar> heads;
  /// The requirements contributed by each expression's own pool.
  std::map<Expr, RequirementMap> pools;
};

/// Supply of fresh q-variables; indices are unique across ranks.
class PropSupply {
 public:
  PropVar fresh(int rank);
  int peek() const { return next_; }

 private:
  int next_ = 0;
};

/// Throws NotSafe.
ExprSynthesis synthesize_expr_f(const std::vector<Expr>& safe, PropSupply& supply);
ExprSynthesis synthesize_expr_f(const std::vector<Expr>& safe);

/// Safe subexpressions become their head variables; & | inv ibox become
/// and, or, diamond, box. Throws MissingHead.
Modal expr_to_modal(const Expr& e, const std::map<Expr, PropVar>& heads);

struct DefinableSequence {
  std::vector<ObjVar> vars;
  std::vector<Modal> formulas;
};

/// Formulas witnessing `subject in e` point-wise: for each variable the
/// disjunction of the negated requirements, plus e's modal reading at the
/// subject.
DefinableSequence define_atom(ObjVar subject, const Expr& e, const ExprSynthesis& shared);

struct SynthesisOptions {
  bool verify = false;
  std::optional<Budget> budget;
};

struct Synthesis {
  Fo normalized = Fo::top();
  Fo eliminated = Fo::top();
  ExprSynthesis exprs;
  Modal result = Modal::top();
  std::optional<Report> verification;
};

/// Throws NotKracht; VerificationFailed when verification is on and the
/// oracle finds a frame where the result and the input disagree.
Synthesis synthesize_traced(const Fo& f, const SynthesisOptions& opts = {});
Modal synthesize(const Fo& f, const SynthesisOptions& opts = {});

}  // namespace sahlkracht
