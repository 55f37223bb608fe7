#pragma once

// Modal to first-order: generalized Sahlqvist recognition and correspondents.

#include <optional>
#include <string>
#include <vector>

#include "sahlkracht/core.hpp"

namespace sahlkracht {

/// Reduced syntactical tree of a diamond/conjunction combination of
/// antecedent atoms. Node 0 is the root; nodes are in preorder.
struct LabelledTree {
  struct Node {
    int parent = -1;
    Label edge;  // label of the edge from the parent
    std::vector<Modal> reg;  // regular box-formulas
    std::vector<Modal> neg;  // negative formulas
    std::vector<int> children;
  };
  std::vector<Node> nodes;

  std::string to_string() const;
};

enum class DecompKind { Box, And, DisjointOr, Simple };

struct Decomposition {
  DecompKind kind = DecompKind::Simple;
  Label label;                      // Box
  std::vector<Decomposition> kids;  // Box (one), And, DisjointOr (two or more)
  Modal gsa = Modal::top();         // Simple: antecedent of `gsa -> F`, ranked
  LabelledTree tree;                // Simple

  std::string to_string(int indent = 0) const;
};

struct SahlqvistClassification {
  bool ok = false;
  std::optional<Decomposition> decomposition;
  std::string reason;
};

SahlqvistClassification classify_sahlqvist(const Modal& f);

/// Throws NotGSAShape when an atom is neither a box-formula nor negative, or
/// a connective other than & and <k> occurs.
LabelledTree reduced_tree(const Modal& gsa);

/// Standard translation; a variable p at y becomes `y in P` with the
/// variable's rank and index (its name when unranked is kept through the key).
Fo standard_translation(const Modal& f, ObjVar at, VarSupply& supply);
Fo standard_translation(const Modal& f, ObjVar at);

/// Plain first-order reading of `subject in e`. Throws IllFormed on holes
/// and set variables.
Fo sharp_translate(ObjVar subject, const Expr& e, VarSupply& supply);
Fo sharp_translate(ObjVar subject, const Expr& e);
/// Replace every membership atom by its plain first-order reading.
Fo expand_sharp(const Fo& f);

/// Constant absorption (T/F under connectives and quantifiers), except that
/// a restricted universal over F is kept.
Fo simplify(const Fo& f);

struct SimpleCorrespondent {
  Fo restricted;  // restricted-quantifier prefix over the consequent
  Fo universal;   // forall x1..xn (edges -> consequent)
};

/// Correspondent of `gsa -> F` for the tree of gsa, with the root at `at`.
SimpleCorrespondent simple_correspondent(const LabelledTree& t, ObjVar at, VarSupply& supply);
SimpleCorrespondent simple_correspondent(const LabelledTree& t, ObjVar at = ObjVar{0});

/// Local first-order correspondent with free variable `at`. Throws
/// NotSahlqvist.
Fo correspond(const Modal& f, ObjVar at = ObjVar{0});
Fo correspond(const Decomposition& d, ObjVar at, VarSupply& supply);

}  // namespace sahlkracht
