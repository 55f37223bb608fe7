#pragma once

// Box-formulas, their dependency graph, and rank assignment.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sahlkracht/core.hpp"

namespace sahlkracht {

bool is_positive(const Modal& f);
/// Negation of a positive formula.
bool is_negative(const Modal& f);

/// One `POS -> []^a` step of a box-formula. The first segment never has a
/// guard.
struct Segment {
  std::optional<Modal> guard;
  std::vector<Label> boxes;
};

struct BoxShape {
  std::vector<Segment> segments;
  PropVar head;

  /// Rebuild POS1 -> []^a1 (POS2 -> ... -> p).
  Modal rebuild() const;
};

struct BoxClassification {
  std::optional<BoxShape> shape;
  std::optional<Modal> offending;  // set when shape is empty

  bool ok() const { return shape.has_value(); }
};

BoxClassification classify_box(const Modal& f);

struct DependencyGraph {
  std::vector<PropVar> vertices;  // first-appearance order
  std::set<std::pair<PropVar, PropVar>> edges;
};

/// Throws NotBoxFormula when a member is not a box-formula. `extra` adds
/// isolated vertices (variables of negative formulas, say).
DependencyGraph dependency_graph(const std::vector<Modal>& A,
                                 const std::vector<PropVar>& extra = {});

struct RankAssignment {
  bool regular = false;
  /// Original variable to its ranked counterpart (display name kept).
  std::map<PropVar, PropVar> ranks;
  /// Witness when irregular: p0 -> p1 -> ... -> p0.
  std::vector<PropVar> cycle;

  Modal apply(const Modal& f) const { return rename_props(f, ranks); }
};

/// Longest-incoming-path layering; indices follow first appearance inside a
/// layer. Throws NotBoxFormula for non-members.
RankAssignment assign_ranks(const std::vector<Modal>& A,
                            const std::vector<PropVar>& extra = {});

/// All variables of a ranked box-formula set are ranked and every guard
/// variable sits strictly below the head.
bool is_regular_ranked(const Modal& f);

}  // namespace sahlkracht
