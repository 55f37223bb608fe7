#pragma once

// Safe and quasi-safe L-expressions.

#include <optional>
#include <string>
#include <vector>

#include "sahlkracht/core.hpp"

namespace sahlkracht {

enum class SafetyStatus { Safe, QuasiSafe, Neither };

std::string to_string(SafetyStatus s);

struct SafetyVerdict {
  SafetyStatus status = SafetyStatus::Neither;
  /// Preorder list of subexpressions with their safe-for-the-whole flag.
  std::vector<Expr> nodes;
  std::vector<bool> marked;
  /// Preorder position of the first img node whose argument is not safe.
  std::optional<std::size_t> witness;
};

/// One bottom-up pass; linear in the number of nodes. Throws IllFormed on
/// holes and set variables.
SafetyVerdict analyze_safety(const Expr& e);

/// Status only, without materialising the node list.
SafetyStatus safety_status(const Expr& e);

/// Maximal safe subexpressions, left to right, without duplicates. Throws
/// NotQuasiSafe.
std::vector<Expr> safe_subexpressions(const Expr& e);

/// ASCII tree with one node per line; safe nodes are starred.
std::string render_marked(const SafetyVerdict& v);

}  // namespace sahlkracht
