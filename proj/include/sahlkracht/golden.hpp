#pragma once

// Bundled reference formulas, used to annotate reports with a familiar name.

#include <optional>
#include <string>
#include <vector>

#include "sahlkracht/parser.hpp"

namespace sahlkracht {

struct KnownFormula {
  std::string name;
  SyntaxKind kind;
  std::string text;
};

const std::vector<KnownFormula>& known_formulas();

/// Name of the bundled formula t matches, up to renaming of propositional
/// variables (modal) or bound variables (first-order).
std::optional<std::string> known_name(const AnyTree& t);

}  // namespace sahlkracht
