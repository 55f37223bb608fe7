#pragma once

// ASCII concrete syntax for the three tree families.
//
//   modal:  p  T  F  ~a  a & b  a | b  a -> b  [k]a  <k>a   ([]a, <>a mean k = 1)
//   expr:   x<n>  P<rank>_<idx>  #  T  F  a & b  a | b  inv<k>(e)  ibox<k>(e)  img<k>(e)
//   fo:     y in E   x R<k> y   x = y   T  F  ~a  a & b  a | b  a -> b
//           all y <k x . a    ex y <k x . a    forall y . a    exists y . a
//
// Precedence, tightest first: prefix operators, &, |, ->. The arrow is right
// associative; & and | associate to the left. Quantifier bodies extend as far
// right as possible. Object variables other than x<n> are numbered after the
// largest explicit x<n> in the text, in order of first appearance. In a
// membership atom the expression is a primary: write `y in (a & b)`.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sahlkracht/core.hpp"

namespace sahlkracht {

enum class SyntaxKind { Modal, Expr, Fo };

Modal parse_modal(std::string_view text);
Expr parse_expr(std::string_view text);
Fo parse_fo(std::string_view text);

using AnyTree = std::variant<Modal, Expr, Fo>;
AnyTree parse(SyntaxKind kind, std::string_view text);

std::string print(const Modal& f);
std::string print(const Expr& e);
std::string print(const Fo& f);
std::string print(const AnyTree& t);
std::string print(ObjVar x);
std::string print(Label l);

/// Lines of a golden file: blank lines and lines starting with "# " (or a
/// lone "#") are skipped.
std::vector<std::string> read_golden_lines(const std::string& path);

}  // namespace sahlkracht
