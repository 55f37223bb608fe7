#include "sahlkracht/golden.hpp"

#include <map>

namespace sahlkracht {

const std::vector<KnownFormula>& known_formulas() {
  static const std::vector<KnownFormula> all = {
      {"D2", SyntaxKind::Modal, "p & [](<>p -> []q) -> <>[][]q"},
      {"ns", SyntaxKind::Modal, "p & [1](<1>p -> [3]r) -> <2>(<2>p & <3>r)"},
      {"cub1", SyntaxKind::Modal,
       "<1>([2]p12 & [3]p13) & <2>([1]p21 & [3]p23) & <3>([1]p31 & [2]p32) & "
       "[1][2](p12 & p21 -> [3]q3) & [1][3](p13 & p31 -> [2]q2) & "
       "[2][3](p23 & p32 -> [1]q1) -> <1><2><3>(q1 & q2 & q3)"},
      {"partial functionality", SyntaxKind::Modal, "<>p -> []p"},
      {"density", SyntaxKind::Modal, "<><>p -> <>p"},
      {"reflexivity", SyntaxKind::Modal, "p -> <>p"},
      {"successor reflexivity", SyntaxKind::Modal, "[](p -> <>p)"},
      {"FO(D2)", SyntaxKind::Fo,
       "ex y <1 x0 . all z1 <1 y . all z <1 z1 . z in img1(img1(x0) & inv1(x0))"},
      {"FO(ns)", SyntaxKind::Fo,
       "ex y <1 x0 . (y in inv1(x0) & ex v <3 y . v in img3(img2(x0) & inv2(x0)))"},
      {"FO(cub1)", SyntaxKind::Fo,
       "all x1 <1 x0 . all x2 <2 x0 . all x3 <3 x0 . ex y1 <1 x0 . ex y2 <2 y1 . "
       "ex y <3 y2 . (y in img3(img2(x1) & img1(x2)) & y in img2(img3(x1) & img1(x3)) & "
       "y in img1(img2(x3) & img3(x2)))"},
      {"safe example 1", SyntaxKind::Expr, "x0"},
      {"safe example 2", SyntaxKind::Expr, "img1(x0)"},
      {"safe example 3", SyntaxKind::Expr, "img1(img1(x0) & inv1(img1(x0)))"},
      {"safe example 4", SyntaxKind::Expr, "img1(img1(x0) & inv1(T))"},
      {"safe example 5", SyntaxKind::Expr,
       "img1((img1(x0) & inv1(img1(x0))) & (inv1(x0) & inv1(img1(x0))))"},
      {"non-safe example 1", SyntaxKind::Expr, "inv1(x0)"},
      {"non-safe example 2", SyntaxKind::Expr, "img1(inv1(x0))"},
      {"non-safe example 3", SyntaxKind::Expr, "img1(T)"},
  };
  return all;
}

namespace {

Modal canonical(const Modal& f) {
  std::map<PropVar, PropVar> m;
  for (const PropVar& p : prop_vars(f))
    m.emplace(p, PropVar::named("v" + std::to_string(m.size())));
  return rename_props(f, m);
}

// Bound variables renumbered in binder order, above every variable in use.
Fo canonical(const Fo& f, std::map<ObjVar, ObjVar> env, int& next) {
  auto v = [&](ObjVar x) {
    auto it = env.find(x);
    return it == env.end() ? x : it->second;
  };
  auto bind = [&](ObjVar y) {
    ObjVar z{next++};
    env[y] = z;
    return z;
  };
  switch (f.kind()) {
    case FoKind::Member: {
      std::map<ObjVar, Expr> m;
      for (ObjVar x : obj_vars(f.expr())) m.emplace(x, Expr::obj(v(x)));
      return Fo::member(v(f.subject()), substitute_objvars(f.expr(), m));
    }
    case FoKind::Rel: return Fo::rel(f.label(), v(f.lhs()), v(f.rhs()));
    case FoKind::Eq: return Fo::eq(v(f.lhs()), v(f.rhs()));
    case FoKind::And: return Fo::conj(canonical(f.left(), env, next), canonical(f.right(), env, next));
    case FoKind::Or: return Fo::disj(canonical(f.left(), env, next), canonical(f.right(), env, next));
    case FoKind::Not: return Fo::neg(canonical(f.body(), env, next));
    case FoKind::RForall:
    case FoKind::RExists: {
      ObjVar a = v(f.anchor());
      ObjVar z = bind(f.bound());
      Fo b = canonical(f.body(), env, next);
      return f.is(FoKind::RForall) ? Fo::rforall(z, f.label(), a, b) : Fo::rexists(z, f.label(), a, b);
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      ObjVar z = bind(f.bound());
      Fo b = canonical(f.body(), env, next);
      return f.is(FoKind::Forall) ? Fo::forall(z, b) : Fo::exists(z, b);
    }
    default: return f;
  }
}

Fo canonical(const Fo& f) {
  int next = 1000000;
  return canonical(f, {}, next);
}

AnyTree canonical(const AnyTree& t) {
  if (auto* m = std::get_if<Modal>(&t)) return canonical(*m);
  if (auto* f = std::get_if<Fo>(&t)) return canonical(*f);
  return t;
}

}  // namespace

std::optional<std::string> known_name(const AnyTree& t) {
  static const std::vector<std::pair<std::string, AnyTree>> table = [] {
    std::vector<std::pair<std::string, AnyTree>> out;
    for (const KnownFormula& k : known_formulas()) out.emplace_back(k.name, canonical(parse(k.kind, k.text)));
    return out;
  }();
  AnyTree c = canonical(t);
  for (const auto& [name, tree] : table)
    if (tree == c) return name;
  return std::nullopt;
}

}  // namespace sahlkracht
