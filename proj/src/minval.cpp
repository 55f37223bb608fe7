#include "sahlkracht/minval.hpp"

#include <algorithm>
#include <functional>

#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/regular.hpp"

namespace sahlkracht {

Expr kp(const Modal& pos) {
  switch (pos.kind()) {
    case ModalKind::Top: return Expr::top();
    case ModalKind::Bot: return Expr::bot();
    case ModalKind::Var: return Expr::setvar(pos.var());
    case ModalKind::And: return Expr::cap(kp(pos.left()), kp(pos.right()));
    case ModalKind::Or: return Expr::cup(kp(pos.left()), kp(pos.right()));
    case ModalKind::Dia: return Expr::inv(pos.label(), kp(pos.child()));
    case ModalKind::Box: return Expr::ibox(pos.label(), kp(pos.child()));
    default: throw NotPositive("not a positive formula: " + print(pos));
  }
}

Expr kv(const Modal& phi) {
  if (!is_regular_ranked(phi)) throw NotRegular("not a ranked regular box-formula: " + print(phi));
  switch (phi.kind()) {
    case ModalKind::Var: return Expr::hole();
    case ModalKind::Box: return substitute_hole(kv(phi.child()), Expr::img(phi.label(), Expr::hole()));
    default:  // Implies
      return substitute_hole(kv(phi.right()), Expr::cap(kp(phi.left()), Expr::hole()));
  }
}

namespace {

PropVar head_of(const Modal& phi) {
  auto c = classify_box(phi);
  if (!c.ok()) throw NotRegular("not a box-formula: " + print(phi));
  return c.shape->head;
}

class KfSolver {
 public:
  explicit KfSolver(const RequirementMap& f) : f_(f) {
    for (const auto& [x, phis] : f_)
      for (const auto& phi : phis)
        if (!is_regular_ranked(phi))
          throw NotRegular("requirement is not a ranked regular box-formula: " + print(phi));
  }

  const std::vector<Expr>& branches(const PropVar& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    std::vector<Expr> out;
    for (const auto& [x, phis] : f_)
      for (const auto& phi : phis)
        if (head_of(phi) == p) out.push_back(branch(x, phi));
    return memo_[p] = std::move(out);
  }

  Expr branch(ObjVar x, const Modal& phi) {
    Expr e = substitute_hole(kv(phi), Expr::obj(x));
    std::map<PropVar, Expr> m;
    for (const auto& q : set_vars(e)) m.emplace(q, Expr::cup_all(branches(q)));
    return substitute_setvars(e, m);
  }

 private:
  const RequirementMap& f_;
  std::map<PropVar, std::vector<Expr>> memo_;
};

}  // namespace

RequirementMap rank_requirements(const RequirementMap& f) {
  std::vector<Modal> all;
  for (const auto& [x, phis] : f) all.insert(all.end(), phis.begin(), phis.end());
  RankAssignment r;
  try {
    r = assign_ranks(all);
  } catch (const NotBoxFormula& e) {
    throw NotRegular(e.what());
  }
  if (!r.regular) {
    std::string cyc;
    for (const auto& v : r.cycle) cyc += (cyc.empty() ? "" : " -> ") + v.key();
    throw NotRegular("dependency cycle " + cyc);
  }
  RequirementMap out;
  for (const auto& [x, phis] : f)
    for (const auto& phi : phis) out[x].push_back(r.apply(phi));
  return out;
}

Expr kf_branch(const RequirementMap& f, ObjVar x, const Modal& phi) {
  return KfSolver(f).branch(x, phi);
}

std::vector<Expr> kf(const RequirementMap& f, const PropVar& p) {
  KfSolver s(f);
  return s.branches(p);
}

WorldSet eval_expr(const Expr& e, const Frame& F, const Env& env, const Valuation& v) {
  switch (e.kind()) {
    case ExprKind::ObjVar: return singleton(env.get(e.obj()));
    case ExprKind::SetVar: {
      auto it = v.find(e.setvar());
      if (it == v.end()) throw UnboundVariable("no valuation for P" + e.setvar().key());
      return it->second & F.all();
    }
    case ExprKind::Hole: throw IllFormed("cannot evaluate an expression with a hole");
    case ExprKind::Top: return F.all();
    case ExprKind::Bot: return 0;
    case ExprKind::Cap: return eval_expr(e.left(), F, env, v) & eval_expr(e.right(), F, env, v);
    case ExprKind::Cup: return eval_expr(e.left(), F, env, v) | eval_expr(e.right(), F, env, v);
    case ExprKind::Inv: return F.inv(e.label(), eval_expr(e.child(), F, env, v));
    case ExprKind::IBox: return F.ibox(e.label(), eval_expr(e.child(), F, env, v));
    case ExprKind::Img: return F.img(e.label(), eval_expr(e.child(), F, env, v));
  }
  return 0;
}

std::vector<PropVar> requirement_vars(const RequirementMap& f) {
  std::vector<PropVar> out;
  for (const auto& [x, phis] : f)
    for (const auto& phi : phis)
      for (const auto& p : prop_vars(phi))
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

Valuation minimal_valuation(const RequirementMap& f, const Frame& F, const Env& env) {
  KfSolver s(f);
  Valuation out;
  for (const auto& p : requirement_vars(f)) {
    WorldSet w = 0;
    for (const auto& b : s.branches(p)) w |= eval_expr(b, F, env);
    out[p] = w;
  }
  return out;
}

}  // namespace sahlkracht
