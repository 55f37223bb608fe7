#include "sahlkracht/synthesize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/regular.hpp"
#include "sahlkracht/safety.hpp"

namespace sahlkracht {

PropVar PropSupply::fresh(int rank) {
  int i = next_++;
  return PropVar::at(rank, i, "q" + std::to_string(i));
}

namespace {

template <class T>
void push_unique(std::vector<T>& xs, const T& x) {
  if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
}

void flatten(const Fo& f, FoKind k, std::vector<Fo>& out) {
  if (f.is(k)) {
    flatten(f.left(), k, out);
    flatten(f.right(), k, out);
  } else {
    out.push_back(f);
  }
}

void collect_universal(const Fo& f, bool under_exists, std::set<ObjVar>& out) {
  switch (f.kind()) {
    case FoKind::And:
    case FoKind::Or:
      collect_universal(f.left(), under_exists, out);
      collect_universal(f.right(), under_exists, out);
      return;
    case FoKind::Not: collect_universal(f.body(), under_exists, out); return;
    case FoKind::RForall:
      if (!under_exists) out.insert(f.bound());
      collect_universal(f.body(), under_exists, out);
      return;
    case FoKind::Forall: collect_universal(f.body(), under_exists, out); return;
    case FoKind::RExists:
    case FoKind::Exists: collect_universal(f.body(), true, out); return;
    default: return;
  }
}

// exists y.(x R y & a) and forall y.(~x R y | a) become restricted.
Fo restrict_quantifiers(const Fo& f) {
  switch (f.kind()) {
    case FoKind::And: return Fo::conj(restrict_quantifiers(f.left()), restrict_quantifiers(f.right()));
    case FoKind::Or: return Fo::disj(restrict_quantifiers(f.left()), restrict_quantifiers(f.right()));
    case FoKind::Not: return Fo::neg(restrict_quantifiers(f.body()));
    case FoKind::RForall:
      return Fo::rforall(f.bound(), f.label(), f.anchor(), restrict_quantifiers(f.body()));
    case FoKind::RExists:
      return Fo::rexists(f.bound(), f.label(), f.anchor(), restrict_quantifiers(f.body()));
    case FoKind::Exists: {
      ObjVar y = f.bound();
      std::vector<Fo> parts;
      flatten(f.body(), FoKind::And, parts);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const Fo& p = parts[i];
        if (p.is(FoKind::Rel) && p.rhs() == y && p.lhs() != y) {
          std::vector<Fo> rest;
          for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != i) rest.push_back(parts[j]);
          return Fo::rexists(y, p.label(), p.lhs(), restrict_quantifiers(Fo::conj_all(rest)));
        }
      }
      return Fo::exists(y, restrict_quantifiers(f.body()));
    }
    case FoKind::Forall: {
      ObjVar y = f.bound();
      std::vector<Fo> parts;
      flatten(f.body(), FoKind::Or, parts);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const Fo& p = parts[i];
        if (p.is(FoKind::Not) && p.body().is(FoKind::Rel) && p.body().rhs() == y &&
            p.body().lhs() != y) {
          std::vector<Fo> rest;
          for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != i) rest.push_back(parts[j]);
          return Fo::rforall(y, p.body().label(), p.body().lhs(),
                             restrict_quantifiers(Fo::disj_all(rest)));
        }
      }
      return Fo::forall(y, restrict_quantifiers(f.body()));
    }
    default: return f;
  }
}

// subject in e, e quasi-safe: split along the positive connectives until
// only safe atoms remain.
Fo peel(ObjVar s, const Expr& e, VarSupply& supply) {
  if (safety_status(e) == SafetyStatus::Safe) return Fo::member(s, e);
  switch (e.kind()) {
    case ExprKind::Top: return Fo::top();
    case ExprKind::Bot: return Fo::bot();
    case ExprKind::Cap: return Fo::conj(peel(s, e.left(), supply), peel(s, e.right(), supply));
    case ExprKind::Cup: return Fo::disj(peel(s, e.left(), supply), peel(s, e.right(), supply));
    case ExprKind::Inv: {
      ObjVar z = supply.fresh();
      return Fo::rexists(z, e.label(), s, peel(z, e.child(), supply));
    }
    case ExprKind::IBox: {
      ObjVar z = supply.fresh();
      return Fo::rforall(z, e.label(), s, peel(z, e.child(), supply));
    }
    default: throw NotNormalizable("cannot split " + print(e));
  }
}

Fo rewrite_atoms(const Fo& f, const std::set<ObjVar>& u, VarSupply& supply) {
  auto rec = [&](const Fo& g) { return rewrite_atoms(g, u, supply); };
  switch (f.kind()) {
    case FoKind::And: return Fo::conj(rec(f.left()), rec(f.right()));
    case FoKind::Or: return Fo::disj(rec(f.left()), rec(f.right()));
    case FoKind::Not: return Fo::neg(rec(f.body()));
    case FoKind::RForall: return Fo::rforall(f.bound(), f.label(), f.anchor(), rec(f.body()));
    case FoKind::RExists: return Fo::rexists(f.bound(), f.label(), f.anchor(), rec(f.body()));
    case FoKind::Forall: return Fo::forall(f.bound(), rec(f.body()));
    case FoKind::Exists: return Fo::exists(f.bound(), rec(f.body()));
    case FoKind::Eq:
      if (u.count(f.rhs())) return Fo::member(f.lhs(), Expr::obj(f.rhs()));
      if (u.count(f.lhs())) return Fo::member(f.rhs(), Expr::obj(f.lhs()));
      return f;
    case FoKind::Rel:
      if (u.count(f.lhs())) return Fo::member(f.rhs(), Expr::img(f.label(), Expr::obj(f.lhs())));
      if (u.count(f.rhs())) {
        ObjVar z = supply.fresh();
        return Fo::rexists(z, f.label(), f.lhs(), Fo::member(z, Expr::obj(f.rhs())));
      }
      return f;
    case FoKind::Member: {
      SafetyStatus st;
      try {
        st = safety_status(f.expr());
      } catch (const IllFormed& e) {
        throw NotNormalizable(e.what());
      }
      if (st == SafetyStatus::Safe) return f;
      if (st == SafetyStatus::Neither)
        throw NotNormalizable("expression is neither safe nor quasi-safe: " + print(f.expr()));
      return peel(f.subject(), f.expr(), supply);
    }
    default: return f;
  }
}

void kracht_reasons(const Fo& f, const std::set<ObjVar>& u, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FoKind::And:
    case FoKind::Or:
      kracht_reasons(f.left(), u, out);
      kracht_reasons(f.right(), u, out);
      return;
    case FoKind::Not:
      out.push_back("negation is not restrictedly positive: " + print(f));
      return;
    case FoKind::Forall:
    case FoKind::Exists:
      out.push_back("unrestricted quantifier binding " + print(f.bound()));
      kracht_reasons(f.body(), u, out);
      return;
    case FoKind::RForall:
    case FoKind::RExists: kracht_reasons(f.body(), u, out); return;
    case FoKind::Rel:
    case FoKind::Eq:
      out.push_back("neither side of " + print(f) + " is inherently universal");
      return;
    case FoKind::Member:
      if (safety_status(f.expr()) != SafetyStatus::Safe)
        out.push_back("expression is not safe: " + print(f.expr()));
      for (ObjVar x : obj_vars(f.expr()))
        if (!u.count(x))
          out.push_back("parameter " + print(x) + " of " + print(f.expr()) +
                        " is not inherently universal");
      return;
    default: return;
  }
}

// ---------------------------------------------------------------------------
// Quantifier elimination on quantifier-free positive bodies.

using Lits = std::vector<Fo>;

std::vector<Lits> normal_form(const Fo& f, bool dnf) {
  FoKind same = dnf ? FoKind::Or : FoKind::And;   // concatenation
  FoKind cross = dnf ? FoKind::And : FoKind::Or;  // product
  if (f.is(FoKind::Top)) return dnf ? std::vector<Lits>{{}} : std::vector<Lits>{};
  if (f.is(FoKind::Bot)) return dnf ? std::vector<Lits>{} : std::vector<Lits>{{}};
  if (f.is(same)) {
    auto a = normal_form(f.left(), dnf);
    auto b = normal_form(f.right(), dnf);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  if (f.is(cross)) {
    auto a = normal_form(f.left(), dnf);
    auto b = normal_form(f.right(), dnf);
    std::vector<Lits> out;
    for (const Lits& x : a)
      for (const Lits& y : b) {
        Lits z = x;
        for (const Fo& l : y) push_unique(z, l);
        out.push_back(std::move(z));
      }
    return out;
  }
  if (!f.is(FoKind::Member)) throw NotKracht("unexpected subformula during elimination: " + print(f));
  return {{f}};
}

Fo eliminate(const Fo& q, const Fo& body) {
  bool ex = q.is(FoKind::RExists);
  ObjVar y = q.bound();
  std::vector<Fo> terms;
  for (const Lits& lits : normal_form(body, ex)) {
    std::vector<Expr> ys;
    std::vector<Fo> rest;
    for (const Fo& l : lits) {
      if (l.subject() == y)
        push_unique(ys, l.expr());
      else
        rest.push_back(l);
    }
    Expr e = ex ? Expr::inv(q.label(), Expr::cap_all(ys)) : Expr::ibox(q.label(), Expr::cup_all(ys));
    rest.push_back(Fo::member(q.anchor(), e));
    terms.push_back(ex ? Fo::conj_all(rest) : Fo::disj_all(rest));
  }
  return fuse_atoms(ex ? Fo::disj_all(terms) : Fo::conj_all(terms));
}

Fo qe(const Fo& f, bool under_exists) {
  switch (f.kind()) {
    case FoKind::And: return Fo::conj(qe(f.left(), under_exists), qe(f.right(), under_exists));
    case FoKind::Or: return Fo::disj(qe(f.left(), under_exists), qe(f.right(), under_exists));
    case FoKind::RForall: {
      Fo b = qe(f.body(), under_exists);
      if (under_exists) return eliminate(f, b);
      return Fo::rforall(f.bound(), f.label(), f.anchor(), b);
    }
    case FoKind::RExists: return eliminate(f, qe(f.body(), true));
    case FoKind::Member:
    case FoKind::Top:
    case FoKind::Bot: return f;
    default: throw NotKracht("not a normalized Kracht formula: " + print(f));
  }
}

// ---------------------------------------------------------------------------
// Requirement synthesis for safe expressions.

struct Built {
  RequirementMap f;
  PropVar head;
};

void merge_into(RequirementMap& dst, const RequirementMap& src) {
  for (const auto& [x, fs] : src)
    for (const Modal& m : fs) dst[x].push_back(m);
}

Built build(const Expr& e, PropSupply& supply) {
  if (e.is(ExprKind::ObjVar)) {
    PropVar q = supply.fresh(0);
    return {{{e.obj(), {Modal::var(q)}}}, q};
  }
  struct Step {
    bool img;
    Label label;
    Modal guard = Modal::top();
  };
  std::vector<Step> steps;
  RequirementMap f;
  int guard_rank = -1;
  const Expr* cur = &e;
  while (!cur->is(ExprKind::ObjVar)) {
    if (cur->is(ExprKind::Img)) {
      steps.push_back({true, cur->label()});
      cur = &cur->child();
    } else if (cur->is(ExprKind::Cap)) {
      bool right = safety_status(cur->right()) == SafetyStatus::Safe;
      const Expr& g = right ? cur->left() : cur->right();
      if (!right && safety_status(cur->left()) != SafetyStatus::Safe)
        throw NotSafe("not safe: " + print(e));
      std::map<Expr, PropVar> local;
      for (const Expr& s : safe_subexpressions(g)) {
        Built b = build(s, supply);
        merge_into(f, b.f);
        local.emplace(s, b.head);
        guard_rank = std::max(guard_rank, b.head.rank);
      }
      steps.push_back({false, {}, expr_to_modal(g, local)});
      cur = right ? &cur->right() : &cur->left();
    } else {
      throw NotSafe("not safe: " + print(e));
    }
  }
  PropVar head = supply.fresh(guard_rank + 1);
  Modal phi = Modal::var(head);
  for (const Step& s : steps)
    phi = s.img ? Modal::box(s.label, phi) : Modal::implies(s.guard, phi);
  // The head requirement first, then the guards' own pools.
  RequirementMap out{{cur->obj(), {phi}}};
  merge_into(out, f);
  return {out, head};
}

// ---------------------------------------------------------------------------
// Synthesis fold. A form stands for forall q (G or C) where C is a CNF of
// point assertions and, when monotone, G is the guard of the listed pools.

using Clause = std::map<ObjVar, std::vector<Modal>>;

struct Form {
  bool monotone = true;
  std::vector<Expr> pools;
  std::vector<Clause> cnf;
};

// nullopt when the clause is trivially true.
std::optional<Clause> tidy(const Clause& c) {
  Clause out;
  for (const auto& [x, ds] : c) {
    std::vector<Modal> kept;
    for (const Modal& d : ds) {
      if (d.is(ModalKind::Top)) return std::nullopt;
      if (d.is(ModalKind::Bot)) continue;
      push_unique(kept, d);
    }
    if (!kept.empty()) out[x] = std::move(kept);
  }
  return out;
}

void add_clause(std::vector<Clause>& cnf, const Clause& c) {
  if (auto t = tidy(c)) {
    if (std::find(cnf.begin(), cnf.end(), *t) == cnf.end()) cnf.push_back(*t);
  }
}

Clause join(const Clause& a, const Clause& b) {
  Clause out = a;
  for (const auto& [x, ds] : b)
    for (const Modal& d : ds) out[x].push_back(d);
  return out;
}

class Folder {
 public:
  Folder(const ExprSynthesis& s, PropSupply& supply) : s_(s), supply_(supply) {}

  Form fold(const Fo& f) {
    switch (f.kind()) {
      case FoKind::Top: return {};
      case FoKind::Bot: return {true, {}, {Clause{}}};
      case FoKind::Member: {
        Form out;
        out.pools = safe_subexpressions(f.expr());
        add_clause(out.cnf, Clause{{f.subject(), {expr_to_modal(f.expr(), s_.heads)}}});
        return out;
      }
      case FoKind::And: {
        Form a = fold(f.left()), b = fold(f.right());
        if (!a.monotone || !b.monotone) {
          a = expand(a);
          b = expand(b);
        }
        for (const Expr& e : b.pools) push_unique(a.pools, e);
        for (const Clause& c : b.cnf) add_clause(a.cnf, c);
        return a;
      }
      case FoKind::Or: {
        Form a = fold(f.left()), b = fold(f.right());
        if (!a.monotone || !b.monotone) {
          a = expand(a);
          b = rename_apart(expand(b), a);
        }
        Form out{a.monotone, a.pools, {}};
        for (const Expr& e : b.pools) push_unique(out.pools, e);
        for (const Clause& x : a.cnf)
          for (const Clause& y : b.cnf) add_clause(out.cnf, join(x, y));
        return out;
      }
      case FoKind::RForall: {
        Form body = expand(fold(f.body()));
        Form out{false, {}, {}};
        for (Clause c : body.cnf) {
          std::vector<Modal> ys;
          if (auto it = c.find(f.bound()); it != c.end()) {
            ys = it->second;
            c.erase(it);
          }
          c[f.anchor()].push_back(Modal::box(f.label(), Modal::disj_all(ys)));
          add_clause(out.cnf, c);
        }
        return out;
      }
      default: throw NotKracht("unexpected subformula during synthesis: " + print(f));
    }
  }

  Form expand(const Form& f) {
    if (!f.monotone) return f;
    Clause guard;
    for (const Expr& e : f.pools) {
      auto it = s_.pools.find(e);
      if (it == s_.pools.end()) throw MissingHead("no pool for " + print(e));
      for (const auto& [x, ps] : it->second)
        for (const Modal& p : ps) guard[x].push_back(Modal::neg(p));
    }
    Form out{false, {}, {}};
    for (const Clause& c : f.cnf) add_clause(out.cnf, join(c, guard));
    return out;
  }

 private:
  static void props_of(const Form& f, std::set<PropVar>& out) {
    for (const Clause& c : f.cnf)
      for (const auto& [x, ds] : c)
        for (const Modal& d : ds)
          for (const PropVar& p : prop_vars(d)) out.insert(p);
  }

  Form rename_apart(const Form& b, const Form& a) {
    std::set<PropVar> used, mine;
    props_of(a, used);
    props_of(b, mine);
    std::map<PropVar, PropVar> m;
    for (const PropVar& p : mine)
      if (used.count(p)) m.emplace(p, supply_.fresh(p.rank));
    if (m.empty()) return b;
    Form out{b.monotone, b.pools, {}};
    for (const Clause& c : b.cnf) {
      Clause r;
      for (const auto& [x, ds] : c)
        for (const Modal& d : ds) r[x].push_back(rename_props(d, m));
      out.cnf.push_back(r);
    }
    return out;
  }

  const ExprSynthesis& s_;
  PropSupply& supply_;
};

void flatten_or(const Modal& m, std::vector<Modal>& out) {
  if (m.is(ModalKind::Or)) {
    flatten_or(m.left(), out);
    flatten_or(m.right(), out);
  } else if (!m.is(ModalKind::Bot)) {
    out.push_back(m);
  }
}

Modal negate(const Modal& d) {
  if (d.is(ModalKind::Not)) return d.child();
  if (d.is(ModalKind::Box) && !is_positive(d)) {
    std::vector<Modal> parts, negs;
    flatten_or(d.child(), parts);
    for (const Modal& p : parts) negs.push_back(negate(p));
    return Modal::dia(d.label(), Modal::conj_all(negs));
  }
  return Modal::neg(d);
}

// One clause at the root as `antecedent -> consequent`.
Modal present(const std::vector<Modal>& ds) {
  std::vector<Modal> ante, cons;
  for (const Modal& d : ds) {
    if (is_positive(d))
      cons.push_back(d);
    else
      ante.push_back(negate(d));
  }
  if (ante.empty()) return Modal::disj_all(cons);
  return Modal::implies(Modal::conj_all(ante), Modal::disj_all(cons));
}

std::vector<Expr> atom_expressions(const Fo& f) {
  std::vector<Expr> out;
  std::function<void(const Fo&)> go = [&](const Fo& g) {
    switch (g.kind()) {
      case FoKind::Member:
        for (const Expr& e : safe_subexpressions(g.expr())) push_unique(out, e);
        return;
      case FoKind::And:
      case FoKind::Or:
        go(g.left());
        go(g.right());
        return;
      case FoKind::RForall:
      case FoKind::RExists:
        go(g.body());
        return;
      default: return;
    }
  };
  go(f);
  return out;
}

}  // namespace

std::set<ObjVar> inherently_universal(const Fo& f) {
  std::set<ObjVar> out = free_vars(f);
  collect_universal(f, false, out);
  return out;
}

Fo normalize_kracht(const Fo& f) {
  Fo g = restrict_quantifiers(rename_clean(f));
  std::set<ObjVar> u = inherently_universal(g);
  VarSupply supply;
  supply.reserve_above(g);
  return rewrite_atoms(g, u, supply);
}

KrachtVerdict check_kracht(const Fo& f) {
  KrachtVerdict v;
  std::set<ObjVar> fv = free_vars(f);
  if (fv.size() != 1)
    v.reasons.push_back("has " + std::to_string(fv.size()) +
                        " free variables; exactly one is required");
  try {
    v.normalized = normalize_kracht(f);
  } catch (const NotNormalizable& e) {
    v.reasons.push_back(e.what());
    return v;
  }
  v.universal = inherently_universal(*v.normalized);
  kracht_reasons(*v.normalized, v.universal, v.reasons);
  v.kracht = v.reasons.empty();
  return v;
}

Fo quantifier_eliminate(const Fo& f) { return fuse_atoms(qe(f, false)); }

Fo fuse_atoms(const Fo& f) {
  switch (f.kind()) {
    case FoKind::And:
    case FoKind::Or: {
      bool conj = f.is(FoKind::And);
      std::vector<Fo> parts;
      flatten(f, f.kind(), parts);
      std::vector<Fo> out;
      std::vector<ObjVar> subjects;
      std::map<ObjVar, std::vector<Expr>> groups;
      for (const Fo& p0 : parts) {
        Fo p = fuse_atoms(p0);
        if (p.is(conj ? FoKind::Top : FoKind::Bot)) continue;
        if (p.is(conj ? FoKind::Bot : FoKind::Top)) return p;
        if (p.is(FoKind::Member)) {
          if (!groups.count(p.subject())) {
            subjects.push_back(p.subject());
            out.push_back(p);  // placeholder, replaced below
          }
          push_unique(groups[p.subject()], p.expr());
        } else {
          out.push_back(p);
        }
      }
      for (Fo& p : out) {
        if (!p.is(FoKind::Member)) continue;
        const auto& es = groups[p.subject()];
        p = Fo::member(p.subject(), conj ? Expr::cap_all(es) : Expr::cup_all(es));
      }
      return conj ? Fo::conj_all(out) : Fo::disj_all(out);
    }
    case FoKind::RForall: return Fo::rforall(f.bound(), f.label(), f.anchor(), fuse_atoms(f.body()));
    case FoKind::RExists: return Fo::rexists(f.bound(), f.label(), f.anchor(), fuse_atoms(f.body()));
    case FoKind::Forall: return Fo::forall(f.bound(), fuse_atoms(f.body()));
    case FoKind::Exists: return Fo::exists(f.bound(), fuse_atoms(f.body()));
    case FoKind::Not: return Fo::neg(fuse_atoms(f.body()));
    default: return f;
  }
}

ExprSynthesis synthesize_expr_f(const std::vector<Expr>& safe, PropSupply& supply) {
  ExprSynthesis out;
  for (const Expr& e : safe) {
    if (out.heads.count(e)) continue;
    if (safety_status(e) != SafetyStatus::Safe) throw NotSafe("not safe: " + print(e));
    Built b = build(e, supply);
    out.heads.emplace(e, b.head);
    merge_into(out.f, b.f);
    out.pools.emplace(e, std::move(b.f));
  }
  return out;
}

ExprSynthesis synthesize_expr_f(const std::vector<Expr>& safe) {
  PropSupply supply;
  return synthesize_expr_f(safe, supply);
}

Modal expr_to_modal(const Expr& e, const std::map<Expr, PropVar>& heads) {
  if (auto it = heads.find(e); it != heads.end()) return Modal::var(it->second);
  switch (e.kind()) {
    case ExprKind::Top: return Modal::top();
    case ExprKind::Bot: return Modal::bot();
    case ExprKind::Cap: return Modal::conj(expr_to_modal(e.left(), heads), expr_to_modal(e.right(), heads));
    case ExprKind::Cup: return Modal::disj(expr_to_modal(e.left(), heads), expr_to_modal(e.right(), heads));
    case ExprKind::Inv: return Modal::dia(e.label(), expr_to_modal(e.child(), heads));
    case ExprKind::IBox: return Modal::box(e.label(), expr_to_modal(e.child(), heads));
    default: throw MissingHead("no head variable for " + print(e));
  }
}

DefinableSequence define_atom(ObjVar subject, const Expr& e, const ExprSynthesis& shared) {
  std::set<ObjVar> vars{subject};
  for (const auto& [x, fs] : shared.f) vars.insert(x);
  DefinableSequence out;
  for (ObjVar x : vars) {
    std::vector<Modal> ds;
    if (auto it = shared.f.find(x); it != shared.f.end())
      for (const Modal& p : it->second) ds.push_back(Modal::neg(p));
    if (x == subject) ds.push_back(expr_to_modal(e, shared.heads));
    out.vars.push_back(x);
    out.formulas.push_back(Modal::disj_all(ds));
  }
  return out;
}

Synthesis synthesize_traced(const Fo& f, const SynthesisOptions& opts) {
  KrachtVerdict v = check_kracht(f);
  if (!v.kracht) {
    std::string msg = "not a generalized Kracht formula";
    for (const std::string& r : v.reasons) msg += "\n  " + r;
    throw NotKracht(msg);
  }
  Synthesis s;
  s.normalized = *v.normalized;
  s.eliminated = quantifier_eliminate(s.normalized);
  PropSupply supply;
  s.exprs = synthesize_expr_f(atom_expressions(s.eliminated), supply);
  Folder folder(s.exprs, supply);
  Form top = folder.expand(folder.fold(s.eliminated));
  ObjVar root = *free_vars(f).begin();
  std::vector<Modal> conjuncts;
  for (const Clause& c : top.cnf) {
    std::vector<Modal> ds;
    for (const auto& [x, xs] : c) {
      if (x != root) throw NotKracht("assertion left at bound variable " + print(x));
      ds = xs;
    }
    conjuncts.push_back(present(ds));
  }
  s.result = Modal::conj_all(conjuncts);
  if (opts.verify) {
    s.verification = check_correspondence(s.result, f, opts.budget);
    if (!s.verification->passed) {
      std::ostringstream os;
      const Counterexample& cx = *s.verification->counterexample;
      os << "synthesized formula " << print(s.result) << " disagrees with the input at world "
         << cx.world << " (modal " << (cx.left ? "valid" : "refuted") << ", first-order "
         << (cx.right ? "true" : "false") << ") on frame\n"
         << cx.frame.to_string();
      throw VerificationFailed(os.str());
    }
  }
  return s;
}

Modal synthesize(const Fo& f, const SynthesisOptions& opts) { return synthesize_traced(f, opts).result; }

}  // namespace sahlkracht
