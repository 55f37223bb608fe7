#include "sahlkracht/correspond.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sahlkracht/error.hpp"
#include "sahlkracht/minval.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/regular.hpp"

namespace sahlkracht {

namespace {

struct Reject {
  std::string reason;
};

// Antecedent built from atoms with &, |, <k>.
struct ATree {
  enum Kind { Atom, And, Or, Dia, Top } kind = Top;
  Modal atom = Modal::top();
  Label label;
  std::vector<ATree> kids;

  static ATree top() { return {}; }
  static ATree leaf(Modal m) { return {Atom, std::move(m), {}, {}}; }
  static ATree both(Kind k, ATree a, ATree b) { return {k, Modal::top(), {}, {std::move(a), std::move(b)}}; }
  static ATree dia(Label l, ATree a) { return {Dia, Modal::top(), l, {std::move(a)}}; }
};

ATree negant(const Modal& c);

ATree ante(const Modal& a) {
  switch (a.kind()) {
    case ModalKind::And: return ATree::both(ATree::And, ante(a.left()), ante(a.right()));
    case ModalKind::Or: return ATree::both(ATree::Or, ante(a.left()), ante(a.right()));
    case ModalKind::Dia: return ATree::dia(a.label(), ante(a.child()));
    case ModalKind::Top: return ATree::top();
    case ModalKind::Bot: return ATree::leaf(Modal::neg(Modal::top()));
    case ModalKind::Not: return negant(a.child());
    default: break;
  }
  if (classify_box(a).ok()) return ATree::leaf(a);
  throw Reject{"antecedent part " + print(a) + " is neither a box-formula nor a negative formula"};
}

// Formula equivalent to the negation of x, kept in box-formula shape where
// possible.
Modal negated(const Modal& x) {
  switch (x.kind()) {
    case ModalKind::Not: return x.child();
    case ModalKind::Dia: return Modal::box(x.label(), negated(x.child()));
    case ModalKind::And:
      if (is_positive(x.left())) return Modal::implies(x.left(), negated(x.right()));
      return Modal::neg(x);
    default: return Modal::neg(x);
  }
}

// Antecedent for the negation of c.
ATree negant(const Modal& c) {
  if (is_positive(c)) {
    if (c.is(ModalKind::Bot)) return ATree::top();
    return ATree::leaf(Modal::neg(c));
  }
  switch (c.kind()) {
    case ModalKind::Not: return ante(c.child());
    case ModalKind::Implies: return ATree::both(ATree::And, ante(c.left()), negant(c.right()));
    case ModalKind::Box: return ATree::dia(c.label(), negant(c.child()));
    case ModalKind::Or: return ATree::both(ATree::And, negant(c.left()), negant(c.right()));
    case ModalKind::And: return ATree::both(ATree::Or, negant(c.left()), negant(c.right()));
    case ModalKind::Dia: {
      Modal b = Modal::box(c.label(), negated(c.child()));
      if (classify_box(b).ok()) return ATree::leaf(b);
      throw Reject{"negation of " + print(c) + " is not a box-formula"};
    }
    default: throw Reject{"cannot negate " + print(c)};
  }
}

// Distribute | out; each result uses only &, <k> and atoms.
std::vector<Modal> disjuncts(const ATree& t) {
  switch (t.kind) {
    case ATree::Top: return {Modal::top()};
    case ATree::Atom: return {t.atom};
    case ATree::Dia: {
      std::vector<Modal> out;
      for (auto& m : disjuncts(t.kids[0])) out.push_back(Modal::dia(t.label, m));
      return out;
    }
    case ATree::Or: {
      auto a = disjuncts(t.kids[0]);
      auto b = disjuncts(t.kids[1]);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case ATree::And: {
      auto a = disjuncts(t.kids[0]);
      auto b = disjuncts(t.kids[1]);
      std::vector<Modal> out;
      for (const auto& x : a)
        for (const auto& y : b) {
          if (x.is(ModalKind::Top))
            out.push_back(y);
          else if (y.is(ModalKind::Top))
            out.push_back(x);
          else
            out.push_back(Modal::conj(x, y));
        }
      return out;
    }
  }
  return {};
}

void collect_atoms(const Modal& g, std::vector<Modal>& reg, std::vector<PropVar>& negvars) {
  switch (g.kind()) {
    case ModalKind::And:
      collect_atoms(g.left(), reg, negvars);
      collect_atoms(g.right(), reg, negvars);
      return;
    case ModalKind::Dia: collect_atoms(g.child(), reg, negvars); return;
    case ModalKind::Top: return;
    default: break;
  }
  if (is_negative(g) || g.is(ModalKind::Bot)) {
    for (const auto& v : prop_vars(g))
      if (std::find(negvars.begin(), negvars.end(), v) == negvars.end()) negvars.push_back(v);
    return;
  }
  reg.push_back(g);
}

Decomposition simple_leaf(const Modal& gsa) {
  std::vector<Modal> reg;
  std::vector<PropVar> negvars;
  collect_atoms(gsa, reg, negvars);
  RankAssignment r = assign_ranks(reg, negvars);
  if (!r.regular) {
    std::string cyc;
    for (const auto& v : r.cycle) cyc += (cyc.empty() ? "" : " -> ") + v.key();
    throw Reject{"antecedent box-formulas are not regular: dependency cycle " + cyc};
  }
  Decomposition d;
  d.kind = DecompKind::Simple;
  d.gsa = r.apply(gsa);
  d.tree = reduced_tree(d.gsa);
  return d;
}

bool share_vars(const Modal& a, const Modal& b) {
  std::set<std::string> ka;
  for (const auto& v : prop_vars(a)) ka.insert(v.key());
  for (const auto& v : prop_vars(b))
    if (ka.count(v.key())) return true;
  return false;
}

Decomposition decompose(const Modal& f) {
  switch (f.kind()) {
    case ModalKind::Box: {
      Decomposition d;
      d.kind = DecompKind::Box;
      d.label = f.label();
      d.kids.push_back(decompose(f.child()));
      return d;
    }
    case ModalKind::And: {
      Decomposition d;
      d.kind = DecompKind::And;
      d.kids.push_back(decompose(f.left()));
      d.kids.push_back(decompose(f.right()));
      return d;
    }
    case ModalKind::Or:
      if (!share_vars(f.left(), f.right())) {
        Decomposition d;
        d.kind = DecompKind::DisjointOr;
        d.kids.push_back(decompose(f.left()));
        d.kids.push_back(decompose(f.right()));
        return d;
      }
      break;
    default: break;
  }
  ATree a = f.is(ModalKind::Implies)
                ? ATree::both(ATree::And, ante(f.left()), negant(f.right()))
                : negant(f);
  auto ds = disjuncts(a);
  if (ds.size() == 1) return simple_leaf(ds[0]);
  Decomposition d;
  d.kind = DecompKind::And;
  for (const auto& g : ds) d.kids.push_back(simple_leaf(g));
  return d;
}

// Tree under construction, before preorder numbering.
struct Proto {
  std::vector<Modal> reg, neg;
  std::vector<std::pair<Label, Proto>> kids;
};

void merge_into(Proto& a, Proto b) {
  a.reg.insert(a.reg.end(), b.reg.begin(), b.reg.end());
  a.neg.insert(a.neg.end(), b.neg.begin(), b.neg.end());
  for (auto& k : b.kids) a.kids.push_back(std::move(k));
}

Proto build_proto(const Modal& g) {
  switch (g.kind()) {
    case ModalKind::And: {
      Proto p = build_proto(g.left());
      merge_into(p, build_proto(g.right()));
      return p;
    }
    case ModalKind::Dia: {
      Proto p;
      p.kids.emplace_back(g.label(), build_proto(g.child()));
      return p;
    }
    case ModalKind::Top: return {};
    case ModalKind::Bot: {
      Proto p;
      p.neg.push_back(Modal::neg(Modal::top()));
      return p;
    }
    default: break;
  }
  Proto p;
  if (is_negative(g))
    p.neg.push_back(g);
  else if (classify_box(g).ok())
    p.reg.push_back(g);
  else
    throw NotGSAShape("not an antecedent atom: " + print(g));
  return p;
}

void flatten(const Proto& p, int parent, Label edge, LabelledTree& t) {
  int id = static_cast<int>(t.nodes.size());
  t.nodes.push_back({parent, edge, p.reg, p.neg, {}});
  if (parent >= 0) t.nodes[parent].children.push_back(id);
  for (const auto& [l, k] : p.kids) flatten(k, id, l, t);
}

}  // namespace

std::string LabelledTree::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    os << "node " << i;
    if (n.parent >= 0) os << " <" << n.edge.id << " node " << n.parent;
    os << " :";
    bool first = true;
    for (const auto& m : n.reg) {
      os << (first ? " " : ", ") << print(m);
      first = false;
    }
    for (const auto& m : n.neg) {
      os << (first ? " " : ", ") << print(m);
      first = false;
    }
    if (first) os << " (empty)";
    os << '\n';
  }
  return os.str();
}

std::string Decomposition::to_string(int indent) const {
  std::string pad(2 * indent, ' ');
  std::ostringstream os;
  switch (kind) {
    case DecompKind::Box: os << pad << "box " << label.id << '\n'; break;
    case DecompKind::And: os << pad << "and\n"; break;
    case DecompKind::DisjointOr: os << pad << "disjoint-or\n"; break;
    case DecompKind::Simple: {
      os << pad << "simple: " << print(gsa) << " -> F\n";
      std::istringstream lines(tree.to_string());
      std::string line;
      while (std::getline(lines, line)) os << pad << "  " << line << '\n';
      return os.str();
    }
  }
  for (const auto& k : kids) os << k.to_string(indent + 1);
  return os.str();
}

SahlqvistClassification classify_sahlqvist(const Modal& f) {
  SahlqvistClassification c;
  try {
    c.decomposition = decompose(f);
    c.ok = true;
  } catch (const Reject& r) {
    c.reason = r.reason;
  } catch (const NotGSAShape& e) {
    c.reason = e.what();
  }
  return c;
}

LabelledTree reduced_tree(const Modal& gsa) {
  LabelledTree t;
  flatten(build_proto(gsa), -1, Label{}, t);
  return t;
}

Fo standard_translation(const Modal& f, ObjVar at, VarSupply& supply) {
  switch (f.kind()) {
    case ModalKind::Var: return Fo::member(at, Expr::setvar(f.var()));
    case ModalKind::Top: return Fo::top();
    case ModalKind::Bot: return Fo::bot();
    case ModalKind::Not: return Fo::neg(standard_translation(f.child(), at, supply));
    case ModalKind::And:
      return Fo::conj(standard_translation(f.left(), at, supply),
                      standard_translation(f.right(), at, supply));
    case ModalKind::Or:
      return Fo::disj(standard_translation(f.left(), at, supply),
                      standard_translation(f.right(), at, supply));
    case ModalKind::Implies:
      return Fo::disj(Fo::neg(standard_translation(f.left(), at, supply)),
                      standard_translation(f.right(), at, supply));
    case ModalKind::Box: {
      ObjVar y = supply.fresh();
      return Fo::rforall(y, f.label(), at, standard_translation(f.child(), y, supply));
    }
    case ModalKind::Dia: {
      ObjVar y = supply.fresh();
      return Fo::rexists(y, f.label(), at, standard_translation(f.child(), y, supply));
    }
  }
  return Fo::top();
}

Fo standard_translation(const Modal& f, ObjVar at) {
  VarSupply s(at.id + 1);
  return standard_translation(f, at, s);
}

Fo sharp_translate(ObjVar s, const Expr& e, VarSupply& supply) {
  switch (e.kind()) {
    case ExprKind::ObjVar: return Fo::eq(s, e.obj());
    case ExprKind::Top: return Fo::eq(s, s);
    case ExprKind::Bot: return Fo::neg(Fo::eq(s, s));
    case ExprKind::Cap:
      return Fo::conj(sharp_translate(s, e.left(), supply), sharp_translate(s, e.right(), supply));
    case ExprKind::Cup:
      return Fo::disj(sharp_translate(s, e.left(), supply), sharp_translate(s, e.right(), supply));
    case ExprKind::Inv: {
      ObjVar z = supply.fresh();
      return Fo::rexists(z, e.label(), s, sharp_translate(z, e.child(), supply));
    }
    case ExprKind::IBox: {
      ObjVar z = supply.fresh();
      return Fo::rforall(z, e.label(), s, sharp_translate(z, e.child(), supply));
    }
    case ExprKind::Img: {
      ObjVar z = supply.fresh();
      return Fo::exists(z, Fo::conj(Fo::rel(e.label(), z, s), sharp_translate(z, e.child(), supply)));
    }
    default: throw IllFormed("plain reading is defined on L-expressions only: " + print(e));
  }
}

Fo sharp_translate(ObjVar subject, const Expr& e) {
  VarSupply s(subject.id + 1);
  for (const auto& x : obj_vars(e)) s.reserve_above(x);
  return sharp_translate(subject, e, s);
}

namespace {

template <class AtomFn>
Fo map_atoms(const Fo& f, AtomFn&& fn) {
  switch (f.kind()) {
    case FoKind::Member:
    case FoKind::Rel:
    case FoKind::Eq:
    case FoKind::Top:
    case FoKind::Bot: return fn(f);
    case FoKind::And: return Fo::conj(map_atoms(f.left(), fn), map_atoms(f.right(), fn));
    case FoKind::Or: return Fo::disj(map_atoms(f.left(), fn), map_atoms(f.right(), fn));
    case FoKind::Not: return Fo::neg(map_atoms(f.body(), fn));
    case FoKind::RForall: return Fo::rforall(f.bound(), f.label(), f.anchor(), map_atoms(f.body(), fn));
    case FoKind::RExists: return Fo::rexists(f.bound(), f.label(), f.anchor(), map_atoms(f.body(), fn));
    case FoKind::Forall: return Fo::forall(f.bound(), map_atoms(f.body(), fn));
    case FoKind::Exists: return Fo::exists(f.bound(), map_atoms(f.body(), fn));
  }
  return f;
}

}  // namespace

Fo expand_sharp(const Fo& f) {
  VarSupply s;
  s.reserve_above(f);
  return map_atoms(f, [&](const Fo& a) {
    return a.is(FoKind::Member) ? sharp_translate(a.subject(), a.expr(), s) : a;
  });
}

Fo simplify(const Fo& f) {
  switch (f.kind()) {
    case FoKind::And: {
      Fo a = simplify(f.left()), b = simplify(f.right());
      if (a.is(FoKind::Bot) || b.is(FoKind::Bot)) return Fo::bot();
      if (a.is(FoKind::Top)) return b;
      if (b.is(FoKind::Top)) return a;
      return Fo::conj(a, b);
    }
    case FoKind::Or: {
      Fo a = simplify(f.left()), b = simplify(f.right());
      if (a.is(FoKind::Top) || b.is(FoKind::Top)) return Fo::top();
      if (a.is(FoKind::Bot)) return b;
      if (b.is(FoKind::Bot)) return a;
      return Fo::disj(a, b);
    }
    case FoKind::Not: {
      Fo a = simplify(f.body());
      if (a.is(FoKind::Top)) return Fo::bot();
      if (a.is(FoKind::Bot)) return Fo::top();
      return Fo::neg(a);
    }
    case FoKind::RForall: {
      Fo a = simplify(f.body());
      if (a.is(FoKind::Top)) return a;
      return Fo::rforall(f.bound(), f.label(), f.anchor(), a);
    }
    case FoKind::RExists: {
      Fo a = simplify(f.body());
      if (a.is(FoKind::Bot)) return a;
      return Fo::rexists(f.bound(), f.label(), f.anchor(), a);
    }
    case FoKind::Forall: {
      Fo a = simplify(f.body());
      if (a.is(FoKind::Top) || a.is(FoKind::Bot)) return a;
      return Fo::forall(f.bound(), a);
    }
    case FoKind::Exists: {
      Fo a = simplify(f.body());
      if (a.is(FoKind::Top) || a.is(FoKind::Bot)) return a;
      return Fo::exists(f.bound(), a);
    }
    default: return f;
  }
}

SimpleCorrespondent simple_correspondent(const LabelledTree& t, ObjVar at, VarSupply& supply) {
  supply.reserve_above(at);
  std::vector<ObjVar> var(t.nodes.size());
  RequirementMap f;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    var[i] = i == 0 ? at : supply.fresh();
    if (!t.nodes[i].reg.empty()) {
      auto& slot = f[var[i]];
      slot.insert(slot.end(), t.nodes[i].reg.begin(), t.nodes[i].reg.end());
    }
  }
  std::map<PropVar, std::vector<Expr>> branches;
  auto branches_of = [&](const PropVar& p) -> const std::vector<Expr>& {
    auto it = branches.find(p);
    if (it == branches.end()) it = branches.emplace(p, kf(f, p)).first;
    return it->second;
  };

  std::vector<Fo> cases;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (const auto& n : t.nodes[i].neg) {
      Fo st = standard_translation(n.child(), var[i], supply);
      cases.push_back(map_atoms(st, [&](const Fo& a) {
        if (!a.is(FoKind::Member) || !a.expr().is(ExprKind::SetVar)) return a;
        std::vector<Fo> ms;
        for (const auto& b : branches_of(a.expr().setvar())) ms.push_back(Fo::member(a.subject(), b));
        return Fo::disj_all(ms);
      }));
    }
  Fo consequent = simplify(Fo::disj_all(cases));

  Fo restricted = consequent;
  for (std::size_t i = t.nodes.size(); i-- > 1;)
    restricted = Fo::rforall(var[i], t.nodes[i].edge, var[t.nodes[i].parent], restricted);
  restricted = simplify(restricted);

  std::vector<Fo> edges;
  for (std::size_t i = 1; i < t.nodes.size(); ++i)
    edges.push_back(Fo::rel(t.nodes[i].edge, var[t.nodes[i].parent], var[i]));
  Fo universal = edges.empty() ? consequent : Fo::disj(Fo::neg(Fo::conj_all(edges)), consequent);
  for (std::size_t i = t.nodes.size(); i-- > 1;) universal = Fo::forall(var[i], universal);
  return {restricted, universal};
}

SimpleCorrespondent simple_correspondent(const LabelledTree& t, ObjVar at) {
  VarSupply s(at.id + 1);
  return simple_correspondent(t, at, s);
}

Fo correspond(const Decomposition& d, ObjVar at, VarSupply& supply) {
  supply.reserve_above(at);
  switch (d.kind) {
    case DecompKind::Box: {
      ObjVar y = supply.fresh();
      return Fo::rforall(y, d.label, at, correspond(d.kids[0], y, supply));
    }
    case DecompKind::And:
    case DecompKind::DisjointOr: {
      std::vector<Fo> parts;
      for (const auto& k : d.kids) parts.push_back(correspond(k, at, supply));
      Fo out = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i)
        out = d.kind == DecompKind::And ? Fo::conj(out, parts[i]) : Fo::disj(out, parts[i]);
      return out;
    }
    case DecompKind::Simple: return simple_correspondent(d.tree, at, supply).restricted;
  }
  return Fo::top();
}

Fo correspond(const Modal& f, ObjVar at) {
  auto c = classify_sahlqvist(f);
  if (!c.ok) throw NotSahlqvist("not a generalized Sahlqvist formula: " + c.reason);
  VarSupply s(at.id + 1);
  Fo g = simplify(correspond(*c.decomposition, at, s));
  // Constant correspondents still need their free variable.
  if (free_vars(g).count(at)) return g;
  if (g.is(FoKind::Top)) return Fo::member(at, Expr::top());
  if (g.is(FoKind::Bot)) return Fo::member(at, Expr::bot());
  return Fo::conj(Fo::member(at, Expr::top()), g);
}

}  // namespace sahlkracht
