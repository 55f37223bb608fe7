#include "sahlkracht/core.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>
#include <utility>

#include "sahlkracht/error.hpp"

namespace sahlkracht {

std::string PropVar::key() const {
  if (!name.empty()) return name;
  return "p" + std::to_string(rank) + "_" + std::to_string(index);
}

bool operator==(const PropVar& a, const PropVar& b) {
  if (a.ranked() != b.ranked()) return false;
  if (a.ranked()) return a.rank == b.rank && a.index == b.index;
  return a.name == b.name;
}

std::strong_ordering operator<=>(const PropVar& a, const PropVar& b) {
  if (a.ranked() != b.ranked()) return a.ranked() <=> b.ranked();
  if (a.ranked()) {
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    return a.index <=> b.index;
  }
  return a.name <=> b.name;
}

// ---------------------------------------------------------------------------
// Modal

namespace {

template <class T>
std::strong_ordering compare_kids(const std::vector<T>& a, const std::vector<T>& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

}  // namespace

Modal Modal::var(PropVar v) {
  return Modal(std::make_shared<const Node>(Node{ModalKind::Var, std::move(v), {}, {}}));
}
Modal Modal::top() {
  static const Modal t(std::make_shared<const Node>(Node{ModalKind::Top, {}, {}, {}}));
  return t;
}
Modal Modal::bot() {
  static const Modal b(std::make_shared<const Node>(Node{ModalKind::Bot, {}, {}, {}}));
  return b;
}
Modal Modal::neg(Modal a) {
  return Modal(std::make_shared<const Node>(Node{ModalKind::Not, {}, {}, {std::move(a)}}));
}
Modal Modal::conj(Modal a, Modal b) {
  return Modal(std::make_shared<const Node>(
      Node{ModalKind::And, {}, {}, {std::move(a), std::move(b)}}));
}
Modal Modal::disj(Modal a, Modal b) {
  return Modal(std::make_shared<const Node>(
      Node{ModalKind::Or, {}, {}, {std::move(a), std::move(b)}}));
}
Modal Modal::implies(Modal a, Modal b) {
  return Modal(std::make_shared<const Node>(
      Node{ModalKind::Implies, {}, {}, {std::move(a), std::move(b)}}));
}
Modal Modal::box(Label l, Modal a) {
  return Modal(std::make_shared<const Node>(Node{ModalKind::Box, {}, l, {std::move(a)}}));
}
Modal Modal::dia(Label l, Modal a) {
  return Modal(std::make_shared<const Node>(Node{ModalKind::Dia, {}, l, {std::move(a)}}));
}

Modal Modal::conj_all(const std::vector<Modal>& xs) {
  if (xs.empty()) return top();
  Modal acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Modal Modal::disj_all(const std::vector<Modal>& xs) {
  if (xs.empty()) return bot();
  Modal acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

ModalKind Modal::kind() const { return n_->kind; }
const PropVar& Modal::var() const { return n_->var; }
Label Modal::label() const { return n_->label; }
const Modal& Modal::child() const { return n_->kids.at(0); }
const Modal& Modal::left() const { return n_->kids.at(0); }
const Modal& Modal::right() const { return n_->kids.at(1); }

bool operator==(const Modal& a, const Modal& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Modal& a, const Modal& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.n_->kind <=> b.n_->kind; c != 0) return c;
  if (auto c = a.n_->label <=> b.n_->label; c != 0) return c;
  if (a.n_->kind == ModalKind::Var)
    if (auto c = a.n_->var <=> b.n_->var; c != 0) return c;
  return compare_kids(a.n_->kids, b.n_->kids);
}

std::vector<PropVar> prop_vars(const Modal& f) {
  std::vector<PropVar> out;
  std::function<void(const Modal&)> go = [&](const Modal& m) {
    switch (m.kind()) {
      case ModalKind::Var:
        if (std::find(out.begin(), out.end(), m.var()) == out.end()) out.push_back(m.var());
        return;
      case ModalKind::Top:
      case ModalKind::Bot:
        return;
      case ModalKind::Not:
      case ModalKind::Box:
      case ModalKind::Dia:
        go(m.child());
        return;
      default:
        go(m.left());
        go(m.right());
    }
  };
  go(f);
  return out;
}

std::vector<Label> labels_of(const Modal& f) {
  std::set<Label> s;
  std::function<void(const Modal&)> go = [&](const Modal& m) {
    switch (m.kind()) {
      case ModalKind::Var:
      case ModalKind::Top:
      case ModalKind::Bot:
        return;
      case ModalKind::Box:
      case ModalKind::Dia:
        s.insert(m.label());
        go(m.child());
        return;
      case ModalKind::Not:
        go(m.child());
        return;
      default:
        go(m.left());
        go(m.right());
    }
  };
  go(f);
  return {s.begin(), s.end()};
}

std::size_t size_of(const Modal& f) {
  switch (f.kind()) {
    case ModalKind::Var:
    case ModalKind::Top:
    case ModalKind::Bot:
      return 1;
    case ModalKind::Not:
    case ModalKind::Box:
    case ModalKind::Dia:
      return 1 + size_of(f.child());
    default:
      return 1 + size_of(f.left()) + size_of(f.right());
  }
}

Modal rename_props(const Modal& f, const std::map<PropVar, PropVar>& m) {
  switch (f.kind()) {
    case ModalKind::Var: {
      auto it = m.find(f.var());
      return it == m.end() ? f : Modal::var(it->second);
    }
    case ModalKind::Top:
    case ModalKind::Bot:
      return f;
    case ModalKind::Not:
      return Modal::neg(rename_props(f.child(), m));
    case ModalKind::Box:
      return Modal::box(f.label(), rename_props(f.child(), m));
    case ModalKind::Dia:
      return Modal::dia(f.label(), rename_props(f.child(), m));
    case ModalKind::And:
      return Modal::conj(rename_props(f.left(), m), rename_props(f.right(), m));
    case ModalKind::Or:
      return Modal::disj(rename_props(f.left(), m), rename_props(f.right(), m));
    case ModalKind::Implies:
      return Modal::implies(rename_props(f.left(), m), rename_props(f.right(), m));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Expr

Expr::Node::~Node() {
  std::vector<Expr> pending = std::move(kids);
  while (!pending.empty()) {
    Expr e = std::move(pending.back());
    pending.pop_back();
    if (e.n_.use_count() == 1) {
      for (auto& k : e.n_->kids) pending.push_back(std::move(k));
      e.n_->kids.clear();
    }
  }
}

namespace {

std::shared_ptr<const Expr::Node> make_expr_node(ExprKind k, ObjVar x, PropVar p, Label l,
                                                 std::vector<Expr> kids) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->obj = x;
  n->set = std::move(p);
  n->label = l;
  n->kids = std::move(kids);
  return n;
}

}  // namespace

Expr Expr::obj(ObjVar x) { return Expr(make_expr_node(ExprKind::ObjVar, x, {}, {}, {})); }
Expr Expr::setvar(PropVar p) {
  return Expr(make_expr_node(ExprKind::SetVar, {}, std::move(p), {}, {}));
}
Expr Expr::hole() {
  static const Expr h(make_expr_node(ExprKind::Hole, {}, {}, {}, {}));
  return h;
}
Expr Expr::top() {
  static const Expr t(make_expr_node(ExprKind::Top, {}, {}, {}, {}));
  return t;
}
Expr Expr::bot() {
  static const Expr b(make_expr_node(ExprKind::Bot, {}, {}, {}, {}));
  return b;
}
Expr Expr::cap(Expr a, Expr b) {
  return Expr(make_expr_node(ExprKind::Cap, {}, {}, {}, {std::move(a), std::move(b)}));
}
Expr Expr::cup(Expr a, Expr b) {
  return Expr(make_expr_node(ExprKind::Cup, {}, {}, {}, {std::move(a), std::move(b)}));
}
Expr Expr::inv(Label l, Expr a) {
  return Expr(make_expr_node(ExprKind::Inv, {}, {}, l, {std::move(a)}));
}
Expr Expr::ibox(Label l, Expr a) {
  return Expr(make_expr_node(ExprKind::IBox, {}, {}, l, {std::move(a)}));
}
Expr Expr::img(Label l, Expr a) {
  return Expr(make_expr_node(ExprKind::Img, {}, {}, l, {std::move(a)}));
}

Expr Expr::cap_all(const std::vector<Expr>& xs) {
  if (xs.empty()) return top();
  Expr acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = cap(acc, xs[i]);
  return acc;
}

Expr Expr::cup_all(const std::vector<Expr>& xs) {
  if (xs.empty()) return bot();
  Expr acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = cup(acc, xs[i]);
  return acc;
}

ExprKind Expr::kind() const { return n_->kind; }
ObjVar Expr::obj() const { return n_->obj; }
const PropVar& Expr::setvar() const { return n_->set; }
Label Expr::label() const { return n_->label; }
const Expr& Expr::child() const { return n_->kids.at(0); }
const Expr& Expr::left() const { return n_->kids.at(0); }
const Expr& Expr::right() const { return n_->kids.at(1); }

bool Expr::is_unary() const {
  auto k = kind();
  return k == ExprKind::Inv || k == ExprKind::IBox || k == ExprKind::Img;
}
bool Expr::is_binary() const { return kind() == ExprKind::Cap || kind() == ExprKind::Cup; }

bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.n_->kind <=> b.n_->kind; c != 0) return c;
  switch (a.n_->kind) {
    case ExprKind::ObjVar:
      return a.n_->obj <=> b.n_->obj;
    case ExprKind::SetVar:
      return a.n_->set <=> b.n_->set;
    default:
      break;
  }
  if (auto c = a.n_->label <=> b.n_->label; c != 0) return c;
  return compare_kids(a.n_->kids, b.n_->kids);
}

namespace {

template <class Fn>
void visit_expr(const Expr& e, Fn&& fn) {
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* cur = stack.back();
    stack.pop_back();
    fn(*cur);
    if (cur->is_binary()) {
      stack.push_back(&cur->right());
      stack.push_back(&cur->left());
    } else if (cur->is_unary()) {
      stack.push_back(&cur->child());
    }
  }
}

}  // namespace

Sublanguage sublanguage(const Expr& e) {
  bool obj = false, set = false, hole = false, img = false;
  visit_expr(e, [&](const Expr& n) {
    switch (n.kind()) {
      case ExprKind::ObjVar: obj = true; break;
      case ExprKind::SetVar: set = true; break;
      case ExprKind::Hole: hole = true; break;
      case ExprKind::Img: img = true; break;
      default: break;
    }
  });
  if (!set && !hole) return Sublanguage::L;
  if (obj) return Sublanguage::Mixed;
  if (!hole && !img) return Sublanguage::LP;
  return Sublanguage::LHash;
}

bool in_L(const Expr& e) { return sublanguage(e) == Sublanguage::L; }

namespace {

bool setvars_below(const Expr& e, int k) {
  bool ok = true;
  visit_expr(e, [&](const Expr& n) {
    if (n.is(ExprKind::SetVar) && (!n.setvar().ranked() || n.setvar().rank >= k)) ok = false;
  });
  return ok;
}

}  // namespace

bool in_LP(const Expr& e, int k) {
  bool ok = true;
  visit_expr(e, [&](const Expr& n) {
    auto kd = n.kind();
    if (kd == ExprKind::Hole || kd == ExprKind::Img || kd == ExprKind::ObjVar) ok = false;
  });
  return ok && setvars_below(e, k);
}

bool in_LHash(const Expr& e, int k) {
  bool ok = true;
  visit_expr(e, [&](const Expr& n) { ok = ok && !n.is(ExprKind::ObjVar); });
  return ok && setvars_below(e, k);
}

std::set<ObjVar> obj_vars(const Expr& e) {
  std::set<ObjVar> out;
  visit_expr(e, [&](const Expr& n) {
    if (n.is(ExprKind::ObjVar)) out.insert(n.obj());
  });
  return out;
}

std::vector<PropVar> set_vars(const Expr& e) {
  std::vector<PropVar> out;
  visit_expr(e, [&](const Expr& n) {
    if (n.is(ExprKind::SetVar) &&
        std::find(out.begin(), out.end(), n.setvar()) == out.end())
      out.push_back(n.setvar());
  });
  return out;
}

std::size_t size_of(const Expr& e) {
  std::size_t n = 0;
  visit_expr(e, [&](const Expr&) { ++n; });
  return n;
}

std::size_t hole_count(const Expr& e) {
  std::size_t n = 0;
  visit_expr(e, [&](const Expr& x) { n += x.is(ExprKind::Hole); });
  return n;
}

namespace {

template <class Leaf>
Expr rebuild(const Expr& e, Leaf&& leaf) {
  switch (e.kind()) {
    case ExprKind::Cap:
      return Expr::cap(rebuild(e.left(), leaf), rebuild(e.right(), leaf));
    case ExprKind::Cup:
      return Expr::cup(rebuild(e.left(), leaf), rebuild(e.right(), leaf));
    case ExprKind::Inv:
      return Expr::inv(e.label(), rebuild(e.child(), leaf));
    case ExprKind::IBox:
      return Expr::ibox(e.label(), rebuild(e.child(), leaf));
    case ExprKind::Img:
      return Expr::img(e.label(), rebuild(e.child(), leaf));
    default:
      return leaf(e);
  }
}

}  // namespace

Expr substitute_hole(const Expr& e, const Expr& t) {
  return rebuild(e, [&](const Expr& x) { return x.is(ExprKind::Hole) ? t : x; });
}

Expr substitute_setvars(const Expr& e, const std::map<PropVar, Expr>& m) {
  return rebuild(e, [&](const Expr& x) {
    if (!x.is(ExprKind::SetVar)) return x;
    auto it = m.find(x.setvar());
    if (it == m.end()) throw MissingBinding("no binding for set variable " + x.setvar().key());
    return it->second;
  });
}

Expr substitute_objvars(const Expr& e, const std::map<ObjVar, Expr>& m) {
  return rebuild(e, [&](const Expr& x) {
    if (!x.is(ExprKind::ObjVar)) return x;
    auto it = m.find(x.obj());
    return it == m.end() ? x : it->second;
  });
}

std::vector<Label> labels_of(const Expr& e) {
  std::set<Label> s;
  visit_expr(e, [&](const Expr& n) {
    if (n.is_unary()) s.insert(n.label());
  });
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Fo

namespace {

std::shared_ptr<const Fo::Node> make_fo(FoKind k, ObjVar x, ObjVar y, Label l, Expr e,
                                        std::vector<Fo> kids) {
  return std::make_shared<const Fo::Node>(
      Fo::Node{k, x, y, l, std::move(e), std::move(kids)});
}

}  // namespace

Fo Fo::member(ObjVar s, Expr e) { return Fo(make_fo(FoKind::Member, s, {}, {}, std::move(e), {})); }
Fo Fo::rel(Label l, ObjVar x, ObjVar y) { return Fo(make_fo(FoKind::Rel, x, y, l, Expr::top(), {})); }
Fo Fo::eq(ObjVar x, ObjVar y) { return Fo(make_fo(FoKind::Eq, x, y, {}, Expr::top(), {})); }
Fo Fo::top() {
  static const Fo t(make_fo(FoKind::Top, {}, {}, {}, Expr::top(), {}));
  return t;
}
Fo Fo::bot() {
  static const Fo b(make_fo(FoKind::Bot, {}, {}, {}, Expr::top(), {}));
  return b;
}
Fo Fo::conj(Fo a, Fo b) {
  return Fo(make_fo(FoKind::And, {}, {}, {}, Expr::top(), {std::move(a), std::move(b)}));
}
Fo Fo::disj(Fo a, Fo b) {
  return Fo(make_fo(FoKind::Or, {}, {}, {}, Expr::top(), {std::move(a), std::move(b)}));
}
Fo Fo::neg(Fo a) { return Fo(make_fo(FoKind::Not, {}, {}, {}, Expr::top(), {std::move(a)})); }
Fo Fo::rforall(ObjVar b, Label l, ObjVar a, Fo body) {
  return Fo(make_fo(FoKind::RForall, b, a, l, Expr::top(), {std::move(body)}));
}
Fo Fo::rexists(ObjVar b, Label l, ObjVar a, Fo body) {
  return Fo(make_fo(FoKind::RExists, b, a, l, Expr::top(), {std::move(body)}));
}
Fo Fo::forall(ObjVar b, Fo body) {
  return Fo(make_fo(FoKind::Forall, b, {}, {}, Expr::top(), {std::move(body)}));
}
Fo Fo::exists(ObjVar b, Fo body) {
  return Fo(make_fo(FoKind::Exists, b, {}, {}, Expr::top(), {std::move(body)}));
}

Fo Fo::conj_all(const std::vector<Fo>& xs) {
  if (xs.empty()) return top();
  Fo acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Fo Fo::disj_all(const std::vector<Fo>& xs) {
  if (xs.empty()) return bot();
  Fo acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

FoKind Fo::kind() const { return n_->kind; }
bool Fo::is_quantifier() const {
  auto k = kind();
  return k == FoKind::RForall || k == FoKind::RExists || k == FoKind::Forall ||
         k == FoKind::Exists;
}
bool Fo::is_restricted() const { return kind() == FoKind::RForall || kind() == FoKind::RExists; }
ObjVar Fo::subject() const { return n_->x; }
const Expr& Fo::expr() const { return n_->expr; }
ObjVar Fo::lhs() const { return n_->x; }
ObjVar Fo::rhs() const { return n_->y; }
ObjVar Fo::bound() const { return n_->x; }
ObjVar Fo::anchor() const { return n_->y; }
Label Fo::label() const { return n_->label; }
const Fo& Fo::body() const { return n_->kids.at(0); }
const Fo& Fo::left() const { return n_->kids.at(0); }
const Fo& Fo::right() const { return n_->kids.at(1); }

bool operator==(const Fo& a, const Fo& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Fo& a, const Fo& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.x <=> y.x; c != 0) return c;
  if (auto c = x.y <=> y.y; c != 0) return c;
  if (auto c = x.label <=> y.label; c != 0) return c;
  if (x.kind == FoKind::Member)
    if (auto c = x.expr <=> y.expr; c != 0) return c;
  return compare_kids(x.kids, y.kids);
}

namespace {

void collect_free(const Fo& f, std::set<ObjVar>& bound, std::set<ObjVar>& out) {
  auto use = [&](ObjVar v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (f.kind()) {
    case FoKind::Member:
      use(f.subject());
      for (ObjVar v : obj_vars(f.expr())) use(v);
      return;
    case FoKind::Rel:
    case FoKind::Eq:
      use(f.lhs());
      use(f.rhs());
      return;
    case FoKind::Top:
    case FoKind::Bot:
      return;
    case FoKind::And:
    case FoKind::Or:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case FoKind::Not:
      collect_free(f.body(), bound, out);
      return;
    case FoKind::RForall:
    case FoKind::RExists:
      use(f.anchor());
      [[fallthrough]];
    case FoKind::Forall:
    case FoKind::Exists: {
      bool was = bound.count(f.bound());
      bound.insert(f.bound());
      collect_free(f.body(), bound, out);
      if (!was) bound.erase(f.bound());
      return;
    }
  }
}

template <class Fn>
void visit_fo(const Fo& f, Fn&& fn) {
  fn(f);
  switch (f.kind()) {
    case FoKind::And:
    case FoKind::Or:
      visit_fo(f.left(), fn);
      visit_fo(f.right(), fn);
      return;
    case FoKind::Not:
    case FoKind::RForall:
    case FoKind::RExists:
    case FoKind::Forall:
    case FoKind::Exists:
      visit_fo(f.body(), fn);
      return;
    default:
      return;
  }
}

}  // namespace

std::set<ObjVar> free_vars(const Fo& f) {
  std::set<ObjVar> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<ObjVar> all_vars(const Fo& f) {
  std::set<ObjVar> out;
  visit_fo(f, [&](const Fo& n) {
    switch (n.kind()) {
      case FoKind::Member:
        out.insert(n.subject());
        for (ObjVar v : obj_vars(n.expr())) out.insert(v);
        break;
      case FoKind::Rel:
      case FoKind::Eq:
        out.insert(n.lhs());
        out.insert(n.rhs());
        break;
      case FoKind::RForall:
      case FoKind::RExists:
        out.insert(n.anchor());
        out.insert(n.bound());
        break;
      case FoKind::Forall:
      case FoKind::Exists:
        out.insert(n.bound());
        break;
      default:
        break;
    }
  });
  return out;
}

std::vector<ObjVar> bound_vars(const Fo& f) {
  std::vector<ObjVar> out;
  visit_fo(f, [&](const Fo& n) {
    if (n.is_quantifier()) out.push_back(n.bound());
  });
  return out;
}

bool is_clean(const Fo& f) {
  auto bv = bound_vars(f);
  std::set<ObjVar> seen;
  for (ObjVar v : bv)
    if (!seen.insert(v).second) return false;
  for (ObjVar v : free_vars(f))
    if (seen.count(v)) return false;
  return true;
}

std::vector<Label> labels_of(const Fo& f) {
  std::set<Label> s;
  visit_fo(f, [&](const Fo& n) {
    if (n.is(FoKind::Rel) || n.is_restricted()) s.insert(n.label());
    if (n.is(FoKind::Member))
      for (Label l : labels_of(n.expr())) s.insert(l);
  });
  return {s.begin(), s.end()};
}

std::size_t size_of(const Fo& f) {
  std::size_t n = 0;
  visit_fo(f, [&](const Fo& x) { n += x.is(FoKind::Member) ? size_of(x.expr()) : 1; });
  return n;
}

namespace {

ObjVar mapped(const std::map<ObjVar, ObjVar>& m, ObjVar v) {
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}

Fo rename_rec(const Fo& f, std::map<ObjVar, ObjVar> m) {
  switch (f.kind()) {
    case FoKind::Member: {
      std::map<ObjVar, Expr> em;
      for (auto [from, to] : m) em.emplace(from, Expr::obj(to));
      return Fo::member(mapped(m, f.subject()), substitute_objvars(f.expr(), em));
    }
    case FoKind::Rel:
      return Fo::rel(f.label(), mapped(m, f.lhs()), mapped(m, f.rhs()));
    case FoKind::Eq:
      return Fo::eq(mapped(m, f.lhs()), mapped(m, f.rhs()));
    case FoKind::Top:
    case FoKind::Bot:
      return f;
    case FoKind::And:
      return Fo::conj(rename_rec(f.left(), m), rename_rec(f.right(), m));
    case FoKind::Or:
      return Fo::disj(rename_rec(f.left(), m), rename_rec(f.right(), m));
    case FoKind::Not:
      return Fo::neg(rename_rec(f.body(), m));
    default:
      break;
  }
  ObjVar anchor = f.is_restricted() ? mapped(m, f.anchor()) : ObjVar{};
  m.erase(f.bound());
  Fo body = rename_rec(f.body(), std::move(m));
  switch (f.kind()) {
    case FoKind::RForall: return Fo::rforall(f.bound(), f.label(), anchor, body);
    case FoKind::RExists: return Fo::rexists(f.bound(), f.label(), anchor, body);
    case FoKind::Forall: return Fo::forall(f.bound(), body);
    default: return Fo::exists(f.bound(), body);
  }
}

Fo clean_rec(const Fo& f, std::set<ObjVar>& used, int& next, std::map<ObjVar, ObjVar> m) {
  if (!f.is_quantifier()) {
    switch (f.kind()) {
      case FoKind::And:
        return Fo::conj(clean_rec(f.left(), used, next, m), clean_rec(f.right(), used, next, m));
      case FoKind::Or:
        return Fo::disj(clean_rec(f.left(), used, next, m), clean_rec(f.right(), used, next, m));
      case FoKind::Not:
        return Fo::neg(clean_rec(f.body(), used, next, m));
      default:
        return rename_rec(f, m);
    }
  }
  ObjVar anchor = f.is_restricted() ? mapped(m, f.anchor()) : ObjVar{};
  ObjVar b = f.bound();
  if (used.count(b)) {
    ObjVar fresh{next++};
    m[b] = fresh;
    b = fresh;
  } else {
    m.erase(b);
  }
  used.insert(b);
  Fo body = clean_rec(f.body(), used, next, std::move(m));
  switch (f.kind()) {
    case FoKind::RForall: return Fo::rforall(b, f.label(), anchor, body);
    case FoKind::RExists: return Fo::rexists(b, f.label(), anchor, body);
    case FoKind::Forall: return Fo::forall(b, body);
    default: return Fo::exists(b, body);
  }
}

}  // namespace

Fo rename_free(const Fo& f, const std::map<ObjVar, ObjVar>& m) { return rename_rec(f, m); }

Fo rename_clean(const Fo& f) {
  std::set<ObjVar> used = free_vars(f);
  int next = 0;
  for (ObjVar v : all_vars(f)) next = std::max(next, v.id + 1);
  return clean_rec(f, used, next, {});
}

void VarSupply::reserve_above(const Fo& f) {
  for (ObjVar v : all_vars(f)) reserve_above(v);
}

}  // namespace sahlkracht
