#pragma once

// Syntax trees for the three languages the engine works with: multimodal
// formulas, set expressions over relations, and extended first-order
// formulas. All trees are immutable and share structure; copying a handle is
// cheap.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sahlkracht {

/// Modality index. Each label selects one box/diamond pair and one
/// accessibility relation.
struct Label {
  int id = 1;
  auto operator<=>(const Label&) const = default;
};

/// Object (first-order) variable. Printed as x<id>.
struct ObjVar {
  int id = 0;
  auto operator<=>(const ObjVar&) const = default;
};

/// Propositional variable p^rank_index. Surface variables come out of the
/// parser unranked (rank < 0) and are identified by name; once ranked they
/// are identified by (rank, index) and the name is kept only for printing.
struct PropVar {
  std::string name;
  int rank = -1;
  int index = -1;

  bool ranked() const { return rank >= 0; }
  /// Stable textual key: the display name, or p<rank>_<index> when nameless.
  std::string key() const;

  static PropVar named(std::string n) { return PropVar{std::move(n), -1, -1}; }
  static PropVar at(int rank, int index, std::string n = {}) {
    return PropVar{std::move(n), rank, index};
  }

  friend bool operator==(const PropVar& a, const PropVar& b);
  friend std::strong_ordering operator<=>(const PropVar& a, const PropVar& b);
};

// ---------------------------------------------------------------------------
// Modal formulas

enum class ModalKind { Var, Top, Bot, Not, And, Or, Implies, Box, Dia };

class Modal {
 public:
  static Modal var(PropVar v);
  static Modal var(std::string name) { return var(PropVar::named(std::move(name))); }
  static Modal top();
  static Modal bot();
  static Modal neg(Modal a);
  static Modal conj(Modal a, Modal b);
  static Modal disj(Modal a, Modal b);
  static Modal implies(Modal a, Modal b);
  static Modal box(Label l, Modal a);
  static Modal dia(Label l, Modal a);

  /// Left-folded conjunction/disjunction; empty lists give T / F.
  static Modal conj_all(const std::vector<Modal>& xs);
  static Modal disj_all(const std::vector<Modal>& xs);

  ModalKind kind() const;
  const PropVar& var() const;
  Label label() const;
  const Modal& child() const;  // Not, Box, Dia
  const Modal& left() const;   // And, Or, Implies
  const Modal& right() const;

  bool is(ModalKind k) const { return kind() == k; }

  friend bool operator==(const Modal& a, const Modal& b);
  friend std::strong_ordering operator<=>(const Modal& a, const Modal& b);

  struct Node;

 private:
  explicit Modal(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Modal::Node {
  ModalKind kind;
  PropVar var;
  Label label;
  std::vector<Modal> kids;
};

/// Propositional variables of a formula in order of first occurrence.
std::vector<PropVar> prop_vars(const Modal& f);
std::vector<Label> labels_of(const Modal& f);
std::size_t size_of(const Modal& f);
/// Replace propositional variables (by identity) throughout.
Modal rename_props(const Modal& f, const std::map<PropVar, PropVar>& m);

// ---------------------------------------------------------------------------
// Set expressions (languages L, L^P_k, L^#_k)

enum class ExprKind { ObjVar, SetVar, Hole, Top, Bot, Cap, Cup, Inv, IBox, Img };

class Expr {
 public:
  static Expr obj(ObjVar x);
  static Expr obj(int id) { return obj(ObjVar{id}); }
  static Expr setvar(PropVar p);
  static Expr hole();
  static Expr top();
  static Expr bot();
  static Expr cap(Expr a, Expr b);
  static Expr cup(Expr a, Expr b);
  static Expr inv(Label l, Expr a);
  static Expr ibox(Label l, Expr a);
  static Expr img(Label l, Expr a);

  static Expr cap_all(const std::vector<Expr>& xs);  // empty: T
  static Expr cup_all(const std::vector<Expr>& xs);  // empty: F

  ExprKind kind() const;
  ObjVar obj() const;
  const PropVar& setvar() const;
  Label label() const;
  const Expr& child() const;  // Inv, IBox, Img
  const Expr& left() const;   // Cap, Cup
  const Expr& right() const;

  bool is(ExprKind k) const { return kind() == k; }
  bool is_unary() const;
  bool is_binary() const;
  /// Identity of the shared node, for memo tables keyed by position.
  const void* node_id() const { return n_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Expr::Node {
  ExprKind kind;
  ObjVar obj;
  PropVar set;
  Label label;
  mutable std::vector<Expr> kids;
  // Long img-chains would overflow the stack under recursive release.
  ~Node();
};

enum class Sublanguage { L, LP, LHash, Mixed };

/// Smallest of the three expression languages containing e (rank bound not
/// considered). Mixed means both a hole and an object variable occur, or an
/// Img node sits next to set variables without a hole.
Sublanguage sublanguage(const Expr& e);
bool in_L(const Expr& e);
bool in_LP(const Expr& e, int k);
bool in_LHash(const Expr& e, int k);

std::set<ObjVar> obj_vars(const Expr& e);
std::vector<PropVar> set_vars(const Expr& e);
std::size_t size_of(const Expr& e);
std::size_t hole_count(const Expr& e);

/// Replace every hole with t.
Expr substitute_hole(const Expr& e, const Expr& t);
/// Simultaneously replace set variables; throws MissingBinding when a set
/// variable of e is not in the map.
Expr substitute_setvars(const Expr& e, const std::map<PropVar, Expr>& m);
/// Simultaneously replace object variables present in the map.
Expr substitute_objvars(const Expr& e, const std::map<ObjVar, Expr>& m);

// ---------------------------------------------------------------------------
// Extended first-order formulas

enum class FoKind {
  Member,   // subject in expr
  Rel,      // x R_l y
  Eq,       // x = y
  Top,
  Bot,
  And,
  Or,
  Not,
  RForall,  // (all y <l x) body
  RExists,  // (ex y <l x) body
  Forall,
  Exists,
};

class Fo {
 public:
  static Fo member(ObjVar subject, Expr e);
  static Fo rel(Label l, ObjVar x, ObjVar y);
  static Fo eq(ObjVar x, ObjVar y);
  static Fo top();
  static Fo bot();
  static Fo conj(Fo a, Fo b);
  static Fo disj(Fo a, Fo b);
  static Fo neg(Fo a);
  static Fo rforall(ObjVar bound, Label l, ObjVar anchor, Fo body);
  static Fo rexists(ObjVar bound, Label l, ObjVar anchor, Fo body);
  static Fo forall(ObjVar bound, Fo body);
  static Fo exists(ObjVar bound, Fo body);

  static Fo conj_all(const std::vector<Fo>& xs);  // empty: T
  static Fo disj_all(const std::vector<Fo>& xs);  // empty: F

  FoKind kind() const;
  bool is(FoKind k) const { return kind() == k; }
  bool is_quantifier() const;
  bool is_restricted() const;

  ObjVar subject() const;  // Member
  const Expr& expr() const;
  ObjVar lhs() const;  // Rel, Eq
  ObjVar rhs() const;
  ObjVar bound() const;   // quantifiers
  ObjVar anchor() const;  // restricted quantifiers
  Label label() const;    // Rel, restricted quantifiers
  const Fo& body() const;  // quantifiers, Not
  const Fo& left() const;  // And, Or
  const Fo& right() const;

  friend bool operator==(const Fo& a, const Fo& b);
  friend std::strong_ordering operator<=>(const Fo& a, const Fo& b);

  struct Node;

 private:
  explicit Fo(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Fo::Node {
  FoKind kind;
  ObjVar x;  // subject / lhs / bound
  ObjVar y;  // rhs / anchor
  Label label;
  Expr expr = Expr::top();
  std::vector<Fo> kids;
};

std::set<ObjVar> free_vars(const Fo& f);
/// Every variable mentioned anywhere, free or bound.
std::set<ObjVar> all_vars(const Fo& f);
std::vector<ObjVar> bound_vars(const Fo& f);  // in binder order
bool is_clean(const Fo& f);
std::vector<Label> labels_of(const Fo& f);
std::vector<Label> labels_of(const Expr& e);
std::size_t size_of(const Fo& f);

/// Rename free occurrences of variables (binders are not touched; the caller
/// guarantees no capture).
Fo rename_free(const Fo& f, const std::map<ObjVar, ObjVar>& m);

/// Alpha-rename binders so the result is clean. A binder is renamed when its
/// variable is free somewhere in f or was already bound by an earlier binder
/// (left-to-right); fresh ids continue after the largest id in f.
Fo rename_clean(const Fo& f);

/// Source of fresh object variables.
class VarSupply {
 public:
  explicit VarSupply(int next = 1) : next_(next) {}
  ObjVar fresh() { return ObjVar{next_++}; }
  int peek() const { return next_; }
  void reserve_above(const Fo& f);
  void reserve_above(ObjVar x) { if (x.id >= next_) next_ = x.id + 1; }

 private:
  int next_;
};

}  // namespace sahlkracht
