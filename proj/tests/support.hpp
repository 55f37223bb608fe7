#pragma once

// Shared test helpers: random generators and deliberately naive reference
// evaluators. The evaluators work world by world on std::set and never touch
// the bitmask code paths they are compared against.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sahlkracht/core.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/semantics.hpp"

namespace testsupport {

using namespace sahlkracht;

struct Rng {
  explicit Rng(std::uint64_t seed) : g(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(g); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(g); }
  std::mt19937_64 g;
};

using Worlds = std::set<int>;

inline std::vector<std::string> golden(const std::string& file) {
  return read_golden_lines(std::string(SAHLKRACHT_GOLDEN_DIR) + "/" + file);
}

// --- frames ---------------------------------------------------------------

inline bool edge(const Frame& F, Label l, int a, int b) { return F.has_edge(l, a, b); }

/// Every frame on n worlds over the labels, by counting through all edge
/// subsets (independent of enum_frames).
inline std::vector<Frame> frames_of_size(int n, const std::vector<Label>& labels) {
  std::vector<Frame> out;
  int bits = n * n * static_cast<int>(labels.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
    Frame F(n);
    for (Label l : labels) F.touch(l);
    int k = 0;
    for (Label l : labels)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b, ++k)
          if ((m >> k) & 1) F.add_edge(l, a, b);
    out.push_back(F);
  }
  return out;
}

inline std::vector<Frame> frames_up_to(int n, const std::vector<Label>& labels) {
  std::vector<Frame> out;
  for (int k = 1; k <= n; ++k) {
    auto fs = frames_of_size(k, labels);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

inline Frame random_frame(Rng& r, int max_worlds, const std::vector<Label>& labels, double p = 0.4) {
  Frame F(1 + r.below(max_worlds));
  for (Label l : labels) {
    F.touch(l);
    for (int a = 0; a < F.size(); ++a)
      for (int b = 0; b < F.size(); ++b)
        if (r.coin(p)) F.add_edge(l, a, b);
  }
  return F;
}

// --- naive modal semantics ---------------------------------------------------

using NaiveVal = std::map<PropVar, Worlds>;

inline bool naive_truth(const Frame& F, const NaiveVal& v, const Modal& f, int w) {
  switch (f.kind()) {
    case ModalKind::Var: return v.at(f.var()).count(w) > 0;
    case ModalKind::Top: return true;
    case ModalKind::Bot: return false;
    case ModalKind::Not: return !naive_truth(F, v, f.child(), w);
    case ModalKind::And: return naive_truth(F, v, f.left(), w) && naive_truth(F, v, f.right(), w);
    case ModalKind::Or: return naive_truth(F, v, f.left(), w) || naive_truth(F, v, f.right(), w);
    case ModalKind::Implies: return !naive_truth(F, v, f.left(), w) || naive_truth(F, v, f.right(), w);
    case ModalKind::Box:
      for (int u = 0; u < F.size(); ++u)
        if (edge(F, f.label(), w, u) && !naive_truth(F, v, f.child(), u)) return false;
      return true;
    case ModalKind::Dia:
      for (int u = 0; u < F.size(); ++u)
        if (edge(F, f.label(), w, u) && naive_truth(F, v, f.child(), u)) return true;
      return false;
  }
  return false;
}

/// Calls fn on every valuation of vars over all worlds of F; stops when fn
/// returns false.
inline bool for_each_valuation(const Frame& F, const std::vector<PropVar>& vars,
                               const std::function<bool(const NaiveVal&)>& fn) {
  int n = F.size();
  std::uint64_t total = std::uint64_t{1} << (n * vars.size());
  for (std::uint64_t m = 0; m < total; ++m) {
    NaiveVal v;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Worlds s;
      for (int w = 0; w < n; ++w)
        if ((m >> (i * n + w)) & 1) s.insert(w);
      v[vars[i]] = s;
    }
    if (!fn(v)) return false;
  }
  return true;
}

inline bool naive_valid(const Frame& F, int w, const Modal& f) {
  return for_each_valuation(F, prop_vars(f), [&](const NaiveVal& v) { return naive_truth(F, v, f, w); });
}

inline Valuation to_bits(const NaiveVal& v) {
  Valuation out;
  for (const auto& [p, s] : v) {
    WorldSet b = 0;
    for (int w : s) b |= singleton(w);
    out[p] = b;
  }
  return out;
}

inline Worlds to_set(WorldSet b) {
  Worlds s;
  for (int w = 0; w < 64; ++w)
    if (contains(b, w)) s.insert(w);
  return s;
}

// --- naive expressions and first-order logic ---------------------------------

using NaiveEnv = std::map<int, int>;

inline Worlds naive_expr(const Frame& F, const NaiveEnv& env, const Expr& e, const NaiveVal& v = {}) {
  Worlds all;
  for (int w = 0; w < F.size(); ++w) all.insert(w);
  switch (e.kind()) {
    case ExprKind::ObjVar: return {env.at(e.obj().id)};
    case ExprKind::SetVar: return v.at(e.setvar());
    case ExprKind::Top: return all;
    case ExprKind::Bot: return {};
    case ExprKind::Cap: {
      Worlds a = naive_expr(F, env, e.left(), v), b = naive_expr(F, env, e.right(), v), out;
      for (int w : a)
        if (b.count(w)) out.insert(w);
      return out;
    }
    case ExprKind::Cup: {
      Worlds a = naive_expr(F, env, e.left(), v), b = naive_expr(F, env, e.right(), v);
      a.insert(b.begin(), b.end());
      return a;
    }
    case ExprKind::Inv:
    case ExprKind::IBox:
    case ExprKind::Img: {
      Worlds a = naive_expr(F, env, e.child(), v), out;
      for (int w = 0; w < F.size(); ++w) {
        bool some = false, every = true, hit = false;
        for (int u = 0; u < F.size(); ++u) {
          if (edge(F, e.label(), w, u)) {
            if (a.count(u)) some = true;
            else every = false;
          }
          if (edge(F, e.label(), u, w) && a.count(u)) hit = true;
        }
        bool in = e.is(ExprKind::Inv) ? some : e.is(ExprKind::IBox) ? every : hit;
        if (in) out.insert(w);
      }
      return out;
    }
    default: throw IllFormed("hole");
  }
}

inline bool naive_fo(const Frame& F, NaiveEnv env, const Fo& f, const NaiveVal& v = {}) {
  switch (f.kind()) {
    case FoKind::Member: return naive_expr(F, env, f.expr(), v).count(env.at(f.subject().id)) > 0;
    case FoKind::Rel: return edge(F, f.label(), env.at(f.lhs().id), env.at(f.rhs().id));
    case FoKind::Eq: return env.at(f.lhs().id) == env.at(f.rhs().id);
    case FoKind::Top: return true;
    case FoKind::Bot: return false;
    case FoKind::And: return naive_fo(F, env, f.left(), v) && naive_fo(F, env, f.right(), v);
    case FoKind::Or: return naive_fo(F, env, f.left(), v) || naive_fo(F, env, f.right(), v);
    case FoKind::Not: return !naive_fo(F, env, f.body(), v);
    default: break;
  }
  bool universal = f.is(FoKind::RForall) || f.is(FoKind::Forall);
  for (int u = 0; u < F.size(); ++u) {
    if (f.is_restricted() && !edge(F, f.label(), env.at(f.anchor().id), u)) continue;
    NaiveEnv e2 = env;
    e2[f.bound().id] = u;
    bool b = naive_fo(F, e2, f.body(), v);
    if (universal && !b) return false;
    if (!universal && b) return true;
  }
  return universal;
}

// --- random syntax -----------------------------------------------------------

inline std::vector<Label> labels_upto(int k) {
  std::vector<Label> out;
  for (int i = 1; i <= k; ++i) out.push_back(Label{i});
  return out;
}

inline Modal random_modal(Rng& r, int depth, int nvars, int nlabels) {
  if (depth == 0 || r.coin(0.25)) {
    int k = r.below(nvars + 2);
    if (k == nvars) return Modal::top();
    if (k == nvars + 1) return Modal::bot();
    return Modal::var("p" + std::to_string(k));
  }
  Label l{1 + r.below(nlabels)};
  switch (r.below(7)) {
    case 0: return Modal::neg(random_modal(r, depth - 1, nvars, nlabels));
    case 1: return Modal::conj(random_modal(r, depth - 1, nvars, nlabels), random_modal(r, depth - 1, nvars, nlabels));
    case 2: return Modal::disj(random_modal(r, depth - 1, nvars, nlabels), random_modal(r, depth - 1, nvars, nlabels));
    case 3: return Modal::implies(random_modal(r, depth - 1, nvars, nlabels), random_modal(r, depth - 1, nvars, nlabels));
    case 4: return Modal::box(l, random_modal(r, depth - 1, nvars, nlabels));
    default: return Modal::dia(l, random_modal(r, depth - 1, nvars, nlabels));
  }
}

/// L-expression over object variables x0..x{nobj-1}.
inline Expr random_expr(Rng& r, int depth, int nobj, int nlabels, bool constants = true) {
  if (depth <= 1 || r.coin(0.2)) {
    if (constants && r.coin(0.15)) return r.coin() ? Expr::top() : Expr::bot();
    return Expr::obj(r.below(nobj));
  }
  Label l{1 + r.below(nlabels)};
  switch (r.below(5)) {
    case 0: return Expr::cap(random_expr(r, depth - 1, nobj, nlabels, constants), random_expr(r, depth - 1, nobj, nlabels, constants));
    case 1: return Expr::cup(random_expr(r, depth - 1, nobj, nlabels, constants), random_expr(r, depth - 1, nobj, nlabels, constants));
    case 2: return Expr::inv(l, random_expr(r, depth - 1, nobj, nlabels, constants));
    case 3: return Expr::ibox(l, random_expr(r, depth - 1, nobj, nlabels, constants));
    default: return Expr::img(l, random_expr(r, depth - 1, nobj, nlabels, constants));
  }
}

/// Safe expression from the K grammar: x | img(S) | S & POS | POS & S.
inline Expr random_pos(Rng& r, int depth, int nobj, int nlabels);
inline Expr random_safe(Rng& r, int depth, int nobj, int nlabels) {
  if (depth <= 1 || r.coin(0.25)) return Expr::obj(r.below(nobj));
  if (r.coin(0.55)) return Expr::img(Label{1 + r.below(nlabels)}, random_safe(r, depth - 1, nobj, nlabels));
  Expr s = random_safe(r, depth - 1, nobj, nlabels);
  Expr p = random_pos(r, depth - 1, nobj, nlabels);
  return r.coin() ? Expr::cap(s, p) : Expr::cap(p, s);
}

/// Positive combination of safe expressions.
inline Expr random_pos(Rng& r, int depth, int nobj, int nlabels) {
  if (depth <= 1 || r.coin(0.3)) {
    if (r.coin(0.15)) return r.coin() ? Expr::top() : Expr::bot();
    return random_safe(r, depth, nobj, nlabels);
  }
  Label l{1 + r.below(nlabels)};
  switch (r.below(4)) {
    case 0: return Expr::cap(random_pos(r, depth - 1, nobj, nlabels), random_pos(r, depth - 1, nobj, nlabels));
    case 1: return Expr::cup(random_pos(r, depth - 1, nobj, nlabels), random_pos(r, depth - 1, nobj, nlabels));
    case 2: return Expr::inv(l, random_pos(r, depth - 1, nobj, nlabels));
    default: return Expr::ibox(l, random_pos(r, depth - 1, nobj, nlabels));
  }
}

inline int depth_of(const Expr& e) {
  if (e.is_binary()) return 1 + std::max(depth_of(e.left()), depth_of(e.right()));
  if (e.is_unary()) return 1 + depth_of(e.child());
  return 1;
}

/// Random first-order formula; `scope` lists variables in scope.
inline Fo random_fo(Rng& r, int depth, std::vector<int> scope, int nlabels, int& next) {
  auto pick = [&] { return ObjVar{scope[r.below(static_cast<int>(scope.size()))]}; };
  if (depth == 0 || r.coin(0.2)) {
    switch (r.below(4)) {
      case 0: return Fo::rel(Label{1 + r.below(nlabels)}, pick(), pick());
      case 1: return Fo::eq(pick(), pick());
      case 2: {
        ObjVar s = pick(), a = pick();
        return Fo::member(s, r.coin() ? Expr::obj(a) : Expr::img(Label{1 + r.below(nlabels)}, Expr::obj(a)));
      }
      default: return r.coin() ? Fo::top() : Fo::bot();
    }
  }
  switch (r.below(7)) {
    case 0: return Fo::conj(random_fo(r, depth - 1, scope, nlabels, next), random_fo(r, depth - 1, scope, nlabels, next));
    case 1: return Fo::disj(random_fo(r, depth - 1, scope, nlabels, next), random_fo(r, depth - 1, scope, nlabels, next));
    case 2: return Fo::neg(random_fo(r, depth - 1, scope, nlabels, next));
    default: {
      ObjVar y{next++};
      ObjVar a = pick();
      auto inner = scope;
      inner.push_back(y.id);
      Fo body = random_fo(r, depth - 1, inner, nlabels, next);
      Label l{1 + r.below(nlabels)};
      switch (r.below(4)) {
        case 0: return Fo::rforall(y, l, a, body);
        case 1: return Fo::rexists(y, l, a, body);
        case 2: return Fo::forall(y, body);
        default: return Fo::exists(y, body);
      }
    }
  }
}

// --- ranked regular box-formulas ---------------------------------------------

/// Positive formula over the given variables (may be empty: constants only).
inline Modal random_positive(Rng& r, int depth, const std::vector<PropVar>& vars, int nlabels) {
  if (depth == 0 || r.coin(0.35)) {
    if (vars.empty() || r.coin(0.15)) return r.coin(0.7) ? Modal::top() : Modal::bot();
    return Modal::var(vars[r.below(static_cast<int>(vars.size()))]);
  }
  Label l{1 + r.below(nlabels)};
  switch (r.below(4)) {
    case 0: return Modal::conj(random_positive(r, depth - 1, vars, nlabels), random_positive(r, depth - 1, vars, nlabels));
    case 1: return Modal::disj(random_positive(r, depth - 1, vars, nlabels), random_positive(r, depth - 1, vars, nlabels));
    case 2: return Modal::dia(l, random_positive(r, depth - 1, vars, nlabels));
    default: return Modal::box(l, random_positive(r, depth - 1, vars, nlabels));
  }
}

/// Ranked regular box-formula with the given head; guards use `lower`.
inline Modal random_regular(Rng& r, const PropVar& head, const std::vector<PropVar>& lower, int nlabels) {
  Modal f = Modal::var(head);
  for (int s = r.below(3); s > 0; --s) {
    for (int b = r.below(3); b > 0; --b) f = Modal::box(Label{1 + r.below(nlabels)}, f);
    f = Modal::implies(random_positive(r, 2, lower, nlabels), f);
  }
  for (int b = r.below(3); b > 0; --b) f = Modal::box(Label{1 + r.below(nlabels)}, f);
  return f;
}

/// The two variables used by the minimal-valuation suites: q (rank 0) below
/// p (rank 1).
inline PropVar low_var() { return PropVar::at(0, 0, "q"); }
inline PropVar high_var() { return PropVar::at(1, 0, "p"); }

/// 1..3 requirements spread over x1, x2.
inline std::map<ObjVar, std::vector<Modal>> random_requirements(Rng& r, int nlabels) {
  std::map<ObjVar, std::vector<Modal>> f;
  for (int k = 1 + r.below(3); k > 0; --k) {
    bool high = r.coin(0.6);
    Modal phi = high ? random_regular(r, high_var(), {low_var()}, nlabels) : random_regular(r, low_var(), {}, nlabels);
    f[ObjVar{1 + r.below(2)}].push_back(phi);
  }
  return f;
}

/// Pointwise intersection of all valuations (over vars) satisfying f at the
/// given points; nullopt when none does.
inline std::optional<NaiveVal> brute_minimal(const Frame& F, const NaiveEnv& env,
                                             const std::map<ObjVar, std::vector<Modal>>& f,
                                             const std::vector<PropVar>& vars) {
  std::optional<NaiveVal> meet;
  for_each_valuation(F, vars, [&](const NaiveVal& v) {
    for (const auto& [x, phis] : f)
      for (const Modal& phi : phis)
        if (!naive_truth(F, v, phi, env.at(x.id))) return true;
    if (!meet) {
      meet = v;
    } else {
      for (auto& [p, s] : *meet) {
        Worlds keep;
        for (int w : s)
          if (v.at(p).count(w)) keep.insert(w);
        s = keep;
      }
    }
    return true;
  });
  return meet;
}

}  // namespace testsupport
