#include "sahlkracht/safety.hpp"

#include <algorithm>
#include <sstream>

#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"

namespace sahlkracht {

std::string to_string(SafetyStatus s) {
  switch (s) {
    case SafetyStatus::Safe: return "Safe";
    case SafetyStatus::QuasiSafe: return "QuasiSafe";
    default: return "Neither";
  }
}

namespace {

// Per-node facts gathered bottom-up.
struct Facts {
  bool flag = false;   // safe for the enclosing expression
  bool imgok = true;   // every img node below has a flagged argument
};

Facts leaf_facts(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::ObjVar: return {true, true};
    case ExprKind::Top:
    case ExprKind::Bot: return {false, true};
    default: throw IllFormed("safety is defined on L-expressions only; found " + print(e));
  }
}

Facts combine(const Expr& e, const Facts* kids) {
  switch (e.kind()) {
    case ExprKind::Img: return {kids[0].flag, kids[0].imgok && kids[0].flag};
    case ExprKind::Inv:
    case ExprKind::IBox: return {false, kids[0].imgok};
    case ExprKind::Cap: return {kids[0].flag || kids[1].flag, kids[0].imgok && kids[1].imgok};
    default: return {false, kids[0].imgok && kids[1].imgok};  // Cup
  }
}

// Iterative postorder so that very deep chains do not exhaust the stack.
// `visit(node, preorder_index)` fires in preorder; facts come back in
// postorder through `done(node, preorder_index, facts)`.
template <class Pre, class Post>
Facts walk(const Expr& root, Pre&& visit, Post&& done) {
  struct Frame {
    const Expr* e;
    std::size_t pre;
    int next = 0;
    Facts kids[2];
  };
  std::vector<Frame> stack;
  std::size_t counter = 0;
  visit(root, counter);
  stack.push_back({&root, counter++, 0, {}});
  Facts result;
  while (!stack.empty()) {
    Frame& top = stack.back();
    const Expr& e = *top.e;
    int arity = e.is_binary() ? 2 : e.is_unary() ? 1 : 0;
    if (top.next < arity) {
      const Expr& child = arity == 1 ? e.child() : (top.next == 0 ? e.left() : e.right());
      ++top.next;
      visit(child, counter);
      stack.push_back({&child, counter++, 0, {}});
      continue;
    }
    Facts f = arity == 0 ? leaf_facts(e) : combine(e, top.kids);
    done(e, top.pre, f);
    stack.pop_back();
    if (stack.empty()) {
      result = f;
    } else {
      Frame& parent = stack.back();
      parent.kids[parent.next - 1] = f;
    }
  }
  return result;
}

}  // namespace

SafetyStatus safety_status(const Expr& e) {
  Facts f = walk(e, [](const Expr&, std::size_t) {}, [](const Expr&, std::size_t, const Facts&) {});
  if (!f.imgok) return SafetyStatus::Neither;
  return f.flag ? SafetyStatus::Safe : SafetyStatus::QuasiSafe;
}

SafetyVerdict analyze_safety(const Expr& e) {
  SafetyVerdict v;
  std::vector<Facts> facts;
  Facts root = walk(
      e,
      [&](const Expr& n, std::size_t) {
        v.nodes.push_back(n);
        facts.emplace_back();
      },
      [&](const Expr&, std::size_t pre, const Facts& f) { facts[pre] = f; });
  v.marked.resize(facts.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    v.marked[i] = facts[i].flag;
    if (!v.witness && v.nodes[i].is(ExprKind::Img) && !facts[i + 1].flag) v.witness = i;
  }
  if (!root.imgok)
    v.status = SafetyStatus::Neither;
  else
    v.status = root.flag ? SafetyStatus::Safe : SafetyStatus::QuasiSafe;
  return v;
}

std::vector<Expr> safe_subexpressions(const Expr& e) {
  SafetyVerdict v = analyze_safety(e);
  if (v.status == SafetyStatus::Neither)
    throw NotQuasiSafe("not a positive combination of safe expressions: " + print(e));
  std::vector<Expr> out;
  // In a quasi-safe expression a node is safe exactly when it is flagged; the
  // maximal ones are the flagged nodes with no flagged ancestor.
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* n = stack.back();
    stack.pop_back();
    // Preorder position is not needed: recompute the flag locally.
    if (safety_status(*n) == SafetyStatus::Safe) {
      if (std::find(out.begin(), out.end(), *n) == out.end()) out.push_back(*n);
      continue;
    }
    if (n->is_binary()) {
      stack.push_back(&n->right());
      stack.push_back(&n->left());
    } else if (n->is_unary()) {
      stack.push_back(&n->child());
    }
  }
  return out;
}

std::string render_marked(const SafetyVerdict& v) {
  std::ostringstream os;
  std::vector<int> depth(v.nodes.size(), 0);
  // Recover depths from preorder and arities.
  std::vector<std::pair<int, int>> open;  // (depth, remaining children)
  for (std::size_t i = 0; i < v.nodes.size(); ++i) {
    const Expr& n = v.nodes[i];
    int d = open.empty() ? 0 : open.back().first + 1;
    if (!open.empty() && --open.back().second == 0) open.pop_back();
    depth[i] = d;
    int arity = n.is_binary() ? 2 : n.is_unary() ? 1 : 0;
    if (arity) open.push_back({d, arity});
    std::string label;
    switch (n.kind()) {
      case ExprKind::Cap: label = "&"; break;
      case ExprKind::Cup: label = "|"; break;
      case ExprKind::Inv: label = "inv" + print(n.label()); break;
      case ExprKind::IBox: label = "ibox" + print(n.label()); break;
      case ExprKind::Img: label = "img" + print(n.label()); break;
      default: label = print(n);
    }
    os << std::string(2 * d, ' ') << (v.marked[i] ? "* " : "  ") << label;
    if (v.witness && *v.witness == i) os << "   <- argument not safe";
    os << '\n';
  }
  return os.str();
}

}  // namespace sahlkracht
