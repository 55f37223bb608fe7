#include "sahlkracht/regular.hpp"

#include <algorithm>
#include <functional>

#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"

namespace sahlkracht {

bool is_positive(const Modal& f) {
  switch (f.kind()) {
    case ModalKind::Not:
    case ModalKind::Implies: return false;
    case ModalKind::Var:
    case ModalKind::Top:
    case ModalKind::Bot: return true;
    case ModalKind::Box:
    case ModalKind::Dia: return is_positive(f.child());
    default: return is_positive(f.left()) && is_positive(f.right());
  }
}

bool is_negative(const Modal& f) { return f.is(ModalKind::Not) && is_positive(f.child()); }

Modal BoxShape::rebuild() const {
  Modal body = Modal::var(head);
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    for (auto b = it->boxes.rbegin(); b != it->boxes.rend(); ++b) body = Modal::box(*b, body);
    if (it->guard) body = Modal::implies(*it->guard, body);
  }
  return body;
}

BoxClassification classify_box(const Modal& f) {
  BoxShape shape;
  shape.segments.push_back({});
  const Modal* cur = &f;
  for (;;) {
    switch (cur->kind()) {
      case ModalKind::Var:
        shape.head = cur->var();
        return {shape, std::nullopt};
      case ModalKind::Box:
        shape.segments.back().boxes.push_back(cur->label());
        cur = &cur->child();
        break;
      case ModalKind::Implies:
        if (!is_positive(cur->left())) return {std::nullopt, cur->left()};
        shape.segments.push_back({cur->left(), {}});
        cur = &cur->right();
        break;
      default: return {std::nullopt, *cur};
    }
  }
}

namespace {

void add_vertex(std::vector<PropVar>& vs, const PropVar& v) {
  if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
}

}  // namespace

DependencyGraph dependency_graph(const std::vector<Modal>& A, const std::vector<PropVar>& extra) {
  DependencyGraph g;
  for (const auto& f : A) {
    auto c = classify_box(f);
    if (!c.ok())
      throw NotBoxFormula("not a box-formula: " + print(f) + " (at " + print(*c.offending) + ")");
    for (const auto& seg : c.shape->segments) {
      if (!seg.guard) continue;
      for (const auto& v : prop_vars(*seg.guard)) {
        add_vertex(g.vertices, v);
        g.edges.insert({v, c.shape->head});
      }
    }
    add_vertex(g.vertices, c.shape->head);
  }
  for (const auto& v : extra) add_vertex(g.vertices, v);
  return g;
}

RankAssignment assign_ranks(const std::vector<Modal>& A, const std::vector<PropVar>& extra) {
  DependencyGraph g = dependency_graph(A, extra);
  // Vertices in first-appearance order over the whole formula set, so that
  // indices follow parse order rather than graph discovery order.
  std::vector<PropVar> order;
  for (const auto& f : A)
    for (const auto& v : prop_vars(f)) add_vertex(order, v);
  for (const auto& v : g.vertices) add_vertex(order, v);

  std::map<PropVar, std::vector<PropVar>> preds, succs;
  for (const auto& [a, b] : g.edges) {
    preds[b].push_back(a);
    succs[a].push_back(b);
  }

  RankAssignment out;
  // Cycle detection by colouring DFS.
  std::map<PropVar, int> colour;
  std::vector<PropVar> stack;
  std::function<bool(const PropVar&)> dfs = [&](const PropVar& v) {
    colour[v] = 1;
    stack.push_back(v);
    for (const auto& w : succs[v]) {
      if (colour[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        out.cycle.assign(it, stack.end());
        out.cycle.push_back(w);
        return true;
      }
      if (colour[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    colour[v] = 2;
    return false;
  };
  for (const auto& v : order)
    if (colour[v] == 0 && dfs(v)) return out;

  std::map<PropVar, int> rank;
  std::function<int(const PropVar&)> layer = [&](const PropVar& v) {
    auto it = rank.find(v);
    if (it != rank.end()) return it->second;
    int r = 0;
    for (const auto& u : preds[v]) r = std::max(r, layer(u) + 1);
    rank[v] = r;
    return r;
  };
  std::map<int, int> next_index;
  for (const auto& v : order) {
    int r = layer(v);
    int idx = next_index[r]++;
    out.ranks[v] = PropVar::at(r, idx, v.name.empty() ? v.key() : v.name);
  }
  out.regular = true;
  return out;
}

bool is_regular_ranked(const Modal& f) {
  auto c = classify_box(f);
  if (!c.ok() || !c.shape->head.ranked()) return false;
  for (const auto& seg : c.shape->segments) {
    if (!seg.guard) continue;
    for (const auto& v : prop_vars(*seg.guard))
      if (!v.ranked() || v.rank >= c.shape->head.rank) return false;
  }
  return true;
}

}  // namespace sahlkracht
