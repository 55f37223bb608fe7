#include "sahlkracht/tree_json.hpp"

namespace sahlkracht {

using nlohmann::json;

namespace {

json prop_json(const PropVar& p) {
  json j{{"name", p.key()}};
  if (p.ranked()) {
    j["rank"] = p.rank;
    j["index"] = p.index;
  }
  return j;
}

const char* kind_name(ModalKind k) {
  switch (k) {
    case ModalKind::Var: return "Var";
    case ModalKind::Top: return "Top";
    case ModalKind::Bot: return "Bot";
    case ModalKind::Not: return "Not";
    case ModalKind::And: return "And";
    case ModalKind::Or: return "Or";
    case ModalKind::Implies: return "Implies";
    case ModalKind::Box: return "Box";
    default: return "Dia";
  }
}

const char* kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::ObjVar: return "ObjVar";
    case ExprKind::SetVar: return "SetVar";
    case ExprKind::Hole: return "Hole";
    case ExprKind::Top: return "Top";
    case ExprKind::Bot: return "Bot";
    case ExprKind::Cap: return "Cap";
    case ExprKind::Cup: return "Cup";
    case ExprKind::Inv: return "Inv";
    case ExprKind::IBox: return "IBox";
    default: return "Img";
  }
}

const char* kind_name(FoKind k) {
  switch (k) {
    case FoKind::Member: return "Member";
    case FoKind::Rel: return "Rel";
    case FoKind::Eq: return "Eq";
    case FoKind::Top: return "Top";
    case FoKind::Bot: return "Bot";
    case FoKind::And: return "And";
    case FoKind::Or: return "Or";
    case FoKind::Not: return "Not";
    case FoKind::RForall: return "RForall";
    case FoKind::RExists: return "RExists";
    case FoKind::Forall: return "Forall";
    default: return "Exists";
  }
}

}  // namespace

json to_json(const Modal& f) {
  json j{{"kind", kind_name(f.kind())}};
  switch (f.kind()) {
    case ModalKind::Var: j["var"] = prop_json(f.var()); break;
    case ModalKind::Not: j["child"] = to_json(f.child()); break;
    case ModalKind::Box:
    case ModalKind::Dia:
      j["label"] = f.label().id;
      j["child"] = to_json(f.child());
      break;
    case ModalKind::And:
    case ModalKind::Or:
    case ModalKind::Implies:
      j["left"] = to_json(f.left());
      j["right"] = to_json(f.right());
      break;
    default: break;
  }
  return j;
}

json to_json(const Expr& e) {
  json j{{"kind", kind_name(e.kind())}};
  switch (e.kind()) {
    case ExprKind::ObjVar: j["var"] = e.obj().id; break;
    case ExprKind::SetVar: j["var"] = prop_json(e.setvar()); break;
    case ExprKind::Inv:
    case ExprKind::IBox:
    case ExprKind::Img:
      j["label"] = e.label().id;
      j["child"] = to_json(e.child());
      break;
    case ExprKind::Cap:
    case ExprKind::Cup:
      j["left"] = to_json(e.left());
      j["right"] = to_json(e.right());
      break;
    default: break;
  }
  return j;
}

json to_json(const Fo& f) {
  json j{{"kind", kind_name(f.kind())}};
  switch (f.kind()) {
    case FoKind::Member:
      j["subject"] = f.subject().id;
      j["expr"] = to_json(f.expr());
      break;
    case FoKind::Rel: j["label"] = f.label().id; [[fallthrough]];
    case FoKind::Eq:
      j["lhs"] = f.lhs().id;
      j["rhs"] = f.rhs().id;
      break;
    case FoKind::And:
    case FoKind::Or:
      j["left"] = to_json(f.left());
      j["right"] = to_json(f.right());
      break;
    case FoKind::Not: j["body"] = to_json(f.body()); break;
    case FoKind::RForall:
    case FoKind::RExists:
      j["label"] = f.label().id;
      j["anchor"] = f.anchor().id;
      [[fallthrough]];
    case FoKind::Forall:
    case FoKind::Exists:
      j["bound"] = f.bound().id;
      j["body"] = to_json(f.body());
      break;
    default: break;
  }
  return j;
}

json to_json(const AnyTree& t) {
  return std::visit([](const auto& x) { return to_json(x); }, t);
}

json to_json(const Frame& F) {
  json rels = json::object();
  for (Label l : F.labels()) {
    json edges = json::array();
    for (int i = 0; i < F.size(); ++i)
      for (int j = 0; j < F.size(); ++j)
        if (F.has_edge(l, i, j)) edges.push_back({i, j});
    rels[std::to_string(l.id)] = edges;
  }
  return {{"worlds", F.size()}, {"relations", rels}};
}

json to_json(const Report& r) {
  json labels = json::array();
  for (Label l : r.labels) labels.push_back(l.id);
  json cx = nullptr;
  if (r.counterexample) {
    const Counterexample& c = *r.counterexample;
    cx = {{"frame", to_json(c.frame)},
          {"frame_text", c.frame.to_string()},
          {"world", c.world},
          {"left", c.left},
          {"right", c.right}};
  }
  return {{"passed", r.passed}, {"frames", r.frames}, {"points", r.points},
          {"labels", labels}, {"counterexample", cx}};
}

json to_json(const LabelledTree& t) {
  json nodes = json::array();
  for (const LabelledTree::Node& n : t.nodes) {
    json reg = json::array(), neg = json::array();
    for (const Modal& m : n.reg) reg.push_back(print(m));
    for (const Modal& m : n.neg) neg.push_back(print(m));
    nodes.push_back({{"parent", n.parent},
                     {"edge", n.parent < 0 ? json(nullptr) : json(n.edge.id)},
                     {"reg", reg},
                     {"neg", neg},
                     {"children", n.children}});
  }
  return {{"nodes", nodes}};
}

json to_json(const Decomposition& d) {
  static const char* names[] = {"Box", "And", "DisjointOr", "Simple"};
  json j{{"kind", names[static_cast<int>(d.kind)]}};
  switch (d.kind) {
    case DecompKind::Box:
      j["label"] = d.label.id;
      [[fallthrough]];
    case DecompKind::And:
    case DecompKind::DisjointOr: {
      json kids = json::array();
      for (const Decomposition& k : d.kids) kids.push_back(to_json(k));
      j["kids"] = kids;
      break;
    }
    case DecompKind::Simple:
      j["antecedent"] = print(d.gsa);
      j["tree"] = to_json(d.tree);
      break;
  }
  return j;
}

json to_json(const SafetyVerdict& v) {
  json nodes = json::array();
  for (std::size_t i = 0; i < v.nodes.size(); ++i)
    nodes.push_back({{"expr", print(v.nodes[i])}, {"safe", static_cast<bool>(v.marked[i])}});
  return {{"status", to_string(v.status)},
          {"nodes", nodes},
          {"witness", v.witness ? json(*v.witness) : json(nullptr)}};
}

}  // namespace sahlkracht
