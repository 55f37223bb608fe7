#include "sahlkracht/semantics.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>

#include "sahlkracht/error.hpp"
#include "sahlkracht/minval.hpp"
#include "sahlkracht/parser.hpp"

namespace sahlkracht {

// --- Frame -------------------------------------------------------------------

Frame::Frame(int worlds) : n_(worlds) {
  if (worlds < 1 || worlds > kMaxWorlds)
    throw IllFormed("frame size must be in 1.." + std::to_string(kMaxWorlds));
}

void Frame::touch(Label l) {
  auto& r = rel_[l.id];
  if (r.empty()) r.assign(n_, 0);
}

void Frame::add_edge(Label l, int from, int to) {
  if (from < 0 || from >= n_ || to < 0 || to >= n_) throw IllFormed("edge endpoint out of range");
  touch(l);
  rel_[l.id][from] |= singleton(to);
}

const std::vector<WorldSet>* Frame::rel(Label l) const {
  auto it = rel_.find(l.id);
  return it == rel_.end() ? nullptr : &it->second;
}

bool Frame::has_edge(Label l, int from, int to) const {
  return contains(successors(l, from), to);
}

WorldSet Frame::successors(Label l, int w) const {
  const auto* r = rel(l);
  return r ? (*r)[w] : 0;
}

WorldSet Frame::inv(Label l, WorldSet a) const {
  const auto* r = rel(l);
  if (!r) return 0;
  WorldSet out = 0;
  for (int w = 0; w < n_; ++w)
    if ((*r)[w] & a) out |= singleton(w);
  return out;
}

WorldSet Frame::ibox(Label l, WorldSet a) const {
  const auto* r = rel(l);
  if (!r) return all();
  WorldSet out = 0;
  for (int w = 0; w < n_; ++w)
    if (((*r)[w] & ~a) == 0) out |= singleton(w);
  return out;
}

WorldSet Frame::img(Label l, WorldSet a) const {
  const auto* r = rel(l);
  if (!r) return 0;
  WorldSet out = 0;
  for (int w = 0; w < n_; ++w)
    if (contains(a, w)) out |= (*r)[w];
  return out;
}

WorldSet Frame::reachable(int w) const {
  WorldSet seen = singleton(w), frontier = seen;
  while (frontier) {
    WorldSet next = 0;
    for (const auto& [id, r] : rel_)
      for (int v = 0; v < n_; ++v)
        if (contains(frontier, v)) next |= r[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

std::vector<Label> Frame::labels() const {
  std::vector<Label> out;
  for (const auto& [id, r] : rel_) out.push_back(Label{id});
  return out;
}

std::size_t Frame::edge_count() const {
  std::size_t c = 0;
  for (const auto& [id, r] : rel_)
    for (auto s : r) c += static_cast<std::size_t>(__builtin_popcountll(s));
  return c;
}

std::string Frame::to_string() const {
  std::ostringstream os;
  os << n_;
  for (const auto& [id, r] : rel_) {
    os << "; " << id << ':';
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (contains(r[i], j)) os << " (" << i << ',' << j << ')';
  }
  return os.str();
}

Frame Frame::parse(std::string_view text) {
  std::string s(text);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  auto bad = [&](const std::string& why) { return IllFormed("bad frame literal '" + s + "': " + why); };
  if (parts.empty()) throw bad("empty");
  static const std::regex size_re(R"(\s*(\d+)\s*)");
  static const std::regex head_re(R"(\s*(\d+)\s*:(.*))");
  static const std::regex edge_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::smatch m;
  if (!std::regex_match(parts[0], m, size_re)) throw bad("missing world count");
  Frame F(std::stoi(m[1]));
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].find_first_not_of(" \t\n") == std::string::npos) continue;
    if (!std::regex_match(parts[i], m, head_re)) throw bad("expected 'k: (i,j) ...'");
    Label l{std::stoi(m[1])};
    F.touch(l);
    std::string rest = m[2];
    auto it = std::sregex_iterator(rest.begin(), rest.end(), edge_re);
    std::string leftover = std::regex_replace(rest, edge_re, "");
    if (leftover.find_first_not_of(" \t\n") != std::string::npos) throw bad("junk in edge list");
    for (; it != std::sregex_iterator(); ++it)
      F.add_edge(l, std::stoi((*it)[1]), std::stoi((*it)[2]));
  }
  return F;
}

bool operator==(const Frame& a, const Frame& b) {
  if (a.n_ != b.n_) return false;
  auto nonempty = [](const Frame& f) {
    std::map<int, std::vector<WorldSet>> out;
    for (const auto& [id, r] : f.rel_)
      if (std::any_of(r.begin(), r.end(), [](WorldSet s) { return s != 0; })) out[id] = r;
    return out;
  };
  return nonempty(a) == nonempty(b);
}

// --- Env ---------------------------------------------------------------------

Env::Env(std::initializer_list<std::pair<ObjVar, int>> xs) {
  for (const auto& [x, w] : xs) set(x, w);
}

void Env::set(ObjVar x, int w) {
  if (x.id < 0) throw IllFormed("negative object variable id");
  if (static_cast<std::size_t>(x.id) >= slot_.size()) slot_.resize(x.id + 1, -1);
  slot_[x.id] = w;
}

bool Env::has(ObjVar x) const {
  return x.id >= 0 && static_cast<std::size_t>(x.id) < slot_.size() && slot_[x.id] >= 0;
}

int Env::get(ObjVar x) const {
  if (!has(x)) throw UnboundVariable("unbound object variable " + print(x));
  return slot_[x.id];
}

void Env::unset(ObjVar x) {
  if (has(x)) slot_[x.id] = -1;
}

// --- modal evaluation ----------------------------------------------------------

namespace {

// Formula flattened into postorder; children precede parents.
struct Compiled {
  struct Op {
    ModalKind kind;
    Label label;
    int a = -1, b = -1;
    int var = -1;
  };
  std::vector<Op> ops;
  std::vector<PropVar> vars;
};

int compile_rec(const Modal& f, Compiled& c) {
  Compiled::Op op{f.kind(), Label{}, -1, -1, -1};
  switch (f.kind()) {
    case ModalKind::Var: {
      auto it = std::find(c.vars.begin(), c.vars.end(), f.var());
      op.var = static_cast<int>(it - c.vars.begin());
      if (it == c.vars.end()) c.vars.push_back(f.var());
      break;
    }
    case ModalKind::Top:
    case ModalKind::Bot: break;
    case ModalKind::Not: op.a = compile_rec(f.child(), c); break;
    case ModalKind::Box:
    case ModalKind::Dia:
      op.label = f.label();
      op.a = compile_rec(f.child(), c);
      break;
    default:
      op.a = compile_rec(f.left(), c);
      op.b = compile_rec(f.right(), c);
  }
  c.ops.push_back(op);
  return static_cast<int>(c.ops.size()) - 1;
}

Compiled compile(const Modal& f) {
  Compiled c;
  compile_rec(f, c);
  return c;
}

// Kleene evaluation: `lo` is where the formula is certainly true, `hi` where
// it may be true, for the partial valuation (lower, upper).
struct Interval {
  WorldSet lo, hi;
};

Interval eval3(const Compiled& c, const Frame& F, const WorldSet* lower, const WorldSet* upper,
               std::vector<Interval>& buf) {
  buf.resize(c.ops.size());
  const WorldSet all = F.all();
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    Interval r{};
    switch (op.kind) {
      case ModalKind::Var: r = {lower[op.var], upper[op.var]}; break;
      case ModalKind::Top: r = {all, all}; break;
      case ModalKind::Bot: r = {0, 0}; break;
      case ModalKind::Not: r = {all & ~buf[op.a].hi, all & ~buf[op.a].lo}; break;
      case ModalKind::And: r = {buf[op.a].lo & buf[op.b].lo, buf[op.a].hi & buf[op.b].hi}; break;
      case ModalKind::Or: r = {buf[op.a].lo | buf[op.b].lo, buf[op.a].hi | buf[op.b].hi}; break;
      case ModalKind::Implies:
        r = {(all & ~buf[op.a].hi) | buf[op.b].lo, (all & ~buf[op.a].lo) | buf[op.b].hi};
        break;
      case ModalKind::Box: r = {F.ibox(op.label, buf[op.a].lo), F.ibox(op.label, buf[op.a].hi)}; break;
      case ModalKind::Dia: r = {F.inv(op.label, buf[op.a].lo), F.inv(op.label, buf[op.a].hi)}; break;
    }
    buf[i] = r;
  }
  return buf.back();
}

// Refutation search: a small DPLL solver over a Tseitin encoding of
// "f is false at w" restricted to the worlds reachable from w.
class Refuter {
 public:
  Refuter(const Compiled& c, const Frame& F, int w) : c_(c), F_(F) {
    WorldSet rel = F.reachable(w);
    for (int u = 0; u < F.size(); ++u)
      if (contains(rel, u)) worlds_.push_back(u);
    slot_.assign(F.size(), -1);
    for (std::size_t k = 0; k < worlds_.size(); ++k) slot_[worlds_[k]] = static_cast<int>(k);
    // Propositional atoms first so that decisions can be limited to them.
    decisions_ = static_cast<int>(c.vars.size() * worlds_.size());
    nvars_ = decisions_ + static_cast<int>(c.ops.size() * worlds_.size());
    encode();
    unit(lit(node_var(static_cast<int>(c.ops.size()) - 1, w), false));
  }

  /// True when no valuation falsifies the formula at w.
  bool refuted() {
    value_.assign(nvars_, -1);
    occurs_.assign(2 * nvars_, {});
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      for (int l : clauses_[i]) occurs_[l].push_back(static_cast<int>(i));
    for (const auto& cl : clauses_)
      if (cl.empty()) return true;
    for (const auto& cl : clauses_)
      if (cl.size() == 1 && !assign(cl[0])) return true;
    if (!propagate()) return true;
    return !search();
  }

 private:
  int atom_var(int v, int u) const { return v * static_cast<int>(worlds_.size()) + slot_[u]; }
  int node_var(int i, int u) const {
    return decisions_ + i * static_cast<int>(worlds_.size()) + slot_[u];
  }
  static int lit(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
  static int neg(int l) { return l ^ 1; }

  void clause(std::vector<int> ls) { clauses_.push_back(std::move(ls)); }
  void unit(int l) { clause({l}); }
  void equiv(int x, int y) {
    clause({neg(x), y});
    clause({x, neg(y)});
  }

  void encode() {
    for (std::size_t i = 0; i < c_.ops.size(); ++i) {
      const auto& op = c_.ops[i];
      for (int u : worlds_) {
        int x = lit(node_var(static_cast<int>(i), u), true);
        auto at = [&](int child, int v) { return lit(node_var(child, v), true); };
        switch (op.kind) {
          case ModalKind::Var: equiv(x, lit(atom_var(op.var, u), true)); break;
          case ModalKind::Top: unit(x); break;
          case ModalKind::Bot: unit(neg(x)); break;
          case ModalKind::Not: equiv(x, neg(at(op.a, u))); break;
          case ModalKind::And:
            clause({neg(x), at(op.a, u)});
            clause({neg(x), at(op.b, u)});
            clause({x, neg(at(op.a, u)), neg(at(op.b, u))});
            break;
          case ModalKind::Or:
            clause({x, neg(at(op.a, u))});
            clause({x, neg(at(op.b, u))});
            clause({neg(x), at(op.a, u), at(op.b, u)});
            break;
          case ModalKind::Implies:
            clause({x, at(op.a, u)});
            clause({x, neg(at(op.b, u))});
            clause({neg(x), neg(at(op.a, u)), at(op.b, u)});
            break;
          case ModalKind::Box:
          case ModalKind::Dia: {
            bool box = op.kind == ModalKind::Box;
            // Box: x <-> and of successors; Dia: x <-> or of successors.
            std::vector<int> big{box ? x : neg(x)};
            WorldSet succ = F_.successors(op.label, u);
            for (int v = 0; v < F_.size(); ++v) {
              if (!contains(succ, v)) continue;
              int a = at(op.a, v);
              if (box) {
                clause({neg(x), a});
                big.push_back(neg(a));
              } else {
                clause({x, neg(a)});
                big.push_back(a);
              }
            }
            clause(big);
            break;
          }
        }
      }
    }
  }

  bool assign(int l) {
    int var = l >> 1;
    int want = (l & 1) ? 0 : 1;
    if (value_[var] >= 0) return value_[var] == want;
    value_[var] = want;
    trail_.push_back(var);
    return true;
  }

  bool lit_true(int l) const {
    int v = value_[l >> 1];
    return v >= 0 && v == ((l & 1) ? 0 : 1);
  }
  bool lit_free(int l) const { return value_[l >> 1] < 0; }

  bool propagate() {
    while (head_ < trail_.size()) {
      int var = trail_[head_++];
      int falsified = lit(var, value_[var] == 0);
      for (int ci : occurs_[falsified]) {
        const auto& cl = clauses_[ci];
        int free_lit = -1, free_count = 0;
        bool sat = false;
        for (int l : cl) {
          if (lit_true(l)) {
            sat = true;
            break;
          }
          if (lit_free(l)) {
            ++free_count;
            free_lit = l;
          }
        }
        if (sat) continue;
        if (free_count == 0) return false;
        if (free_count == 1) assign(free_lit);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
    head_ = std::min(head_, mark);
  }

  // Finds a satisfying assignment of the remaining atoms.
  bool search() {
    int pick = -1;
    for (int v = 0; v < nvars_ && pick < 0; ++v)
      if (value_[v] < 0) pick = v;
    if (pick < 0) return true;
    for (bool val : {true, false}) {
      std::size_t mark = trail_.size();
      assign(lit(pick, val));
      if (propagate() && search()) return true;
      undo(mark);
    }
    return false;
  }

  const Compiled& c_;
  const Frame& F_;
  std::vector<int> worlds_, slot_;
  int decisions_ = 0, nvars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> occurs_;
  std::vector<int> value_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
};

}  // namespace

WorldSet modal_extension(const Frame& F, const Valuation& v, const Modal& f) {
  Compiled c = compile(f);
  std::vector<WorldSet> val;
  for (const auto& p : c.vars) {
    auto it = v.find(p);
    if (it == v.end()) throw UnboundVariable("no valuation for " + p.key());
    val.push_back(it->second & F.all());
  }
  std::vector<Interval> buf;
  return eval3(c, F, val.data(), val.data(), buf).lo;
}

bool modal_truth(const Model& M, int w, const Modal& f) {
  return contains(modal_extension(M.frame, M.valuation, f), w);
}

bool valid_at_point(const Frame& F, int w, const Modal& f) {
  Compiled c = compile(f);
  return Refuter(c, F, w).refuted();
}

bool valid_at_point(const Frame& F, int w, const Modal& f, const std::vector<PropVar>& pool) {
  for (const auto& p : prop_vars(f))
    if (std::find(pool.begin(), pool.end(), p) == pool.end())
      throw UnboundVariable("variable " + p.key() + " missing from pool");
  return valid_at_point(F, w, f);
}

// --- first-order evaluation ----------------------------------------------------

namespace {

bool fo_rec(const Frame& F, Env& env, const Fo& f, const Valuation* v) {
  auto quant = [&](WorldSet range, bool universal) {
    ObjVar y = f.bound();
    bool had = env.has(y);
    int old = had ? env.get(y) : -1;
    bool result = universal;
    for (int u = 0; u < F.size(); ++u) {
      if (!contains(range, u)) continue;
      env.set(y, u);
      bool b = fo_rec(F, env, f.body(), v);
      if (b != universal) {
        result = b;
        break;
      }
    }
    if (had)
      env.set(y, old);
    else
      env.unset(y);
    return result;
  };
  switch (f.kind()) {
    case FoKind::Member: {
      static const Valuation empty;
      return contains(eval_expr(f.expr(), F, env, v ? *v : empty), env.get(f.subject()));
    }
    case FoKind::Rel: return F.has_edge(f.label(), env.get(f.lhs()), env.get(f.rhs()));
    case FoKind::Eq: return env.get(f.lhs()) == env.get(f.rhs());
    case FoKind::Top: return true;
    case FoKind::Bot: return false;
    case FoKind::And: return fo_rec(F, env, f.left(), v) && fo_rec(F, env, f.right(), v);
    case FoKind::Or: return fo_rec(F, env, f.left(), v) || fo_rec(F, env, f.right(), v);
    case FoKind::Not: return !fo_rec(F, env, f.body(), v);
    case FoKind::RForall: return quant(F.successors(f.label(), env.get(f.anchor())), true);
    case FoKind::RExists: return quant(F.successors(f.label(), env.get(f.anchor())), false);
    case FoKind::Forall: return quant(F.all(), true);
    case FoKind::Exists: return quant(F.all(), false);
  }
  return false;
}

}  // namespace

bool fo_eval(const Frame& F, const Env& env, const Fo& f, const Valuation* v) {
  Env e = env;
  return fo_rec(F, e, f, v);
}

// --- frame streams ---------------------------------------------------------------

void for_each_frame(int max_worlds, const std::vector<Label>& labels,
                    const std::function<bool(const Frame&)>& fn) {
  for (int n = 1; n <= max_worlds; ++n) {
    std::size_t bits = static_cast<std::size_t>(n) * n * labels.size();
    if (bits >= 63) throw IllFormed("frame enumeration too large");
    std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Frame F(n);
      std::size_t bit = 0;
      for (const auto& l : labels) {
        F.touch(l);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j, ++bit)
            if ((mask >> bit) & 1u) F.add_edge(l, i, j);
      }
      if (!fn(F)) return;
    }
  }
}

std::vector<Frame> enum_frames(int max_worlds, const std::vector<Label>& labels) {
  std::vector<Frame> out;
  for_each_frame(max_worlds, labels, [&](const Frame& F) {
    out.push_back(F);
    return true;
  });
  return out;
}

std::vector<Frame> sample_frames(int max_worlds, const std::vector<Label>& labels, std::size_t n,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, max_worlds);
  std::bernoulli_distribution coin(0.5);
  std::vector<Frame> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Frame F(size(rng));
    for (const auto& l : labels) {
      F.touch(l);
      for (int i = 0; i < F.size(); ++i)
        for (int j = 0; j < F.size(); ++j)
          if (coin(rng)) F.add_edge(l, i, j);
    }
    out.push_back(std::move(F));
  }
  return out;
}

// --- oracles ---------------------------------------------------------------------

Budget Budget::standard(std::size_t relation_count) {
  Budget b;
  if (relation_count <= 1) {
    b.exhaustive_worlds = 3;
    b.samples = 0;
  } else {
    b.exhaustive_worlds = 2;
    b.samples = 10000;
    b.sample_worlds = 4;
  }
  return b;
}

namespace {

std::vector<Label> merge_labels(std::vector<Label> a, const std::vector<Label>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.empty()) a.push_back(Label{1});
  return a;
}

ObjVar single_free(const Fo& f) {
  auto fv = free_vars(f);
  if (fv.size() > 1) throw IllFormed("expected at most one free variable in " + print(f));
  return fv.empty() ? ObjVar{0} : *fv.begin();
}

using PointTest = std::function<bool(const Frame&, int)>;

Report run_budget(const PointTest& left, const PointTest& right, std::vector<Label> labels,
                  std::optional<Budget> budget) {
  Budget b = budget ? *budget : Budget::standard(labels.size());
  if (!b.labels.empty()) labels = b.labels;
  Report rep;
  rep.labels = labels;
  auto check = [&](const Frame& F) {
    ++rep.frames;
    for (int w = 0; w < F.size(); ++w) {
      ++rep.points;
      bool l = left(F, w), r = right(F, w);
      if (l != r) {
        rep.passed = false;
        rep.counterexample = Counterexample{F, w, l, r};
        return false;
      }
    }
    return true;
  };
  if (b.exhaustive_worlds > 0) for_each_frame(b.exhaustive_worlds, labels, check);
  if (rep.passed && b.samples > 0)
    for (const auto& F : sample_frames(b.sample_worlds, labels, b.samples, b.seed))
      if (!check(F)) break;
  return rep;
}

}  // namespace

Report check_correspondence(const Modal& phi, const Fo& alpha, std::optional<Budget> budget) {
  ObjVar x = single_free(alpha);
  return run_budget([&](const Frame& F, int w) { return valid_at_point(F, w, phi); },
                    [&](const Frame& F, int w) { return fo_eval(F, Env{{x, w}}, alpha); },
                    merge_labels(labels_of(phi), labels_of(alpha)), budget);
}

Report check_modal_equivalence(const Modal& a, const Modal& b, std::optional<Budget> budget) {
  return run_budget([&](const Frame& F, int w) { return valid_at_point(F, w, a); },
                    [&](const Frame& F, int w) { return valid_at_point(F, w, b); },
                    merge_labels(labels_of(a), labels_of(b)), budget);
}

Report check_fo_equivalence(const Fo& a, const Fo& b, std::optional<Budget> budget) {
  ObjVar xa = single_free(a), xb = single_free(b);
  return run_budget([&](const Frame& F, int w) { return fo_eval(F, Env{{xa, w}}, a); },
                    [&](const Frame& F, int w) { return fo_eval(F, Env{{xb, w}}, b); },
                    merge_labels(labels_of(a), labels_of(b)), budget);
}

}  // namespace sahlkracht
