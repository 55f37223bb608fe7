#include "doctest.h"
#include "sahlkracht/correspond.hpp"
#include "sahlkracht/error.hpp"
#include "sahlkracht/minval.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/safety.hpp"
#include "sahlkracht/synthesize.hpp"
#include "support.hpp"

using namespace sahlkracht;
using namespace testsupport;

namespace {

std::vector<std::string> kracht_goldens() {
  auto a = golden("kracht.txt");
  auto b = golden("kracht_extra.txt");
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Expr safe_over(Rng& r, int depth, const std::vector<int>& params, int nlabels);

Expr pos_over(Rng& r, int depth, const std::vector<int>& params, int nlabels) {
  if (depth <= 1 || r.coin(0.35)) {
    if (r.coin(0.1)) return Expr::top();
    return safe_over(r, depth, params, nlabels);
  }
  Label l{1 + r.below(nlabels)};
  switch (r.below(4)) {
    case 0: return Expr::cap(pos_over(r, depth - 1, params, nlabels), pos_over(r, depth - 1, params, nlabels));
    case 1: return Expr::cup(pos_over(r, depth - 1, params, nlabels), pos_over(r, depth - 1, params, nlabels));
    case 2: return Expr::inv(l, pos_over(r, depth - 1, params, nlabels));
    default: return Expr::ibox(l, pos_over(r, depth - 1, params, nlabels));
  }
}

Expr safe_over(Rng& r, int depth, const std::vector<int>& params, int nlabels) {
  if (depth <= 1 || r.coin(0.3)) return Expr::obj(params[r.below(static_cast<int>(params.size()))]);
  if (r.coin(0.55)) return Expr::img(Label{1 + r.below(nlabels)}, safe_over(r, depth - 1, params, nlabels));
  Expr s = safe_over(r, depth - 1, params, nlabels);
  Expr p = pos_over(r, depth - 1, params, nlabels);
  return r.coin() ? Expr::cap(s, p) : Expr::cap(p, s);
}

// Random generalized Kracht formula with free variable x0. `universal`
// holds the inherently universal variables in scope.
Fo random_kracht(Rng& r, int depth, std::vector<int> scope, std::vector<int> universal, bool under_exists,
                 int nlabels, int& next) {
  auto pick = [&](const std::vector<int>& v) { return v[r.below(static_cast<int>(v.size()))]; };
  if (depth == 0 || r.coin(0.25)) {
    ObjVar y{pick(scope)};
    if (r.coin(0.2)) return Fo::eq(y, ObjVar{pick(universal)});
    return Fo::member(y, pos_over(r, 3, universal, nlabels));
  }
  switch (r.below(4)) {
    case 0:
      return Fo::conj(random_kracht(r, depth - 1, scope, universal, under_exists, nlabels, next),
                      random_kracht(r, depth - 1, scope, universal, under_exists, nlabels, next));
    case 1:
      return Fo::disj(random_kracht(r, depth - 1, scope, universal, under_exists, nlabels, next),
                      random_kracht(r, depth - 1, scope, universal, under_exists, nlabels, next));
    default: {
      ObjVar y{next++};
      ObjVar anchor{pick(scope)};
      Label l{1 + r.below(nlabels)};
      bool forall = r.coin();
      auto inner = scope;
      inner.push_back(y.id);
      auto uni = universal;
      if (forall && !under_exists) uni.push_back(y.id);
      Fo body = random_kracht(r, depth - 1, inner, uni, under_exists || !forall, nlabels, next);
      return forall ? Fo::rforall(y, l, anchor, body) : Fo::rexists(y, l, anchor, body);
    }
  }
}

Fo random_kracht(Rng& r, int depth, int nlabels) {
  int next = 1;
  return random_kracht(r, depth, {0}, {0}, false, nlabels, next);
}

bool has_rexists(const Fo& f) {
  switch (f.kind()) {
    case FoKind::RExists:
    case FoKind::Exists: return true;
    case FoKind::And:
    case FoKind::Or: return has_rexists(f.left()) || has_rexists(f.right());
    case FoKind::Not:
    case FoKind::RForall:
    case FoKind::Forall: return has_rexists(f.body());
    default: return false;
  }
}

// Every assignment of the given object variables to worlds of F.
void for_each_env(const Frame& F, const std::vector<ObjVar>& xs, const std::function<void(const NaiveEnv&)>& fn) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) total *= static_cast<std::size_t>(F.size());
  for (std::size_t m = 0; m < total; ++m) {
    NaiveEnv env;
    std::size_t k = m;
    for (ObjVar x : xs) {
      env[x.id] = static_cast<int>(k % static_cast<std::size_t>(F.size()));
      k /= static_cast<std::size_t>(F.size());
    }
    fn(env);
  }
}

Env to_env(const NaiveEnv& ne) {
  Env e;
  for (const auto& [x, w] : ne) e.set(ObjVar{x}, w);
  return e;
}

}  // namespace

TEST_CASE("golden Kracht formulas are accepted") {
  int n = 0;
  for (const std::string& line : kracht_goldens()) {
    KrachtVerdict v = check_kracht(parse_fo(line));
    CHECK_MESSAGE(v.kracht, line);
    CHECK(v.reasons.empty());
    CHECK(v.normalized.has_value());
    CHECK(v.universal.count(ObjVar{0}) == 1);
    ++n;
  }
  CHECK(n == 12);
}

TEST_CASE("rejected formulas carry reasons") {
  int n = 0;
  for (const std::string& line : golden("not_kracht.txt")) {
    KrachtVerdict v = check_kracht(parse_fo(line));
    CHECK_FALSE_MESSAGE(v.kracht, line);
    CHECK_FALSE(v.reasons.empty());
    CHECK_THROWS_AS(synthesize(parse_fo(line)), NotKracht);
    ++n;
  }
  CHECK(n == 5);
  auto has = [](const KrachtVerdict& v, const std::string& s) {
    for (const auto& r : v.reasons)
      if (r.find(s) != std::string::npos) return true;
    return false;
  };
  CHECK(has(check_kracht(parse_fo("ex y <1 x0 . x0 in img1(y)")), "not inherently universal"));
  CHECK(has(check_kracht(parse_fo("~(x0 R1 x0)")), "negation"));
  CHECK(has(check_kracht(parse_fo("forall y . x0 R1 y")), "unrestricted"));
  CHECK(has(check_kracht(parse_fo("x0 in img1(x1)")), "free variables"));
  CHECK(has(check_kracht(parse_fo("x0 in img1(inv1(x0))")), "img1(inv1(x0))"));
}

TEST_CASE("inherently universal variables") {
  Fo f = parse_fo("all x1 <1 x0 . (ex x2 <1 x1 . all x3 <1 x2 . x3 in x1) & (all x4 <1 x1 . x4 in x0)");
  CHECK(inherently_universal(f) == std::set<ObjVar>{ObjVar{0}, ObjVar{1}, ObjVar{4}});
}

TEST_CASE("FO(ns) as written normalizes to a Kracht formula") {
  Fo ns = parse_fo("ex y <1 x0 . (y in inv1(x0) & ex v <3 y . v in img3(img2(x0) & inv2(x0)))");
  Fo n = normalize_kracht(ns);
  CHECK(check_fo_equivalence(ns, n).passed);
}

TEST_CASE("normalization preserves meaning") {
  Rng r(71);
  for (int i = 0; i < 300; ++i) {
    int next = 1;
    Fo f = random_fo(r, 4, {0}, 2, next);
    Fo g = Fo::top();
    try {
      g = normalize_kracht(f);
    } catch (const NotNormalizable&) {
      continue;
    }
    Frame F = random_frame(r, 4, labels_upto(2));
    for (int w = 0; w < F.size(); ++w) CHECK(naive_fo(F, {{0, w}}, f) == naive_fo(F, {{0, w}}, g));
  }
}

TEST_CASE("quantifier elimination on the golden Kracht formulas") {
  for (const std::string& line : kracht_goldens()) {
    Fo f = parse_fo(line);
    Fo n = normalize_kracht(f);
    Fo q = quantifier_eliminate(n);
    CHECK_FALSE(has_rexists(q));
    Report rep = check_fo_equivalence(f, q);
    CHECK_MESSAGE(rep.passed, line << " => " << print(q));
  }
}

TEST_CASE("quantifier elimination on random Kracht formulas") {
  Rng r(72);
  for (int i = 0; i < 150; ++i) {
    int nl = 1 + i % 2;
    Fo f = random_kracht(r, 4, nl);
    KrachtVerdict v = check_kracht(f);
    REQUIRE_MESSAGE(v.kracht, print(f));
    Fo q = quantifier_eliminate(*v.normalized);
    CHECK_FALSE(has_rexists(q));
    Frame F = random_frame(r, 4, labels_upto(nl));
    for (int k = 0; k < 8; ++k) {
      F = random_frame(r, 4, labels_upto(nl));
      for (int w = 0; w < F.size(); ++w)
        REQUIRE_MESSAGE(naive_fo(F, {{0, w}}, f) == naive_fo(F, {{0, w}}, q), print(f) << " => " << print(q));
    }
  }
}

TEST_CASE("fuse_atoms merges same-subject atoms") {
  CHECK(print(fuse_atoms(parse_fo("x0 in img1(x0) & x0 in x0"))) == "x0 in (img1(x0) & x0)");
  CHECK(print(fuse_atoms(parse_fo("x0 in img1(x0) | x0 in x0"))) == "x0 in (img1(x0) | x0)");
  Fo mixed = parse_fo("x1 in x0 & x0 in img1(x0)");
  CHECK(fuse_atoms(mixed) == mixed);
}

TEST_CASE("expr_to_modal") {
  Expr x0 = Expr::obj(0);
  std::map<Expr, PropVar> heads{{x0, PropVar::at(0, 0, "q0")}};
  CHECK(expr_to_modal(parse_expr("inv1(x0) & ibox2(x0 | T)"), heads) ==
        rename_props(parse_modal("<1>q0 & [2](q0 | T)"), {{PropVar::named("q0"), PropVar::at(0, 0, "q0")}}));
  CHECK_THROWS_AS(expr_to_modal(parse_expr("inv1(x1)"), heads), MissingHead);
}

TEST_CASE("synthesize_expr_f rejects unsafe input") {
  CHECK_THROWS_AS(synthesize_expr_f({parse_expr("inv1(x0)")}), NotSafe);
}

TEST_CASE("the minimal valuation of a synthesized map reproduces the expression") {
  Rng r(73);
  auto frames = frames_up_to(3, labels_upto(1));
  for (int i = 0; i < 60; ++i) {
    Expr e = safe_over(r, 4, {0, 1}, 1);
    ExprSynthesis s = synthesize_expr_f({e});
    PropVar h = s.heads.at(e);
    auto branches = kf(s.f, h);
    auto vs = obj_vars(e);
    std::vector<ObjVar> xs(vs.begin(), vs.end());
    for (const Frame& F : frames)
      for_each_env(F, xs, [&](const NaiveEnv& ne) {
        Env env = to_env(ne);
        WorldSet got = 0;
        for (const Expr& b : branches) got |= eval_expr(b, F, env);
        REQUIRE_MESSAGE(to_set(got) == naive_expr(F, ne, e), print(e));
      });
  }
}

TEST_CASE("define_atom gives a definable sequence for membership") {
  Rng r(74);
  auto frames = frames_up_to(3, labels_upto(1));
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    Expr e = pos_over(r, 3, {0}, 1);
    std::vector<Expr> safe = safe_subexpressions(e);
    ExprSynthesis shared = synthesize_expr_f(safe);
    ObjVar y{5};
    DefinableSequence ds = define_atom(y, e, shared);
    REQUIRE(ds.vars.size() == ds.formulas.size());
    std::vector<PropVar> pool;
    for (const Modal& m : ds.formulas)
      for (const PropVar& p : prop_vars(m))
        if (std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(p);
    if (pool.size() > 3) continue;
    std::vector<ObjVar> xs{ObjVar{0}, y};
    for (const Frame& F : frames)
      for_each_env(F, xs, [&](const NaiveEnv& ne) {
        bool every = for_each_valuation(F, pool, [&](const NaiveVal& v) {
          for (std::size_t k = 0; k < ds.vars.size(); ++k)
            if (naive_truth(F, v, ds.formulas[k], ne.at(ds.vars[k].id))) return true;
          return false;
        });
        bool member = naive_expr(F, ne, e).count(ne.at(y.id)) > 0;
        REQUIRE_MESSAGE(every == member, print(e));
      });
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("synthesized goldens are Sahlqvist and verified") {
  for (const std::string& line : kracht_goldens()) {
    Fo f = parse_fo(line);
    SynthesisOptions opts;
    opts.verify = true;
    Synthesis s = synthesize_traced(f, opts);
    REQUIRE(s.verification.has_value());
    CHECK_MESSAGE(s.verification->passed, line);
    CHECK_MESSAGE(classify_sahlqvist(s.result).ok, print(s.result));
  }
}

TEST_CASE("small synthesis examples") {
  CHECK(print(synthesize(parse_fo("all y <1 x0 . all z <1 y . x0 R1 z"))) == "[1]q0 -> [1][1]q0");
  CHECK(print(synthesize(parse_fo("ex x1 <1 x0 . x1 in x0"))) == "q0 -> <1>q0");
}

TEST_CASE("round trip through correspond") {
  for (const std::string& line : kracht_goldens()) {
    Fo f = parse_fo(line);
    Modal m = synthesize(f);
    Fo back = correspond(m);
    CHECK_MESSAGE(check_fo_equivalence(f, back).passed, line);
  }
  for (const std::string& line : golden("sahlqvist.txt")) {
    Modal phi = parse_modal(line);
    Modal back = synthesize(correspond(phi));
    CHECK_MESSAGE(check_modal_equivalence(phi, back).passed, line);
  }
}

TEST_CASE("random Kracht formulas synthesize to verified Sahlqvist formulas") {
  Rng r(75);
  for (int i = 0; i < 40; ++i) {
    Fo f = random_kracht(r, 3, 1);
    Modal m = synthesize(f);
    CHECK_MESSAGE(classify_sahlqvist(m).ok, print(f) << " => " << print(m));
    Report rep = check_correspondence(m, f);
    CHECK_MESSAGE(rep.passed, print(f) << " => " << print(m));
  }
}
