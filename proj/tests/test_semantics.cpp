#include "doctest.h"
#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/semantics.hpp"
#include "support.hpp"

using namespace sahlkracht;
using namespace testsupport;

namespace {

Worlds naive_inv(const Frame& F, Label l, const Worlds& a) {
  Worlds out;
  for (int w = 0; w < F.size(); ++w)
    for (int u : a)
      if (edge(F, l, w, u)) out.insert(w);
  return out;
}

Worlds naive_ibox(const Frame& F, Label l, const Worlds& a) {
  Worlds out;
  for (int w = 0; w < F.size(); ++w) {
    bool ok = true;
    for (int u = 0; u < F.size(); ++u)
      if (edge(F, l, w, u) && !a.count(u)) ok = false;
    if (ok) out.insert(w);
  }
  return out;
}

Worlds naive_img(const Frame& F, Label l, const Worlds& a) {
  Worlds out;
  for (int w : a)
    for (int u = 0; u < F.size(); ++u)
      if (edge(F, l, w, u)) out.insert(u);
  return out;
}

WorldSet random_set(Rng& r, const Frame& F) {
  WorldSet s = 0;
  for (int w = 0; w < F.size(); ++w)
    if (r.coin()) s |= singleton(w);
  return s;
}

}  // namespace

TEST_CASE("frame operators agree with their definitions") {
  Rng r(31);
  for (int i = 0; i < 500; ++i) {
    Frame F = random_frame(r, 6, labels_upto(2));
    for (Label l : labels_upto(2)) {
      WorldSet a = random_set(r, F);
      CHECK(to_set(F.inv(l, a)) == naive_inv(F, l, to_set(a)));
      CHECK(to_set(F.ibox(l, a)) == naive_ibox(F, l, to_set(a)));
      CHECK(to_set(F.img(l, a)) == naive_img(F, l, to_set(a)));
      for (int w = 0; w < F.size(); ++w) CHECK(to_set(F.successors(l, w)) == naive_img(F, l, {w}));
    }
  }
}

TEST_CASE("an undeclared relation is empty") {
  Frame F(3);
  F.add_edge(Label{1}, 0, 1);
  CHECK(F.inv(Label{2}, F.all()) == 0);
  CHECK(F.ibox(Label{2}, 0) == F.all());
  CHECK(F.img(Label{2}, F.all()) == 0);
  CHECK(F.reachable(0) == 0b011);
  CHECK(F.reachable(2) == 0b100);
}

TEST_CASE("modal_extension agrees with the pointwise definition") {
  Rng r(32);
  for (int i = 0; i < 400; ++i) {
    Frame F = random_frame(r, 5, labels_upto(2));
    Modal f = random_modal(r, 5, 3, 2);
    NaiveVal nv;
    for (const PropVar& p : prop_vars(f)) nv[p] = to_set(random_set(r, F));
    WorldSet ext = modal_extension(F, to_bits(nv), f);
    for (int w = 0; w < F.size(); ++w) CHECK(contains(ext, w) == naive_truth(F, nv, f, w));
  }
}

TEST_CASE("modal_extension needs every variable") {
  Frame F(2);
  CHECK_THROWS_AS(modal_extension(F, {}, parse_modal("p")), UnboundVariable);
  CHECK(modal_truth(Model{F, {{PropVar::named("p"), 0b01}}}, 0, parse_modal("p")));
}

TEST_CASE("valid_at_point agrees with enumeration of all valuations") {
  Rng r(33);
  for (int i = 0; i < 300; ++i) {
    Frame F = random_frame(r, 4, labels_upto(2));
    Modal f = random_modal(r, 4, 2, 2);
    for (int w = 0; w < F.size(); ++w) CHECK(valid_at_point(F, w, f) == naive_valid(F, w, f));
  }
}

TEST_CASE("valid_at_point with an explicit pool") {
  Frame F(2);
  F.add_edge(Label{1}, 0, 0);
  Modal t = parse_modal("[]p -> p");
  std::vector<PropVar> pool{PropVar::named("p"), PropVar::named("q")};
  CHECK(valid_at_point(F, 0, t, pool));
  CHECK_FALSE(valid_at_point(F, 1, parse_modal("<>T"), pool));
  CHECK_THROWS_AS(valid_at_point(F, 0, t, {PropVar::named("q")}), UnboundVariable);
}

TEST_CASE("fo_eval agrees with the naive evaluator") {
  Rng r(34);
  for (int i = 0; i < 600; ++i) {
    Frame F = random_frame(r, 4, labels_upto(2));
    int next = 1;
    Fo f = random_fo(r, 4, {0}, 2, next);
    for (int w = 0; w < F.size(); ++w) {
      Env env{{ObjVar{0}, w}};
      CHECK(fo_eval(F, env, f) == naive_fo(F, {{0, w}}, f));
    }
  }
}

TEST_CASE("fo_eval reads set variables from the valuation") {
  Frame F(2);
  F.add_edge(Label{1}, 0, 1);
  Fo f = parse_fo("x0 in inv1(P0_0)");
  Valuation v{{PropVar::at(0, 0), 0b10}};
  CHECK(fo_eval(F, Env{{ObjVar{0}, 0}}, f, &v));
  CHECK_FALSE(fo_eval(F, Env{{ObjVar{0}, 1}}, f, &v));
  CHECK_THROWS_AS(fo_eval(F, Env{}, parse_fo("x0 = x0")), UnboundVariable);
}

TEST_CASE("Env") {
  Env e{{ObjVar{2}, 1}};
  CHECK(e.has(ObjVar{2}));
  CHECK_FALSE(e.has(ObjVar{0}));
  CHECK(e.get(ObjVar{2}) == 1);
  e.unset(ObjVar{2});
  CHECK_THROWS_AS(e.get(ObjVar{2}), UnboundVariable);
}

TEST_CASE("enum_frames lists every frame once") {
  auto one = enum_frames(3, labels_upto(1));
  CHECK(one.size() == 2 + 16 + 512);
  auto two = enum_frames(2, labels_upto(2));
  CHECK(two.size() == 4 + 256);
  auto naive = frames_up_to(2, labels_upto(2));
  for (const Frame& F : naive) CHECK(std::count(two.begin(), two.end(), F) == 1);
  std::size_t seen = 0;
  for_each_frame(3, labels_upto(1), [&](const Frame&) { return ++seen < 10; });
  CHECK(seen == 10);
}

TEST_CASE("frame literals round-trip") {
  for (const std::string& line : golden("frames.txt")) {
    Frame F = Frame::parse(line);
    CHECK(Frame::parse(F.to_string()) == F);
  }
  Frame G = Frame::parse("3; 1: (0,1) (1,2); 2: (2,0)");
  CHECK(G.size() == 3);
  CHECK(G.has_edge(Label{1}, 1, 2));
  CHECK(G.has_edge(Label{2}, 2, 0));
  CHECK_FALSE(G.has_edge(Label{2}, 0, 2));
  CHECK(G.edge_count() == 3);
  CHECK_THROWS(Frame::parse("2; 1: (0,5)"));
  CHECK_THROWS(Frame::parse("x"));
}

TEST_CASE("sample_frames is deterministic in the seed") {
  auto a = sample_frames(4, labels_upto(2), 200, 7);
  auto b = sample_frames(4, labels_upto(2), 200, 7);
  auto c = sample_frames(4, labels_upto(2), 200, 8);
  REQUIRE(a.size() == 200);
  CHECK(a == b);
  CHECK(a != c);
  std::set<int> sizes;
  for (const Frame& F : a) {
    CHECK(F.size() >= 1);
    CHECK(F.size() <= 4);
    sizes.insert(F.size());
  }
  CHECK(sizes.size() == 4);
}

TEST_CASE("standard budget") {
  Budget one = Budget::standard(1);
  CHECK(one.exhaustive_worlds == 3);
  CHECK(one.samples == 0);
  Budget three = Budget::standard(3);
  CHECK(three.exhaustive_worlds == 2);
  CHECK(three.samples == 10000);
  CHECK(three.sample_worlds == 4);
}

TEST_CASE("check_correspondence accepts classical pairs") {
  CHECK(check_correspondence(parse_modal("[]p -> p"), parse_fo("x0 R1 x0")).passed);
  CHECK(check_correspondence(parse_modal("[]p -> [][]p"),
                             parse_fo("all y <1 x0 . all z <1 y . x0 R1 z")).passed);
  CHECK(check_correspondence(parse_modal("p -> []<>p"), parse_fo("all y <1 x0 . y R1 x0")).passed);
}

TEST_CASE("a wrong correspondent yields a checkable counterexample") {
  Modal phi = parse_modal("[]p -> [][]p");
  Fo alpha = parse_fo("x0 R1 x0");
  Report rep = check_correspondence(phi, alpha);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.counterexample.has_value());
  const Counterexample& c = *rep.counterexample;
  CHECK(c.left != c.right);
  CHECK(naive_valid(c.frame, c.world, phi) == c.left);
  CHECK(naive_fo(c.frame, {{0, c.world}}, alpha) == c.right);
}

TEST_CASE("equivalence checks") {
  CHECK(check_modal_equivalence(parse_modal("[]p -> p"), parse_modal("p -> <>p")).passed);
  CHECK_FALSE(check_modal_equivalence(parse_modal("[]p -> p"), parse_modal("p -> []p")).passed);
  CHECK(check_fo_equivalence(parse_fo("x0 R1 x0"), parse_fo("ex y <1 x0 . y = x0")).passed);
  CHECK(check_fo_equivalence(parse_fo("x0 R1 x0"), parse_fo("x3 R1 x3")).passed);
  Report r = check_fo_equivalence(parse_fo("x0 R1 x0"), parse_fo("all y <1 x0 . y = x0"));
  CHECK_FALSE(r.passed);
}

TEST_CASE("budget with sampling covers more frames than exhaustive search alone") {
  Budget b;
  b.exhaustive_worlds = 2;
  b.samples = 300;
  b.sample_worlds = 4;
  b.seed = 1;
  Report r = check_correspondence(parse_modal("[]p -> p"), parse_fo("x0 R1 x0"), b);
  CHECK(r.passed);
  CHECK(r.frames == 2 + 16 + 300);
}
