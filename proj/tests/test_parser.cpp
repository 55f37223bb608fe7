#include <fstream>

#include "doctest.h"
#include "sahlkracht/error.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/tree_json.hpp"
#include "support.hpp"

using namespace sahlkracht;
using namespace testsupport;

namespace {

Modal v(const char* n) { return Modal::var(n); }
Expr x(int i) { return Expr::obj(i); }

std::size_t json_nodes(const nlohmann::json& j) {
  std::size_t n = 1;
  for (const char* k : {"child", "left", "right", "body"})
    if (j.contains(k)) n += json_nodes(j[k]);
  return n;
}

}  // namespace

TEST_CASE("ns parses to the expected tree") {
  Modal expected = Modal::implies(
      Modal::conj(v("p"), Modal::box(Label{1}, Modal::implies(Modal::dia(Label{1}, v("p")),
                                                              Modal::box(Label{3}, v("r"))))),
      Modal::dia(Label{2}, Modal::conj(Modal::dia(Label{2}, v("p")), Modal::dia(Label{3}, v("r")))));
  CHECK(parse_modal("p & [1](<1>p -> [3]r) -> <2>(<2>p & <3>r)") == expected);
}

TEST_CASE("expression and first-order examples") {
  Label one{1};
  CHECK(parse_expr("img1(img1(x0) & inv1(img1(x0)))") ==
        Expr::img(one, Expr::cap(Expr::img(one, x(0)), Expr::inv(one, Expr::img(one, x(0))))));
  CHECK(parse_fo("all y <1 x0 . y in x0") == Fo::rforall(ObjVar{1}, one, ObjVar{0}, Fo::member(ObjVar{1}, x(0))));
}

TEST_CASE("printing constants and hole expressions") {
  CHECK(print(Modal::top()) == "T");
  CHECK(print(Modal::bot()) == "F");
  CHECK(print(Expr::top()) == "T");
  Expr kv = Expr::img(Label{3}, Expr::cap(Expr::inv(Label{2}, Expr::setvar(PropVar::at(0, 0))),
                                           Expr::img(Label{1}, Expr::hole())));
  CHECK(print(kv) == "img3(inv2(P0_0) & img1(#))");
  CHECK(parse_expr(print(kv)) == kv);
}

TEST_CASE("default modality is 1") {
  CHECK(parse_modal("[]<>p") == parse_modal("[1]<1>p"));
  CHECK(print(parse_modal("[]p")) == "[1]p");
}

TEST_CASE("precedence and associativity") {
  Modal p = v("p"), q = v("q"), r = v("r");
  CHECK(parse_modal("p | q & r") == Modal::disj(p, Modal::conj(q, r)));
  CHECK(parse_modal("p -> q -> r") == Modal::implies(p, Modal::implies(q, r)));
  CHECK(parse_modal("p & q & r") == Modal::conj(Modal::conj(p, q), r));
  CHECK(parse_modal("~p & []q") == Modal::conj(Modal::neg(p), Modal::box(Label{1}, q)));
  CHECK(parse_modal("p | q -> r") == Modal::implies(Modal::disj(p, q), r));
  CHECK(parse_modal("~[2]~p") == Modal::neg(Modal::box(Label{2}, Modal::neg(p))));
}

TEST_CASE("first-order conveniences") {
  Fo f = parse_fo("forall y . (x0 R1 y -> y = x0)");
  REQUIRE(f.is(FoKind::Forall));
  CHECK(f.body() == Fo::disj(Fo::neg(Fo::rel(Label{1}, ObjVar{0}, ObjVar{1})), Fo::eq(ObjVar{1}, ObjVar{0})));
  Fo g = parse_fo("all y <1 x0 . y in x0 & y in img1(x0)");
  REQUIRE(g.is(FoKind::RForall));
  CHECK(g.body().is(FoKind::And));
  Fo h = parse_fo("y in (x0 & x1)");
  CHECK(h.expr().is(ExprKind::Cap));
  // Named variables are numbered after the largest explicit one.
  Fo k = parse_fo("ex y <1 x3 . y in x3");
  CHECK(k.bound() == ObjVar{4});
  CHECK(parse_fo("exists y . y R2 x0").is(FoKind::Exists));
}

TEST_CASE("syntax errors carry position and expectations") {
  try {
    parse_modal("p &\n  & q");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_expr("img1(x0"), SyntaxError);
  CHECK_THROWS_AS(parse_fo("all y <1 x0 y in x0"), SyntaxError);
  CHECK_THROWS_AS(parse_modal("p q"), SyntaxError);
  CHECK_THROWS_AS(parse_modal("[x]p"), SyntaxError);
}

TEST_CASE("golden files round-trip") {
  struct G {
    const char* file;
    SyntaxKind kind;
  };
  int n = 0;
  for (G g : {G{"sahlqvist.txt", SyntaxKind::Modal}, G{"not_sahlqvist.txt", SyntaxKind::Modal},
              G{"kracht.txt", SyntaxKind::Fo}, G{"kracht_extra.txt", SyntaxKind::Fo},
              G{"not_kracht.txt", SyntaxKind::Fo}, G{"safe.txt", SyntaxKind::Expr}}) {
    for (const std::string& line : golden(g.file)) {
      AnyTree t = parse(g.kind, line);
      std::string once = print(t);
      AnyTree back = parse(g.kind, once);
      CHECK_MESSAGE(back == t, line);
      CHECK(print(back) == once);
      ++n;
    }
  }
  CHECK(n >= 30);
}

TEST_CASE("read_golden_lines skips comments and blanks") {
  std::string path = "golden_lines_tmp.txt";
  {
    std::ofstream out(path);
    out << "# comment\n\np\n#\n#not a comment\n  q  \n";
  }
  auto lines = read_golden_lines(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "p");
  CHECK(lines[1] == "#not a comment");
  std::remove(path.c_str());
}

TEST_CASE("random modal formulas: parse(print(t)) == t") {
  Rng r(11);
  for (int i = 0; i < 2000; ++i) {
    Modal f = random_modal(r, 5, 3, 3);
    std::string s = print(f);
    Modal g = parse_modal(s);
    REQUIRE_MESSAGE(g == f, s);
    CHECK(print(g) == s);
  }
}

TEST_CASE("random expressions: parse(print(t)) == t") {
  Rng r(12);
  for (int i = 0; i < 2000; ++i) {
    Expr e = random_expr(r, 6, 3, 3);
    if (r.coin(0.3)) e = Expr::cap(e, r.coin() ? Expr::hole() : Expr::setvar(PropVar::at(r.below(3), r.below(3))));
    std::string s = print(e);
    REQUIRE_MESSAGE(parse_expr(s) == e, s);
  }
}

TEST_CASE("random first-order formulas: parse(print(t)) == t") {
  Rng r(13);
  for (int i = 0; i < 2000; ++i) {
    int next = 1;
    Fo f = random_fo(r, 5, {0}, 3, next);
    std::string s = print(f);
    REQUIRE_MESSAGE(parse_fo(s) == f, s);
  }
}

TEST_CASE("JSON trees mirror node kinds one to one") {
  Rng r(14);
  for (int i = 0; i < 300; ++i) {
    Modal f = random_modal(r, 5, 3, 2);
    nlohmann::json j = to_json(f);
    CHECK(json_nodes(j) == size_of(f));
  }
  nlohmann::json e = to_json(parse_expr("ibox2(inv1(x3) | P1_2)"));
  CHECK(e["kind"] == "IBox");
  CHECK(e["label"] == 2);
  CHECK(e["child"]["kind"] == "Cup");
  CHECK(e["child"]["left"]["child"]["var"] == 3);
  CHECK(e["child"]["right"]["var"]["rank"] == 1);
  nlohmann::json f = to_json(parse_fo("ex y <2 x0 . y R1 x0"));
  CHECK(f["kind"] == "RExists");
  CHECK(f["anchor"] == 0);
  CHECK(f["body"]["kind"] == "Rel");
  CHECK(to_json(parse_modal("<3>~T"))["child"]["child"]["kind"] == "Top");
}
