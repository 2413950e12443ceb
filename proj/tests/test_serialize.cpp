// Definition-file round trips, instantiation, parse errors, and the
// 1-morphism expression language (parsing, printing, evaluation, fuzzing).
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pdgcat/examples.hpp"
#include "pdgcat/expr.hpp"
#include "pdgcat/serialize.hpp"
#include "pdgcat/twisted.hpp"

using namespace pdgcat;

namespace {

bool raw_equal(const RawAlgebra& a, const RawAlgebra& b) {
  if (a.p != b.p || a.name != b.name) return false;
  if (a.space.basis.size() != b.space.basis.size()) return false;
  for (std::size_t i = 0; i < a.space.basis.size(); ++i)
    if (a.space.basis[i].label != b.space.basis[i].label ||
        a.space.basis[i].degree != b.space.basis[i].degree)
      return false;
  if (a.mul != b.mul || a.diff != b.diff || a.unit != b.unit) return false;
  if (a.idempotents != b.idempotents) return false;
  if (a.declared_radical.has_value() != b.declared_radical.has_value()) return false;
  if (a.declared_radical && *a.declared_radical != *b.declared_radical) return false;
  return true;
}

AlgebraFile sample_file() {
  AlgebraFile f;
  f.raw = example_kx();
  AlgebraFile::ObjectDef X;
  X.gens = {{0, 2}, {0, 0}};
  X.alpha.assign(2, std::vector<Vec>(2, Vec(3, 0)));
  X.alpha[0][1] = {0, 0, 1};  // x^2 in the upper corner, raw degree 4
  f.objects["X"] = X;
  AlgebraFile::ObjectDef Y;
  Y.gens = {{0, 0}};
  Y.alpha.assign(1, std::vector<Vec>(1, Vec(3, 0)));
  f.objects["Y"] = Y;
  AlgebraFile::MorphismDef m;
  m.source = "Y";
  m.target = "X";
  m.degree = 2;
  m.entries.assign(2, std::vector<Vec>(1, Vec(3, 0)));
  m.entries[1][0] = {0, 1, 0};  // x, raw degree 2
  f.morphisms["f"] = m;
  f.onemorphisms["F"] = "P(1,1)";
  return f;
}

}  // namespace

TEST_CASE("raw algebras survive a write/read round trip byte-identically") {
  std::vector<RawAlgebra> raws = {example_kx(), example_kx_paper_variant(),
                                  example_semisimple(), example_coinvariant()};
  for (const RawAlgebra& raw : raws) {
    INFO("algebra ", raw.name);
    AlgebraFile f;
    f.raw = raw;
    std::string text = write_algebra_file_text(f);
    AlgebraFile g = read_algebra_file_text(text);
    CHECK(raw_equal(f.raw, g.raw));
    CHECK(write_algebra_file_text(g) == text);
  }
}

TEST_CASE("files with objects, morphisms, and expressions round trip") {
  AlgebraFile f = sample_file();
  std::string text = write_algebra_file_text(f);
  AlgebraFile g = read_algebra_file_text(text);
  CHECK(raw_equal(f.raw, g.raw));
  REQUIRE(g.objects.size() == 2);
  REQUIRE(g.morphisms.size() == 1);
  REQUIRE(g.onemorphisms.size() == 1);
  CHECK(g.objects.at("X").gens.size() == 2);
  CHECK(g.objects.at("X").alpha[0][1] == f.objects.at("X").alpha[0][1]);
  CHECK(g.morphisms.at("f").degree == 2);
  CHECK(g.morphisms.at("f").entries[1][0] == f.morphisms.at("f").entries[1][0]);
  CHECK(g.onemorphisms.at("F") == "P(1,1)");
  CHECK(write_algebra_file_text(g) == text);

  AlgebraPtr A = make_algebra(g.raw);
  TwistedObject ox = instantiate_object(A, g.objects.at("X"));
  CHECK(validate_twisted(ox).ok());
  TwistedMorphism mf = instantiate_morphism(A, g, g.morphisms.at("f"));
  CHECK(validate_morphism(mf).ok());

  std::stringstream ss;
  write_algebra_file(ss, f);
  AlgebraFile h = read_algebra_file(ss);
  CHECK(raw_equal(h.raw, f.raw));
}

TEST_CASE("malformed definition files raise descriptive parse errors") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      read_algebra_file_text(text);
    } catch (const ParseError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(expect_error("{", "invalid JSON"));
  CHECK(expect_error("[]", "top level"));
  CHECK(expect_error("{\"p\": 3}", "basis"));
  CHECK(expect_error(
      "{\"p\": 3, \"basis\": [[\"e\",0]], \"unit\": [[5,1]], \"mul\": [], "
      "\"idempotents\": [[[0,1]]]}",
      "out of range"));
}

TEST_CASE("expression printing is the identity on normal forms") {
  for (const std::string s :
       {"Id(1)", "P(1,1)", "P(2,3)<-2>", "P(1,1)*P(1,1)", "Id(1) + P(1,1)<2>",
        "P(1,2)*P(2,1)*Id(1) + Id(2)<1><2>", "F", "F*G + H<3>"}) {
    INFO("expression ", s);
    CHECK(print_expr(*parse_expr(s)) == s);
  }
  CHECK(print_expr(*parse_expr("  P( 1 , 1 ) *P(1,1)+Id( 1 )  ")) ==
        "P(1,1)*P(1,1) + Id(1)");
}

TEST_CASE("expression grammar structure") {
  SUBCASE("composition binds tighter than sum") {
    ExprPtr e = parse_expr("Id(1) + P(1,1)*P(1,1)");
    REQUIRE(e->kind == Expr::Kind::Sum);
    CHECK(e->children[1]->kind == Expr::Kind::Compose);
  }
  SUBCASE("shift binds to the nearest factor") {
    ExprPtr e = parse_expr("P(1,1)<2>*P(1,1)");
    REQUIRE(e->kind == Expr::Kind::Compose);
    REQUIRE(e->children[0]->kind == Expr::Kind::Shift);
    CHECK(e->children[0]->a == 2);
  }
  SUBCASE("parse after print is the identity on trees") {
    ExprPtr e = parse_expr("P(1,2)*F<-1> + Id(2)");
    CHECK(parse_expr(print_expr(*e))->equals(*e));
  }
}

TEST_CASE("ungrammatical expressions are rejected with a position") {
  auto expect_reject = [](const std::string& s) {
    try {
      parse_expr(s);
    } catch (const ExprError& e) {
      return e.position() >= 0;
    }
    return false;
  };
  for (const std::string s : {"", "P(1)", "Id(1,2)", "P(1,1)+", "*P(1,1)", "P(1,1)<>",
                              "P(1,1) P(2,2)", "Id()", "3", "P(1,1)<2", "(Id(1))",
                              "Id(1)++Id(1)"}) {
    INFO("expression ", s);
    CHECK(expect_reject(s));
  }
}

TEST_CASE("expression evaluation over the truncated polynomial algebra") {
  AlgebraPtr A = make_algebra(example_kx());
  OneMorphismEnv env;
  env.emplace("F", proj_one(A, 0, 0));

  OneMorphism m = eval_expr_text("F*F", A, env);
  CHECK(m.summands.size() == 3);
  OneMorphism m2 = eval_expr_text("P(1,1)*P(1,1)", A, env);
  REQUIRE(m2.summands.size() == 3);
  CHECK(m2.summands[0].shift == m.summands[0].shift);
  OneMorphism m3 = eval_expr_text("Id(1)<2> + P(1,1)", A, env);
  REQUIRE(m3.summands.size() == 2);
  CHECK(m3.summands[0].shift == 2);
  CHECK(one_morphism_expression(m3) == "Id(1)<2> + P(1,1)");
  // twisted composites fall outside the expression language
  CHECK(one_morphism_expression(m) == "");

  auto expect_eval_error = [&](const std::string& s) {
    try {
      eval_expr_text(s, A, env);
    } catch (const ExprError&) {
      return true;
    }
    return false;
  };
  CHECK(expect_eval_error("G"));
  CHECK(expect_eval_error("Id(2)"));
  CHECK(expect_eval_error("P(1,2)"));
  CHECK(expect_eval_error("Id(0)"));
}

TEST_CASE("fuzz: generated expressions round trip, junk only raises ExprError") {
  std::mt19937 rng(2026);
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };

  auto gen_primary = [&]() -> std::string {
    switch (pick(3)) {
      case 0: return "Id(" + std::to_string(1 + pick(4)) + ")";
      case 1:
        return "P(" + std::to_string(1 + pick(4)) + "," + std::to_string(1 + pick(4)) + ")";
      default: {
        const char* names[] = {"F", "G", "alpha", "Fx2"};
        return names[pick(4)];
      }
    }
  };
  auto gen_factor = [&]() {
    std::string s = gen_primary();
    int shifts = pick(3);
    for (int i = 0; i < shifts; ++i) s += "<" + std::to_string(pick(9) - 4) + ">";
    return s;
  };
  auto gen_term = [&]() {
    std::string s = gen_factor();
    int extra = pick(3);
    for (int i = 0; i < extra; ++i) s += "*" + gen_factor();
    return s;
  };
  auto gen_expr = [&]() {
    std::string s = gen_term();
    int extra = pick(3);
    for (int i = 0; i < extra; ++i) s += " + " + gen_term();
    return s;
  };

  int round_trips = 0;
  for (int it = 0; it < 200; ++it) {
    std::string s = gen_expr();
    ExprPtr e = parse_expr(s);
    CHECK(parse_expr(print_expr(*e))->equals(*e));
    ++round_trips;
  }
  CHECK(round_trips == 200);

  // arbitrary strings over the expression alphabet must either parse or
  // raise ExprError -- never another exception type
  const std::string alphabet = "()<>+*,0123456789IdP F";
  int outcomes = 0;
  for (int it = 0; it < 500; ++it) {
    std::string s;
    int len = 1 + pick(14);
    for (int i = 0; i < len; ++i) s += alphabet[pick(static_cast<int>(alphabet.size()))];
    try {
      parse_expr(s);
      ++outcomes;
    } catch (const ExprError&) {
      ++outcomes;
    }
  }
  CHECK(outcomes == 500);
}
