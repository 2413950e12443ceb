// Linear algebra over F_p, graded spaces, algebra validation with its
// violation catalogue, radicals, centers, blocks, and H-module decomposition.
#include <doctest.h>

#include <random>

#include "pdgcat/examples.hpp"
#include "pdgcat/hmodule.hpp"

using namespace pdgcat;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  for (const Violation& v : vs)
    if (v.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("modular linear algebra: solve, span, powers") {
  std::mt19937 rng(5);
  const int p = 3;
  for (int it = 0; it < 25; ++it) {
    int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 5);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m.at(r, c) = static_cast<int>(rng() % p);
    Vec x(cols);
    for (int c = 0; c < cols; ++c) x[c] = static_cast<int>(rng() % p);
    Vec b = matvec(m, x, p);
    auto sol = solve(m, b, p);
    REQUIRE(sol.has_value());
    CHECK(matvec(m, *sol, p) == b);

    // row_basis spans the original rows
    std::vector<Vec> rows_v;
    for (int r = 0; r < rows; ++r) {
      Vec row(cols);
      for (int c = 0; c < cols; ++c) row[c] = m.at(r, c);
      rows_v.push_back(row);
    }
    std::vector<Vec> basis = row_basis(rows_v, cols, p);
    for (const Vec& row : rows_v) CHECK(in_span(basis, row, cols, p));
  }
  // matpow: nilpotent single Jordan block of size p
  Matrix j(p, p);
  for (int i = 0; i + 1 < p; ++i) j.at(i + 1, i) = 1;
  CHECK(!is_zero(matpow(j, p - 1, p)));
  CHECK(is_zero(matpow(j, p, p)));
}

TEST_CASE("graded dimension formatting") {
  CHECK(format_graded_dimension({}) == "0");
  CHECK(format_graded_dimension({{0, 1}}) == "1");
  CHECK(format_graded_dimension({{0, 1}, {2, 1}, {4, 2}}) == "1 + q^2 + 2*q^4");
  CHECK(format_graded_dimension({{-2, 3}, {1, 1}}) == "3*q^-2 + q");
}

TEST_CASE("the truncated polynomial algebra validates with the expected structure") {
  auto A = make_algebra(example_kx(3, 3));
  CHECK(A->dim() == 3);
  CHECK(A->p() == 3);
  Vec x = A->basis_vec(1), x2 = A->basis_vec(2);
  CHECK(A->diff(x) == x2);
  CHECK(is_zero(A->diff(x2)));
  CHECK(A->mul(x, x) == x2);
  CHECK(is_zero(A->mul(x, x2)));
  auto rad = A->radical();
  CHECK(rad.ok());
  CHECK(rad.basis.size() == 2);
  CHECK(A->center().size() == 3);
  CHECK(A->num_blocks() == 1);
}

TEST_CASE("every built-in example passes validation") {
  for (const RawAlgebra& raw :
       {example_kx(3, 1), example_kx(3, 2), example_kx(3, 3), example_kx(5, 4),
        example_kx_paper_variant(3, 3), example_semisimple(3, 1), example_semisimple(3, 2),
        example_semisimple(5, 3), example_coinvariant(3, 1), example_coinvariant(3, 2)}) {
    ValidationResult res = validate_algebra(raw);
    INFO(raw.name);
    CHECK(res.ok());
  }
  CHECK(make_algebra(example_semisimple(3, 2))->num_blocks() == 2);
  CHECK(make_algebra(example_coinvariant(3, 2))->num_blocks() == 3);
  CHECK(make_algebra(example_coinvariant(3, 2))->center().size() == 4);
}

TEST_CASE("builtin_example dispatches by name and rejects unknown ones") {
  CHECK(builtin_example("kx", 3, 3).name == "kx");
  CHECK(builtin_example("kx-paper-variant", 3, 3).space.basis[1].degree == -2);
  CHECK(builtin_example("semisimple", 3, 2).space.dim() == 2);
  CHECK(builtin_example("coinvariant", 3, 2).space.dim() == 4);
  CHECK_THROWS_AS(builtin_example("nope", 3, 1), DimensionError);
  CHECK_THROWS_AS(example_coinvariant(3, 3), DimensionError);  // needs a user file
  CHECK_THROWS_AS(example_kx(3, 4), DimensionError);           // x^4 needs p >= 5
}

TEST_CASE("op and tensor algebras validate") {
  RawAlgebra kx = example_kx(3, 3);
  CHECK(validate_algebra(op_algebra(kx)).ok());
  RawAlgebra ten = tensor_algebra(kx, kx);
  CHECK(validate_algebra(ten).ok());
  CHECK(ten.space.dim() == 9);
  RawAlgebra mixed = tensor_algebra(example_semisimple(3, 2), kx);
  CHECK(validate_algebra(mixed).ok());
  CHECK(mixed.idempotents.size() == 2);
}

TEST_CASE("each broken axiom is reported under its own rule") {
  const RawAlgebra good = example_kx(3, 3);

  SUBCASE("broken associativity") {
    RawAlgebra bad = good;
    bad.mul[2][1] = bad.unit;  // x^2 * x = 1: degree nonsense and non-associative
    ValidationResult res = validate_algebra(bad);
    CHECK(!res.ok());
  }
  SUBCASE("broken unit") {
    RawAlgebra bad = good;
    bad.mul[0][1] = Vec(3, 0);  // 1 * x = 0
    CHECK(has_rule(validate_algebra(bad).violations, "unit"));
  }
  SUBCASE("broken grading") {
    RawAlgebra bad = good;
    bad.mul[1][1] = {0, 1, 0};  // x*x = x
    CHECK(has_rule(validate_algebra(bad).violations, "grading"));
  }
  SUBCASE("differential of the wrong degree") {
    RawAlgebra bad = good;
    bad.diff[2] = {0, 1, 0};  // d(x^2) = x lowers degree
    CHECK(has_rule(validate_algebra(bad).violations, "grading"));
  }
  SUBCASE("broken Leibniz with the witness pair") {
    // d(x*x) = d(y) = 0 but d(x)x + x d(x) = 2z; all other axioms hold.
    RawAlgebra bad;
    bad.p = 3;
    bad.name = "leibniz-broken";
    bad.space.basis = {{"e", 0}, {"x", 2}, {"y", 4}, {"z", 6}};
    int n = 4;
    bad.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
    for (int i = 0; i < n; ++i) {
      bad.mul[0][i][i] = 1;
      bad.mul[i][0][i] = 1;
    }
    bad.mul[1][1] = {0, 0, 1, 0};
    bad.mul[1][2] = {0, 0, 0, 1};
    bad.mul[2][1] = {0, 0, 0, 1};
    bad.diff.assign(n, Vec(n, 0));
    bad.diff[1] = {0, 0, 1, 0};
    bad.unit = {1, 0, 0, 0};
    bad.idempotents = {bad.unit};
    ValidationResult res = validate_algebra(bad);
    REQUIRE(has_rule(res.violations, "leibniz"));
    bool witness_names_pair = false;
    for (const Violation& v : res.violations)
      if (v.rule == "leibniz" && v.witness.find("x*x") != std::string::npos)
        witness_names_pair = true;
    CHECK(witness_names_pair);
  }
  SUBCASE("differential p-th power") {
    // d(a) = b, d(b) = c, d(c) = 0 would be fine; make d(c) = wrong to break d^3.
    RawAlgebra bad;
    bad.p = 3;
    bad.space.basis = {{"e", 0}, {"a", 2}, {"b", 4}, {"c", 6}, {"u", 8}};
    int n = 5;
    bad.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
    for (int i = 0; i < n; ++i) {
      bad.mul[0][i][i] = 1;
      bad.mul[i][0][i] = 1;
    }
    bad.diff.assign(n, Vec(n, 0));
    bad.diff[1] = {0, 0, 1, 0, 0};
    bad.diff[2] = {0, 0, 0, 1, 0};
    bad.diff[3] = {0, 0, 0, 0, 1};  // d^3(a) = u != 0
    bad.unit = {1, 0, 0, 0, 0};
    bad.idempotents = {bad.unit};
    // Leibniz forces most products to vanish here, so only p-nilpotency breaks.
    ValidationResult res = validate_algebra(bad);
    CHECK(has_rule(res.violations, "p-nilpotency"));
  }
  SUBCASE("bad idempotent set") {
    RawAlgebra bad = good;
    bad.idempotents = {Vec{0, 1, 0}};  // x is not idempotent
    CHECK(has_rule(validate_algebra(bad).violations, "idempotents"));
    RawAlgebra bad2 = good;
    bad2.idempotents = {};  // empty: does not sum to the unit
    CHECK(has_rule(validate_algebra(bad2).violations, "idempotents"));
  }
  SUBCASE("composite p") {
    RawAlgebra bad = good;
    bad.p = 4;
    CHECK(has_rule(validate_algebra(bad).violations, "prime"));
  }
  SUBCASE("declared radical that is not an ideal") {
    RawAlgebra bad = good;
    bad.declared_radical = std::vector<Vec>{Vec{1, 0, 0}};  // contains the unit
    auto A = validate_algebra(bad);
    REQUIRE(A.ok());  // structure is fine; the radical claim is checked separately
    PdgAlgebra alg = std::move(*A.algebra);
    RadicalResult rad = alg.radical();
    CHECK(!rad.ok());
  }
}

TEST_CASE("declared radical is used and verified when correct") {
  RawAlgebra raw = example_kx(3, 3);
  raw.declared_radical = std::vector<Vec>{Vec{0, 1, 0}, Vec{0, 0, 1}};
  auto A = make_algebra(raw);
  RadicalResult rad = A->radical();
  CHECK(rad.ok());
  CHECK(rad.declared);
  CHECK(rad.basis.size() == 2);
}

TEST_CASE("isomorphism classes of idempotents") {
  auto S = make_algebra(example_semisimple(3, 2));
  IsoClasses cls = S->iso_classes();
  CHECK(cls.members.size() == 2);  // no cross maps: the two points stay separate

  auto C = make_algebra(example_coinvariant(3, 2));
  IsoClasses ccls = C->iso_classes();
  CHECK(ccls.members.size() == 3);
}

TEST_CASE("corner bases and projections") {
  auto C = make_algebra(example_coinvariant(3, 2));
  for (int i = 0; i < C->num_idempotents(); ++i)
    for (int j = 0; j < C->num_idempotents(); ++j) {
      for (const Vec& b : C->corner_basis(i, j)) {
        CHECK(C->in_corner(i, b, j));
        CHECK(C->corner_project(i, b, j) == b);
      }
      if (i != j) CHECK(C->corner_basis(i, j).empty());  // product of local blocks
    }
  // decreasing variant is a permutation by degree
  auto inc = C->corner_basis(1, 1);
  auto dec = C->corner_basis_decreasing(1, 1);
  CHECK(inc.size() == dec.size());
  if (dec.size() > 1)
    CHECK(C->element_degree(dec.front()).value() >= C->element_degree(dec.back()).value());
}

TEST_CASE("standard chains and H-module decomposition") {
  HModule v2 = standard_module(3, 2, 4);
  std::vector<int> degs;
  for (const BasisElement& b : v2.space.basis) degs.push_back(b.degree);
  CHECK(degs == std::vector<int>({-4, -2, 0}));
  CHECK(v2.decomposition == std::vector<std::pair<int, int>>({{2, 4}}));
  CHECK(is_zero(matpow(v2.action.matrix, 3, 3)));

  HModule sum = direct_sum(standard_module(3, 0, 0), standard_module(3, 2, 4), 3);
  CHECK(sum.space.dim() == 4);
  CHECK(sum.decomposition == std::vector<std::pair<int, int>>({{0, 0}, {2, 4}}));

  // rebuilt from raw data the decomposition is recovered
  HModuleResult re = make_h_module(sum.space, sum.action, 3);
  REQUIRE(re.ok());
  CHECK(re.module->decomposition == sum.decomposition);

  // a non-homogeneous action is rejected
  GradedSpace one;
  one.basis = {{"v", 0}};
  LinearMap bad;
  bad.source = bad.target = one;
  bad.degree = 2;
  bad.matrix = Matrix(1, 1);
  bad.matrix.at(0, 0) = 1;
  HModuleResult r2 = make_h_module(one, bad, 3);
  CHECK(!r2.ok());
}

TEST_CASE("random H-modules round-trip through their decomposition") {
  std::mt19937 rng(17);
  for (int it = 0; it < 30; ++it) {
    HModule acc = standard_module(3, static_cast<int>(rng() % 3),
                                  2 * static_cast<int>(rng() % 4));
    int extra = static_cast<int>(rng() % 3);
    for (int k = 0; k < extra; ++k)
      acc = direct_sum(
          acc, standard_module(3, static_cast<int>(rng() % 3), 2 * static_cast<int>(rng() % 4)),
          3);
    HModuleResult re = make_h_module(acc.space, acc.action, 3);
    REQUIRE(re.ok());
    CHECK(re.module->decomposition == acc.decomposition);
  }
}
