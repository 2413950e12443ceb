// Cell 2-representations: quotient hom spaces, comparison with the natural
// module-category representation, ideal maximality, and the stable relation
// suite between the projective and identity 1-morphisms.
#include <doctest.h>

#include <string>
#include <vector>

#include "pdgcat/cellrep.hpp"
#include "pdgcat/examples.hpp"

using namespace pdgcat;

namespace {

bool two_eq(const TwoMorphism& a, const TwoMorphism& b) {
  return two_is_zero(two_add(a, two_scale(b, 2)));
}

}  // namespace

TEST_CASE("projective and identity cell representations over k[x]/(x^3)") {
  auto A = make_algebra(example_kx());
  CellStructure cs = compute_cells(A);

  CellRepData rep = build_cell_rep(cs, cs.find("P(1,1)"));
  CHECK(rep.ok());
  REQUIRE(rep.num_generators() == 1);
  CHECK(rep.generator_labels[0] == "P(1,1)");
  const CellRepPair& pr = rep.pair(0, 0);
  CHECK(pr.hom.space.dim() == 9);
  CHECK(static_cast<int>(pr.ideal.size()) == 6);
  CHECK(static_cast<int>(pr.quotient.size()) == 3);
  CHECK(rep.quotient_dimension(0, 0) ==
        std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {4, 1}});
  NaturalComparison cmp = compare_with_natural(rep);
  CHECK(cmp.ok());
  REQUIRE(cmp.entries.size() == 1);
  CHECK(cmp.entries[0].cell_dims == cmp.entries[0].natural_dims);
  CHECK(verify_maximal_ideal(rep).empty());

  CellRepData idr = build_cell_rep(cs, cs.find("Id(1)"));
  CHECK(idr.ok());
  CHECK(idr.identity_cell);
  CHECK(idr.pair(0, 0).hom.space.dim() == 3);
  CHECK(static_cast<int>(idr.pair(0, 0).ideal.size()) == 2);
  CHECK(static_cast<int>(idr.pair(0, 0).quotient.size()) == 1);
  CHECK(compare_with_natural(idr).ok());
  CHECK(verify_maximal_ideal(idr).empty());
}

TEST_CASE("stable relations between the projective and identity 1-morphisms") {
  // Generators: the evaluation ev: F -> Id, the central class t on Id, the
  // one-sided multiplications l, r on F, and the commutator-style s.  All are
  // closed; their compositions satisfy the expected exact and stable
  // relations over k[x]/(x^3).
  auto A = make_algebra(example_kx());
  const PdgAlgebra& alg = *A;
  const int p = alg.p();
  Vec one = alg.unit(), vx = alg.basis_vec(1), vx2 = alg.basis_vec(2);
  OneMorphism F = proj_one(A, 0, 0);
  OneMorphism I = id_one(A, 0);

  TwoMorphism ev = zero_two(F, I, 0);
  ev.entries[0][0] = CellValue{true, one, Matrix()};
  TwoMorphism t = zero_two(I, I, 4);
  t.entries[0][0] = CellValue{true, vx2, Matrix()};
  TwoMorphism l = zero_two(F, F, 4);
  l.entries[0][0] = atom_value(alg, vx2, one);
  TwoMorphism r = zero_two(F, F, 4);
  r.entries[0][0] = atom_value(alg, one, vx2);
  TwoMorphism s = zero_two(F, F, 6);
  s.entries[0][0] = value_add(atom_value(alg, vx2, vx),
                              value_scale(atom_value(alg, vx, vx2), p - 1, p), p);

  CHECK(two_is_zero(two_diff(ev)));
  CHECK(two_is_zero(two_diff(t)));
  CHECK(two_is_zero(two_diff(l)));
  CHECK(two_is_zero(two_diff(r)));
  CHECK(two_is_zero(two_diff(s)));

  TwoMorphism pl = two_vcompose(ev, l);
  TwoMorphism prr = two_vcompose(ev, r);
  TwoMorphism tp = two_vcompose(t, ev);
  CHECK(!two_is_zero(pl));
  CHECK(two_eq(pl, prr));
  CHECK(two_eq(prr, tp));

  CHECK(two_is_zero(two_vcompose(ev, s)));
  CHECK(two_is_zero(two_vcompose(s, l)));
  CHECK(two_is_zero(two_vcompose(l, s)));
  CHECK(two_is_zero(two_vcompose(r, s)));
  CHECK(two_is_zero(two_vcompose(s, r)));
  CHECK(two_is_zero(two_vcompose(l, l)));
  CHECK(two_is_zero(two_vcompose(r, r)));
  CHECK(two_is_zero(two_vcompose(s, s)));
  CHECK(two_is_zero(two_vcompose(t, t)));

  TwoMorphism lr = two_vcompose(l, r);
  TwoMorphism rl = two_vcompose(r, l);
  CHECK(!two_is_zero(lr));
  CHECK(two_eq(lr, rl));

  // l r is exact: the double differential of 2 (x tensor x), so it dies in
  // the stable category even though it is nonzero on the nose.
  TwoMorphism h = zero_two(F, F, 4);
  h.entries[0][0] = value_scale(atom_value(alg, vx, vx), 2, p);
  CHECK(two_eq(two_diff_iter(h, 2), lr));
  TwoHom end = two_hom(F, F);
  StableTwoHom st8 = stable_two_hom(end, 8);
  std::vector<Vec> bnd;
  for (const TwoMorphism& b : st8.boundary_basis) bnd.push_back(end.to_coords(b));
  CHECK(in_span(bnd, end.to_coords(lr), end.space.dim(), p));
  CHECK(st8.dimension() == 0);
}

TEST_CASE("cell representation of the semisimple two-block algebra") {
  auto A = make_algebra(example_semisimple(3, 2));
  CellStructure cs = compute_cells(A);
  CellRepData rep = build_cell_rep(cs, cs.find("P(1,2)"));
  CHECK(rep.ok());
  REQUIRE(rep.num_generators() == 2);
  CHECK(compare_with_natural(rep).ok());
  for (int g = 0; g < 2; ++g) {
    INFO("generator ", g);
    CHECK(rep.quotient_dimension(g, g) == std::vector<std::pair<int, int>>{{0, 1}});
  }
  CHECK(verify_maximal_ideal(rep).empty());
}

TEST_CASE("cell representations of the coinvariant-style algebra") {
  auto A = make_algebra(example_coinvariant(3, 2));
  CellStructure cs = compute_cells(A);

  SUBCASE("source idempotent in the middle block") {
    CellRepData rep = build_cell_rep(cs, cs.find("P(1,2)"));
    CHECK(rep.ok());
    REQUIRE(rep.num_generators() == 3);
    NaturalComparison cmp = compare_with_natural(rep);
    CHECK(cmp.ok());
    CHECK(cmp.entries.size() == 9);
    CHECK(verify_maximal_ideal(rep).empty());
  }

  SUBCASE("source idempotent in an outer block") {
    CellRepData outer = build_cell_rep(cs, cs.find("P(2,1)"));
    CHECK(outer.ok());
    REQUIRE(outer.num_generators() == 3);
    CHECK(compare_with_natural(outer).ok());
    CHECK(verify_maximal_ideal(outer).empty());
  }

  SUBCASE("the lone identity cell") {
    CellRepData idr = build_cell_rep(cs, cs.find("Id(2)"));
    CHECK(idr.ok());
    CHECK(idr.identity_cell);
    CHECK(idr.pair(0, 0).hom.space.dim() == 2);
    CHECK(static_cast<int>(idr.pair(0, 0).ideal.size()) == 1);
    CHECK(static_cast<int>(idr.pair(0, 0).quotient.size()) == 1);
    CHECK(compare_with_natural(idr).ok());
    CHECK(verify_maximal_ideal(idr).empty());
  }

  SUBCASE("building from an alias lands in the projective cell") {
    CellRepData ali = build_cell_rep(cs, cs.find("Id(1)"));
    CHECK(!ali.identity_cell);
    CHECK(ali.ok());
  }
}
