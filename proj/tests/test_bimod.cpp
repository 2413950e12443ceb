// The 2-category of projective differential bimodules: hom-space dimensions,
// horizontal/vertical composition laws, the concrete realization oracle, the
// action on module categories, and validation failures.
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pdgcat/bimod.hpp"
#include "pdgcat/examples.hpp"
#include "pdgcat/twisted.hpp"

using namespace pdgcat;

namespace {

bool value_eq(const CellValue& a, const CellValue& b) {
  if (a.to_id != b.to_id) return false;
  return a.to_id ? a.v == b.v : a.m == b.m;
}

bool two_eq(const TwoMorphism& a, const TwoMorphism& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t r = 0; r < a.entries.size(); ++r) {
    if (a.entries[r].size() != b.entries[r].size()) return false;
    for (size_t c = 0; c < a.entries[r].size(); ++c)
      if (!value_eq(a.entries[r][c], b.entries[r][c])) return false;
  }
  return true;
}

bool mor_eq(const TwistedMorphism& a, const TwistedMorphism& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t r = 0; r < a.entries.size(); ++r) {
    if (a.entries[r].size() != b.entries[r].size()) return false;
    for (size_t c = 0; c < a.entries[r].size(); ++c)
      if (a.entries[r][c] != b.entries[r][c]) return false;
  }
  return true;
}

std::vector<std::string> summand_labels_sorted(const OneMorphism& m) {
  std::vector<std::string> out;
  for (const auto& s : m.summands) out.push_back(summand_label(s));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> gen_multiset(const TwistedObject& x) {
  std::vector<std::pair<int, int>> out;
  for (const auto& g : x.gens) out.push_back({g.idem, g.shift});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sorted_degrees(const GradedSpace& s) {
  std::vector<int> out;
  for (const auto& b : s.basis) out.push_back(b.degree);
  std::sort(out.begin(), out.end());
  return out;
}

TwoMorphism random_two(const TwoHom& H, int degree, std::mt19937& rng) {
  Vec coords(H.space.dim(), 0);
  int p = H.X.A->p();
  for (int j : degree_slots(H, degree)) coords[j] = static_cast<int>(rng() % p);
  return H.from_coords(coords, degree);
}

int random_degree(const TwoHom& H, std::mt19937& rng) {
  return H.space.degree(static_cast<int>(rng() % H.space.dim()));
}

struct Fixture {
  AlgebraPtr A = make_algebra(example_kx());
  AlgebraPtr Av = make_algebra(example_kx_paper_variant());
  OneMorphism Idm = id_one(A, 0);
  OneMorphism F = proj_one(A, 0, 0);
  OneMorphism Fv = proj_one(Av, 0, 0);
  OneMorphism Idv = id_one(Av, 0);
};

}  // namespace

TEST_CASE("two-hom component spaces have the expected dimensions") {
  Fixture fx;
  int p = fx.A->p();

  TwoHom HII = two_hom(fx.Idm, fx.Idm);
  CHECK(HII.space.dim() == 3);
  CHECK(sorted_degrees(HII.space) == std::vector<int>{0, 2, 4});

  CHECK(two_hom(fx.F, fx.Idm).space.dim() == 3);

  TwoHom HIF = two_hom(fx.Idm, fx.F);
  CHECK(HIF.space.dim() == 3);
  CHECK(sorted_degrees(HIF.space) == std::vector<int>{4, 6, 8});

  TwoHom HFF = two_hom(fx.F, fx.F);
  CHECK(HFF.space.dim() == 9);

  CHECK(is_zero(matpow(HFF.diff.matrix, p, p)));
  CHECK(is_zero(matpow(HIF.diff.matrix, p, p)));
}

TEST_CASE("endomorphisms of the identity sum to the center dimension") {
  auto C = make_algebra(example_coinvariant());
  int zdim = static_cast<int>(C->center().size());
  int total = 0;
  for (int b = 0; b < C->num_blocks(); ++b)
    total += two_hom(id_one(C, b), id_one(C, b)).space.dim();
  CHECK(total == zdim);
  CHECK(zdim == 4);

  auto S = make_algebra(example_semisimple());
  int ztot = 0;
  for (int b = 0; b < S->num_blocks(); ++b)
    ztot += two_hom(id_one(S, b), id_one(S, b)).space.dim();
  CHECK(ztot == static_cast<int>(S->center().size()));
}

TEST_CASE("stable two-hom dimensions over the truncated polynomial algebra") {
  Fixture fx;
  CHECK(stable_two_hom_table(fx.Idm, fx.Idm).total == 2);
  CHECK(stable_two_hom_table(fx.F, fx.Idm).total == 2);
  CHECK(stable_two_hom_table(fx.Idm, fx.F).total == 0);
  CHECK(stable_two_hom_table(fx.F, fx.F).total == 4);
}

TEST_CASE("horizontal self-composition of the projective generator") {
  Fixture fx;
  int p = fx.A->p();
  OneMorphism FF = hcompose(fx.F, fx.F);

  CHECK(FF.size() == 3);
  std::vector<int> shifts;
  for (const auto& s : FF.summands) shifts.push_back(s.shift);
  CHECK(shifts == std::vector<int>{-4, -2, 0});
  int nonzero = 0;
  for (int r = 0; r < FF.size(); ++r)
    for (int c = 0; c < FF.size(); ++c)
      if (!value_is_zero(FF.twist[r][c])) ++nonzero;
  CHECK(nonzero == 1);
  CHECK(!value_is_zero(FF.twist[0][1]));
  CHECK(validate_one(FF).ok());
  BimoduleRealization R = realize_one(FF);
  CHECK(R.space.dim() == 27);
  CHECK(is_zero(matpow(R.operator_total.matrix, p, p)));

  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  std::vector<int> vshifts;
  for (const auto& s : FFv.summands) vshifts.push_back(s.shift);
  CHECK(vshifts == std::vector<int>{0, 2, 4});
  CHECK(!value_is_zero(FFv.twist[0][1]));
  CHECK(!value_is_zero(FFv.twist[1][2]));
  CHECK(value_is_zero(FFv.twist[0][2]));
  CHECK(validate_one(FFv).ok());
  BimoduleRealization Rv = realize_one(FFv);
  CHECK(is_zero(matpow(Rv.operator_total.matrix, p, p)));
}

TEST_CASE("identity one-morphisms are units for horizontal composition") {
  Fixture fx;
  OneMorphism FF = hcompose(fx.F, fx.F);

  OneMorphism L = hcompose(id_one(fx.A, 0, 5), FF);
  REQUIRE(L.size() == FF.size());
  for (int i = 0; i < L.size(); ++i)
    CHECK(L.summands[i].shift == FF.summands[i].shift + 5);
  for (int r = 0; r < L.size(); ++r)
    for (int c = 0; c < L.size(); ++c) CHECK(value_eq(L.twist[r][c], FF.twist[r][c]));

  OneMorphism Rr = hcompose(FF, id_one(fx.A, 0, -3));
  REQUIRE(Rr.size() == FF.size());
  for (int i = 0; i < Rr.size(); ++i)
    CHECK(Rr.summands[i].shift == FF.summands[i].shift - 3);
  for (int r = 0; r < Rr.size(); ++r)
    for (int c = 0; c < Rr.size(); ++c) CHECK(value_eq(Rr.twist[r][c], FF.twist[r][c]));
}

TEST_CASE("horizontal composition of identity two-morphisms is the identity") {
  Fixture fx;
  OneMorphism FF = hcompose(fx.F, fx.F);
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);

  CHECK(two_eq(two_hcompose(identity_two(fx.F), identity_two(fx.F)), identity_two(FF)));
  CHECK(two_eq(two_hcompose(identity_two(FFv), identity_two(fx.Fv)),
               identity_two(hcompose(FFv, fx.Fv))));
  CHECK(two_eq(two_hcompose(identity_two(fx.Idv), identity_two(FFv)),
               identity_two(hcompose(fx.Idv, FFv))));
}

TEST_CASE("vertical units and coordinate round trips") {
  Fixture fx;
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  std::mt19937 rng(11);

  TwoHom H = two_hom(FFv, fx.Fv);
  for (int it = 0; it < 4; ++it) {
    int d = random_degree(H, rng);
    TwoMorphism f = random_two(H, d, rng);
    CHECK(two_eq(two_vcompose(identity_two(fx.Fv), f), f));
    CHECK(two_eq(two_vcompose(f, identity_two(FFv)), f));
  }

  std::vector<TwoHom> spaces = {two_hom(fx.F, fx.F), two_hom(fx.Idm, fx.F),
                                two_hom(FFv, FFv)};
  for (const auto& HH : spaces) {
    for (int it = 0; it < 4; ++it) {
      int d = random_degree(HH, rng);
      TwoMorphism f = random_two(HH, d, rng);
      Vec back = HH.to_coords(f);
      CHECK(two_eq(HH.from_coords(back, d), f));
    }
  }
}

TEST_CASE("realized differential equals the conjugated operator") {
  // The coordinate oracle: for every 2-morphism phi between realized
  // bimodules, R(d phi) = D_target R(phi) - R(phi) D_source.
  Fixture fx;
  int p = fx.A->p();
  OneMorphism FF = hcompose(fx.F, fx.F);
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  std::mt19937 rng(23);

  std::vector<std::pair<OneMorphism, OneMorphism>> pairs = {
      {fx.Idm, fx.Idm}, {fx.F, fx.Idm}, {fx.Idm, fx.F}, {fx.F, fx.F},
      {FF, fx.F},       {FFv, FFv},     {fx.Idv, FFv}};
  for (const auto& pr : pairs) {
    TwoHom H = two_hom(pr.first, pr.second);
    if (H.space.dim() == 0) continue;
    BimoduleRealization rx = realize_one(pr.first);
    BimoduleRealization ry = realize_one(pr.second);
    for (int it = 0; it < 6; ++it) {
      int d = random_degree(H, rng);
      TwoMorphism f = random_two(H, d, rng);
      LinearMap Rf = realize_two(f, rx, ry);
      LinearMap Rdf = realize_two(two_diff(f), rx, ry);
      Matrix want = matadd(matmul(ry.operator_total.matrix, Rf.matrix, p),
                           matscale(matmul(Rf.matrix, rx.operator_total.matrix, p), p - 1, p),
                           p);
      CHECK(Rdf.matrix == want);
    }
  }
}

TEST_CASE("the differential satisfies Leibniz over horizontal composition") {
  Fixture fx;
  std::mt19937 rng(101);

  TwoHom HT = two_hom(fx.F, fx.F);
  for (int it = 0; it < 6; ++it) {
    TwoMorphism g = random_two(HT, random_degree(HT, rng), rng);
    TwoMorphism t = random_two(HT, random_degree(HT, rng), rng);
    TwoMorphism lhs = two_diff(two_hcompose(g, t));
    TwoMorphism rhs = two_add(two_hcompose(two_diff(g), t), two_hcompose(g, two_diff(t)));
    CHECK(two_eq(lhs, rhs));
  }

  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  TwoHom HGv = two_hom(FFv, FFv);
  TwoHom HTv = two_hom(fx.Fv, fx.Fv);
  for (int it = 0; it < 6; ++it) {
    TwoMorphism g = random_two(HGv, random_degree(HGv, rng), rng);
    TwoMorphism t = random_two(HTv, random_degree(HTv, rng), rng);
    TwoMorphism lhs = two_diff(two_hcompose(g, t));
    TwoMorphism rhs = two_add(two_hcompose(two_diff(g), t), two_hcompose(g, two_diff(t)));
    CHECK(two_eq(lhs, rhs));
  }
}

TEST_CASE("interchange of horizontal and vertical composition") {
  Fixture fx;
  std::mt19937 rng(303);

  TwoHom H = two_hom(fx.F, fx.F);
  for (int it = 0; it < 6; ++it) {
    TwoMorphism g1 = random_two(H, random_degree(H, rng), rng);
    TwoMorphism g2 = random_two(H, random_degree(H, rng), rng);
    TwoMorphism t1 = random_two(H, random_degree(H, rng), rng);
    TwoMorphism t2 = random_two(H, random_degree(H, rng), rng);
    TwoMorphism lhs = two_vcompose(two_hcompose(g2, t2), two_hcompose(g1, t1));
    TwoMorphism rhs = two_hcompose(two_vcompose(g2, g1), two_vcompose(t2, t1));
    CHECK(two_eq(lhs, rhs));
  }

  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  TwoHom Hv = two_hom(FFv, FFv);
  TwoHom Hv2 = two_hom(fx.Fv, fx.Fv);
  for (int it = 0; it < 6; ++it) {
    TwoMorphism g1 = random_two(Hv, random_degree(Hv, rng), rng);
    TwoMorphism g2 = random_two(Hv, random_degree(Hv, rng), rng);
    TwoMorphism t1 = random_two(Hv2, random_degree(Hv2, rng), rng);
    TwoMorphism t2 = random_two(Hv2, random_degree(Hv2, rng), rng);
    TwoMorphism lhs = two_vcompose(two_hcompose(g2, t2), two_hcompose(g1, t1));
    TwoMorphism rhs = two_hcompose(two_vcompose(g2, g1), two_vcompose(t2, t1));
    CHECK(two_eq(lhs, rhs));
  }
}

TEST_CASE("horizontal composition is associative up to isomorphism") {
  Fixture fx;
  OneMorphism L = hcompose(hcompose(fx.Fv, fx.Fv), fx.Fv);
  OneMorphism R = hcompose(fx.Fv, hcompose(fx.Fv, fx.Fv));
  CHECK(summand_labels_sorted(L) == summand_labels_sorted(R));
  CHECK(validate_one(L).ok());
  CHECK(validate_one(R).ok());
  CHECK(sorted_degrees(realize_one(L).space) == sorted_degrees(realize_one(R).space));

  TwistedObject X0 = make_object(fx.Av, {Generator{0, 0}});
  TwistedObject LX = apply_functor(L, X0);
  TwistedObject RX = apply_functor(R, X0);
  CHECK(gen_multiset(LX) == gen_multiset(RX));
  IsoResult iso = pdg_iso(LX, RX, 5, 128);
  CHECK(iso.status == IsoResult::Status::Isomorphic);
}

TEST_CASE("one-morphisms act functorially on module categories") {
  Fixture fx;
  OneMorphism FF = hcompose(fx.F, fx.F);
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  TwistedObject X0v = make_object(fx.Av, {Generator{0, 0}});

  // a twisted module with two generators linked by x^2
  std::vector<std::vector<Vec>> al(2, std::vector<Vec>(2, Vec(fx.A->dim(), 0)));
  Vec x2(fx.A->dim(), 0);
  x2[2] = 1;
  al[0][1] = x2;
  TwistedObject X1 = make_object(fx.A, {Generator{0, 0}, Generator{0, -2}}, al);
  REQUIRE(validate_twisted(X1).ok());

  TwistedObject U1 = apply_functor(FF, X1);
  TwistedObject U2 = apply_functor(fx.F, apply_functor(fx.F, X1));
  CHECK(validate_twisted(U1).ok());
  CHECK(validate_twisted(U2).ok());
  CHECK(gen_multiset(U1) == gen_multiset(U2));
  CHECK(pdg_iso(U1, U2, 9, 128).status == IsoResult::Status::Isomorphic);

  TwistedObject V1 = apply_functor(FFv, X0v);
  TwistedObject V2 = apply_functor(fx.Fv, apply_functor(fx.Fv, X0v));
  CHECK(validate_twisted(V1).ok());
  CHECK(validate_twisted(V2).ok());
  CHECK(gen_multiset(V1) == gen_multiset(V2));
  CHECK(pdg_iso(V1, V2, 9, 128).status == IsoResult::Status::Isomorphic);
  std::vector<int> vshifts;
  for (const auto& g : V1.gens) vshifts.push_back(g.shift);
  std::sort(vshifts.begin(), vshifts.end());
  CHECK(vshifts == std::vector<int>{0, 2, 2, 4, 4, 4, 6, 6, 8});

  // the shifted identity acts as the shift
  TwistedObject S = apply_functor(id_one(fx.A, 0, 7), X1);
  REQUIRE(S.size() == 2);
  CHECK(S.gens[0].shift == 7);
  CHECK(S.gens[1].shift == 5);
  CHECK(S.alpha == X1.alpha);
}

TEST_CASE("functor transport respects differentials and composition") {
  Fixture fx;
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  TwistedObject X0v = make_object(fx.Av, {Generator{0, 0}});

  TwistedMorphism g = zero_morphism(X0v, X0v, -2);
  Vec xv(fx.Av->dim(), 0);
  xv[1] = 1;
  g.entries[0][0] = xv;
  REQUIRE(validate_morphism(g).ok());

  TwistedMorphism Fg = apply_functor_mor(FFv, g);
  CHECK(validate_morphism(Fg).ok());
  CHECK(mor_eq(apply_functor_mor(FFv, mor_diff(g)), mor_diff(Fg)));

  TwistedMorphism g2 = mor_compose(g, g);
  CHECK(mor_eq(apply_functor_mor(FFv, g2), mor_compose(Fg, Fg)));
}

TEST_CASE("two-morphisms give natural transformations on modules") {
  Fixture fx;
  OneMorphism FFv = hcompose(fx.Fv, fx.Fv);
  TwistedObject X0v = make_object(fx.Av, {Generator{0, 0}});
  std::mt19937 rng(77);

  TwoHom H = two_hom(FFv, fx.Fv);
  TwistedMorphism g = zero_morphism(X0v, X0v, -2);
  Vec xv(fx.Av->dim(), 0);
  xv[1] = 1;
  g.entries[0][0] = xv;

  for (int it = 0; it < 6; ++it) {
    int d = random_degree(H, rng);
    TwoMorphism f = random_two(H, d, rng);
    TwistedMorphism fX = apply_transformation(f, X0v);
    CHECK(validate_morphism(fX).ok());
    CHECK(mor_eq(apply_transformation(two_diff(f), X0v), mor_diff(fX)));
    TwistedMorphism lhs = mor_compose(apply_transformation(f, X0v), apply_functor_mor(FFv, g));
    TwistedMorphism rhs = mor_compose(apply_functor_mor(fx.Fv, g), apply_transformation(f, X0v));
    CHECK(mor_eq(lhs, rhs));
  }
}

TEST_CASE("invalid one-morphisms are rejected with the right rule") {
  Fixture fx;
  int p = fx.A->p();
  Vec one(fx.A->dim(), 0), xv(fx.A->dim(), 0);
  one[0] = 1;
  xv[1] = 1;

  SUBCASE("non-homogeneous twist entry") {
    OneMorphism bad = make_one(fx.A, 0, 0, {proj_summand(0, 0, 0), proj_summand(0, 0, 0)});
    bad.twist[0][1] = atom_value(*fx.A, xv, xv);
    TwistedValidation v = validate_one(bad);
    CHECK(!v.ok());
    bool homog = false;
    for (const auto& viol : v.violations) homog = homog || viol.rule == "homogeneity";
    CHECK(homog);
  }

  SUBCASE("failing iterated differential, confirmed by the realization") {
    OneMorphism bad3 = make_one(
        fx.A, 0, 0, {proj_summand(0, 0, 0), proj_summand(0, 0, 0), proj_summand(0, 0, 0)});
    bad3.twist[0][1] = atom_value(*fx.A, xv, one);
    bad3.twist[1][2] = atom_value(*fx.A, one, xv);
    TwistedValidation v3 = validate_one(bad3);
    CHECK(!v3.ok());
    bool iter = false;
    for (const auto& viol : v3.violations) iter = iter || viol.rule == "iterated-differential";
    CHECK(iter);
    BimoduleRealization R = realize_one(bad3);
    CHECK(!is_zero(matpow(R.operator_total.matrix, p, p)));
  }

  SUBCASE("below-diagonal twist") {
    OneMorphism low = make_one(fx.A, 0, 0, {proj_summand(0, 0, 0), proj_summand(0, 0, -2)});
    low.twist[1][0] = atom_value(*fx.A, one, one);
    TwistedValidation vl = validate_one(low);
    CHECK(!vl.ok());
    bool tri = false;
    for (const auto& viol : vl.violations) tri = tri || viol.rule == "triangularity";
    CHECK(tri);
  }
}

TEST_CASE("composition across several blocks of the coinvariant algebra") {
  auto C = make_algebra(example_coinvariant());
  OneMorphism P01 = proj_one(C, 0, 1);
  OneMorphism P12 = proj_one(C, 1, 2);
  OneMorphism comp = hcompose(P01, P12);
  CHECK(comp.size() == static_cast<int>(C->corner_basis(1, 1).size()));
  CHECK(validate_one(comp).ok());

  TwistedObject M2 = make_object(C, {Generator{2, 0}});
  TwistedObject W1 = apply_functor(comp, M2);
  TwistedObject W2 = apply_functor(P01, apply_functor(P12, M2));
  CHECK(gen_multiset(W1) == gen_multiset(W2));
  CHECK(pdg_iso(W1, W2, 3, 64).status == IsoResult::Status::Isomorphic);
}
