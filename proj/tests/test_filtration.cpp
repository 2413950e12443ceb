// Filtrations with split subquotients: the generator-order certificate, order
// sensitivity, subquotient idempotent checks, restricted differentials,
// endomorphism algebras, split completions, and presented modules.
#include <doctest.h>

#include <random>

#include "pdgcat/examples.hpp"
#include "pdgcat/filtration.hpp"
#include "pdgcat/homotopy.hpp"
#include "pdgcat/sampling.hpp"

using namespace pdgcat;

TEST_CASE("the squared functor object filters into three shifted copies") {
  // Over the enveloping algebra the free bimodule F squares to a three-step
  // twisted object whose canonical filtration has single-generator pieces
  // isomorphic to F, F<2>, F<4>.
  auto Ae = make_algebra(tensor_algebra(example_kx(3, 3), example_kx(3, 3)));
  TwistedObject F = make_object(Ae, {Generator{0, 0}});
  TwistedObject F2 = tensor_h(F, standard_module(3, 2, 4));
  FantasticCertificate cert = canonical_filtration(F2);
  CHECK(verify_fantastic(cert).ok);
  REQUIRE(cert.pieces.size() == 3);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(cert.pieces[i].gens.size() == 1);
    CHECK(cert.pieces[i].gens[0].idem == 0);
    CHECK(cert.pieces[i].gens[0].shift == 2 * i);
  }

  // reversing the order breaks the containment condition
  FantasticReport rep = verify_fantastic(reordered_filtration(F2, {2, 1, 0}));
  CHECK(!rep.ok);
  CHECK(rep.condition == "containment");
}

TEST_CASE("canonical filtrations verify on random valid objects") {
  std::vector<AlgebraPtr> algebras = {make_algebra(example_kx(3, 3)),
                                      make_algebra(example_semisimple(3, 2)),
                                      make_algebra(example_coinvariant(3, 2))};
  std::mt19937 rng(314);
  for (int it = 0; it < 60; ++it) {
    AlgebraPtr A = algebras[it % algebras.size()];
    TwistedObject x = random_twisted_object(A, rng, 4, 6);
    FantasticCertificate cert = canonical_filtration(x);
    FantasticReport rep = verify_fantastic(cert);
    INFO("instance ", it, ": ", rep.condition, " ", rep.witness);
    CHECK(rep.ok);
    CHECK(cert.pieces.size() == x.gens.size());
  }
}

TEST_CASE("biorthogonality violations are caught") {
  auto A = make_algebra(example_kx(3, 3));
  TwistedObject x = make_object(A, {{0, 0}, {0, 2}});
  x.alpha[0][1] = A->basis_vec(2);
  FantasticCertificate cert = canonical_filtration(x);
  REQUIRE(verify_fantastic(cert).ok);
  SUBCASE("scaled inclusion breaks u v = id") {
    cert.v[0] = mor_scale(cert.v[0], 2);
    FantasticReport rep = verify_fantastic(cert);
    CHECK(!rep.ok);
    CHECK(rep.condition == "biorthogonality");
  }
  SUBCASE("dropping a piece breaks the sum") {
    cert.u.pop_back();
    cert.v.pop_back();
    cert.pieces.pop_back();
    FantasticReport rep = verify_fantastic(cert);
    CHECK(!rep.ok);
  }
}

TEST_CASE("subquotient checks on scalars") {
  auto kx = make_algebra(example_kx(3, 3));
  CHECK(check_subquotient(*kx, kx->unit(), kx->unit()).ok());
  Vec zero(kx->dim(), 0);
  CHECK(check_subquotient(*kx, zero, kx->unit()).ok());
  SubquotientCheck xc =
      check_subquotient(*kx, kx->basis_vec(*kx->basis_index("x")), kx->unit());
  CHECK(!xc.e_idempotent);
  CHECK(!xc.ok());
}

TEST_CASE("endomorphism algebras of twisted objects validate") {
  auto kx = make_algebra(example_kx(3, 3));
  TwistedObject K = make_object(kx, {Generator{0, 0}});

  RawAlgebra endK = endomorphism_algebra(K);
  CHECK(validate_algebra(endK).ok());
  CHECK(endK.space.dim() == 3);  // End(A) = A for the free module

  TwistedObject D = tensor_h(K, standard_module(3, 2, 4));
  RawAlgebra endD = endomorphism_algebra(D);
  CHECK(validate_algebra(endD).ok());
  CHECK(endD.space.dim() == 27);

  auto Ae = make_algebra(tensor_algebra(example_kx(3, 3), example_kx(3, 3)));
  TwistedObject F = make_object(Ae, {Generator{0, 0}});
  RawAlgebra endF = endomorphism_algebra(F);
  CHECK(validate_algebra(endF).ok());
  CHECK(endF.space.dim() == 9);
  CHECK(stable_hom_table(F, F).total == 4);
}

TEST_CASE("restricted differentials are p-nilpotent on subquotient pieces") {
  auto kx = make_algebra(example_kx(3, 3));
  TwistedObject K = make_object(kx, {Generator{0, 0}});
  TwistedObject D = tensor_h(K, standard_module(3, 2, 4));
  RawAlgebra endD_raw = endomorphism_algebra(D);
  auto ED = make_algebra(endD_raw);

  // e = projection onto the first copy, w = identity
  HomComplex H = hom_complex(D, D);
  TwistedMorphism pr = zero_morphism(D, D, 0);
  pr.entries[0][0] = kx->idempotent(0);
  Vec e = H.to_coords(pr);
  Vec w = endD_raw.unit;
  SubquotientCheck chk = check_subquotient(*ED, e, w);
  REQUIRE(chk.ok());

  RestrictedComplex rc = restricted_diff_operator(*ED, e, e);
  CHECK(!rc.basis.empty());
  CHECK(is_zero(matpow(rc.op, 3, 3)));

  RestrictedComplex rcw = restricted_diff_operator(*ED, w, e);
  CHECK(is_zero(matpow(rcw.op, 3, 3)));

  // split completion at the pair validates as an algebra
  SubquotientPair pair{0, e, w};
  SplitCompletionResult sc = split_completion(*ED, {pair});
  CHECK(validate_algebra(sc.raw).ok());

  // with no pairs the completion is the original corner structure
  SplitCompletionResult sc0 = split_completion(*kx, {});
  CHECK(validate_algebra(sc0.raw).ok());
  CHECK(sc0.raw.space.dim() == kx->dim());
}

TEST_CASE("presented modules: hom spaces and validation") {
  auto kx = make_algebra(example_kx(3, 3));
  TwistedObject K = make_object(kx, {Generator{0, 0}});
  TwistedObject D = tensor_h(K, standard_module(3, 2, 4));
  TwistedObject Zero = make_object(kx, {});

  // zero presentation: hom = the full hom complex
  PresentedModule pd{zero_morphism(Zero, D, 0)};
  CHECK(presented_hom(pd, pd).space.dim() == 27);

  // identity presentation: the zero module
  PresentedModule pid{identity_morphism(D)};
  CHECK(presented_hom(pid, pid).space.dim() == 0);

  // coker(x^2): one-dimensional endomorphisms in degree 0
  TwistedObject Km4 = make_object(kx, {Generator{0, -4}});
  TwistedMorphism x2 = zero_morphism(Km4, K, 0);
  x2.entries[0][0] = kx->basis_vec(*kx->basis_index("x^2"));
  PresentedModule mq{x2};
  validate_presentation(mq);
  CHECK(presented_hom(mq, mq).dimension_at(0) == 1);

  // the non-closed x presentation is rejected
  TwistedObject Km2 = make_object(kx, {Generator{0, -2}});
  TwistedMorphism mx = zero_morphism(Km2, K, 0);
  mx.entries[0][0] = kx->basis_vec(*kx->basis_index("x"));
  CHECK_THROWS_AS(validate_presentation(PresentedModule{mx}), DimensionError);
}
