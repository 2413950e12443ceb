// Stable-category machinery on twisted objects: null-homotopy testing (two
// equivalent criteria), stable hom spaces (cycles modulo images of the
// (p-1)-fold differential), cones with their four structure maps and the
// pushout mediation property, and the shift functor.
#pragma once

#include <optional>
#include <vector>

#include "pdgcat/twisted.hpp"

namespace pdgcat {

/// The contractible cover X ⊗ H together with the closed degree-0 inclusion
/// of X as its first block.
struct ContractibleCover {
  TwistedObject xh;
  TwistedMorphism iota;  ///< X -> XH, identity entries into the first block
};

ContractibleCover contractible_cover(const TwistedObject& x);

/// Shift functor: tensor with V_{p-2}<2p-2>, the block list X<2> ⊕ ... ⊕ X<2p-2>.
TwistedObject sigma(const TwistedObject& x);

struct NullHomotopyResult {
  bool null_homotopic = false;
  std::optional<TwistedMorphism> witness;  ///< g with diff^{p-1}(g) = f, degree 2-2p
};

/// Criterion A: f = diff^{p-1}(g) solvable.  Requires f of degree 0 with
/// diff(f) = 0; otherwise throws DimensionError.
NullHomotopyResult is_null_homotopic(const TwistedMorphism& f);

/// Criterion B: f factors through the contractible cover, i.e. there is a
/// closed degree-0 h: XH -> Y with h ∘ iota = f.  Same precondition.
NullHomotopyResult factors_through_cover(const TwistedMorphism& f);

struct StableHom {
  int degree = 0;
  std::vector<TwistedMorphism> cycle_basis;
  std::vector<TwistedMorphism> boundary_basis;
  std::vector<TwistedMorphism> representatives;  ///< basis of cycles/boundaries
  int dimension() const { return static_cast<int>(representatives.size()); }
};

/// Stable hom space in a single degree, computed from a prebuilt hom complex.
StableHom stable_hom(const HomComplex& H, int degree);
StableHom stable_hom(const TwistedObject& x, const TwistedObject& y, int degree);

/// All degrees where the hom space is nonzero, each with its stable hom; the
/// shift-collated total is the sum of the per-degree dimensions.
struct StableHomTable {
  std::vector<StableHom> by_degree;
  int total = 0;
};

StableHomTable stable_hom_table(const TwistedObject& x, const TwistedObject& y);

/// Cone of a closed degree-0 morphism f: X -> Y with its structure maps:
/// blocks Y ⊕ X<2> ⊕ ... ⊕ X<2p-2>; v: Y -> C and u: XH -> C satisfy
/// u ∘ iota = v ∘ f; r: C -> sigma X and q: XH -> sigma X are the projections
/// killing the first block.  All four maps are closed of degree 0.
struct ConeData {
  TwistedObject cone;
  TwistedMorphism v;  ///< Y -> C
  TwistedMorphism u;  ///< XH -> C
  TwistedMorphism r;  ///< C -> sigma X
  TwistedMorphism q;  ///< XH -> sigma X
  ContractibleCover cover;
};

ConeData cone(const TwistedMorphism& f);

struct MediationResult {
  std::optional<TwistedMorphism> rho;  ///< C -> T with rho∘u = gamma, rho∘v = tau
  bool unique = false;                 ///< kernel of the constraint system is zero
};

/// Pushout mediation: given gamma: XH -> T and tau: Y -> T of equal degree,
/// solve for rho with rho∘u = gamma and rho∘v = tau.
MediationResult mediate(const ConeData& c, const TwistedMorphism& gamma,
                        const TwistedMorphism& tau);

}  // namespace pdgcat
