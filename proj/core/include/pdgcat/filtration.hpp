// Fantastic filtrations of twisted objects, subquotient idempotents with
// their restricted differential and splitting completion, and hom spaces
// between presented (cokernel-style) modules.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdgcat/twisted.hpp"

namespace pdgcat {

/// Data of a filtration with split subquotients: projections u_i: X -> X_i
/// and inclusions v_i: X_i -> X.
struct FantasticCertificate {
  TwistedObject object;
  std::vector<TwistedObject> pieces;
  std::vector<TwistedMorphism> u;  ///< u[i]: object -> pieces[i]
  std::vector<TwistedMorphism> v;  ///< v[i]: pieces[i] -> object
};

struct FantasticReport {
  bool ok = true;
  std::string condition;  ///< first violated condition id, empty when ok
  int index = 0;          ///< 1-based piece index of the violation
  int index2 = 0;         ///< second index for the biorthogonality condition
  std::string witness;
};

/// Checks, in order: u_i v_j = delta_{ij} id, sum v_j u_j = id,
/// d(u_i) v_i = 0, and image of d(v_i) u_i inside the span of the first i-1
/// pieces (checked on the realizations).  Reports the first failure.
FantasticReport verify_fantastic(const FantasticCertificate& c);

/// The generator-order filtration of a valid twisted object: pieces are the
/// single generators with zero twist, u/v the coordinate projections and
/// inclusions.  Always verifies, by strict upper triangularity of the twist.
FantasticCertificate canonical_filtration(const TwistedObject& x);

/// Same data with the pieces listed in the given order (a permutation of
/// 0..m-1).  Orders incompatible with the twist's triangularity fail the
/// containment condition of verify_fantastic.
FantasticCertificate reordered_filtration(const TwistedObject& x, const std::vector<int>& order);

/// Subquotient idempotent pair on one declared object (idempotent index) of
/// an algebra: e is dominated by w.
struct SubquotientPair {
  int object = 0;
  Vec e, w;
};

struct SubquotientCheck {
  bool e_idempotent = false;
  bool w_idempotent = false;
  bool dominated = false;    ///< we = ew = e
  bool w_dw = false;         ///< w d(w) = 0
  bool rest_dw = false;      ///< (w-e) d(w-e) = 0
  bool ok() const { return e_idempotent && w_idempotent && dominated && w_dw && rest_dw; }
};

SubquotientCheck check_subquotient(const PdgAlgebra& E, const Vec& e, const Vec& w);

/// The restricted differential f d(f g e) e.
Vec restricted_diff(const PdgAlgebra& E, const Vec& f, const Vec& g, const Vec& e);

/// The subspace f·E·e with the matrix of the restricted differential on it.
struct RestrictedComplex {
  std::vector<Vec> basis;  ///< homogeneous basis of f·E·e inside E
  Matrix op;               ///< restricted differential in that basis
};

RestrictedComplex restricted_diff_operator(const PdgAlgebra& E, const Vec& f, const Vec& e);

/// The endomorphism complex of a twisted object as an algebra: basis = hom
/// slots, product = composition, differential = the conjugated one,
/// idempotent set = {identity}.  Passes validate_algebra for valid objects.
RawAlgebra endomorphism_algebra(const TwistedObject& x);

/// Result of splitting subquotient idempotents: a new algebra whose
/// idempotents are the original objects followed by one object per pair, with
/// hom pieces e' A e carrying the restricted differential.
struct SplitCompletionResult {
  RawAlgebra raw;
  std::vector<SubquotientPair> objects;  ///< originals (e = w = e_i) then the new pairs
  /// For each (target object, source object): indices of the basis slots of
  /// that hom piece inside raw.space.
  std::vector<std::vector<std::vector<int>>> piece_slots;
};

/// Throws DimensionError when a pair fails check_subquotient.
SplitCompletionResult split_completion(const PdgAlgebra& A, const std::vector<SubquotientPair>& pairs);

/// A module presented as the cokernel of a closed degree-0 morphism.
struct PresentedModule {
  TwistedMorphism f;
};

/// Throws DimensionError unless the presentation map is closed of degree 0.
void validate_presentation(const PresentedModule& m);

/// Hom space between presentations: pairs (phi0, phi1) with
/// phi1 ∘ f = f' ∘ phi0, modulo pairs whose phi1 factors through f'.  Carries
/// the componentwise differential.
struct PresentedHom {
  GradedSpace space;  ///< one basis slot per quotient class
  LinearMap diff;     ///< degree-2 endomorphism on the classes
  std::vector<std::pair<TwistedMorphism, TwistedMorphism>> reps;
  int dimension_at(int degree) const;
};

PresentedHom presented_hom(const PresentedModule& m, const PresentedModule& n);

}  // namespace pdgcat
