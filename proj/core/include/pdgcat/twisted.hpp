// Twisted objects over a validated algebra: formal direct sums of shifted
// idempotent generators equipped with a strictly upper-triangular degree-2
// twist whose p-fold iterated differential vanishes.  Morphisms are matrices
// with entries in the corner spaces e_target A e_source; their differential is
// the entrywise differential corrected by twist conjugation.
//
// A concrete realization functor is provided: generator (e, s) becomes the row
// space eA with degrees lowered by s, twists and morphisms act by left
// multiplication.  It is used as the independent validity oracle
// ((entrywise d + twist)^p = 0) and for isomorphism certification.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdgcat/algebra.hpp"
#include "pdgcat/hmodule.hpp"

namespace pdgcat {

using AlgebraPtr = std::shared_ptr<const PdgAlgebra>;

struct Generator {
  int idem = 0;  ///< idempotent index (0-based)
  int shift = 0;
  bool operator==(const Generator&) const = default;
};

struct TwistedObject {
  AlgebraPtr A;
  std::vector<Generator> gens;
  std::vector<std::vector<Vec>> alpha;  ///< alpha[row][col] in e_row A e_col

  int size() const { return static_cast<int>(gens.size()); }
};

/// Object with the given generators and zero twist.
TwistedObject make_object(AlgebraPtr A, std::vector<Generator> gens);
TwistedObject make_object(AlgebraPtr A, std::vector<Generator> gens,
                          std::vector<std::vector<Vec>> alpha);
TwistedObject shift_object(const TwistedObject& x, int n);
TwistedObject direct_sum(const TwistedObject& x, const TwistedObject& y);

struct TwistedValidation {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural checks (shape, triangularity, corners, homogeneity) plus the
/// iterated-differential condition c_p = 0 where c_1 = alpha and
/// c_{m+1} = d(c_m) + alpha*c_m.
TwistedValidation validate_twisted(const TwistedObject& x);

struct TwistedMorphism {
  TwistedObject source;
  TwistedObject target;
  int degree = 0;
  std::vector<std::vector<Vec>> entries;  ///< entries[n][m] in e_{target n} A e_{source m}
};

TwistedMorphism zero_morphism(const TwistedObject& x, const TwistedObject& y, int degree);
TwistedMorphism identity_morphism(const TwistedObject& x);
TwistedValidation validate_morphism(const TwistedMorphism& f);

TwistedMorphism mor_add(const TwistedMorphism& a, const TwistedMorphism& b);
TwistedMorphism mor_scale(const TwistedMorphism& a, int c);
TwistedMorphism mor_compose(const TwistedMorphism& g, const TwistedMorphism& f);
/// d(f) = entrywise d + beta*f - f*alpha.
TwistedMorphism mor_diff(const TwistedMorphism& f);
TwistedMorphism mor_diff_iter(const TwistedMorphism& f, int times);
bool mor_is_zero(const TwistedMorphism& f);

/// Homogeneous basis of the row space eA for an idempotent index.
std::vector<Vec> row_space_basis(const PdgAlgebra& A, int idem);

/// Concrete realization of an object: graded space plus the total operator
/// (entrywise differential + twist), a degree-2 map whose p-th power vanishes
/// exactly when the object is valid.
struct Realization {
  GradedSpace space;
  LinearMap operator_total;                  ///< entrywise d + twist action
  std::vector<std::pair<int, int>> index;    ///< basis slot -> (generator, row-space basis idx)
  std::vector<std::vector<Vec>> gen_basis;   ///< per generator: basis of its row space
};

Realization realize(const TwistedObject& x);
/// Matrix of a morphism under the realizations of its source and target.
LinearMap realize_morphism(const TwistedMorphism& f, const Realization& rx, const Realization& ry);

/// Express a vector of the realized space in realization coordinates.
Vec realization_coords(const Realization& r, int gen, const Vec& v, int p);

/// Tensor with a finite H-module: generators are replicated along a
/// decreasing-degree basis of the module (copy shift = generator shift minus
/// basis degree), the twist acquires the module's action as connecting blocks.
TwistedObject tensor_h(const TwistedObject& x, const HModule& v);

/// The morphism space Hom(X, Y) as a graded space with its degree-2
/// differential; basis elements are single-corner-entry morphisms.
struct HomComplex {
  TwistedObject X, Y;
  GradedSpace space;       ///< basis element = one corner basis vector at one (n, m)
  LinearMap diff;          ///< degree-2 endomorphism
  struct BasisSlot {
    int n, m;   ///< target and source generator indices
    Vec value;  ///< corner element of e_{t_n} A e_{s_m}
  };
  std::vector<BasisSlot> slots;

  TwistedMorphism from_coords(const Vec& coords, int degree) const;
  Vec to_coords(const TwistedMorphism& f) const;
};

HomComplex hom_complex(const TwistedObject& x, const TwistedObject& y);

/// Indices of the slots of one degree.
std::vector<int> degree_slots(const HomComplex& H, int degree);

/// Matrix of h -> h ∘ g from Hom(B, C) coordinates to Hom(A, C) coordinates,
/// for a fixed g: A -> B.
Matrix precompose_matrix(const HomComplex& HBC, const HomComplex& HAC, const TwistedMorphism& g);

/// Matrix of h -> g ∘ h from Hom(A, B) coordinates to Hom(A, C) coordinates,
/// for a fixed g: B -> C.
Matrix postcompose_matrix(const HomComplex& HAB, const HomComplex& HAC, const TwistedMorphism& g);

/// The single-slot basis morphism of a hom complex.
TwistedMorphism slot_morphism(const HomComplex& H, int slot);

/// Basis of the space of degree-d morphisms annihilated by the differential.
std::vector<TwistedMorphism> closed_morphisms(const HomComplex& H, int degree);

struct IsoResult {
  enum class Status { Isomorphic, NotIsomorphic, Unknown };
  Status status = Status::Unknown;
  std::string reason;
  std::optional<TwistedMorphism> iso;      ///< degree-0 closed isomorphism
  std::optional<TwistedMorphism> inverse;  ///< its two-sided inverse
};

/// Decide isomorphism in the twisted category.  "NotIsomorphic" is returned
/// only on a generator-multiset obstruction (idempotent iso class, shift);
/// otherwise a closed degree-0 candidate is sought among echelon basis
/// elements of the closed-morphism space and seeded random combinations.
IsoResult pdg_iso(const TwistedObject& x, const TwistedObject& y, unsigned seed = 1,
                  int samples = 64);

}  // namespace pdgcat
