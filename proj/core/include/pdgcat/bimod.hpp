// The 2-category of projective differential bimodules over a validated
// algebra.  Objects are the blocks of the algebra; 1-morphisms are formal
// direct sums of shifted identity summands Id(i)<n> and projective summands
// P(s,t)<n>, optionally twisted by a strictly upper-triangular matrix of
// degree-2 2-morphism components; 2-morphisms are matrices of components,
// each stored as its value on the canonical bimodule generator.
//
// Realization conventions (all corners written e_i A e_j = e_i * A * e_j):
//   - P(s,t) realizes as the bimodule  A e_t  (tensor)  e_s A,  where t lies
//     in the source block and s in the target block; Id(i) realizes as the
//     block subalgebra.
//   - A component P(s,t) -> P(u,v) is determined by its value on e_t (x) e_s,
//     an element of  A e_v (x) e_u A;  pure atoms (y in e_t A e_v,
//     x in e_u A e_s) act by a (x) b  |->  a y (x) x b.
//   - A component P(s,t) -> Id is evaluation against c in e_t A e_s
//     (a (x) b |-> a c b); a component Id -> P(u,v) is a centralizer element
//     z with a z = z a for all a; Id -> Id components are central elements.
//   - Horizontal composition  hcompose(M, N) = "M after N"  expands
//     P(s,t) o P(u,v) into one P(s,v) summand per basis element of the middle
//     corner e_u A e_t, listed in decreasing degree; composite pairs (m, n)
//     are ordered lexicographically and the middle differential contributes a
//     connecting twist, exactly as in the module-category tensor expansion.
//
// The independent oracle: realize_one / realize_two produce concrete graded
// matrices, and d(phi) must equal  D_target * R(phi) - R(phi) * D_source.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdgcat/twisted.hpp"

namespace pdgcat {

struct Summand {
  enum class Kind { Id, Proj };
  Kind kind = Kind::Id;
  int object = 0;  ///< Id: block index.
  int s = 0;       ///< Proj: idempotent in the target block.
  int t = 0;       ///< Proj: idempotent in the source block.
  int shift = 0;
  bool operator==(const Summand&) const = default;
};

Summand id_summand(int object, int shift = 0);
Summand proj_summand(int s, int t, int shift = 0);
std::string summand_label(const Summand& s);

/// Value of a 2-morphism component on the source generator.  Components into
/// a Proj summand hold tensor coordinates (m.at(a, b) = coefficient of
/// b_a (x) b_b); components into an Id summand hold algebra coordinates.
struct CellValue {
  bool to_id = false;
  Vec v;     ///< used when to_id
  Matrix m;  ///< used when !to_id
};

CellValue zero_value(const PdgAlgebra& A, bool to_id);
bool value_is_zero(const CellValue& x);
CellValue value_add(const CellValue& a, const CellValue& b, int p);
CellValue value_scale(const CellValue& a, int c, int p);
/// Pure tensor atom y (x) x as a Proj-target value.
CellValue atom_value(const PdgAlgebra& A, const Vec& y, const Vec& x);

struct OneMorphism {
  AlgebraPtr A;
  int source = 0;  ///< source block
  int target = 0;  ///< target block
  std::vector<Summand> summands;
  /// Strictly upper-triangular degree-2 components; twist[r][c] maps summand
  /// c to summand r.
  std::vector<std::vector<CellValue>> twist;

  int size() const { return static_cast<int>(summands.size()); }
};

OneMorphism make_one(AlgebraPtr A, int source, int target, std::vector<Summand> summands);
OneMorphism make_one(AlgebraPtr A, int source, int target, std::vector<Summand> summands,
                     std::vector<std::vector<CellValue>> twist);
OneMorphism id_one(AlgebraPtr A, int object, int shift = 0);
OneMorphism proj_one(AlgebraPtr A, int s, int t, int shift = 0);
OneMorphism shift_one(const OneMorphism& m, int n);
OneMorphism direct_sum_one(const OneMorphism& a, const OneMorphism& b);

/// Shape, block, corner-membership, homogeneity and triangularity checks plus
/// the iterated-differential condition c_p = 0 in the 2-morphism differential.
TwistedValidation validate_one(const OneMorphism& m);

struct TwoMorphism {
  OneMorphism source;
  OneMorphism target;
  int degree = 0;
  std::vector<std::vector<CellValue>> entries;  ///< entries[n][m]: source summand m -> target summand n
};

TwoMorphism zero_two(const OneMorphism& from, const OneMorphism& to, int degree);
TwoMorphism identity_two(const OneMorphism& m);
TwoMorphism two_add(const TwoMorphism& a, const TwoMorphism& b);
TwoMorphism two_scale(const TwoMorphism& a, int c);
bool two_is_zero(const TwoMorphism& f);
/// Vertical composition, g after f.
TwoMorphism two_vcompose(const TwoMorphism& g, const TwoMorphism& f);
/// d(f) = entrywise differential + twist(target) o f - f o twist(source).
TwoMorphism two_diff(const TwoMorphism& f);
TwoMorphism two_diff_iter(const TwoMorphism& f, int times);

/// Horizontal composition of 1-morphisms, m after n.
OneMorphism hcompose(const OneMorphism& m, const OneMorphism& n);
/// Horizontal composition of 2-morphisms over hcompose of their boundaries.
TwoMorphism two_hcompose(const TwoMorphism& gamma, const TwoMorphism& tau);

/// The full 2-morphism space between two 1-morphisms as a graded space with
/// its degree-2 differential; basis elements are single components.
struct TwoHom {
  OneMorphism X, Y;
  GradedSpace space;
  LinearMap diff;
  struct BasisSlot {
    int n = 0, m = 0;  ///< target and source summand indices
    CellValue value;
  };
  std::vector<BasisSlot> slots;

  TwoMorphism from_coords(const Vec& coords, int degree) const;
  Vec to_coords(const TwoMorphism& f) const;
};

TwoHom two_hom(const OneMorphism& x, const OneMorphism& y);
std::vector<int> degree_slots(const TwoHom& H, int degree);
TwoMorphism slot_two(const TwoHom& H, int slot);
/// Coordinate basis of closed 2-morphisms in one degree.
std::vector<Vec> closed_twos(const TwoHom& H, int degree);

/// Stable 2-morphism space in one degree: closed components modulo the image
/// of the (p-1)-fold differential.
struct StableTwoHom {
  int degree = 0;
  std::vector<TwoMorphism> cycle_basis;
  std::vector<TwoMorphism> boundary_basis;
  std::vector<TwoMorphism> representatives;
  int dimension() const { return static_cast<int>(representatives.size()); }
};

StableTwoHom stable_two_hom(const TwoHom& H, int degree);

struct StableTwoHomTable {
  std::vector<StableTwoHom> by_degree;
  int total = 0;
};

StableTwoHomTable stable_two_hom_table(const OneMorphism& x, const OneMorphism& y);

/// Concrete graded realization of a 1-morphism: every Proj summand contributes
/// the coordinate vectors of A e_t (x) e_s A inside A (x) A, every Id summand
/// the block subalgebra inside A; the total operator is the summandwise
/// differential plus the twist action.
struct BimoduleRealization {
  GradedSpace space;
  LinearMap operator_total;
  std::vector<std::pair<int, int>> index;     ///< slot -> (summand, local basis idx)
  std::vector<std::vector<Vec>> piece_basis;  ///< per summand: coordinate vectors
};

BimoduleRealization realize_one(const OneMorphism& m);
LinearMap realize_two(const TwoMorphism& f, const BimoduleRealization& rx,
                      const BimoduleRealization& ry);

/// Action on the module category.  A 1-morphism with source block i and
/// target block j sends twisted objects with generators in block i to twisted
/// objects with generators in block j: P(s,t)<n> maps a generator (w, m) to
/// one copy of (s, n + m - deg b) per basis element b of e_w A e_t in
/// decreasing degree, Id(i)<n> shifts by n; twists transport blockwise.
TwistedObject apply_functor(const OneMorphism& m, const TwistedObject& x);
/// Functoriality on module morphisms.
TwistedMorphism apply_functor_mor(const OneMorphism& m, const TwistedMorphism& g);
/// Component of a 2-morphism at a module object.
TwistedMorphism apply_transformation(const TwoMorphism& f, const TwistedObject& x);

}  // namespace pdgcat
