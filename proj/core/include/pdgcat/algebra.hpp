// Finite-dimensional graded algebras over F_p carrying a degree-2
// p-differential, with a distinguished complete set of orthogonal idempotents.
//
// Axioms checked by validate_algebra: associativity, two-sided unit, grading
// multiplicativity, the differential raising degree by 2 and satisfying the
// Leibniz rule with vanishing p-th power, and idempotents that are orthogonal,
// degree 0, killed by the differential, and summing to the unit.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdgcat/graded.hpp"

namespace pdgcat {

/// Unvalidated algebra data, as read from a file or constructed by hand.
struct RawAlgebra {
  int p = 3;
  GradedSpace space;
  std::vector<std::vector<Vec>> mul;  ///< mul[i][j] = coordinates of b_i * b_j.
  std::vector<Vec> diff;              ///< diff[i] = coordinates of d(b_i).
  Vec unit;
  std::vector<Vec> idempotents;
  std::optional<std::vector<Vec>> declared_radical;
  std::string name;
};

struct Violation {
  std::string rule;     ///< Short machine-friendly rule id, e.g. "associativity".
  std::string witness;  ///< Human-readable witness of the failure.
};

class PdgAlgebra;
struct ValidationResult;

ValidationResult validate_algebra(const RawAlgebra& raw);

/// Partition of the idempotents into isomorphism classes.  Two idempotents are
/// isomorphic when degree-0 elements a in e_iAe_j, b in e_jAe_i satisfy
/// ab = e_i, ba = e_j; the witnesses are retained.
struct IsoClasses {
  std::vector<int> class_of;                    ///< idempotent index -> class id
  std::vector<std::vector<int>> members;        ///< class id -> idempotent indices
  std::vector<int> representative;              ///< class id -> chosen representative
  // Conjugation witnesses onto the representative r = representative[class_of[i]]:
  // to_rep[i] in e_r A e_i and from_rep[i] in e_i A e_r with
  // from_rep[i] * to_rep[i] = e_r ... precisely: from_rep[i]*to_rep[i] = e_i? see impl.
  std::vector<Vec> alpha;  ///< alpha[i] in e_i A e_r with alpha[i]*beta[i] = e_i
  std::vector<Vec> beta;   ///< beta[i] in e_r A e_i with beta[i]*alpha[i] = e_r
};

/// Radical computation outcome with verification certificates.
struct RadicalResult {
  std::vector<Vec> basis;             ///< Basis of the radical (echelonized).
  bool declared = false;              ///< True when a user-declared radical was used.
  std::vector<Violation> violations;  ///< Non-ideal / non-nilpotent / bad-quotient witnesses.
  bool ok() const { return violations.empty(); }
};

/// Validated algebra.  Immutable; all operations are const.
class PdgAlgebra {
 public:
  int p() const { return raw_.p; }
  int dim() const { return raw_.space.dim(); }
  const GradedSpace& space() const { return raw_.space; }
  const RawAlgebra& raw() const { return raw_; }
  const std::string& name() const { return raw_.name; }
  int num_idempotents() const { return static_cast<int>(raw_.idempotents.size()); }
  const Vec& idempotent(int i) const { return raw_.idempotents[i]; }
  const Vec& unit() const { return raw_.unit; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec diff(const Vec& x) const;
  Vec diff_iter(const Vec& x, int times) const;
  Matrix diff_matrix() const;  ///< The differential as a dim x dim matrix.

  /// Degree of a homogeneous element; nullopt for 0 or mixed-degree vectors.
  std::optional<int> element_degree(const Vec& x) const;
  Vec basis_vec(int i) const;
  std::optional<int> basis_index(const std::string& label) const;
  std::string format_element(const Vec& x) const;

  /// Pierce projection e_i x e_j.
  Vec corner_project(int i, const Vec& x, int j) const;
  /// Homogeneous basis of e_i A e_j, ordered by increasing degree.
  const std::vector<Vec>& corner_basis(int i, int j) const;
  /// Same basis ordered by strictly decreasing degree (ties keep relative order).
  std::vector<Vec> corner_basis_decreasing(int i, int j) const;
  std::vector<std::pair<int, int>> corner_graded_dimension(int i, int j) const;
  bool in_corner(int i, const Vec& x, int j) const;

  IsoClasses iso_classes() const;
  RadicalResult radical() const;

  /// Homogeneous basis of the center, increasing degree.
  std::vector<Vec> center() const;

  /// Connected components of the idempotent graph (edges where e_iAe_j != 0 or
  /// e_jAe_i != 0).  Returns block id per idempotent, ids dense from 0.
  std::vector<int> blocks() const;
  int num_blocks() const;
  int block_of(int idem) const;

 private:
  friend ValidationResult validate_algebra(const RawAlgebra& raw);
  explicit PdgAlgebra(RawAlgebra raw);

  RawAlgebra raw_;
  std::vector<std::vector<std::vector<Vec>>> corners_;  // [i][j] basis of e_iAe_j
  std::vector<int> block_of_;
  int num_blocks_ = 0;
};

struct ValidationResult {
  std::optional<PdgAlgebra> algebra;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Span helper: echelonized basis of the span of products u*v, u in us, v in vs.
std::vector<Vec> span_products(const PdgAlgebra& A, const std::vector<Vec>& us,
                               const std::vector<Vec>& vs);

}  // namespace pdgcat
