// Cell 2-representations.  A left cell of the bimodule 2-category spans a
// 2-representation whose objects are generated by the cell members (the
// projectives P(., t) with a fixed source idempotent t, or a single identity
// 1-morphism).  Its simple transitive quotient divides every hom space by the
// ideal of 2-morphisms whose retained factor lies in the radical: for
// projective cells the span of atoms y (x) x with y in rad(e_t A e_t), for
// identity cells the radical of the block center.
//
// build_cell_rep records the hom spaces, the ideal, quotient representatives,
// and a list of violations from the verification pass (ideal stability under
// the differential, vertical composition and a sampled horizontal action, and
// survival of the identity 2-morphisms).  compare_with_natural matches the
// quotient against the hom complexes between the corresponding one-generator
// twisted modules, degree by degree and differential by differential.
#pragma once

#include <string>
#include <vector>

#include "pdgcat/cells.hpp"

namespace pdgcat {

struct CellRepPair {
  int from = 0, to = 0;  ///< generator indices
  TwoHom hom;
  std::vector<Vec> ideal;     ///< coordinate basis of the ideal subspace
  std::vector<Vec> quotient;  ///< coordinate representatives of a complement
};

struct CellRepData {
  AlgebraPtr A;
  bool identity_cell = false;
  int cell_block = 0;   ///< block carrying the cell (identity cells)
  int cell_idem = -1;   ///< fixed source idempotent t (projective cells)
  std::string cell_label;
  std::vector<OneMorphism> generators;
  std::vector<std::string> generator_labels;
  std::vector<CellRepPair> pairs;  ///< indexed by to * generators.size() + from
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  int num_generators() const { return static_cast<int>(generators.size()); }
  const CellRepPair& pair(int from, int to) const;
  /// Graded dimension of the quotient hom space between two generators.
  std::vector<std::pair<int, int>> quotient_dimension(int from, int to) const;
};

/// Builds the cell 2-representation attached to the left cell containing the
/// given indecomposable.  Requires a verified radical with d(rad) inside rad;
/// failures are recorded as violations ("assumption-violation" and friends).
CellRepData build_cell_rep(const CellStructure& cs, int indecomposable);

struct NaturalComparison {
  struct Entry {
    std::string from, to;
    std::string cell_dims;     ///< graded dimension of the quotient hom space
    std::string natural_dims;  ///< graded dimension of the module hom complex
    bool dims_match = false;
    bool diff_match = false;   ///< the correspondence intertwines the differentials
  };
  std::vector<Entry> entries;
  bool ok() const;
};

/// Compares the quotient hom spaces with the hom complexes between the
/// one-generator twisted modules over the algebra, using the correspondence
/// class(y (x) x) -> residue(y) * x.
NaturalComparison compare_with_natural(const CellRepData& data);

/// Brute-force maximality of the ideal: adjoining any closed 2-morphism
/// outside it and closing under the differential, vertical composition, and a
/// sampled horizontal action must recover an identity 2-morphism.  Pairs with
/// hom spaces above `max_dim` are skipped.  Returns violations (empty = ok).
std::vector<Violation> verify_maximal_ideal(const CellRepData& data, unsigned seed = 1,
                                            int max_dim = 16);

}  // namespace pdgcat
