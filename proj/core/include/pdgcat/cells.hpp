// Cell combinatorics of the 2-category of identity and projective bimodule
// 1-morphisms: the indecomposable 1-morphisms up to shift and isomorphism,
// the left/right/two-sided preorders generated by "appears as a direct
// summand of a composite", the induced cell partitions, and the strong
// regularity test.
//
// Indecomposables are one identity per block plus one projective P(s, t) per
// ordered pair of idempotent isomorphism-class representatives.  When an
// identity is isomorphic to a shifted projective (separable blocks), the two
// are folded into a single entry and the identity label is kept as an alias.
// Identities are only accepted as indecomposable when the degree-zero part of
// the block center is local; otherwise compute_cells throws a CellError
// naming the offending block ("identity-cell ambiguity").
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pdgcat/bimod.hpp"

namespace pdgcat {

struct CellError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Indecomposable {
  Summand base;  ///< shift-0 representative
  std::string label;
  std::vector<std::string> aliases;  ///< isomorphic identity 1-morphisms folded in
};

struct CellStructure {
  AlgebraPtr A;
  std::vector<Indecomposable> indecomposables;
  /// Preorders on indecomposables: geq_left[g][f] means g appears as a
  /// direct summand of some H composed after f (resp. before, both-sided).
  std::vector<std::vector<bool>> geq_left, geq_right, geq_two;
  /// Cell partitions: cell id per indecomposable plus the member lists.
  std::vector<int> left_cell_of, right_cell_of, two_cell_of;
  std::vector<std::vector<int>> left_cells, right_cells, two_cells;

  int size() const { return static_cast<int>(indecomposables.size()); }
  /// Index of the indecomposable with the given label or alias; -1 if absent.
  int find(const std::string& label) const;
};

CellStructure compute_cells(AlgebraPtr A);

/// Induced relation on cells: some member of c1 is >= some member of c2.
bool cell_geq(const std::vector<std::vector<bool>>& geq,
              const std::vector<std::vector<int>>& cells, int c1, int c2);

/// True iff within every two-sided cell no two distinct left (right) cells
/// are comparable and every intersection of a left and a right cell meeting
/// the two-sided cell contains exactly one indecomposable.
bool strong_regularity(const CellStructure& cs);

}  // namespace pdgcat
