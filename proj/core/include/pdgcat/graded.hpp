// Graded vector spaces over F_p and degree-homogeneous linear maps.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdgcat/linalg.hpp"

namespace pdgcat {

struct BasisElement {
  std::string label;
  int degree = 0;
  bool operator==(const BasisElement&) const = default;
};

/// Finite-dimensional Z-graded space with a fixed ordered basis.
struct GradedSpace {
  std::vector<BasisElement> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  int degree(int i) const { return basis[i].degree; }

  /// Indices of basis elements in a given degree.
  std::vector<int> degree_indices(int d) const;
  /// Sorted list of degrees that occur.
  std::vector<int> degrees() const;
  /// dim per degree, as (degree, dim) pairs sorted by degree.
  std::vector<std::pair<int, int>> graded_dimension() const;
};

/// Graded dimension rendered as a polynomial in q (e.g. "1 + 2*q^2 + q^-4").
std::string format_graded_dimension(const std::vector<std::pair<int, int>>& dims);

/// Homogeneous linear map between graded spaces.  Matrix columns index the
/// source basis, rows the target basis; entry (i, j) may be nonzero only when
/// deg(target_i) = deg(source_j) + degree.
struct LinearMap {
  GradedSpace source;
  GradedSpace target;
  int degree = 0;
  Matrix matrix;  // target.dim() x source.dim()

  bool is_homogeneous() const;
};

LinearMap compose(const LinearMap& g, const LinearMap& f, int p);
LinearMap map_add(const LinearMap& a, const LinearMap& b, int p);
LinearMap map_power(const LinearMap& endo, int e, int p);  ///< Iterate an endo-map.
LinearMap zero_map(const GradedSpace& src, const GradedSpace& tgt, int degree);
LinearMap identity_map(const GradedSpace& s);

}  // namespace pdgcat
