// Graded modules over the truncated polynomial Hopf algebra generated by the
// differential: a graded space with a degree-2 nilpotent operator whose p-th
// power vanishes.  Every such module decomposes into shifted standard chains
// V_i (i+1-dimensional, i = 0..p-1); the decomposition is computed explicitly.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdgcat/graded.hpp"

namespace pdgcat {

struct HModule {
  GradedSpace space;
  LinearMap action;  ///< degree-2 endomorphism with action^p = 0

  /// Multiset of chain types (i, shift), one per indecomposable summand
  /// isomorphic to V_i shifted by `shift`; sorted lexicographically.
  std::vector<std::pair<int, int>> decomposition;
};

/// Validate the action (homogeneous of degree 2, p-nilpotent) and compute the
/// chain decomposition.  On violation returns an explanatory error string.
struct HModuleResult {
  std::optional<HModule> module;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

HModuleResult make_h_module(const GradedSpace& space, const LinearMap& action, int p);

/// Standard chain V_i shifted: basis v_0..v_i in degrees 2j - shift, action
/// v_j -> v_{j+1}.  Requires 0 <= i <= p-1.
HModule standard_module(int p, int i, int shift);

HModule direct_sum(const HModule& a, const HModule& b, int p);

/// Split a basis list into homogeneous vectors spanning the same subspace.
std::vector<Vec> homogeneous_basis(const std::vector<Vec>& vectors, const GradedSpace& space, int p);

}  // namespace pdgcat
