#include "pdgcat/graded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pdgcat {

std::vector<int> GradedSpace::degree_indices(int d) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis[i].degree == d) out.push_back(i);
  return out;
}

std::vector<int> GradedSpace::degrees() const {
  std::set<int> s;
  for (const auto& b : basis) s.insert(b.degree);
  return {s.begin(), s.end()};
}

std::vector<std::pair<int, int>> GradedSpace::graded_dimension() const {
  std::map<int, int> m;
  for (const auto& b : basis) ++m[b.degree];
  return {m.begin(), m.end()};
}

std::string format_graded_dimension(const std::vector<std::pair<int, int>>& dims) {
  if (dims.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [deg, mult] : dims) {
    if (mult == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (deg == 0) {
      os << mult;
    } else {
      if (mult != 1) os << mult << "*";
      os << "q";
      if (deg != 1) os << "^" << deg;
    }
  }
  if (first) return "0";
  return os.str();
}

bool LinearMap::is_homogeneous() const {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j < matrix.cols(); ++j)
      if (matrix.at(i, j) != 0 && target.degree(i) != source.degree(j) + degree) return false;
  return true;
}

LinearMap compose(const LinearMap& g, const LinearMap& f, int p) {
  if (g.source.basis != f.target.basis)
    throw DimensionError("compose: middle spaces do not match");
  return LinearMap{f.source, g.target, f.degree + g.degree, matmul(g.matrix, f.matrix, p)};
}

LinearMap map_add(const LinearMap& a, const LinearMap& b, int p) {
  if (a.source.basis != b.source.basis || a.target.basis != b.target.basis || a.degree != b.degree)
    throw DimensionError("map_add: incompatible maps");
  return LinearMap{a.source, a.target, a.degree, matadd(a.matrix, b.matrix, p)};
}

LinearMap map_power(const LinearMap& endo, int e, int p) {
  if (endo.source.basis != endo.target.basis)
    throw DimensionError("map_power: not an endomorphism");
  LinearMap acc = identity_map(endo.source);
  for (int i = 0; i < e; ++i) acc = compose(endo, acc, p);
  return acc;
}

LinearMap zero_map(const GradedSpace& src, const GradedSpace& tgt, int degree) {
  return LinearMap{src, tgt, degree, Matrix(tgt.dim(), src.dim())};
}

LinearMap identity_map(const GradedSpace& s) {
  return LinearMap{s, s, 0, Matrix::identity(s.dim())};
}

}  // namespace pdgcat
