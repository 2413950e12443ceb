#include "pdgcat/hmodule.hpp"

#include <algorithm>
#include <map>

namespace pdgcat {

std::vector<Vec> homogeneous_basis(const std::vector<Vec>& vectors, const GradedSpace& space,
                                   int p) {
  std::vector<Vec> parts;
  for (const Vec& v : vectors) {
    std::map<int, Vec> byDeg;
    for (int k = 0; k < space.dim(); ++k)
      if (v[k] != 0) {
        auto& part = byDeg.try_emplace(space.basis[k].degree, Vec(space.dim(), 0)).first->second;
        part[k] = v[k];
      }
    for (auto& [d, part] : byDeg) parts.push_back(part);
  }
  return row_basis(parts, space.dim(), p);
}

HModuleResult make_h_module(const GradedSpace& space, const LinearMap& action, int p) {
  HModuleResult res;
  if (action.source.basis != space.basis || action.target.basis != space.basis)
    res.errors.push_back("action is not an endomorphism of the given space");
  else {
    if (action.degree != 2) res.errors.push_back("action degree is not 2");
    if (!action.is_homogeneous()) res.errors.push_back("action is not degree-homogeneous");
    if (!is_zero(matpow(action.matrix, p, p)))
      res.errors.push_back("action^p is nonzero");
  }
  if (!res.errors.empty()) return res;

  HModule mod{space, action, {}};
  const Matrix& D = action.matrix;
  int n = space.dim();

  // Kernel filtration ker(D^j).
  std::vector<std::vector<Vec>> K(p + 1);
  for (int j = 1; j <= p; ++j)
    K[j] = homogeneous_basis(rref(matpow(D, j, p), p).kernel, space, p);

  // Extract homogeneous chain generators from the top length downwards.
  struct Head {
    Vec v;
    int len;
  };
  std::vector<Head> heads;
  for (int j = p; j >= 1; --j) {
    // Obstruction span: shorter kernels plus images of longer chains.
    std::vector<Vec> obstruction = (j > 1) ? K[j - 1] : std::vector<Vec>{};
    for (const Head& h : heads) {
      Vec w = h.v;
      for (int t = 0; t < h.len - j; ++t) w = matvec(D, w, p);
      obstruction.push_back(w);
    }
    std::vector<Vec> span = row_basis(obstruction, n, p);
    for (const Vec& cand : K[j]) {
      if (in_span(span, cand, n, p)) continue;
      heads.push_back({cand, j});
      span.push_back(cand);
      span = row_basis(span, n, p);
    }
  }

  for (const Head& h : heads) {
    int gen_degree = 0;
    for (int k = 0; k < n; ++k)
      if (h.v[k] != 0) {
        gen_degree = space.basis[k].degree;
        break;
      }
    mod.decomposition.emplace_back(h.len - 1, -gen_degree);
  }
  std::sort(mod.decomposition.begin(), mod.decomposition.end());
  res.module = std::move(mod);
  return res;
}

HModule standard_module(int p, int i, int shift) {
  if (i < 0 || i > p - 1) throw DimensionError("standard_module: index out of range");
  GradedSpace s;
  for (int j = 0; j <= i; ++j)
    s.basis.push_back({"v" + std::to_string(j), 2 * j - shift});
  LinearMap act = zero_map(s, s, 2);
  for (int j = 0; j < i; ++j) act.matrix.at(j + 1, j) = 1;
  HModule m{s, act, {{i, shift}}};
  return m;
}

HModule direct_sum(const HModule& a, const HModule& b, [[maybe_unused]] int p) {
  GradedSpace s;
  for (const auto& e : a.space.basis) s.basis.push_back({"l." + e.label, e.degree});
  for (const auto& e : b.space.basis) s.basis.push_back({"r." + e.label, e.degree});
  LinearMap act = zero_map(s, s, 2);
  int na = a.space.dim();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) act.matrix.at(i, j) = a.action.matrix.at(i, j);
  for (int i = 0; i < b.space.dim(); ++i)
    for (int j = 0; j < b.space.dim(); ++j) act.matrix.at(na + i, na + j) = b.action.matrix.at(i, j);
  HModule m{s, act, a.decomposition};
  m.decomposition.insert(m.decomposition.end(), b.decomposition.begin(), b.decomposition.end());
  std::sort(m.decomposition.begin(), m.decomposition.end());
  return m;
}

}  // namespace pdgcat
