#include "pdgcat/examples.hpp"

#include <stdexcept>

namespace pdgcat {

namespace {

std::string power_label(int k) {
  if (k == 0) return "1";
  if (k == 1) return "x";
  return "x^" + std::to_string(k);
}

RawAlgebra kx_core(int p, int n, int xdeg, bool d_is_square) {
  if (n < 1 || n > p) throw DimensionError("kx: need 1 <= n <= p");
  RawAlgebra raw;
  raw.p = p;
  for (int k = 0; k < n; ++k) raw.space.basis.push_back({power_label(k), xdeg * k});
  raw.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) raw.mul[i][j][i + j] = 1;
  raw.diff.assign(n, Vec(n, 0));
  for (int k = 0; k < n; ++k) {
    if (d_is_square) {
      // d(x^k) = k x^{k+1}
      if (k + 1 < n) raw.diff[k][k + 1] = fpnorm(k, p);
    } else {
      // d(x^k) = k x^{k-1}
      if (k >= 1) raw.diff[k][k - 1] = fpnorm(k, p);
    }
  }
  raw.unit = Vec(n, 0);
  raw.unit[0] = 1;
  raw.idempotents = {raw.unit};
  return raw;
}

}  // namespace

RawAlgebra example_kx(int p, int n) {
  RawAlgebra raw = kx_core(p, n, 2, true);
  raw.name = "kx";
  return raw;
}

RawAlgebra example_kx_paper_variant(int p, int n) {
  RawAlgebra raw = kx_core(p, n, -2, false);
  raw.name = "kx-paper-variant";
  return raw;
}

RawAlgebra example_semisimple(int p, int r) {
  if (r < 1) throw DimensionError("semisimple: need r >= 1");
  RawAlgebra raw;
  raw.p = p;
  raw.name = "semisimple";
  for (int i = 0; i < r; ++i) raw.space.basis.push_back({"e" + std::to_string(i + 1), 0});
  raw.mul.assign(r, std::vector<Vec>(r, Vec(r, 0)));
  for (int i = 0; i < r; ++i) raw.mul[i][i][i] = 1;
  raw.diff.assign(r, Vec(r, 0));
  raw.unit = Vec(r, 1);
  for (int i = 0; i < r; ++i) {
    Vec e(r, 0);
    e[i] = 1;
    raw.idempotents.push_back(e);
  }
  return raw;
}

RawAlgebra example_coinvariant(int p, int lambda) {
  if (lambda < 1) throw DimensionError("coinvariant: need lambda >= 1");
  if (lambda > 2)
    throw DimensionError(
        "coinvariant: middle pieces for lambda >= 3 are not built in; supply an algebra file");
  RawAlgebra raw;
  raw.p = p;
  raw.name = "coinvariant";
  // Basis: u0 | u1, x, ..., x^{lambda-1} | u2 (block product).
  raw.space.basis.push_back({"u0", 0});
  raw.space.basis.push_back({"u1", 0});
  for (int k = 1; k < lambda; ++k) raw.space.basis.push_back({power_label(k), 2 * k});
  raw.space.basis.push_back({"u2", 0});
  int dim = lambda + 2;
  int last = dim - 1;
  raw.mul.assign(dim, std::vector<Vec>(dim, Vec(dim, 0)));
  raw.mul[0][0][0] = 1;
  raw.mul[last][last][last] = 1;
  // Middle block occupies indices 1 .. lambda, with index 1 + k <-> x^k.
  for (int i = 0; i < lambda; ++i)
    for (int j = 0; j < lambda; ++j)
      if (i + j < lambda) raw.mul[1 + i][1 + j][1 + i + j] = 1;
  // d(x) = x^2 vanishes in k[x]/(x^lambda) for lambda <= 2, so the
  // differential is zero on the whole product.
  raw.diff.assign(dim, Vec(dim, 0));
  raw.unit = Vec(dim, 0);
  raw.unit[0] = raw.unit[1] = raw.unit[last] = 1;
  Vec e0(dim, 0), e1(dim, 0), e2(dim, 0);
  e0[0] = 1;
  e1[1] = 1;
  e2[last] = 1;
  raw.idempotents = {e0, e1, e2};
  return raw;
}

RawAlgebra op_algebra(const RawAlgebra& a) {
  RawAlgebra out = a;
  out.name = a.name.empty() ? "op" : "op(" + a.name + ")";
  int n = a.space.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.mul[i][j] = a.mul[j][i];
  return out;
}

RawAlgebra tensor_algebra(const RawAlgebra& a, const RawAlgebra& b) {
  if (a.p != b.p) throw DimensionError("tensor_algebra: characteristic mismatch");
  int p = a.p, na = a.space.dim(), nb = b.space.dim();
  RawAlgebra out;
  out.p = p;
  out.name = (a.name.empty() ? "?" : a.name) + "*" + (b.name.empty() ? "?" : b.name);
  auto slot = [&](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      out.space.basis.push_back({a.space.basis[i].label + "|" + b.space.basis[j].label,
                                 a.space.degree(i) + b.space.degree(j)});
  int n = na * nb;
  out.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) {
          Vec& prod = out.mul[slot(i, j)][slot(k, l)];
          for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y)
              prod[slot(x, y)] = fpnorm(a.mul[i][k][x] * static_cast<long long>(b.mul[j][l][y]), p);
        }
  out.diff.assign(n, Vec(n, 0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      Vec& d = out.diff[slot(i, j)];
      for (int x = 0; x < na; ++x) d[slot(x, j)] = fpnorm(d[slot(x, j)] + a.diff[i][x], p);
      for (int y = 0; y < nb; ++y) d[slot(i, y)] = fpnorm(d[slot(i, y)] + b.diff[j][y], p);
    }
  out.unit = Vec(n, 0);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) out.unit[slot(x, y)] = fpnorm(a.unit[x] * static_cast<long long>(b.unit[y]), p);
  for (const Vec& ea : a.idempotents)
    for (const Vec& eb : b.idempotents) {
      Vec e(n, 0);
      for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) e[slot(x, y)] = fpnorm(ea[x] * static_cast<long long>(eb[y]), p);
      out.idempotents.push_back(e);
    }
  return out;
}

RawAlgebra builtin_example(const std::string& name, int p, int param) {
  if (name == "kx") return example_kx(p, param);
  if (name == "kx-paper-variant") return example_kx_paper_variant(p, param);
  if (name == "semisimple") return example_semisimple(p, param);
  if (name == "coinvariant") return example_coinvariant(p, param);
  throw DimensionError("unknown built-in example: " + name);
}

AlgebraPtr make_algebra(const RawAlgebra& raw) {
  AlgebraPtr out;
  ValidationResult res = validate_algebra(raw);
  if (!res.ok())
    throw DimensionError("algebra validation failed: " + res.violations.front().rule + ": " +
                         res.violations.front().witness);
  out = std::make_shared<PdgAlgebra>(std::move(*res.algebra));
  return out;
}

}  // namespace pdgcat
