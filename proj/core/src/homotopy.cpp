#include "pdgcat/homotopy.hpp"

#include <algorithm>

namespace pdgcat {

namespace {

void require_z_morphism(const TwistedMorphism& f) {
  if (f.degree != 0 || !mor_is_zero(mor_diff(f)))
    throw DimensionError("expected a closed morphism of degree 0");
}

}  // namespace

ContractibleCover contractible_cover(const TwistedObject& x) {
  const PdgAlgebra& A = *x.A;
  int p = A.p();
  ContractibleCover c;
  c.xh = tensor_h(x, standard_module(p, p - 1, 2 * p - 2));
  c.iota = zero_morphism(x, c.xh, 0);
  for (int m = 0; m < x.size(); ++m) c.iota.entries[m][m] = A.idempotent(x.gens[m].idem);
  return c;
}

TwistedObject sigma(const TwistedObject& x) {
  const PdgAlgebra& A = *x.A;
  int p = A.p();
  return tensor_h(x, standard_module(p, p - 2, 2 * p - 2));
}

NullHomotopyResult is_null_homotopic(const TwistedMorphism& f) {
  require_z_morphism(f);
  const PdgAlgebra& A = *f.source.A;
  int p = A.p();
  HomComplex H = hom_complex(f.source, f.target);
  Vec target = H.to_coords(f);
  int gdeg = 2 - 2 * p;
  auto cols = degree_slots(H, gdeg);
  Matrix M = restrict_columns(matpow(H.diff.matrix, p - 1, p), cols);
  auto sol = solve(M, target, p);
  NullHomotopyResult res;
  if (!sol) return res;
  res.null_homotopic = true;
  Vec coords(H.space.dim(), 0);
  for (size_t c = 0; c < cols.size(); ++c) coords[cols[c]] = (*sol)[c];
  res.witness = H.from_coords(coords, gdeg);
  return res;
}

NullHomotopyResult factors_through_cover(const TwistedMorphism& f) {
  require_z_morphism(f);
  const PdgAlgebra& A = *f.source.A;
  int p = A.p();
  ContractibleCover cover = contractible_cover(f.source);
  HomComplex Hxh = hom_complex(cover.xh, f.target);
  HomComplex Hx = hom_complex(f.source, f.target);
  auto cols = degree_slots(Hxh, 0);
  // Unknown h of degree 0: closed (diff rows) and h ∘ iota = f (factorization rows).
  Matrix sys = stack_rows(restrict_columns(Hxh.diff.matrix, cols),
                          restrict_columns(precompose_matrix(Hxh, Hx, cover.iota), cols));
  Vec rhs = concat_vec(Vec(Hxh.space.dim(), 0), Hx.to_coords(f));
  auto sol = solve(sys, rhs, p);
  NullHomotopyResult res;
  if (!sol) return res;
  res.null_homotopic = true;
  Vec coords(Hxh.space.dim(), 0);
  for (size_t c = 0; c < cols.size(); ++c) coords[cols[c]] = (*sol)[c];
  res.witness = Hxh.from_coords(coords, 0);
  return res;
}

StableHom stable_hom(const HomComplex& H, int degree) {
  const PdgAlgebra& A = *H.X.A;
  int p = A.p();
  StableHom out;
  out.degree = degree;
  out.cycle_basis = closed_morphisms(H, degree);
  auto src = degree_slots(H, degree - 2 * (p - 1));
  Matrix Dp1 = matpow(H.diff.matrix, p - 1, p);
  std::vector<Vec> images;
  for (int c : src) {
    Vec img = Dp1.col(c);
    if (!is_zero(img)) images.push_back(img);
  }
  images = row_basis(images, H.space.dim(), p);
  for (const Vec& b : images) out.boundary_basis.push_back(H.from_coords(b, degree));
  // Representatives: cycles extending the boundary span.
  std::vector<Vec> span = images;
  for (const auto& z : out.cycle_basis) {
    Vec zc = H.to_coords(z);
    if (in_span(span, zc, H.space.dim(), p)) continue;
    span.push_back(zc);
    span = row_basis(span, H.space.dim(), p);
    out.representatives.push_back(z);
  }
  return out;
}

StableHom stable_hom(const TwistedObject& x, const TwistedObject& y, int degree) {
  return stable_hom(hom_complex(x, y), degree);
}

StableHomTable stable_hom_table(const TwistedObject& x, const TwistedObject& y) {
  HomComplex H = hom_complex(x, y);
  std::vector<int> degrees;
  for (const auto& b : H.space.basis) degrees.push_back(b.degree);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  StableHomTable out;
  for (int d : degrees) {
    StableHom sh = stable_hom(H, d);
    out.total += sh.dimension();
    out.by_degree.push_back(std::move(sh));
  }
  return out;
}

ConeData cone(const TwistedMorphism& f) {
  require_z_morphism(f);
  const PdgAlgebra& A = *f.source.A;
  int p = A.p();
  const TwistedObject& X = f.source;
  const TwistedObject& Y = f.target;
  int M = X.size(), N = Y.size();
  ConeData c;
  c.cover = contractible_cover(X);
  // Blocks: Y, then X<2a> for a = 1..p-1.
  std::vector<Generator> gens = Y.gens;
  for (int a = 1; a <= p - 1; ++a)
    for (const auto& g : X.gens) gens.push_back({g.idem, g.shift + 2 * a});
  c.cone = make_object(X.A, std::move(gens));
  auto cslot = [&](int a, int m) { return a == 0 ? m : N + (a - 1) * M + m; };
  for (int n = 0; n < N; ++n)
    for (int nn = 0; nn < N; ++nn) c.cone.alpha[n][nn] = Y.alpha[n][nn];
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m) c.cone.alpha[n][cslot(1, m)] = f.entries[n][m];
  for (int a = 1; a <= p - 1; ++a)
    for (int m = 0; m < M; ++m) {
      for (int mm = 0; mm < M; ++mm) c.cone.alpha[cslot(a, m)][cslot(a, mm)] = X.alpha[m][mm];
      if (a + 1 <= p - 1) c.cone.alpha[cslot(a, m)][cslot(a + 1, m)] = A.idempotent(X.gens[m].idem);
    }
  c.v = zero_morphism(Y, c.cone, 0);
  for (int n = 0; n < N; ++n) c.v.entries[n][n] = A.idempotent(Y.gens[n].idem);
  c.u = zero_morphism(c.cover.xh, c.cone, 0);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m) c.u.entries[n][m] = f.entries[n][m];
  for (int a = 1; a <= p - 1; ++a)
    for (int m = 0; m < M; ++m)
      c.u.entries[cslot(a, m)][a * M + m] = A.idempotent(X.gens[m].idem);
  TwistedObject sx = sigma(X);
  c.r = zero_morphism(c.cone, sx, 0);
  for (int a = 1; a <= p - 1; ++a)
    for (int m = 0; m < M; ++m)
      c.r.entries[(a - 1) * M + m][cslot(a, m)] = A.idempotent(X.gens[m].idem);
  c.q = zero_morphism(c.cover.xh, sx, 0);
  for (int a = 1; a <= p - 1; ++a)
    for (int m = 0; m < M; ++m) c.q.entries[(a - 1) * M + m][a * M + m] = A.idempotent(X.gens[m].idem);
  return c;
}

MediationResult mediate(const ConeData& c, const TwistedMorphism& gamma,
                        const TwistedMorphism& tau) {
  if (gamma.degree != tau.degree) throw DimensionError("mediate: degree mismatch");
  if (gamma.source.gens != c.u.source.gens || tau.source.gens != c.v.source.gens ||
      gamma.target.gens != tau.target.gens)
    throw DimensionError("mediate: sources must be XH and Y with a common target");
  const PdgAlgebra& A = *gamma.source.A;
  const TwistedObject& T = gamma.target;
  HomComplex Hct = hom_complex(c.cone, T);
  HomComplex Hxt = hom_complex(c.u.source, T);
  HomComplex Hyt = hom_complex(c.v.source, T);
  auto cols = degree_slots(Hct, gamma.degree);
  Matrix sys = stack_rows(restrict_columns(precompose_matrix(Hct, Hxt, c.u), cols),
                          restrict_columns(precompose_matrix(Hct, Hyt, c.v), cols));
  Vec rhs = concat_vec(Hxt.to_coords(gamma), Hyt.to_coords(tau));
  MediationResult res;
  auto rr = rref(sys, A.p());
  res.unique = rr.kernel.empty();
  auto sol = solve(sys, rhs, A.p());
  if (!sol) return res;
  Vec coords(Hct.space.dim(), 0);
  for (size_t j = 0; j < cols.size(); ++j) coords[cols[j]] = (*sol)[j];
  res.rho = Hct.from_coords(coords, gamma.degree);
  return res;
}

}  // namespace pdgcat
