#include "pdgcat/twisted.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pdgcat {

namespace {

using AMat = std::vector<std::vector<Vec>>;  // matrix with entries in the algebra

AMat amat_zero(int rows, int cols, int dim) {
  return AMat(static_cast<size_t>(rows), std::vector<Vec>(static_cast<size_t>(cols), Vec(dim, 0)));
}

AMat amat_add(const PdgAlgebra& A, const AMat& x, const AMat& y) {
  AMat out = x;
  for (size_t r = 0; r < out.size(); ++r)
    for (size_t c = 0; c < out[r].size(); ++c) out[r][c] = vecadd(out[r][c], y[r][c], A.p());
  return out;
}

AMat amat_mul(const PdgAlgebra& A, const AMat& x, const AMat& y) {
  size_t rows = x.size();
  size_t mid = y.size();
  size_t cols = mid == 0 ? 0 : y[0].size();
  AMat out = amat_zero(static_cast<int>(rows), static_cast<int>(cols), A.dim());
  for (size_t r = 0; r < rows; ++r)
    for (size_t k = 0; k < mid; ++k) {
      if (is_zero(x[r][k])) continue;
      for (size_t c = 0; c < cols; ++c) {
        if (is_zero(y[k][c])) continue;
        out[r][c] = vecadd(out[r][c], A.mul(x[r][k], y[k][c]), A.p());
      }
    }
  return out;
}

AMat amat_diff(const PdgAlgebra& A, const AMat& x) {
  AMat out = x;
  for (auto& row : out)
    for (auto& e : row) e = A.diff(e);
  return out;
}

bool amat_is_zero(const AMat& x) {
  for (const auto& row : x)
    for (const auto& e : row)
      if (!is_zero(e)) return false;
  return true;
}

std::string describe_entry(const PdgAlgebra& A, int r, int c, const Vec& v) {
  std::ostringstream os;
  os << "(" << r + 1 << "," << c + 1 << ") = " << A.format_element(v);
  return os.str();
}

}  // namespace

TwistedObject make_object(AlgebraPtr A, std::vector<Generator> gens) {
  int m = static_cast<int>(gens.size());
  int dim = A->dim();
  TwistedObject x{std::move(A), std::move(gens), amat_zero(m, m, dim)};
  return x;
}

TwistedObject make_object(AlgebraPtr A, std::vector<Generator> gens,
                          std::vector<std::vector<Vec>> alpha) {
  TwistedObject x{std::move(A), std::move(gens), std::move(alpha)};
  return x;
}

TwistedObject shift_object(const TwistedObject& x, int n) {
  TwistedObject out = x;
  for (auto& g : out.gens) g.shift += n;
  return out;
}

TwistedObject direct_sum(const TwistedObject& x, const TwistedObject& y) {
  if (x.A.get() != y.A.get()) throw DimensionError("direct_sum: objects over different algebras");
  TwistedObject out = make_object(x.A, x.gens);
  out.gens.insert(out.gens.end(), y.gens.begin(), y.gens.end());
  int m = x.size(), n = y.size();
  out.alpha = amat_zero(m + n, m + n, x.A->dim());
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out.alpha[r][c] = x.alpha[r][c];
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.alpha[m + r][m + c] = y.alpha[r][c];
  return out;
}

TwistedValidation validate_twisted(const TwistedObject& x) {
  TwistedValidation res;
  const PdgAlgebra& A = *x.A;
  int m = x.size();
  for (const auto& g : x.gens) {
    if (g.idem < 0 || g.idem >= A.num_idempotents())
      res.violations.push_back({"generator", "idempotent index out of range"});
  }
  if (static_cast<int>(x.alpha.size()) != m) {
    res.violations.push_back({"shape", "twist matrix row count differs from generator count"});
    return res;
  }
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(x.alpha[r].size()) != m) {
      res.violations.push_back({"shape", "twist matrix is not square"});
      return res;
    }
    for (int c = 0; c < m; ++c) {
      if (static_cast<int>(x.alpha[r][c].size()) != A.dim()) {
        res.violations.push_back({"shape", "twist entry has wrong coordinate length"});
        return res;
      }
    }
  }
  if (!res.ok()) return res;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const Vec& v = x.alpha[r][c];
      if (is_zero(v)) continue;
      if (c <= r) {
        res.violations.push_back(
            {"triangularity", "twist " + describe_entry(A, r, c, v) + " below or on the diagonal"});
        continue;
      }
      if (!A.in_corner(x.gens[r].idem, v, x.gens[c].idem))
        res.violations.push_back(
            {"corner", "twist " + describe_entry(A, r, c, v) + " outside its corner space"});
      auto deg = A.element_degree(v);
      int want = 2 - x.gens[c].shift + x.gens[r].shift;
      if (!deg || *deg != want)
        res.violations.push_back({"degree", "twist " + describe_entry(A, r, c, v) +
                                                " is not homogeneous of element degree " +
                                                std::to_string(want)});
    }
  }
  if (!res.ok()) return res;
  // c_1 = alpha, c_{k+1} = d(c_k) + alpha * c_k; require c_p = 0.
  AMat c = x.alpha;
  for (int k = 2; k <= A.p(); ++k) c = amat_add(A, amat_diff(A, c), amat_mul(A, x.alpha, c));
  for (int r = 0; r < m; ++r)
    for (int col = 0; col < m; ++col)
      if (!is_zero(c[r][col])) {
        res.violations.push_back({"iterated-differential",
                                  "c_" + std::to_string(A.p()) + describe_entry(A, r, col, c[r][col])});
        return res;
      }
  return res;
}

TwistedMorphism zero_morphism(const TwistedObject& x, const TwistedObject& y, int degree) {
  return TwistedMorphism{x, y, degree, amat_zero(y.size(), x.size(), x.A->dim())};
}

TwistedMorphism identity_morphism(const TwistedObject& x) {
  TwistedMorphism f = zero_morphism(x, x, 0);
  for (int i = 0; i < x.size(); ++i) f.entries[i][i] = x.A->idempotent(x.gens[i].idem);
  return f;
}

TwistedValidation validate_morphism(const TwistedMorphism& f) {
  TwistedValidation res;
  const PdgAlgebra& A = *f.source.A;
  int rows = f.target.size(), cols = f.source.size();
  if (static_cast<int>(f.entries.size()) != rows) {
    res.violations.push_back({"shape", "entry row count differs from target generator count"});
    return res;
  }
  for (int n = 0; n < rows; ++n) {
    if (static_cast<int>(f.entries[n].size()) != cols) {
      res.violations.push_back({"shape", "entry column count differs from source generator count"});
      return res;
    }
    for (int m = 0; m < cols; ++m) {
      const Vec& v = f.entries[n][m];
      if (is_zero(v)) continue;
      if (!A.in_corner(f.target.gens[n].idem, v, f.source.gens[m].idem))
        res.violations.push_back(
            {"corner", "entry " + describe_entry(A, n, m, v) + " outside its corner space"});
      auto deg = A.element_degree(v);
      int want = f.degree - f.source.gens[m].shift + f.target.gens[n].shift;
      if (!deg || *deg != want)
        res.violations.push_back({"degree", "entry " + describe_entry(A, n, m, v) +
                                                " is not homogeneous of element degree " +
                                                std::to_string(want)});
    }
  }
  return res;
}

TwistedMorphism mor_add(const TwistedMorphism& a, const TwistedMorphism& b) {
  if (a.degree != b.degree) throw DimensionError("mor_add: degree mismatch");
  TwistedMorphism out = a;
  out.entries = amat_add(*a.source.A, a.entries, b.entries);
  return out;
}

TwistedMorphism mor_scale(const TwistedMorphism& a, int c) {
  TwistedMorphism out = a;
  for (auto& row : out.entries)
    for (auto& e : row) e = vecscale(e, c, a.source.A->p());
  return out;
}

TwistedMorphism mor_compose(const TwistedMorphism& g, const TwistedMorphism& f) {
  if (g.source.gens != f.target.gens) throw DimensionError("mor_compose: middle object mismatch");
  const PdgAlgebra& A = *f.source.A;
  TwistedMorphism out = zero_morphism(f.source, g.target, f.degree + g.degree);
  for (int r = 0; r < g.target.size(); ++r)
    for (int k = 0; k < g.source.size(); ++k) {
      if (is_zero(g.entries[r][k])) continue;
      for (int c = 0; c < f.source.size(); ++c) {
        if (is_zero(f.entries[k][c])) continue;
        out.entries[r][c] = vecadd(out.entries[r][c], A.mul(g.entries[r][k], f.entries[k][c]), A.p());
      }
    }
  return out;
}

TwistedMorphism mor_diff(const TwistedMorphism& f) {
  const PdgAlgebra& A = *f.source.A;
  TwistedMorphism out = zero_morphism(f.source, f.target, f.degree + 2);
  AMat d = amat_diff(A, f.entries);
  AMat bf = amat_mul(A, f.target.alpha, f.entries);
  AMat fa = amat_mul(A, f.entries, f.source.alpha);
  for (size_t r = 0; r < d.size(); ++r)
    for (size_t c = 0; c < d[r].size(); ++c)
      out.entries[r][c] = vecsub(vecadd(d[r][c], bf[r][c], A.p()), fa[r][c], A.p());
  return out;
}

TwistedMorphism mor_diff_iter(const TwistedMorphism& f, int times) {
  TwistedMorphism out = f;
  for (int i = 0; i < times; ++i) out = mor_diff(out);
  return out;
}

bool mor_is_zero(const TwistedMorphism& f) { return amat_is_zero(f.entries); }

std::vector<Vec> row_space_basis(const PdgAlgebra& A, int idem) {
  std::vector<Vec> vecs;
  for (int i = 0; i < A.dim(); ++i) vecs.push_back(A.mul(A.idempotent(idem), A.basis_vec(i)));
  auto rows = row_basis(vecs, A.dim(), A.p());
  return homogeneous_basis(rows, A.space(), A.p());
}

Vec realization_coords(const Realization& r, int gen, const Vec& v, int p) {
  const auto& basis = r.gen_basis[gen];
  int dim = static_cast<int>(v.size());
  Matrix B(dim, static_cast<int>(basis.size()));
  for (int c = 0; c < static_cast<int>(basis.size()); ++c)
    for (int rr = 0; rr < dim; ++rr) B.at(rr, c) = basis[c][rr];
  auto sol = solve(B, v, p);
  if (!sol) throw DimensionError("realization_coords: vector outside the row space");
  Vec out(r.space.dim(), 0);
  for (size_t i = 0; i < r.index.size(); ++i)
    if (r.index[i].first == gen) out[i] = (*sol)[r.index[i].second];
  return out;
}

Realization realize(const TwistedObject& x) {
  const PdgAlgebra& A = *x.A;
  Realization r;
  for (int m = 0; m < x.size(); ++m) {
    auto basis = row_space_basis(A, x.gens[m].idem);
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
      auto deg = A.element_degree(basis[i]);
      r.space.basis.push_back({"g" + std::to_string(m + 1) + "." + std::to_string(i + 1),
                               (deg ? *deg : 0) - x.gens[m].shift});
      r.index.emplace_back(m, i);
    }
    r.gen_basis.push_back(std::move(basis));
  }
  int n = r.space.dim();
  Matrix D(n, n);
  for (int j = 0; j < n; ++j) {
    auto [m, i] = r.index[j];
    const Vec& v = r.gen_basis[m][i];
    Vec image(n, 0);
    Vec dv = A.diff(v);
    if (!is_zero(dv)) image = vecadd(image, realization_coords(r, m, dv, A.p()), A.p());
    for (int k = 0; k < x.size(); ++k) {
      if (is_zero(x.alpha[k][m])) continue;
      Vec av = A.mul(x.alpha[k][m], v);
      if (!is_zero(av)) image = vecadd(image, realization_coords(r, k, av, A.p()), A.p());
    }
    for (int rr = 0; rr < n; ++rr) D.at(rr, j) = image[rr];
  }
  r.operator_total = LinearMap{r.space, r.space, 2, std::move(D)};
  return r;
}

LinearMap realize_morphism(const TwistedMorphism& f, const Realization& rx, const Realization& ry) {
  const PdgAlgebra& A = *f.source.A;
  int nx = rx.space.dim(), ny = ry.space.dim();
  Matrix M(ny, nx);
  for (int j = 0; j < nx; ++j) {
    auto [m, i] = rx.index[j];
    const Vec& v = rx.gen_basis[m][i];
    Vec image(ny, 0);
    for (int n = 0; n < f.target.size(); ++n) {
      if (is_zero(f.entries[n][m])) continue;
      Vec fv = A.mul(f.entries[n][m], v);
      if (!is_zero(fv)) image = vecadd(image, realization_coords(ry, n, fv, A.p()), A.p());
    }
    for (int rr = 0; rr < ny; ++rr) M.at(rr, j) = image[rr];
  }
  return LinearMap{rx.space, ry.space, f.degree, std::move(M)};
}

TwistedObject tensor_h(const TwistedObject& x, const HModule& v) {
  const PdgAlgebra& A = *x.A;
  int p = A.p();
  int vd = v.space.dim();
  // Order the module basis by strictly decreasing degree; the action (degree
  // +2) then only maps later slots to earlier ones, keeping twists upper
  // triangular.
  std::vector<int> order(vd);
  for (int i = 0; i < vd; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return v.space.degree(a) > v.space.degree(b); });
  TwistedObject out;
  out.A = x.A;
  // Copy-major layout: the a-th block is X shifted by minus the a-th basis
  // degree, so the result reads as the literal block list X<c_1> ⊕ X<c_2> ⊕ ...
  for (int a = 0; a < vd; ++a)
    for (int m = 0; m < x.size(); ++m)
      out.gens.push_back({x.gens[m].idem, x.gens[m].shift - v.space.degree(order[a])});
  int total = x.size() * vd;
  out.alpha = amat_zero(total, total, A.dim());
  auto slot = [&](int m, int a) { return a * x.size() + m; };
  for (int m = 0; m < x.size(); ++m)
    for (int mm = 0; mm < x.size(); ++mm)
      for (int a = 0; a < vd; ++a) {
        // alpha ⊗ identity part.
        if (!is_zero(x.alpha[m][mm]))
          out.alpha[slot(m, a)][slot(mm, a)] =
              vecadd(out.alpha[slot(m, a)][slot(mm, a)], x.alpha[m][mm], p);
      }
  for (int m = 0; m < x.size(); ++m)
    for (int a = 0; a < vd; ++a)
      for (int aa = 0; aa < vd; ++aa) {
        int coeff = v.action.matrix.at(order[a], order[aa]);
        if (coeff == 0) continue;
        // identity ⊗ action part: copy aa feeds copy a with the idempotent.
        out.alpha[slot(m, a)][slot(m, aa)] =
            vecadd(out.alpha[slot(m, a)][slot(m, aa)],
                   vecscale(A.idempotent(x.gens[m].idem), coeff, p), p);
      }
  return out;
}

HomComplex hom_complex(const TwistedObject& x, const TwistedObject& y) {
  if (x.A.get() != y.A.get()) throw DimensionError("hom_complex: objects over different algebras");
  const PdgAlgebra& A = *x.A;
  HomComplex H;
  H.X = x;
  H.Y = y;
  for (int n = 0; n < y.size(); ++n)
    for (int m = 0; m < x.size(); ++m)
      for (const Vec& b : A.corner_basis(y.gens[n].idem, x.gens[m].idem)) {
        auto deg = A.element_degree(b);
        int mor_deg = (deg ? *deg : 0) + x.gens[m].shift - y.gens[n].shift;
        H.space.basis.push_back({"h" + std::to_string(H.slots.size() + 1), mor_deg});
        H.slots.push_back({n, m, b});
      }
  int dim = H.space.dim();
  Matrix D(dim, dim);
  for (int j = 0; j < dim; ++j) {
    TwistedMorphism f = zero_morphism(x, y, H.space.degree(j));
    f.entries[H.slots[j].n][H.slots[j].m] = H.slots[j].value;
    Vec coords = H.to_coords(mor_diff(f));
    for (int r = 0; r < dim; ++r) D.at(r, j) = coords[r];
  }
  H.diff = LinearMap{H.space, H.space, 2, std::move(D)};
  return H;
}

TwistedMorphism HomComplex::from_coords(const Vec& coords, int degree) const {
  TwistedMorphism f = zero_morphism(X, Y, degree);
  const PdgAlgebra& A = *X.A;
  for (size_t j = 0; j < slots.size(); ++j) {
    if (coords[j] == 0) continue;
    if (space.degree(static_cast<int>(j)) != degree)
      throw DimensionError("from_coords: coordinate outside the requested degree");
    f.entries[slots[j].n][slots[j].m] =
        vecadd(f.entries[slots[j].n][slots[j].m], vecscale(slots[j].value, coords[j], A.p()), A.p());
  }
  return f;
}

Vec HomComplex::to_coords(const TwistedMorphism& f) const {
  const PdgAlgebra& A = *X.A;
  Vec out(space.dim(), 0);
  // Group slots by (n, m) and solve for the entry's coordinates per group.
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t j = 0; j < slots.size(); ++j) groups[{slots[j].n, slots[j].m}].push_back(static_cast<int>(j));
  for (const auto& [key, idxs] : groups) {
    const Vec& entry = f.entries[key.first][key.second];
    if (is_zero(entry)) continue;
    Matrix B(A.dim(), static_cast<int>(idxs.size()));
    for (size_t c = 0; c < idxs.size(); ++c)
      for (int r = 0; r < A.dim(); ++r) B.at(r, static_cast<int>(c)) = slots[idxs[c]].value[r];
    auto sol = solve(B, entry, A.p());
    if (!sol) throw DimensionError("to_coords: entry outside its corner space");
    for (size_t c = 0; c < idxs.size(); ++c) out[idxs[c]] = (*sol)[c];
  }
  return out;
}

std::vector<int> degree_slots(const HomComplex& H, int degree) {
  std::vector<int> out;
  for (int j = 0; j < H.space.dim(); ++j)
    if (H.space.degree(j) == degree) out.push_back(j);
  return out;
}

TwistedMorphism slot_morphism(const HomComplex& H, int slot) {
  TwistedMorphism f = zero_morphism(H.X, H.Y, H.space.degree(slot));
  f.entries[H.slots[slot].n][H.slots[slot].m] = H.slots[slot].value;
  return f;
}

Matrix precompose_matrix(const HomComplex& HBC, const HomComplex& HAC, const TwistedMorphism& g) {
  int cols = HBC.space.dim();
  Matrix out(HAC.space.dim(), cols);
  for (int j = 0; j < cols; ++j) {
    Vec coords = HAC.to_coords(mor_compose(slot_morphism(HBC, j), g));
    for (int r = 0; r < out.rows(); ++r) out.at(r, j) = coords[r];
  }
  return out;
}

Matrix postcompose_matrix(const HomComplex& HAB, const HomComplex& HAC, const TwistedMorphism& g) {
  int cols = HAB.space.dim();
  Matrix out(HAC.space.dim(), cols);
  for (int j = 0; j < cols; ++j) {
    Vec coords = HAC.to_coords(mor_compose(g, slot_morphism(HAB, j)));
    for (int r = 0; r < out.rows(); ++r) out.at(r, j) = coords[r];
  }
  return out;
}

std::vector<TwistedMorphism> closed_morphisms(const HomComplex& H, int degree) {
  std::vector<int> cols = degree_slots(H, degree);
  int dim = H.space.dim();
  Matrix M = restrict_columns(H.diff.matrix, cols);
  auto rr = rref(M, H.X.A->p());
  std::vector<TwistedMorphism> out;
  for (const Vec& k : rr.kernel) {
    Vec coords(dim, 0);
    for (size_t c = 0; c < cols.size(); ++c) coords[cols[c]] = k[c];
    out.push_back(H.from_coords(coords, degree));
  }
  return out;
}

namespace {

std::optional<TwistedMorphism> invert_closed_morphism(const TwistedMorphism& g,
                                                      const Realization& rx,
                                                      const Realization& ry) {
  const PdgAlgebra& A = *g.source.A;
  LinearMap R = realize_morphism(g, rx, ry);
  if (R.matrix.rows() != R.matrix.cols()) return std::nullopt;
  auto Rinv = inverse(R.matrix, A.p());
  if (!Rinv) return std::nullopt;
  TwistedMorphism h = zero_morphism(g.target, g.source, 0);
  for (int n = 0; n < g.target.size(); ++n) {
    Vec e = realization_coords(ry, n, A.idempotent(g.target.gens[n].idem), A.p());
    Vec img = matvec(*Rinv, e, A.p());
    for (int j = 0; j < rx.space.dim(); ++j) {
      if (img[j] == 0) continue;
      auto [m, i] = rx.index[j];
      h.entries[m][n] = vecadd(h.entries[m][n], vecscale(rx.gen_basis[m][i], img[j], A.p()), A.p());
    }
  }
  return h;
}

}  // namespace

IsoResult pdg_iso(const TwistedObject& x, const TwistedObject& y, unsigned seed, int samples) {
  IsoResult res;
  const PdgAlgebra& A = *x.A;
  auto classes = A.iso_classes();
  auto key = [&](const TwistedObject& o) {
    std::vector<std::pair<int, int>> k;
    for (const auto& g : o.gens) k.emplace_back(classes.class_of[g.idem], g.shift);
    std::sort(k.begin(), k.end());
    return k;
  };
  if (key(x) != key(y)) {
    res.status = IsoResult::Status::NotIsomorphic;
    res.reason = "generator multisets (idempotent class, shift) differ";
    return res;
  }
  if (x.size() == 0) {
    res.status = IsoResult::Status::Isomorphic;
    res.iso = zero_morphism(x, y, 0);
    res.inverse = zero_morphism(y, x, 0);
    return res;
  }
  HomComplex H = hom_complex(x, y);
  auto basis = closed_morphisms(H, 0);
  Realization rx = realize(x), ry = realize(y);
  auto verify = [&](const TwistedMorphism& g) -> bool {
    auto inv = invert_closed_morphism(g, rx, ry);
    if (!inv) return false;
    TwistedMorphism h = *inv;
    if (!mor_is_zero(mor_diff(h))) return false;
    TwistedMorphism hg = mor_compose(h, g), gh = mor_compose(g, h);
    TwistedMorphism idx = identity_morphism(x), idy = identity_morphism(y);
    if (!amat_is_zero(amat_add(A, hg.entries,
                               mor_scale(idx, A.p() - 1).entries)) ||
        !amat_is_zero(amat_add(A, gh.entries, mor_scale(idy, A.p() - 1).entries)))
      return false;
    res.status = IsoResult::Status::Isomorphic;
    res.iso = g;
    res.inverse = h;
    return true;
  };
  for (const auto& g : basis)
    if (verify(g)) return res;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(0, A.p() - 1);
  for (int s = 0; s < samples && !basis.empty(); ++s) {
    TwistedMorphism g = zero_morphism(x, y, 0);
    bool nonzero = false;
    for (const auto& b : basis) {
      int c = coeff(rng);
      if (c == 0) continue;
      nonzero = true;
      g = mor_add(g, mor_scale(b, c));
    }
    if (!nonzero) continue;
    if (verify(g)) return res;
  }
  res.status = IsoResult::Status::Unknown;
  res.reason = "no invertible closed degree-0 morphism found (seed=" + std::to_string(seed) +
               ", samples=" + std::to_string(samples) + ")";
  return res;
}

}  // namespace pdgcat
