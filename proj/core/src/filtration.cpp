#include "pdgcat/filtration.hpp"

#include <algorithm>
#include <map>

namespace pdgcat {

namespace {

bool entries_equal(const TwistedMorphism& a, const TwistedMorphism& b) {
  return a.entries == b.entries;
}

}  // namespace

FantasticReport verify_fantastic(const FantasticCertificate& c) {
  FantasticReport rep;
  size_t m = c.pieces.size();
  if (c.u.size() != m || c.v.size() != m)
    throw DimensionError("verify_fantastic: pieces/u/v length mismatch");
  const PdgAlgebra& A = *c.object.A;
  // (1) u_i v_j = delta_{ij} id.
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      TwistedMorphism prod = mor_compose(c.u[i], c.v[j]);
      TwistedMorphism want = i == j ? identity_morphism(c.pieces[i])
                                    : zero_morphism(c.pieces[j], c.pieces[i], 0);
      if (!entries_equal(prod, want)) {
        rep.ok = false;
        rep.condition = "biorthogonality";
        rep.index = static_cast<int>(i) + 1;
        rep.index2 = static_cast<int>(j) + 1;
        rep.witness = "u_i v_j differs from delta_ij id";
        return rep;
      }
    }
  // (2) sum v_j u_j = id.
  TwistedMorphism sum = zero_morphism(c.object, c.object, 0);
  for (size_t j = 0; j < m; ++j) sum = mor_add(sum, mor_compose(c.v[j], c.u[j]));
  if (!entries_equal(sum, identity_morphism(c.object))) {
    rep.ok = false;
    rep.condition = "partition-of-identity";
    rep.witness = "sum v_j u_j differs from id";
    return rep;
  }
  // (3) d(u_i) v_i = 0.
  for (size_t i = 0; i < m; ++i)
    if (!mor_is_zero(mor_compose(mor_diff(c.u[i]), c.v[i]))) {
      rep.ok = false;
      rep.condition = "projection-differential";
      rep.index = static_cast<int>(i) + 1;
      rep.witness = "d(u_i) v_i is nonzero";
      return rep;
    }
  // (4) image of d(v_i) u_i inside the span of the earlier pieces, checked on
  // realizations.
  Realization rx = realize(c.object);
  std::vector<Realization> rp;
  rp.reserve(m);
  for (const auto& piece : c.pieces) rp.push_back(realize(piece));
  std::vector<Vec> span;  // realized image of [v_1 .. v_{i-1}]
  for (size_t i = 0; i < m; ++i) {
    LinearMap dvu = realize_morphism(mor_compose(mor_diff(c.v[i]), c.u[i]), rx, rx);
    for (int col = 0; col < dvu.matrix.cols(); ++col) {
      Vec image = dvu.matrix.col(col);
      if (is_zero(image)) continue;
      if (!in_span(span, image, rx.space.dim(), A.p())) {
        rep.ok = false;
        rep.condition = "containment";
        rep.index = static_cast<int>(i) + 1;
        rep.witness = "image of d(v_i) u_i escapes the first i-1 pieces";
        return rep;
      }
    }
    LinearMap rv = realize_morphism(c.v[i], rp[i], rx);
    for (int col = 0; col < rv.matrix.cols(); ++col) span.push_back(rv.matrix.col(col));
    span = row_basis(span, rx.space.dim(), A.p());
  }
  return rep;
}

FantasticCertificate reordered_filtration(const TwistedObject& x, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != x.size())
    throw DimensionError("reordered_filtration: order length mismatch");
  const PdgAlgebra& A = *x.A;
  FantasticCertificate c;
  c.object = x;
  for (int k : order) {
    TwistedObject piece = make_object(x.A, {x.gens[k]});
    TwistedMorphism uk = zero_morphism(x, piece, 0);
    uk.entries[0][k] = A.idempotent(x.gens[k].idem);
    TwistedMorphism vk = zero_morphism(piece, x, 0);
    vk.entries[k][0] = A.idempotent(x.gens[k].idem);
    c.pieces.push_back(std::move(piece));
    c.u.push_back(std::move(uk));
    c.v.push_back(std::move(vk));
  }
  return c;
}

FantasticCertificate canonical_filtration(const TwistedObject& x) {
  std::vector<int> order(x.size());
  for (int i = 0; i < x.size(); ++i) order[i] = i;
  return reordered_filtration(x, order);
}

SubquotientCheck check_subquotient(const PdgAlgebra& E, const Vec& e, const Vec& w) {
  SubquotientCheck c;
  c.e_idempotent = E.mul(e, e) == e;
  c.w_idempotent = E.mul(w, w) == w;
  c.dominated = E.mul(w, e) == e && E.mul(e, w) == e;
  c.w_dw = is_zero(E.mul(w, E.diff(w)));
  Vec rest = vecsub(w, e, E.p());
  c.rest_dw = is_zero(E.mul(rest, E.diff(rest)));
  return c;
}

Vec restricted_diff(const PdgAlgebra& E, const Vec& f, const Vec& g, const Vec& e) {
  return E.mul(E.mul(f, E.diff(E.mul(E.mul(f, g), e))), e);
}

RestrictedComplex restricted_diff_operator(const PdgAlgebra& E, const Vec& f, const Vec& e) {
  RestrictedComplex out;
  std::vector<Vec> gen;
  for (int i = 0; i < E.dim(); ++i) gen.push_back(E.mul(f, E.mul(E.basis_vec(i), e)));
  out.basis = homogeneous_basis(row_basis(gen, E.dim(), E.p()), E.space(), E.p());
  int n = static_cast<int>(out.basis.size());
  Matrix B(E.dim(), n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < E.dim(); ++r) B.at(r, c) = out.basis[c][r];
  out.op = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    Vec img = restricted_diff(E, f, out.basis[c], e);
    auto sol = solve(B, img, E.p());
    if (!sol) throw DimensionError("restricted_diff_operator: image escapes the subspace");
    for (int r = 0; r < n; ++r) out.op.at(r, c) = (*sol)[r];
  }
  return out;
}

RawAlgebra endomorphism_algebra(const TwistedObject& x) {
  HomComplex H = hom_complex(x, x);
  int n = H.space.dim();
  RawAlgebra raw;
  raw.p = x.A->p();
  raw.name = "end";
  raw.space = H.space;
  raw.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      raw.mul[i][j] = H.to_coords(mor_compose(slot_morphism(H, i), slot_morphism(H, j)));
  raw.diff.assign(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) raw.diff[i] = H.diff.matrix.col(i);
  raw.unit = H.to_coords(identity_morphism(x));
  raw.idempotents = {raw.unit};
  return raw;
}

SplitCompletionResult split_completion(const PdgAlgebra& A,
                                       const std::vector<SubquotientPair>& pairs) {
  SplitCompletionResult res;
  for (int i = 0; i < A.num_idempotents(); ++i)
    res.objects.push_back({i, A.idempotent(i), A.idempotent(i)});
  for (size_t k = 0; k < pairs.size(); ++k) {
    const auto& pr = pairs[k];
    if (pr.object < 0 || pr.object >= A.num_idempotents())
      throw DimensionError("split_completion: pair " + std::to_string(k + 1) +
                           " references an unknown object");
    if (!A.in_corner(pr.object, pr.e, pr.object) || !A.in_corner(pr.object, pr.w, pr.object))
      throw DimensionError("split_completion: pair " + std::to_string(k + 1) +
                           " lies outside its endomorphism corner");
    if (!check_subquotient(A, pr.e, pr.w).ok())
      throw DimensionError("split_completion: pair " + std::to_string(k + 1) +
                           " is not a subquotient idempotent");
    res.objects.push_back(pr);
  }
  int num = static_cast<int>(res.objects.size());
  int p = A.p();
  // Hom piece (src b -> tgt a) = e_a · A · e_b, with basis computed inside A.
  std::vector<std::vector<std::vector<Vec>>> piece_basis(
      num, std::vector<std::vector<Vec>>(num));
  res.piece_slots.assign(num, std::vector<std::vector<int>>(num));
  RawAlgebra& raw = res.raw;
  raw.p = p;
  raw.name = A.name().empty() ? "split" : "split(" + A.name() + ")";
  for (int a = 0; a < num; ++a)
    for (int b = 0; b < num; ++b) {
      std::vector<Vec> gen;
      for (int i = 0; i < A.dim(); ++i)
        gen.push_back(A.mul(res.objects[a].e, A.mul(A.basis_vec(i), res.objects[b].e)));
      piece_basis[a][b] = homogeneous_basis(row_basis(gen, A.dim(), p), A.space(), p);
      for (size_t i = 0; i < piece_basis[a][b].size(); ++i) {
        auto deg = A.element_degree(piece_basis[a][b][i]);
        raw.space.basis.push_back({"p" + std::to_string(a + 1) + "." + std::to_string(b + 1) +
                                       "." + std::to_string(i + 1),
                                   deg ? *deg : 0});
        res.piece_slots[a][b].push_back(raw.space.dim() - 1);
      }
    }
  int n = raw.space.dim();
  auto coords_in_piece = [&](int a, int b, const Vec& v) {
    Vec out(n, 0);
    const auto& basis = piece_basis[a][b];
    if (basis.empty()) {
      if (!is_zero(v)) throw DimensionError("split_completion: element escapes its hom piece");
      return out;
    }
    Matrix B(A.dim(), static_cast<int>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c)
      for (int r = 0; r < A.dim(); ++r) B.at(r, static_cast<int>(c)) = basis[c][r];
    auto sol = solve(B, v, p);
    if (!sol) throw DimensionError("split_completion: element escapes its hom piece");
    for (size_t c = 0; c < basis.size(); ++c) out[res.piece_slots[a][b][c]] = (*sol)[c];
    return out;
  };
  raw.mul.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  raw.diff.assign(n, Vec(n, 0));
  for (int a1 = 0; a1 < num; ++a1)
    for (int b1 = 0; b1 < num; ++b1)
      for (size_t i = 0; i < piece_basis[a1][b1].size(); ++i) {
        int si = res.piece_slots[a1][b1][i];
        // Restricted differential e_a d(g) e_b stays inside the piece.
        raw.diff[si] = coords_in_piece(
            a1, b1,
            A.mul(res.objects[a1].e, A.mul(A.diff(piece_basis[a1][b1][i]), res.objects[b1].e)));
        for (int a2 = 0; a2 < num; ++a2)
          for (int b2 = 0; b2 < num; ++b2)
            for (size_t j = 0; j < piece_basis[a2][b2].size(); ++j) {
              int sj = res.piece_slots[a2][b2][j];
              // Composition slot_i ∘ slot_j: defined when the middle objects agree.
              if (b1 != a2) continue;
              raw.mul[si][sj] =
                  coords_in_piece(a1, b2, A.mul(piece_basis[a1][b1][i], piece_basis[a2][b2][j]));
            }
      }
  raw.unit = Vec(n, 0);
  for (int o = 0; o < num; ++o) {
    Vec e = coords_in_piece(o, o, res.objects[o].e);
    raw.unit = vecadd(raw.unit, e, p);
    raw.idempotents.push_back(e);
  }
  return res;
}

void validate_presentation(const PresentedModule& m) {
  if (m.f.degree != 0 || !mor_is_zero(mor_diff(m.f)))
    throw DimensionError("presentation must be a closed degree-0 morphism");
}

int PresentedHom::dimension_at(int degree) const {
  int n = 0;
  for (const auto& b : space.basis)
    if (b.degree == degree) ++n;
  return n;
}

PresentedHom presented_hom(const PresentedModule& m, const PresentedModule& n) {
  validate_presentation(m);
  validate_presentation(n);
  const PdgAlgebra& A = *m.f.source.A;
  int p = A.p();
  const TwistedObject &X = m.f.source, &Y = m.f.target;
  const TwistedObject &Xp = n.f.source, &Yp = n.f.target;
  HomComplex H0 = hom_complex(X, Xp);
  HomComplex H1 = hom_complex(Y, Yp);
  HomComplex Heta = hom_complex(Y, Xp);
  HomComplex Hmix = hom_complex(X, Yp);
  Matrix pre_f = precompose_matrix(H1, Hmix, m.f);     // phi1 -> phi1 ∘ f
  Matrix post_fp = postcompose_matrix(H0, Hmix, n.f);  // phi0 -> f' ∘ phi0
  Matrix post_eta = postcompose_matrix(Heta, H1, n.f); // eta -> f' ∘ eta
  std::vector<int> degrees;
  for (const auto& b : H0.space.basis) degrees.push_back(b.degree);
  for (const auto& b : H1.space.basis) degrees.push_back(b.degree);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  struct DegreeData {
    std::vector<int> s0, s1;       // slot indices at this degree
    std::vector<Vec> reps;         // local coordinates (|s0| + |s1|)
    std::vector<Vec> subgroup;     // local basis of the factoring pairs
  };
  std::map<int, DegreeData> data;
  for (int d : degrees) {
    DegreeData dd;
    dd.s0 = degree_slots(H0, d);
    dd.s1 = degree_slots(H1, d);
    int local = static_cast<int>(dd.s0.size() + dd.s1.size());
    // Constraint phi1 ∘ f - f' ∘ phi0 = 0 on local coordinates (phi0 | phi1).
    Matrix C(Hmix.space.dim(), local);
    for (size_t c = 0; c < dd.s0.size(); ++c)
      for (int r = 0; r < C.rows(); ++r)
        C.at(r, static_cast<int>(c)) = fpnorm(-post_fp.at(r, dd.s0[c]), p);
    for (size_t c = 0; c < dd.s1.size(); ++c)
      for (int r = 0; r < C.rows(); ++r)
        C.at(r, static_cast<int>(dd.s0.size() + c)) = pre_f.at(r, dd.s1[c]);
    auto kernel = rref(C, p).kernel;
    // Subgroup: solutions whose phi1 part equals f' ∘ eta for some eta.
    auto se = degree_slots(Heta, d);
    int nk = static_cast<int>(kernel.size()), ne = static_cast<int>(se.size());
    Matrix M2(static_cast<int>(dd.s1.size()), nk + ne);
    for (int c = 0; c < nk; ++c)
      for (size_t r = 0; r < dd.s1.size(); ++r)
        M2.at(static_cast<int>(r), c) = kernel[c][dd.s0.size() + r];
    for (int c = 0; c < ne; ++c)
      for (size_t r = 0; r < dd.s1.size(); ++r)
        M2.at(static_cast<int>(r), nk + c) = fpnorm(-post_eta.at(dd.s1[r], se[c]), p);
    std::vector<Vec> sub;
    for (const Vec& k2 : rref(M2, p).kernel) {
      Vec v(local, 0);
      for (int c = 0; c < nk; ++c)
        if (k2[c] != 0) v = vecadd(v, vecscale(kernel[c], k2[c], p), p);
      if (!is_zero(v)) sub.push_back(v);
    }
    dd.subgroup = row_basis(sub, local, p);
    // Representatives: kernel vectors extending the subgroup span.
    std::vector<Vec> span = dd.subgroup;
    for (const Vec& k : kernel) {
      if (in_span(span, k, local, p)) continue;
      span.push_back(k);
      span = row_basis(span, local, p);
      dd.reps.push_back(k);
    }
    data[d] = std::move(dd);
  }
  PresentedHom out;
  std::vector<std::pair<int, int>> slot_index;  // (degree, rep index)
  for (int d : degrees) {
    for (size_t i = 0; i < data[d].reps.size(); ++i) {
      out.space.basis.push_back({"c" + std::to_string(out.space.basis.size() + 1), d});
      slot_index.emplace_back(d, static_cast<int>(i));
      const Vec& local = data[d].reps[i];
      Vec c0(H0.space.dim(), 0), c1(H1.space.dim(), 0);
      for (size_t j = 0; j < data[d].s0.size(); ++j) c0[data[d].s0[j]] = local[j];
      for (size_t j = 0; j < data[d].s1.size(); ++j) c1[data[d].s1[j]] = local[data[d].s0.size() + j];
      out.reps.emplace_back(H0.from_coords(c0, d), H1.from_coords(c1, d));
    }
  }
  int total = out.space.dim();
  Matrix D(total, total);
  for (int j = 0; j < total; ++j) {
    auto [d, i] = slot_index[j];
    const auto& pair = out.reps[j];
    Vec d0 = H0.to_coords(mor_diff(pair.first));
    Vec d1 = H1.to_coords(mor_diff(pair.second));
    auto it = data.find(d + 2);
    if (it == data.end()) {
      if (!is_zero(d0) || !is_zero(d1))
        throw DimensionError("presented_hom: differential escapes the degree window");
      continue;
    }
    DegreeData& dd = it->second;
    int local = static_cast<int>(dd.s0.size() + dd.s1.size());
    Vec v(local, 0);
    for (size_t c = 0; c < dd.s0.size(); ++c) v[c] = d0[dd.s0[c]];
    for (size_t c = 0; c < dd.s1.size(); ++c) v[dd.s0.size() + c] = d1[dd.s1[c]];
    // Express the class of v in the representative basis modulo the subgroup.
    int nr = static_cast<int>(dd.reps.size()), ns = static_cast<int>(dd.subgroup.size());
    Matrix B(local, nr + ns);
    for (int c = 0; c < nr; ++c)
      for (int r = 0; r < local; ++r) B.at(r, c) = dd.reps[c][r];
    for (int c = 0; c < ns; ++c)
      for (int r = 0; r < local; ++r) B.at(r, nr + c) = dd.subgroup[c][r];
    auto sol = solve(B, v, p);
    if (!sol) throw DimensionError("presented_hom: differential escapes the solution space");
    int base = 0;
    for (int jj = 0; jj < total; ++jj)
      if (slot_index[jj].first == d + 2 && slot_index[jj].second == 0) {
        base = jj;
        break;
      }
    for (int c = 0; c < nr; ++c) D.at(base + c, j) = (*sol)[c];
  }
  out.diff = LinearMap{out.space, out.space, 2, std::move(D)};
  return out;
}

}  // namespace pdgcat
