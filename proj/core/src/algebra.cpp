#include "pdgcat/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace pdgcat {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Vec raw_mul(const RawAlgebra& a, const Vec& x, const Vec& y) {
  int n = a.space.dim();
  Vec out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      long long c = static_cast<long long>(x[i]) * y[j] % a.p;
      const Vec& t = a.mul[i][j];
      for (int k = 0; k < n; ++k)
        if (t[k] != 0) out[k] = fpnorm(out[k] + c * t[k], a.p);
    }
  }
  return out;
}

Vec raw_diff(const RawAlgebra& a, const Vec& x) {
  int n = a.space.dim();
  Vec out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int k = 0; k < n; ++k)
      if (a.diff[i][k] != 0) out[k] = fpnorm(out[k] + static_cast<long long>(x[i]) * a.diff[i][k], a.p);
  }
  return out;
}

std::string fmt(const RawAlgebra& a, const Vec& x) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < a.space.dim(); ++i) {
    if (x[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (x[i] != 1) os << x[i] << "*";
    os << a.space.basis[i].label;
  }
  if (first) return "0";
  return os.str();
}

/// Degrees present in a vector (with nonzero coefficient).
std::vector<int> support_degrees(const RawAlgebra& a, const Vec& x) {
  std::vector<int> ds;
  for (int i = 0; i < a.space.dim(); ++i)
    if (x[i] != 0 && std::find(ds.begin(), ds.end(), a.space.basis[i].degree) == ds.end())
      ds.push_back(a.space.basis[i].degree);
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace

ValidationResult validate_algebra(const RawAlgebra& input) {
  ValidationResult res;
  RawAlgebra raw = input;
  auto fail = [&](const std::string& rule, const std::string& witness) {
    res.violations.push_back({rule, witness});
  };

  int n = raw.space.dim();
  if (!is_prime(raw.p)) {
    fail("prime", "p = " + std::to_string(raw.p) + " is not prime");
    return res;
  }
  if (n == 0) {
    fail("shape", "empty basis");
    return res;
  }
  // Shape checks first; further checks assume consistent dimensions.
  bool shape_ok = static_cast<int>(raw.mul.size()) == n && static_cast<int>(raw.diff.size()) == n &&
                  static_cast<int>(raw.unit.size()) == n;
  for (const auto& row : raw.mul)
    if (static_cast<int>(row.size()) != n) shape_ok = false;
  if (shape_ok)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (static_cast<int>(raw.mul[i][j].size()) != n) shape_ok = false;
      if (static_cast<int>(raw.diff[i].size()) != n) shape_ok = false;
    }
  for (const auto& e : raw.idempotents)
    if (static_cast<int>(e.size()) != n) shape_ok = false;
  if (!shape_ok) {
    fail("shape", "structure tensor dimensions do not match the basis");
    return res;
  }
  // Normalize all scalars mod p.
  for (auto& row : raw.mul)
    for (auto& v : row)
      for (int& c : v) c = fpnorm(c, raw.p);
  for (auto& v : raw.diff)
    for (int& c : v) c = fpnorm(c, raw.p);
  for (int& c : raw.unit) c = fpnorm(c, raw.p);
  for (auto& e : raw.idempotents)
    for (int& c : e) c = fpnorm(c, raw.p);
  if (raw.declared_radical)
    for (auto& v : *raw.declared_radical)
      for (int& c : v) c = fpnorm(c, raw.p);

  auto lbl = [&](int i) { return raw.space.basis[i].label; };

  // Grading of products and of the differential.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int want = raw.space.basis[i].degree + raw.space.basis[j].degree;
      for (int d : support_degrees(raw, raw.mul[i][j]))
        if (d != want)
          fail("grading", lbl(i) + "*" + lbl(j) + " has a component in degree " +
                              std::to_string(d) + ", expected " + std::to_string(want));
    }
    int wantd = raw.space.basis[i].degree + 2;
    for (int d : support_degrees(raw, raw.diff[i]))
      if (d != wantd)
        fail("grading", "d(" + lbl(i) + ") has a component in degree " + std::to_string(d) +
                            ", expected " + std::to_string(wantd));
  }

  // Unit.
  for (int i = 0; i < n; ++i) {
    Vec bi(n, 0);
    bi[i] = 1;
    if (raw_mul(raw, raw.unit, bi) != bi)
      fail("unit", "1*" + lbl(i) + " = " + fmt(raw, raw_mul(raw, raw.unit, bi)));
    if (raw_mul(raw, bi, raw.unit) != bi)
      fail("unit", lbl(i) + "*1 = " + fmt(raw, raw_mul(raw, bi, raw.unit)));
  }

  // Associativity over all basis triples.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec bk(n, 0);
        bk[k] = 1;
        Vec left = raw_mul(raw, raw.mul[i][j], bk);
        Vec bi(n, 0);
        bi[i] = 1;
        Vec right = raw_mul(raw, bi, raw.mul[j][k]);
        if (left != right) {
          fail("associativity", "(" + lbl(i) + "*" + lbl(j) + ")*" + lbl(k) + " = " +
                                    fmt(raw, left) + " but " + lbl(i) + "*(" + lbl(j) + "*" +
                                    lbl(k) + ") = " + fmt(raw, right));
          if (res.violations.size() > 40) goto after_assoc;  // keep reports readable
        }
      }
after_assoc:

  // Leibniz rule on all basis pairs.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec bi(n, 0), bj(n, 0);
      bi[i] = 1;
      bj[j] = 1;
      Vec lhs = raw_diff(raw, raw.mul[i][j]);
      Vec rhs = vecadd(raw_mul(raw, raw.diff[i], bj), raw_mul(raw, bi, raw.diff[j]), raw.p);
      if (lhs != rhs)
        fail("leibniz", "d(" + lbl(i) + "*" + lbl(j) + ") = " + fmt(raw, lhs) +
                            " but d(a)b + a d(b) = " + fmt(raw, rhs));
    }

  // d^p = 0.
  {
    Matrix D(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) D.at(i, j) = raw.diff[j][i];
    Matrix Dp = matpow(D, raw.p, raw.p);
    if (!is_zero(Dp)) {
      for (int j = 0; j < n; ++j) {
        if (!is_zero(Dp.col(j))) {
          fail("p-nilpotency", "d^" + std::to_string(raw.p) + "(" + lbl(j) + ") = " +
                                   fmt(raw, Dp.col(j)));
          break;
        }
      }
    }
  }

  // Idempotents: orthogonal, idempotent, degree 0, killed by d, summing to 1.
  if (raw.idempotents.empty()) fail("idempotents", "no idempotents declared");
  {
    Vec sum(n, 0);
    for (size_t i = 0; i < raw.idempotents.size(); ++i) {
      const Vec& ei = raw.idempotents[i];
      sum = vecadd(sum, ei, raw.p);
      for (int d : support_degrees(raw, ei))
        if (d != 0)
          fail("idempotents", "e" + std::to_string(i + 1) + " has a degree-" + std::to_string(d) +
                                  " component");
      if (!is_zero(raw_diff(raw, ei)))
        fail("idempotents",
             "d(e" + std::to_string(i + 1) + ") = " + fmt(raw, raw_diff(raw, ei)));
      for (size_t j = 0; j < raw.idempotents.size(); ++j) {
        Vec prod = raw_mul(raw, ei, raw.idempotents[j]);
        Vec want = (i == j) ? ei : Vec(n, 0);
        if (prod != want)
          fail("idempotents", "e" + std::to_string(i + 1) + "*e" + std::to_string(j + 1) + " = " +
                                  fmt(raw, prod));
      }
    }
    if (!raw.idempotents.empty() && sum != raw.unit)
      fail("idempotents", "sum of idempotents = " + fmt(raw, sum) + ", unit = " + fmt(raw, raw.unit));
  }

  if (res.violations.empty()) res.algebra = PdgAlgebra(std::move(raw));
  return res;
}

PdgAlgebra::PdgAlgebra(RawAlgebra raw) : raw_(std::move(raw)) {
  int r = num_idempotents();
  int n = dim();
  // Pierce corner bases.
  corners_.assign(r, std::vector<std::vector<Vec>>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      std::vector<Vec> imgs;
      for (int k = 0; k < n; ++k) {
        Vec bk(n, 0);
        bk[k] = 1;
        Vec pr = mul(mul(idempotent(i), bk), idempotent(j));
        if (!is_zero(pr)) imgs.push_back(pr);
      }
      std::vector<Vec> basis = row_basis(imgs, n, raw_.p);
      // Each echelon row is homogeneous iff its support is; split just in case
      // the corner mixes degrees across basis vectors (it cannot within one
      // homogeneous component, but input bases need not be degree-sorted).
      std::vector<Vec> homog;
      for (const Vec& v : basis) {
        std::map<int, Vec> parts;
        for (int k = 0; k < n; ++k)
          if (v[k] != 0) {
            auto& part = parts.try_emplace(raw_.space.basis[k].degree, Vec(n, 0)).first->second;
            part[k] = v[k];
          }
        for (auto& [d, part] : parts) homog.push_back(part);
      }
      homog = row_basis(homog, n, raw_.p);
      std::stable_sort(homog.begin(), homog.end(), [&](const Vec& a, const Vec& b) {
        return *element_degree(a) < *element_degree(b);
      });
      corners_[i][j] = std::move(homog);
    }
  // Block decomposition (union-find over the idempotent graph).
  block_of_.assign(r, -1);
  std::vector<int> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && (!corners_[i][j].empty() || !corners_[j][i].empty()))
        parent[find(i)] = find(j);
  int next = 0;
  for (int i = 0; i < r; ++i) {
    int root = find(i);
    if (block_of_[root] < 0) block_of_[root] = next++;
    block_of_[i] = block_of_[root];
  }
  num_blocks_ = next;
}

Vec PdgAlgebra::mul(const Vec& x, const Vec& y) const { return raw_mul(raw_, x, y); }
Vec PdgAlgebra::diff(const Vec& x) const { return raw_diff(raw_, x); }

Vec PdgAlgebra::diff_iter(const Vec& x, int times) const {
  Vec v = x;
  for (int i = 0; i < times; ++i) v = diff(v);
  return v;
}

Matrix PdgAlgebra::diff_matrix() const {
  int n = dim();
  Matrix D(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) D.at(i, j) = raw_.diff[j][i];
  return D;
}

std::optional<int> PdgAlgebra::element_degree(const Vec& x) const {
  std::vector<int> ds = support_degrees(raw_, x);
  if (ds.size() == 1) return ds[0];
  return std::nullopt;
}

Vec PdgAlgebra::basis_vec(int i) const {
  Vec v(dim(), 0);
  v[i] = 1;
  return v;
}

std::optional<int> PdgAlgebra::basis_index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (raw_.space.basis[i].label == label) return i;
  return std::nullopt;
}

std::string PdgAlgebra::format_element(const Vec& x) const { return fmt(raw_, x); }

Vec PdgAlgebra::corner_project(int i, const Vec& x, int j) const {
  return mul(mul(idempotent(i), x), idempotent(j));
}

const std::vector<Vec>& PdgAlgebra::corner_basis(int i, int j) const { return corners_[i][j]; }

std::vector<Vec> PdgAlgebra::corner_basis_decreasing(int i, int j) const {
  std::vector<Vec> v = corners_[i][j];
  std::stable_sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
    return *element_degree(a) > *element_degree(b);
  });
  return v;
}

std::vector<std::pair<int, int>> PdgAlgebra::corner_graded_dimension(int i, int j) const {
  std::map<int, int> m;
  for (const Vec& v : corners_[i][j]) ++m[*element_degree(v)];
  return {m.begin(), m.end()};
}

bool PdgAlgebra::in_corner(int i, const Vec& x, int j) const {
  return corner_project(i, x, j) == x;
}

IsoClasses PdgAlgebra::iso_classes() const {
  int r = num_idempotents();
  IsoClasses out;
  out.class_of.assign(r, -1);
  out.alpha.assign(r, Vec(dim(), 0));
  out.beta.assign(r, Vec(dim(), 0));

  // Degree-0 corner bases.
  auto deg0 = [&](int i, int j) {
    std::vector<Vec> v;
    for (const Vec& b : corners_[i][j])
      if (*element_degree(b) == 0) v.push_back(b);
    return v;
  };

  // Witness search: a in (e_iAe_j)_0 with a*b = e_i, b*a = e_j for some
  // degree-0 b.  For each candidate a, b is found by a linear solve.
  auto find_witness = [&](int i, int j, Vec& a_out, Vec& b_out) -> bool {
    std::vector<Vec> ab = deg0(i, j), bb = deg0(j, i);
    if (ab.empty() || bb.empty()) return false;
    if (ab.size() > 3 || bb.size() > 3)
      throw DimensionError(
          "iso_classes: degree-0 corner dimension exceeds the supported brute-force bound (3)");
    int m = static_cast<int>(ab.size());
    long long total = 1;
    for (int k = 0; k < m; ++k) total *= p();
    for (long long code = 1; code < total; ++code) {
      long long c = code;
      Vec a(dim(), 0);
      for (int k = 0; k < m; ++k) {
        int coef = static_cast<int>(c % p());
        c /= p();
        if (coef) a = vecadd(a, vecscale(ab[k], coef, p()), p());
      }
      // Solve a * (sum x_k bb_k) = e_i in the linear unknowns x.
      Matrix sys(dim(), static_cast<int>(bb.size()));
      for (size_t k = 0; k < bb.size(); ++k) {
        Vec col = mul(a, bb[k]);
        for (int rr = 0; rr < dim(); ++rr) sys.at(rr, static_cast<int>(k)) = col[rr];
      }
      auto sol = solve(sys, idempotent(i), p());
      if (!sol) continue;
      Vec b(dim(), 0);
      for (size_t k = 0; k < bb.size(); ++k)
        if ((*sol)[k]) b = vecadd(b, vecscale(bb[k], (*sol)[k], p()), p());
      if (mul(b, a) == idempotent(j)) {
        a_out = a;
        b_out = b;
        return true;
      }
    }
    return false;
  };

  for (int i = 0; i < r; ++i) {
    if (out.class_of[i] >= 0) continue;
    int cid = static_cast<int>(out.members.size());
    out.class_of[i] = cid;
    out.members.push_back({i});
    out.representative.push_back(i);
    out.alpha[i] = idempotent(i);
    out.beta[i] = idempotent(i);
    for (int j = i + 1; j < r; ++j) {
      if (out.class_of[j] >= 0) continue;
      Vec a, b;
      if (find_witness(j, i, a, b)) {  // a in e_jAe_i: alpha[j], with a*b = e_j, b*a = e_i
        out.class_of[j] = cid;
        out.members[cid].push_back(j);
        out.alpha[j] = a;
        out.beta[j] = b;
      }
    }
  }
  return out;
}

std::vector<Vec> span_products(const PdgAlgebra& A, const std::vector<Vec>& us,
                               const std::vector<Vec>& vs) {
  std::vector<Vec> prods;
  for (const Vec& u : us)
    for (const Vec& v : vs) {
      Vec w = A.mul(u, v);
      if (!is_zero(w)) prods.push_back(w);
    }
  return row_basis(prods, A.dim(), A.p());
}

namespace {

/// Verify that N is an ideal, nilpotent, and that A/N is semisimple in the
/// sense that every Pierce corner of the quotient has dimension 1 within an
/// iso class and 0 across classes.
void verify_radical(const PdgAlgebra& A, const std::vector<Vec>& N, const IsoClasses& cls,
                    std::vector<Violation>& out) {
  int n = A.dim();
  std::vector<Vec> basisN = row_basis(N, n, A.p());
  // Ideal property.
  for (int k = 0; k < n; ++k) {
    Vec bk = A.basis_vec(k);
    for (const Vec& v : basisN) {
      if (!in_span(basisN, A.mul(bk, v), n, A.p())) {
        out.push_back({"radical-ideal", A.format_element(bk) + " * (" + A.format_element(v) +
                                            ") leaves the candidate radical"});
        return;
      }
      if (!in_span(basisN, A.mul(v, bk), n, A.p())) {
        out.push_back({"radical-ideal", "(" + A.format_element(v) + ") * " + A.format_element(bk) +
                                            " leaves the candidate radical"});
        return;
      }
    }
  }
  // Nilpotency: powers of the span must reach zero within dim+1 steps.
  std::vector<Vec> power = basisN;
  int steps = 1;
  while (!power.empty() && steps <= A.dim() + 1) {
    power = span_products(A, power, basisN);
    ++steps;
  }
  if (!power.empty()) {
    out.push_back({"radical-nilpotency",
                   "candidate radical is not nilpotent; N^" + std::to_string(steps) +
                       " still contains " + A.format_element(power.front())});
    return;
  }
  // Semisimple quotient: dim(e_i (A/N) e_j) is 1 within an iso class, 0 across.
  for (int i = 0; i < A.num_idempotents(); ++i)
    for (int j = 0; j < A.num_idempotents(); ++j) {
      QuotientResult q = subspace_quotient(n, basisN, A.corner_basis(i, j), A.p());
      std::vector<Vec> reps;
      for (const Vec& r : q.representatives)
        reps.push_back(r);
      int d = static_cast<int>(row_basis(reps, q.quotient_dim, A.p()).size());
      int want = (cls.class_of[i] == cls.class_of[j]) ? 1 : 0;
      if (d != want)
        out.push_back({"radical-quotient",
                       "dim e" + std::to_string(i + 1) + "(A/N)e" + std::to_string(j + 1) + " = " +
                           std::to_string(d) + ", expected " + std::to_string(want)});
    }
}

}  // namespace

RadicalResult PdgAlgebra::radical() const {
  RadicalResult res;
  IsoClasses cls = iso_classes();
  if (raw_.declared_radical) {
    res.declared = true;
    res.basis = row_basis(*raw_.declared_radical, dim(), p());
    verify_radical(*this, res.basis, cls, res.violations);
    return res;
  }

  std::vector<Vec> gens;
  // Cross-class corners lie in the radical entirely.
  for (int i = 0; i < num_idempotents(); ++i)
    for (int j = 0; j < num_idempotents(); ++j)
      if (cls.class_of[i] != cls.class_of[j])
        for (const Vec& v : corners_[i][j]) gens.push_back(v);

  // Radical of each representative's local corner, via the eigenvalue search:
  // for basis element a, the unique c with (a - c*e)^(dim+1) = 0.
  for (size_t cid = 0; cid < cls.members.size(); ++cid) {
    int r = cls.representative[cid];
    const std::vector<Vec>& corner = corners_[r][r];
    std::vector<Vec> rad_loc;
    for (const Vec& a : corner) {
      std::optional<Vec> nil;
      for (int c = 0; c < p(); ++c) {
        Vec cand = vecsub(a, vecscale(idempotent(r), c, p()), p());
        Vec pw = idempotent(r);
        bool zero = is_zero(cand);
        for (int e = 0; e < dim() + 1 && !zero; ++e) {
          pw = mul(pw, cand);
          zero = is_zero(pw);
        }
        if (zero) {
          nil = cand;
          break;
        }
      }
      if (!nil)
        throw DimensionError(
            "radical: local corner at idempotent " + std::to_string(r + 1) +
            " is not split local; supply a declared radical");
      if (!is_zero(*nil)) rad_loc.push_back(*nil);
    }
    rad_loc = row_basis(rad_loc, dim(), p());
    // Transport to every corner within the class via the iso witnesses:
    // x in e_iAe_j is radical iff beta_i x alpha_j lies in rad_loc, so the
    // radical part of e_iAe_j is alpha_i * rad_loc * beta_j.
    for (int i : cls.members[cid])
      for (int j : cls.members[cid])
        for (const Vec& y : rad_loc) {
          Vec v = mul(mul(cls.alpha[i], y), cls.beta[j]);
          if (!is_zero(v)) gens.push_back(v);
        }
  }

  res.basis = row_basis(gens, dim(), p());
  verify_radical(*this, res.basis, cls, res.violations);
  return res;
}

std::vector<Vec> PdgAlgebra::center() const {
  // Solve z*b_k = b_k*z for all k; the solution space is graded, so split the
  // kernel into homogeneous parts at the end.
  int n = dim();
  std::vector<Vec> rows;
  for (int k = 0; k < n; ++k) {
    // Constraint rows: for each output coordinate m, sum_j z_j*(L_k - R_k)[m][j] = 0
    Matrix con(n, n);
    for (int j = 0; j < n; ++j) {
      Vec bj = basis_vec(j);
      Vec diff_jk = vecsub(mul(bj, basis_vec(k)), mul(basis_vec(k), bj), p());
      for (int m = 0; m < n; ++m) con.at(m, j) = diff_jk[m];
    }
    for (int m = 0; m < n; ++m) rows.push_back(con.row(m));
  }
  Matrix sys = Matrix::from_rows(rows, n);
  RrefResult rr = rref(sys, p());
  std::vector<Vec> homog;
  for (const Vec& z : rr.kernel) {
    std::map<int, Vec> parts;
    for (int k = 0; k < n; ++k)
      if (z[k] != 0) {
        auto& part = parts.try_emplace(raw_.space.basis[k].degree, Vec(n, 0)).first->second;
        part[k] = z[k];
      }
    for (auto& [d, part] : parts) homog.push_back(part);
  }
  homog = row_basis(homog, n, p());
  std::stable_sort(homog.begin(), homog.end(), [&](const Vec& a, const Vec& b) {
    return *element_degree(a) < *element_degree(b);
  });
  return homog;
}

std::vector<int> PdgAlgebra::blocks() const { return block_of_; }
int PdgAlgebra::num_blocks() const { return num_blocks_; }
int PdgAlgebra::block_of(int idem) const { return block_of_[idem]; }

}  // namespace pdgcat
