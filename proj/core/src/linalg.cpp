#include "pdgcat/linalg.hpp"

#include <algorithm>

namespace pdgcat {

int fpinv(int a, int p) {
  a = fpnorm(a, p);
  if (a == 0) throw DimensionError("fpinv: zero is not invertible");
  // Fermat: a^(p-2) mod p.
  return fppow(a, p - 2, p);
}

int fppow(int a, long long e, int p) {
  long long base = fpnorm(a, p), acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw DimensionError("from_rows: ragged row");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row(int r) const {
  Vec v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

Vec Matrix::col(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b, int p) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
  Matrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      int aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        r.at(i, j) = static_cast<int>((r.at(i, j) + static_cast<long long>(aik) * b.at(k, j)) % p);
    }
  return r;
}

Matrix matadd(const Matrix& a, const Matrix& b, int p) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matadd: shape mismatch");
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = fpnorm(a.at(i, j) + b.at(i, j), p);
  return r;
}

Matrix matscale(const Matrix& a, int c, int p) {
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = fpnorm(static_cast<long long>(a.at(i, j)) * c, p);
  return r;
}

Matrix matpow(const Matrix& a, int e, int p) {
  if (a.rows() != a.cols()) throw DimensionError("matpow: non-square");
  Matrix acc = Matrix::identity(a.rows());
  for (int i = 0; i < e; ++i) acc = matmul(acc, a, p);
  return acc;
}

Vec matvec(const Matrix& a, const Vec& v, int p) {
  if (a.cols() != static_cast<int>(v.size())) throw DimensionError("matvec: shape mismatch");
  Vec r(a.rows(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    long long s = 0;
    for (int j = 0; j < a.cols(); ++j) s += static_cast<long long>(a.at(i, j)) * v[j];
    r[i] = fpnorm(s, p);
  }
  return r;
}

bool is_zero(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) return false;
  return true;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

Vec vecadd(const Vec& a, const Vec& b, int p) {
  if (a.size() != b.size()) throw DimensionError("vecadd: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = fpnorm(a[i] + b[i], p);
  return r;
}

Vec vecsub(const Vec& a, const Vec& b, int p) {
  if (a.size() != b.size()) throw DimensionError("vecsub: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = fpnorm(a[i] - b[i], p);
  return r;
}

Vec vecscale(const Vec& a, int c, int p) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = fpnorm(static_cast<long long>(a[i]) * c, p);
  return r;
}

RrefResult rref(const Matrix& m, int p) {
  RrefResult res;
  res.rref = m;
  Matrix& a = res.rref;
  int lead = 0;
  for (int r = 0; r < a.rows() && lead < a.cols(); ++r) {
    int pr = -1;
    while (lead < a.cols()) {
      for (int i = r; i < a.rows(); ++i)
        if (a.at(i, lead) != 0) { pr = i; break; }
      if (pr >= 0) break;
      ++lead;
    }
    if (pr < 0) break;
    if (pr != r)
      for (int c = 0; c < a.cols(); ++c) std::swap(a.at(pr, c), a.at(r, c));
    int inv = fpinv(a.at(r, lead), p);
    for (int c = 0; c < a.cols(); ++c)
      a.at(r, c) = fpnorm(static_cast<long long>(a.at(r, c)) * inv, p);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      int f = a.at(i, lead);
      if (f == 0) continue;
      for (int c = 0; c < a.cols(); ++c)
        a.at(i, c) = fpnorm(a.at(i, c) - static_cast<long long>(f) * a.at(r, c), p);
    }
    res.pivots.push_back(lead);
    ++lead;
  }
  res.rank = static_cast<int>(res.pivots.size());
  // Kernel basis: one vector per free column.
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : res.pivots) is_pivot[c] = true;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec k(a.cols(), 0);
    k[c] = 1;
    for (int r = 0; r < res.rank; ++r)
      k[res.pivots[r]] = fpnorm(-a.at(r, c), p);
    res.kernel.push_back(std::move(k));
  }
  return res;
}

int rank(const Matrix& m, int p) { return rref(m, p).rank; }

std::optional<Vec> solve(const Matrix& m, const Vec& b, int p) {
  if (static_cast<int>(b.size()) != m.rows())
    throw DimensionError("solve: rhs length does not match row count");
  // Eliminate on the augmented matrix.
  Matrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = fpnorm(b[r], p);
  }
  RrefResult rr = rref(aug, p);
  Vec x(m.cols(), 0);
  for (int r = 0; r < rr.rank; ++r) {
    if (rr.pivots[r] == m.cols()) return std::nullopt;  // pivot in rhs column: inconsistent
    x[rr.pivots[r]] = rr.rref.at(r, m.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m, int p) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: non-square");
  int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  RrefResult rr = rref(aug, p);
  if (rr.rank < n || rr.pivots[n - 1] >= n) return std::nullopt;
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = rr.rref.at(r, n + c);
  return inv;
}

Matrix restrict_columns(const Matrix& m, const std::vector<int>& cols) {
  Matrix out(m.rows(), static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < m.rows(); ++r) out.at(r, static_cast<int>(c)) = m.at(r, cols[c]);
  return out;
}

Matrix stack_rows(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("stack_rows: column count mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out.at(a.rows() + r, c) = b.at(r, c);
  return out;
}

Vec concat_vec(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Vec> row_basis(const std::vector<Vec>& vectors, int ambient_dim, int p) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_rows(vectors, ambient_dim);
  RrefResult rr = rref(m, p);
  std::vector<Vec> out;
  for (int r = 0; r < rr.rank; ++r) out.push_back(rr.rref.row(r));
  return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, int ambient_dim, int p) {
  if (is_zero(v)) return true;
  std::vector<Vec> rows = basis;
  int r0 = static_cast<int>(row_basis(rows, ambient_dim, p).size());
  rows.push_back(v);
  return static_cast<int>(row_basis(rows, ambient_dim, p).size()) == r0;
}

QuotientResult subspace_quotient(int ambient_dim, const std::vector<Vec>& subspace,
                                 const std::vector<Vec>& vectors, int p) {
  QuotientResult res;
  std::vector<Vec> sub = row_basis(subspace, ambient_dim, p);
  // Pivot columns of the subspace; all other coordinates span a complement.
  std::vector<bool> is_pivot(ambient_dim, false);
  std::vector<int> pivots;
  for (const Vec& row : sub) {
    int c = 0;
    while (c < ambient_dim && row[c] == 0) ++c;
    pivots.push_back(c);
    is_pivot[c] = true;
  }
  for (int c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) res.complement_coords.push_back(c);
  res.quotient_dim = ambient_dim - static_cast<int>(sub.size());
  for (const Vec& v : vectors) {
    if (static_cast<int>(v.size()) != ambient_dim)
      throw DimensionError("subspace_quotient: vector length mismatch");
    // Reduce v modulo the subspace rows, then read off complement coordinates.
    Vec w = v;
    for (size_t i = 0; i < sub.size(); ++i) {
      int f = w[pivots[i]];
      if (f == 0) continue;
      for (int c = 0; c < ambient_dim; ++c)
        w[c] = fpnorm(w[c] - static_cast<long long>(f) * sub[i][c], p);
    }
    Vec rep(res.quotient_dim);
    for (int k = 0; k < res.quotient_dim; ++k) rep[k] = w[res.complement_coords[k]];
    res.representatives.push_back(std::move(rep));
  }
  return res;
}

}  // namespace pdgcat
