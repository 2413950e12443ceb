// Dense exact linear algebra over a prime field F_p.
//
// Scalars are integer residues in [0, p); the modulus is passed explicitly so
// data for different primes can coexist.  All functions are pure.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdgcat {

using Vec = std::vector<int>;

/// Thrown on shape mismatches and invalid moduli.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalize an integer into [0, p).
inline int fpnorm(long long v, int p) {
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

int fpinv(int a, int p);  ///< Multiplicative inverse; throws on a == 0 mod p.
int fppow(int a, long long e, int p);

/// Dense row-major matrix over F_p.  Entries are kept normalized to [0, p).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  Vec row(int r) const;
  Vec col(int c) const;
  Matrix transposed() const;

  bool operator==(const Matrix& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b, int p);
Matrix matadd(const Matrix& a, const Matrix& b, int p);
Matrix matscale(const Matrix& a, int c, int p);
Matrix matpow(const Matrix& a, int e, int p);
Vec matvec(const Matrix& a, const Vec& v, int p);
bool is_zero(const Matrix& a);
bool is_zero(const Vec& v);

Vec vecadd(const Vec& a, const Vec& b, int p);
Vec vecsub(const Vec& a, const Vec& b, int p);
Vec vecscale(const Vec& a, int c, int p);

/// Result of Gaussian elimination.
struct RrefResult {
  Matrix rref;              ///< Reduced row-echelon form.
  int rank = 0;
  std::vector<int> pivots;  ///< Pivot column per nonzero row.
  std::vector<Vec> kernel;  ///< Basis of the right null space.
};

RrefResult rref(const Matrix& m, int p);
int rank(const Matrix& m, int p);

/// Least solution of m·x = b, if any.  Shape mismatch throws DimensionError.
std::optional<Vec> solve(const Matrix& m, const Vec& b, int p);

/// Inverse of a square matrix, if invertible.
std::optional<Matrix> inverse(const Matrix& m, int p);

/// Copy of selected columns, in the given order.
Matrix restrict_columns(const Matrix& m, const std::vector<int>& cols);

/// Vertical concatenation; column counts must agree.
Matrix stack_rows(const Matrix& a, const Matrix& b);

Vec concat_vec(const Vec& a, const Vec& b);

/// Row space basis (as reduced echelon rows, zero rows dropped).
std::vector<Vec> row_basis(const std::vector<Vec>& vectors, int ambient_dim, int p);

/// Does `v` lie in the span of `basis`?
bool in_span(const std::vector<Vec>& basis, const Vec& v, int ambient_dim, int p);

/// Quotient of F_p^ambient_dim by span(subspace).  Returns the quotient
/// dimension and, for each input vector, coordinates of its class in a fixed
/// complement basis (the non-pivot coordinates after reduction).
struct QuotientResult {
  int quotient_dim = 0;
  std::vector<int> complement_coords;  ///< Ambient coordinates spanning the complement.
  std::vector<Vec> representatives;    ///< One vector of length quotient_dim per input.
};

QuotientResult subspace_quotient(int ambient_dim, const std::vector<Vec>& subspace,
                                 const std::vector<Vec>& vectors, int p);

}  // namespace pdgcat
