// Built-in example algebras.  All constructions pass validate_algebra.
#pragma once

#include <memory>
#include <string>

#include "pdgcat/algebra.hpp"
#include "pdgcat/twisted.hpp"

namespace pdgcat {

/// Truncated polynomial algebra k[x]/(x^n) over F_p with deg x = 2 and
/// d(x) = x^2.  Requires 1 <= n <= p.
RawAlgebra example_kx(int p = 3, int n = 3);

/// Variant of `example_kx` with deg x = -2 and d(x) = 1.
RawAlgebra example_kx_paper_variant(int p = 3, int n = 3);

/// Product of r copies of F_p in degree 0, zero differential.
RawAlgebra example_semisimple(int p = 3, int r = 2);

/// Product F_p x k[x]/(x^lambda) x F_p (cohomology rings of the point, the
/// projective space and the point) with deg x = 2 and d(x) = x^2.
/// Only lambda in {1, 2} is built in; larger lambda needs a user file for the
/// middle pieces and throws DimensionError.
RawAlgebra example_coinvariant(int p = 3, int lambda = 2);

/// Build by name: kx | kx-paper-variant | semisimple | coinvariant.
/// Throws DimensionError on an unknown name.
RawAlgebra builtin_example(const std::string& name, int p, int param);

/// Opposite algebra: same space and differential, reversed multiplication.
RawAlgebra op_algebra(const RawAlgebra& a);

/// Tensor product algebra (a ⊗ b)(c ⊗ d) = ac ⊗ bd with the componentwise
/// differential; idempotents are all products e_i ⊗ f_j.  Bimodules over A are
/// right modules over op(A) ⊗ A.
RawAlgebra tensor_algebra(const RawAlgebra& a, const RawAlgebra& b);

/// Validate a raw algebra and wrap it in a shared pointer; throws
/// DimensionError with the first violation if validation fails.
AlgebraPtr make_algebra(const RawAlgebra& raw);

}  // namespace pdgcat
