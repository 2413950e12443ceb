#include "pdgcat/sampling.hpp"

#include <stdexcept>

#include "pdgcat/linalg.hpp"

namespace pdgcat {
namespace {

std::vector<Generator> random_generators(const PdgAlgebra& A, std::mt19937& rng, int max_gens,
                                         int shift_span) {
  int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gens));
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) {
    Generator g;
    g.idem = static_cast<int>(rng() % static_cast<unsigned>(A.num_idempotents()));
    g.shift = 2 * static_cast<int>(rng() % static_cast<unsigned>(shift_span / 2 + 1));
    gens.push_back(g);
  }
  return gens;
}

/// Random homogeneous element of e_i A e_j with the given degree (possibly 0).
Vec random_corner_element(const PdgAlgebra& A, int i, int j, int degree, std::mt19937& rng) {
  Vec out(A.dim(), 0);
  for (const Vec& b : A.corner_basis(i, j)) {
    if (A.element_degree(b).value_or(1 << 20) != degree) continue;
    int c = static_cast<int>(rng() % static_cast<unsigned>(A.p()));
    if (c != 0) out = vecadd(out, vecscale(b, c, A.p()), A.p());
  }
  return out;
}

using VMat = std::vector<std::vector<Vec>>;

VMat vm_zero(const PdgAlgebra& A, int n) {
  return VMat(n, std::vector<Vec>(n, Vec(A.dim(), 0)));
}

VMat vm_identity(const PdgAlgebra& A, const std::vector<Generator>& gens) {
  VMat m = vm_zero(A, static_cast<int>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) m[i][i] = A.idempotent(gens[i].idem);
  return m;
}

VMat vm_mul(const PdgAlgebra& A, const VMat& a, const VMat& b) {
  const int n = static_cast<int>(a.size());
  VMat out = vm_zero(A, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out[i][j] = vecadd(out[i][j], A.mul(a[i][k], b[k][j]), A.p());
  return out;
}

VMat vm_add(const PdgAlgebra& A, const VMat& a, const VMat& b, int scale_b) {
  const int n = static_cast<int>(a.size());
  VMat out = vm_zero(A, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i][j] = vecadd(a[i][j], vecscale(b[i][j], scale_b, A.p()), A.p());
  return out;
}

VMat vm_diff(const PdgAlgebra& A, const VMat& a) {
  const int n = static_cast<int>(a.size());
  VMat out = vm_zero(A, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = A.diff(a[i][j]);
  return out;
}

}  // namespace

TwistedObject random_twisted_object(AlgebraPtr A, std::mt19937& rng, int max_gens,
                                    int shift_span) {
  const PdgAlgebra& alg = *A;
  std::vector<Generator> gens = random_generators(alg, rng, max_gens, shift_span);
  const int n = static_cast<int>(gens.size());

  // h = id + strictly upper nilpotent part with degree-0 entries
  VMat nu = vm_zero(alg, n);
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      nu[r][c] = random_corner_element(alg, gens[r].idem, gens[c].idem,
                                       gens[r].shift - gens[c].shift, rng);
  VMat h = vm_add(alg, vm_identity(alg, gens), nu, 1);

  // h^-1 = id - nu + nu^2 - ... (nu is nilpotent of order <= n)
  VMat hinv = vm_identity(alg, gens);
  VMat power = nu;
  int sign = alg.p() - 1;
  for (int k = 1; k < n; ++k) {
    hinv = vm_add(alg, hinv, power, sign);
    power = vm_mul(alg, power, nu);
    sign = (alg.p() - sign) % alg.p();
  }

  // alpha' = h d(h^-1) (gauge of the zero twist)
  VMat alpha = vm_mul(alg, h, vm_diff(alg, hinv));
  TwistedObject x = make_object(A, gens, alpha);
  TwistedValidation v = validate_twisted(x);
  if (!v.ok())
    throw std::logic_error("random_twisted_object: gauge of a zero twist failed validation: " +
                           v.violations.front().rule);
  return x;
}

TwistedObject random_twist_candidate(AlgebraPtr A, std::mt19937& rng, int max_gens,
                                     int shift_span) {
  const PdgAlgebra& alg = *A;
  std::vector<Generator> gens = random_generators(alg, rng, max_gens, shift_span);
  const int n = static_cast<int>(gens.size());
  VMat alpha = vm_zero(alg, n);
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      alpha[r][c] = random_corner_element(alg, gens[r].idem, gens[c].idem,
                                          2 + gens[r].shift - gens[c].shift, rng);
  return make_object(A, gens, alpha);
}

std::optional<TwistedMorphism> random_closed_morphism(const TwistedObject& x,
                                                      const TwistedObject& y, int degree,
                                                      std::mt19937& rng) {
  HomComplex H = hom_complex(x, y);
  std::vector<TwistedMorphism> basis = closed_morphisms(H, degree);
  if (basis.empty()) return std::nullopt;
  const int p = x.A->p();
  TwistedMorphism out = zero_morphism(x, y, degree);
  bool nonzero = false;
  for (const TwistedMorphism& b : basis) {
    int c = static_cast<int>(rng() % static_cast<unsigned>(p));
    if (c == 0) continue;
    out = mor_add(out, mor_scale(b, c));
    nonzero = true;
  }
  if (!nonzero) out = mor_add(out, basis[0]);  // avoid the zero draw
  return out;
}

}  // namespace pdgcat
