#include "pdgcat/cells.hpp"

#include <optional>
#include <set>
#include <utility>

#include "pdgcat/graded.hpp"
#include "pdgcat/linalg.hpp"

namespace pdgcat {
namespace {

Vec block_unit_vec(const PdgAlgebra& A, int block) {
  Vec u(A.dim(), 0);
  for (int i = 0; i < A.num_idempotents(); ++i)
    if (A.block_of(i) == block) u = vecadd(u, A.idempotent(i), A.p());
  return u;
}

std::vector<Vec> block_center_basis(const PdgAlgebra& A, int block) {
  Vec u = block_unit_vec(A, block);
  std::vector<Vec> cut;
  for (const Vec& z : A.center()) cut.push_back(A.mul(z, u));
  return homogeneous_basis(cut, A.space(), A.p());
}

// The identity 1-morphism of a block is indecomposable exactly when the block
// center has no idempotents besides 0 and the block unit.  The center is
// small, so enumerate it.
void check_identity_local(const PdgAlgebra& A, int block) {
  std::vector<Vec> zb = block_center_basis(A, block);
  const int k = static_cast<int>(zb.size());
  long combos = 1;
  for (int i = 0; i < k; ++i) {
    combos *= A.p();
    if (combos > 20000)
      throw CellError("identity-cell ambiguity: the center of block " +
                      std::to_string(block + 1) +
                      " is too large to certify that its identity 1-morphism is indecomposable");
  }
  Vec u = block_unit_vec(A, block);
  std::vector<int> c(k, 0);
  for (long it = 1; it < combos; ++it) {
    int pos = 0;
    while (pos < k) {
      c[pos] = (c[pos] + 1) % A.p();
      if (c[pos] != 0) break;
      ++pos;
    }
    Vec z(A.dim(), 0);
    for (int i = 0; i < k; ++i)
      if (c[i] != 0) z = vecadd(z, vecscale(zb[i], c[i], A.p()), A.p());
    if (is_zero(z) || z == u) continue;
    if (A.mul(z, z) == z)
      throw CellError(
          "identity-cell ambiguity: the endomorphisms of the identity 1-morphism of block " +
          std::to_string(block + 1) +
          " contain a nontrivial idempotent, so the identity 1-morphism is decomposable");
  }
}

bool invertible_in_block(const PdgAlgebra& A, const Vec& z, int block) {
  Matrix left(A.dim(), A.dim());
  for (int k = 0; k < A.dim(); ++k) {
    Vec col = A.mul(z, A.basis_vec(k));
    for (int r = 0; r < A.dim(); ++r) left.at(r, k) = col[r];
  }
  return solve(left, block_unit_vec(A, block), A.p()).has_value();
}

// Id(block) is isomorphic to P(u, t)<sigma> for some shift iff a closed
// degree-0 pair pi: P<sigma> -> Id, iota: Id -> P<sigma> composes to a unit
// of the block center.  Because the identity endomorphism ring is local
// (checked beforehand), it suffices to test pairs of basis elements.
bool identity_is_alias(AlgebraPtr A, int block, int u, int t) {
  OneMorphism idm = id_one(A, block);
  OneMorphism p0 = proj_one(A, u, t);
  TwoHom h1 = two_hom(p0, idm);
  TwoHom h2 = two_hom(idm, p0);
  std::set<int> shifts;
  for (int i = 0; i < h1.space.dim(); ++i) shifts.insert(-h1.space.degree(i));
  std::set<int> other;
  for (int i = 0; i < h2.space.dim(); ++i) other.insert(h2.space.degree(i));
  for (int sigma : shifts) {
    if (other.count(sigma) == 0) continue;
    OneMorphism ps = proj_one(A, u, t, sigma);
    TwoHom hp = two_hom(ps, idm);
    TwoHom hi = two_hom(idm, ps);
    for (const Vec& a : closed_twos(hp, 0))
      for (const Vec& b : closed_twos(hi, 0)) {
        TwoMorphism g = two_vcompose(hp.from_coords(a, 0), hi.from_coords(b, 0));
        const CellValue& z = g.entries[0][0];
        if (!value_is_zero(z) && invertible_in_block(*A, z.v, block)) return true;
      }
  }
  return false;
}

void transitive_closure(std::vector<std::vector<bool>>& geq) {
  const int n = static_cast<int>(geq.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (geq[i][k])
        for (int j = 0; j < n; ++j)
          if (geq[k][j]) geq[i][j] = true;
}

void partition_cells(const std::vector<std::vector<bool>>& geq, std::vector<int>& cell_of,
                     std::vector<std::vector<int>>& cells) {
  const int n = static_cast<int>(geq.size());
  cell_of.assign(n, -1);
  cells.clear();
  for (int i = 0; i < n; ++i) {
    if (cell_of[i] >= 0) continue;
    const int id = static_cast<int>(cells.size());
    cells.push_back({});
    for (int k = i; k < n; ++k)
      if (cell_of[k] < 0 && geq[i][k] && geq[k][i]) {
        cell_of[k] = id;
        cells[id].push_back(k);
      }
  }
}

}  // namespace

int CellStructure::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (indecomposables[i].label == label) return i;
    for (const std::string& a : indecomposables[i].aliases)
      if (a == label) return i;
  }
  return -1;
}

CellStructure compute_cells(AlgebraPtr A) {
  const PdgAlgebra& alg = *A;
  CellStructure cs;
  cs.A = A;
  for (int j = 0; j < alg.num_blocks(); ++j) check_identity_local(alg, j);

  IsoClasses cls = alg.iso_classes();
  const std::vector<int>& reps = cls.representative;

  std::vector<std::optional<std::pair<int, int>>> alias(alg.num_blocks());
  for (int j = 0; j < alg.num_blocks(); ++j) {
    for (int u : reps) {
      if (alg.block_of(u) != j) continue;
      for (int t : reps) {
        if (alg.block_of(t) != j) continue;
        if (identity_is_alias(A, j, u, t)) {
          alias[j] = std::make_pair(u, t);
          break;
        }
      }
      if (alias[j]) break;
    }
  }

  // Each entry may carry several "natures": its projective base plus any
  // identity 1-morphisms isomorphic to it.  The preorders are evaluated
  // against every nature.
  std::vector<std::vector<Summand>> natures;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    if (alias[j]) continue;
    Indecomposable e;
    e.base = id_summand(j);
    e.label = summand_label(e.base);
    cs.indecomposables.push_back(e);
    natures.push_back({e.base});
  }
  for (int s : reps)
    for (int t : reps) {
      Indecomposable e;
      e.base = proj_summand(s, t);
      e.label = summand_label(e.base);
      std::vector<Summand> nat{e.base};
      for (int j = 0; j < alg.num_blocks(); ++j)
        if (alias[j] && alias[j]->first == s && alias[j]->second == t) {
          e.aliases.push_back(summand_label(id_summand(j)));
          nat.push_back(id_summand(j));
        }
      cs.indecomposables.push_back(e);
      natures.push_back(nat);
    }

  const int n = cs.size();
  // g >= f when g occurs as a summand of H o f (left) or f o H (right) for
  // some 1-morphism H.  On this generating set that reduces to: projectives
  // dominate each other within a fixed source (left) or target (right)
  // idempotent class, every projective dominates the identity of its
  // boundary block, and identities only dominate themselves.
  auto rule = [&alg](const Summand& g, const Summand& f, bool left) {
    if (f.kind == Summand::Kind::Proj) {
      if (g.kind != Summand::Kind::Proj) return false;
      return left ? g.t == f.t : g.s == f.s;
    }
    if (g.kind == Summand::Kind::Id) return g.object == f.object;
    return alg.block_of(left ? g.t : g.s) == f.object;
  };
  auto fill = [&](bool left) {
    std::vector<std::vector<bool>> geq(n, std::vector<bool>(n, false));
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f)
        for (const Summand& gn : natures[g]) {
          for (const Summand& fn : natures[f])
            if (rule(gn, fn, left)) {
              geq[g][f] = true;
              break;
            }
          if (geq[g][f]) break;
        }
    transitive_closure(geq);
    return geq;
  };
  cs.geq_left = fill(true);
  cs.geq_right = fill(false);
  cs.geq_two.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cs.geq_two[i][j] = cs.geq_left[i][j] || cs.geq_right[i][j];
  transitive_closure(cs.geq_two);

  partition_cells(cs.geq_left, cs.left_cell_of, cs.left_cells);
  partition_cells(cs.geq_right, cs.right_cell_of, cs.right_cells);
  partition_cells(cs.geq_two, cs.two_cell_of, cs.two_cells);
  return cs;
}

bool cell_geq(const std::vector<std::vector<bool>>& geq,
              const std::vector<std::vector<int>>& cells, int c1, int c2) {
  for (int a : cells[c1])
    for (int b : cells[c2])
      if (geq[a][b]) return true;
  return false;
}

bool strong_regularity(const CellStructure& cs) {
  for (const std::vector<int>& two : cs.two_cells) {
    std::set<int> lefts, rights;
    for (int m : two) {
      lefts.insert(cs.left_cell_of[m]);
      rights.insert(cs.right_cell_of[m]);
    }
    for (int l1 : lefts)
      for (int l2 : lefts)
        if (l1 != l2 && cell_geq(cs.geq_left, cs.left_cells, l1, l2)) return false;
    for (int r1 : rights)
      for (int r2 : rights)
        if (r1 != r2 && cell_geq(cs.geq_right, cs.right_cells, r1, r2)) return false;
    for (int l : lefts)
      for (int r : rights) {
        int count = 0;
        for (int m : two)
          if (cs.left_cell_of[m] == l && cs.right_cell_of[m] == r) ++count;
        if (count != 1) return false;
      }
  }
  return true;
}

}  // namespace pdgcat
