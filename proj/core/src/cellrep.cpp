#include "pdgcat/cellrep.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "pdgcat/graded.hpp"
#include "pdgcat/linalg.hpp"

namespace pdgcat {
namespace {

std::vector<Vec> corner_radical(const PdgAlgebra& A, int t, const std::vector<Vec>& rad) {
  std::vector<Vec> cut;
  const Vec& e = A.idempotent(t);
  for (const Vec& r : rad) cut.push_back(A.mul(A.mul(e, r), e));
  return homogeneous_basis(cut, A.space(), A.p());
}

std::vector<Vec> span_intersection(const std::vector<Vec>& u, const std::vector<Vec>& w,
                                   int ambient, int p) {
  if (u.empty() || w.empty()) return {};
  Matrix m(ambient, static_cast<int>(u.size() + w.size()));
  for (int c = 0; c < static_cast<int>(u.size()); ++c)
    for (int r = 0; r < ambient; ++r) m.at(r, c) = u[c][r];
  for (int c = 0; c < static_cast<int>(w.size()); ++c)
    for (int r = 0; r < ambient; ++r) m.at(r, c + static_cast<int>(u.size())) = (p - w[c][r]) % p;
  std::vector<Vec> inter;
  for (const Vec& k : rref(m, p).kernel) {
    Vec v(ambient, 0);
    for (int c = 0; c < static_cast<int>(u.size()); ++c)
      if (k[c] != 0) v = vecadd(v, vecscale(u[c], k[c], p), p);
    inter.push_back(v);
  }
  return row_basis(inter, ambient, p);
}

int vec_degree(const TwoHom& hom, const Vec& v) {
  for (int i = 0; i < hom.space.dim(); ++i)
    if (v[i] != 0) return hom.space.degree(i);
  return 0;
}

std::string pair_label(const CellRepData& d, int from, int to) {
  return "Hom(" + d.generator_labels[from] + ", " + d.generator_labels[to] + ")";
}

void push_span(std::vector<Vec>& span, const Vec& v, int ambient, int p, bool* grew) {
  if (is_zero(v) || in_span(span, v, ambient, p)) return;
  span.push_back(v);
  span = row_basis(span, ambient, p);
  if (grew) *grew = true;
}

/// Left-action family: the projective 1-morphisms P(s_i, s_j) spanned by the
/// generator target idempotents (plus the bare identity for identity cells).
std::vector<OneMorphism> action_family(const CellRepData& d) {
  std::vector<OneMorphism> fam;
  if (d.identity_cell) {
    fam.push_back(id_one(d.A, d.cell_block));
    return fam;
  }
  std::set<int> firsts;
  for (const OneMorphism& g : d.generators) firsts.insert(g.summands[0].s);
  for (int a : firsts)
    for (int b : firsts) fam.push_back(proj_one(d.A, a, b));
  return fam;
}

/// Components of gamma o_0 f, with gamma an endomorphism of a family member
/// h, re-read as coordinate vectors in the endomorphism pair of the generator
/// matching the first index of h.  Returns (pair index, coords) items.
std::vector<std::pair<int, Vec>> act_left(const CellRepData& d, const TwoMorphism& gamma,
                                          const TwoMorphism& f) {
  std::vector<std::pair<int, Vec>> out;
  TwoMorphism comp = two_hcompose(gamma, f);
  int hg = -1;
  const Summand& hs = gamma.source.summands[0];
  for (int g = 0; g < d.num_generators(); ++g) {
    const Summand& gs = d.generators[g].summands[0];
    if (hs.kind == Summand::Kind::Id ? gs.kind == Summand::Kind::Id
                                     : (gs.kind == Summand::Kind::Proj && gs.s == hs.s))
      hg = g;
  }
  if (hg < 0) return out;
  const int G = d.num_generators();
  const CellRepPair& target_pair = d.pairs[hg * G + hg];
  for (std::size_t r = 0; r < comp.entries.size(); ++r)
    for (std::size_t c = 0; c < comp.entries[r].size(); ++c) {
      const CellValue& val = comp.entries[r][c];
      if (value_is_zero(val)) continue;
      TwoMorphism probe = zero_two(d.generators[hg], d.generators[hg], 0);
      probe.entries[0][0] = val;
      out.emplace_back(hg * G + hg, target_pair.hom.to_coords(probe));
    }
  return out;
}

std::vector<TwoMorphism> sampled_endos(const CellRepData& d, const OneMorphism& h,
                                       std::mt19937& rng, int draws) {
  std::vector<TwoMorphism> out;
  out.push_back(identity_two(h));
  TwoHom he = two_hom(h, h);
  std::set<int> degs;
  for (int i = 0; i < he.space.dim(); ++i) degs.insert(he.space.degree(i));
  std::vector<int> degv(degs.begin(), degs.end());
  if (degv.empty()) return out;
  for (int k = 0; k < draws; ++k) {
    int dg = degv[rng() % degv.size()];
    Vec coords(he.space.dim(), 0);
    bool nonzero = false;
    for (int i : degree_slots(he, dg)) {
      coords[i] = static_cast<int>(rng() % static_cast<unsigned>(d.A->p()));
      if (coords[i] != 0) nonzero = true;
    }
    if (nonzero) out.push_back(he.from_coords(coords, dg));
  }
  return out;
}

}  // namespace

const CellRepPair& CellRepData::pair(int from, int to) const {
  return pairs[to * num_generators() + from];
}

std::vector<std::pair<int, int>> CellRepData::quotient_dimension(int from, int to) const {
  const CellRepPair& pr = pair(from, to);
  std::map<int, int> count;
  for (const Vec& v : pr.quotient) ++count[vec_degree(pr.hom, v)];
  return {count.begin(), count.end()};
}

CellRepData build_cell_rep(const CellStructure& cs, int indecomposable) {
  if (indecomposable < 0 || indecomposable >= cs.size())
    throw CellError("cellrep: indecomposable index out of range");
  CellRepData d;
  d.A = cs.A;
  const PdgAlgebra& A = *cs.A;
  const int p = A.p();
  d.cell_label = cs.indecomposables[indecomposable].label;
  const Summand& base = cs.indecomposables[indecomposable].base;

  RadicalResult rad = A.radical();
  for (const Violation& v : rad.violations) d.violations.push_back(v);
  for (const Vec& r : rad.basis)
    if (!in_span(rad.basis, A.diff(r), A.dim(), p)) {
      d.violations.push_back(
          {"assumption-violation", "the radical is not closed under the differential"});
      break;
    }

  if (base.kind == Summand::Kind::Id) {
    d.identity_cell = true;
    d.cell_block = base.object;
    d.generators.push_back(id_one(cs.A, base.object));
    d.generator_labels.push_back(summand_label(base));
  } else {
    d.cell_idem = base.t;
    for (int m : cs.left_cells[cs.left_cell_of[indecomposable]]) {
      const Summand& g = cs.indecomposables[m].base;
      if (g.kind != Summand::Kind::Proj) continue;
      d.generators.push_back(proj_one(cs.A, g.s, g.t));
      d.generator_labels.push_back(cs.indecomposables[m].label);
    }
  }
  const int G = d.num_generators();

  // Hom spaces, the ideal, and quotient representatives.
  std::vector<Vec> retained_radical;  // rad(e_t A e_t) resp. rad(Z_block)
  if (d.identity_cell) {
    std::vector<Vec> zb;
    Vec u(A.dim(), 0);
    for (int i = 0; i < A.num_idempotents(); ++i)
      if (A.block_of(i) == d.cell_block) u = vecadd(u, A.idempotent(i), p);
    for (const Vec& z : A.center()) zb.push_back(A.mul(z, u));
    zb = homogeneous_basis(zb, A.space(), p);
    retained_radical = span_intersection(zb, rad.basis, A.dim(), p);
  } else {
    retained_radical = corner_radical(A, d.cell_idem, rad.basis);
  }

  for (int to = 0; to < G; ++to)
    for (int from = 0; from < G; ++from) {
      CellRepPair pr;
      pr.from = from;
      pr.to = to;
      if (d.generators[from].source == d.generators[to].source &&
          d.generators[from].target == d.generators[to].target) {
        pr.hom = two_hom(d.generators[from], d.generators[to]);
      } else {
        // non-parallel generators carry no 2-morphisms
        pr.hom.X = d.generators[from];
        pr.hom.Y = d.generators[to];
      }
      if (d.identity_cell) {
        for (const Vec& z : retained_radical) {
          TwoMorphism f = zero_two(d.generators[from], d.generators[to],
                                   A.element_degree(z).value_or(0));
          f.entries[0][0] = CellValue{true, z, Matrix()};
          pr.ideal.push_back(pr.hom.to_coords(f));
        }
      } else {
        const Summand& sf = d.generators[from].summands[0];
        const Summand& st = d.generators[to].summands[0];
        for (const Vec& rho : retained_radical)
          for (const Vec& x : A.corner_basis(st.s, sf.s)) {
            TwoMorphism f =
                zero_two(d.generators[from], d.generators[to],
                         A.element_degree(rho).value_or(0) + A.element_degree(x).value_or(0));
            f.entries[0][0] = atom_value(A, rho, x);
            pr.ideal.push_back(pr.hom.to_coords(f));
          }
      }
      pr.ideal = row_basis(pr.ideal, pr.hom.space.dim(), p);

      std::set<int> degs;
      for (int i = 0; i < pr.hom.space.dim(); ++i) degs.insert(pr.hom.space.degree(i));
      for (int dg : degs) {
        std::vector<Vec> span;
        for (const Vec& v : pr.ideal)
          if (vec_degree(pr.hom, v) == dg) span.push_back(v);
        span = row_basis(span, pr.hom.space.dim(), p);
        for (int i : degree_slots(pr.hom, dg)) {
          Vec unit(pr.hom.space.dim(), 0);
          unit[i] = 1;
          if (!in_span(span, unit, pr.hom.space.dim(), p)) {
            pr.quotient.push_back(unit);
            span.push_back(unit);
            span = row_basis(span, pr.hom.space.dim(), p);
          }
        }
      }
      d.pairs.push_back(std::move(pr));
    }

  // The quotient must keep every identity 2-morphism.
  for (int g = 0; g < G; ++g) {
    const CellRepPair& pr = d.pair(g, g);
    Vec idc = pr.hom.to_coords(identity_two(d.generators[g]));
    if (in_span(pr.ideal, idc, pr.hom.space.dim(), p))
      d.violations.push_back({"quotient-kills-identity", d.generator_labels[g]});
  }

  // Ideal stability under the differential.
  for (int to = 0; to < G; ++to)
    for (int from = 0; from < G; ++from) {
      const CellRepPair& pr = d.pair(from, to);
      for (const Vec& v : pr.ideal) {
        TwoMorphism f = pr.hom.from_coords(v, vec_degree(pr.hom, v));
        Vec dv = pr.hom.to_coords(two_diff(f));
        if (!in_span(pr.ideal, dv, pr.hom.space.dim(), p))
          d.violations.push_back({"ideal-differential", pair_label(d, from, to)});
      }
    }

  // Ideal stability under vertical composition with arbitrary 2-morphisms.
  for (int to = 0; to < G; ++to)
    for (int from = 0; from < G; ++from) {
      const CellRepPair& pr = d.pair(from, to);
      for (const Vec& v : pr.ideal) {
        TwoMorphism f = pr.hom.from_coords(v, vec_degree(pr.hom, v));
        for (int c = 0; c < G; ++c) {
          const CellRepPair& post = d.pair(to, c);
          for (int i = 0; i < post.hom.space.dim(); ++i) {
            Vec got = d.pair(from, c).hom.to_coords(two_vcompose(slot_two(post.hom, i), f));
            if (!in_span(d.pair(from, c).ideal, got, d.pair(from, c).hom.space.dim(), p)) {
              d.violations.push_back({"ideal-composition", pair_label(d, from, to) +
                                                               " post-composed toward " +
                                                               d.generator_labels[c]});
              break;
            }
          }
          const CellRepPair& pre = d.pair(c, from);
          for (int i = 0; i < pre.hom.space.dim(); ++i) {
            Vec got = d.pair(c, to).hom.to_coords(two_vcompose(f, slot_two(pre.hom, i)));
            if (!in_span(d.pair(c, to).ideal, got, d.pair(c, to).hom.space.dim(), p)) {
              d.violations.push_back({"ideal-composition", pair_label(d, from, to) +
                                                               " pre-composed from " +
                                                               d.generator_labels[c]});
              break;
            }
          }
        }
      }
    }

  // Ideal stability under the sampled horizontal action.
  std::mt19937 rng(1u);
  for (const OneMorphism& h : action_family(d)) {
    std::vector<TwoMorphism> gammas = sampled_endos(d, h, rng, 2);
    for (int to = 0; to < G; ++to)
      for (int from = 0; from < G; ++from) {
        const CellRepPair& pr = d.pair(from, to);
        if (pr.hom.space.dim() == 0) continue;
        if (h.source != d.generators[from].target) continue;
        for (const Vec& v : pr.ideal) {
          TwoMorphism f = pr.hom.from_coords(v, vec_degree(pr.hom, v));
          for (const TwoMorphism& gamma : gammas)
            for (const auto& [pi, got] : act_left(d, gamma, f))
              if (!in_span(d.pairs[pi].ideal, got, d.pairs[pi].hom.space.dim(), p)) {
                d.violations.push_back(
                    {"ideal-action", pair_label(d, from, to) + " under the action of " +
                                         summand_label(h.summands[0])});
                break;
              }
        }
      }
  }

  return d;
}

bool NaturalComparison::ok() const {
  for (const Entry& e : entries)
    if (!e.dims_match || !e.diff_match) return false;
  return true;
}

NaturalComparison compare_with_natural(const CellRepData& d) {
  NaturalComparison rep;
  const PdgAlgebra& A = *d.A;
  const int p = A.p();

  if (d.identity_cell) {
    NaturalComparison::Entry e;
    e.from = e.to = d.generator_labels[0];
    auto qd = d.quotient_dimension(0, 0);
    e.cell_dims = format_graded_dimension(qd);
    e.natural_dims = "1";
    e.dims_match = (qd == std::vector<std::pair<int, int>>{{0, 1}});
    // The induced differential on a rank-1 degree-0 quotient vanishes; check
    // that the differential of every representative falls into the ideal.
    const CellRepPair& pr = d.pair(0, 0);
    e.diff_match = true;
    for (const Vec& v : pr.quotient) {
      TwoMorphism f = pr.hom.from_coords(v, vec_degree(pr.hom, v));
      Vec dv = pr.hom.to_coords(two_diff(f));
      if (!in_span(pr.ideal, dv, pr.hom.space.dim(), p)) e.diff_match = false;
    }
    rep.entries.push_back(e);
    return rep;
  }

  RadicalResult rad = A.radical();
  std::vector<Vec> radcorner = corner_radical(A, d.cell_idem, rad.basis);
  Matrix residue(A.dim(), 1 + static_cast<int>(radcorner.size()));
  for (int r = 0; r < A.dim(); ++r) residue.at(r, 0) = A.idempotent(d.cell_idem)[r];
  for (int c = 0; c < static_cast<int>(radcorner.size()); ++c)
    for (int r = 0; r < A.dim(); ++r) residue.at(r, c + 1) = radcorner[c][r];

  const int G = d.num_generators();
  for (int from = 0; from < G; ++from)
    for (int to = 0; to < G; ++to) {
      const CellRepPair& pr = d.pair(from, to);
      NaturalComparison::Entry e;
      e.from = d.generator_labels[from];
      e.to = d.generator_labels[to];

      int s_from = d.generators[from].summands[0].s;
      int s_to = d.generators[to].summands[0].s;
      TwistedObject xs = make_object(d.A, {Generator{s_from, 0}});
      TwistedObject xu = make_object(d.A, {Generator{s_to, 0}});
      HomComplex nat = hom_complex(xs, xu);

      auto qd = d.quotient_dimension(from, to);
      e.cell_dims = format_graded_dimension(qd);
      e.natural_dims = format_graded_dimension(nat.space.graded_dimension());
      e.dims_match = (qd == nat.space.graded_dimension());

      // Correspondence matrix T: class(y (x) x) -> residue(y) * x.
      bool solved = true;
      Matrix T(nat.space.dim(), pr.hom.space.dim());
      for (int j = 0; j < pr.hom.space.dim(); ++j) {
        const CellValue& val = pr.hom.slots[j].value;
        int a0 = -1, b0 = -1;
        for (int a = 0; a < val.m.rows() && a0 < 0; ++a)
          for (int b = 0; b < val.m.cols(); ++b)
            if (val.m.at(a, b) != 0) {
              a0 = a;
              b0 = b;
              break;
            }
        if (a0 < 0) continue;  // zero slot cannot occur
        Vec y(A.dim(), 0), x(A.dim(), 0);
        for (int a = 0; a < val.m.rows(); ++a) y[a] = val.m.at(a, b0);
        for (int b = 0; b < val.m.cols(); ++b) x[b] = val.m.at(a0, b);
        int scale = fpinv(val.m.at(a0, b0), p);
        auto lam = solve(residue, y, p);
        if (!lam) {
          solved = false;
          continue;
        }
        int coef = (static_cast<long>((*lam)[0]) * scale) % p;
        if (coef == 0) continue;
        TwistedMorphism g;
        g.source = xs;
        g.target = xu;
        g.degree = A.element_degree(x).value_or(0);
        g.entries = {{vecscale(x, coef, p)}};
        Vec col = nat.to_coords(g);
        for (int r = 0; r < nat.space.dim(); ++r) T.at(r, j) = col[r];
      }

      bool kills_ideal = true;
      for (const Vec& v : pr.ideal)
        if (!is_zero(matvec(T, v, p))) kills_ideal = false;
      bool intertwines = (matmul(T, pr.hom.diff.matrix, p) == matmul(nat.diff.matrix, T, p));
      int rank = rref(T, p).rank;
      e.diff_match = solved && kills_ideal && intertwines && rank == nat.space.dim();
      rep.entries.push_back(e);
    }
  return rep;
}

std::vector<Violation> verify_maximal_ideal(const CellRepData& d, unsigned seed, int max_dim) {
  std::vector<Violation> out;
  const PdgAlgebra& A = *d.A;
  const int p = A.p();
  const int G = d.num_generators();
  for (const CellRepPair& pr : d.pairs)
    if (pr.hom.space.dim() > max_dim) {
      out.push_back({"maximality-unverified",
                     pair_label(d, pr.from, pr.to) + " exceeds the dimension cap"});
      return out;
    }

  std::mt19937 rng(seed);
  std::vector<OneMorphism> family = action_family(d);
  std::vector<std::vector<TwoMorphism>> gammas;
  for (const OneMorphism& h : family) gammas.push_back(sampled_endos(d, h, rng, 2));

  std::vector<Vec> identity_coords(G);
  for (int g = 0; g < G; ++g)
    identity_coords[g] = d.pair(g, g).hom.to_coords(identity_two(d.generators[g]));

  for (int to = 0; to < G; ++to)
    for (int from = 0; from < G; ++from) {
      const CellRepPair& pr = d.pair(from, to);
      std::set<int> degs;
      for (int i = 0; i < pr.hom.space.dim(); ++i) degs.insert(pr.hom.space.degree(i));
      for (int dg : degs)
        for (const Vec& cand : closed_twos(pr.hom, dg)) {
          if (in_span(pr.ideal, cand, pr.hom.space.dim(), p)) continue;

          // Close the ideal together with the candidate under every
          // available operation; it must swallow an identity 2-morphism.
          std::vector<std::vector<Vec>> span;
          for (const CellRepPair& q : d.pairs)
            span.push_back(row_basis(q.ideal, q.hom.space.dim(), p));
          {
            bool grew = false;
            push_span(span[to * G + from], cand, pr.hom.space.dim(), p, &grew);
          }
          bool changed = true;
          while (changed) {
            changed = false;
            for (int b = 0; b < G; ++b)
              for (int a = 0; a < G; ++a) {
                const CellRepPair& q = d.pair(a, b);
                // copy: push_span may extend while iterating
                std::vector<Vec> snapshot = span[b * G + a];
                for (const Vec& v : snapshot) {
                  TwoMorphism f = q.hom.from_coords(v, vec_degree(q.hom, v));
                  push_span(span[b * G + a], q.hom.to_coords(two_diff(f)),
                            q.hom.space.dim(), p, &changed);
                  for (int c = 0; c < G; ++c) {
                    const CellRepPair& post = d.pair(b, c);
                    for (int i = 0; i < post.hom.space.dim(); ++i)
                      push_span(span[c * G + a],
                                d.pair(a, c).hom.to_coords(
                                    two_vcompose(slot_two(post.hom, i), f)),
                                d.pair(a, c).hom.space.dim(), p, &changed);
                    const CellRepPair& pre = d.pair(c, a);
                    for (int i = 0; i < pre.hom.space.dim(); ++i)
                      push_span(span[b * G + c],
                                d.pair(c, b).hom.to_coords(
                                    two_vcompose(f, slot_two(pre.hom, i))),
                                d.pair(c, b).hom.space.dim(), p, &changed);
                  }
                  for (std::size_t hi = 0; hi < family.size(); ++hi) {
                    if (family[hi].source != d.generators[a].target) continue;
                    for (const TwoMorphism& gamma : gammas[hi])
                      for (const auto& [pi, got] : act_left(d, gamma, f))
                        push_span(span[pi], got, d.pairs[pi].hom.space.dim(), p, &changed);
                  }
                }
              }
          }
          bool reached = false;
          for (int g = 0; g < G; ++g)
            if (in_span(span[g * G + g], identity_coords[g], d.pair(g, g).hom.space.dim(), p))
              reached = true;
          if (!reached)
            out.push_back({"maximality",
                           "a closed 2-morphism of degree " + std::to_string(dg) + " in " +
                               pair_label(d, from, to) + " generates a proper larger ideal"});
        }
    }
  return out;
}

}  // namespace pdgcat
