#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "regcalc/deadline.hpp"
#include "regcalc/module.hpp"

namespace regcalc {

/// Finitely generated graded submodule of a free module. Generators are
/// homogeneous; zero generators are dropped on construction.
struct Submodule {
  FreeMod ambient;
  std::vector<ModElem> gens;

  Submodule() = default;
  Submodule(FreeMod amb, std::vector<ModElem> g) : ambient(std::move(amb)) {
    for (ModElem& e : g)
      if (!e.is_zero()) gens.push_back(std::move(e));
  }
};

struct GroebnerBasis {
  FreeMod ambient;
  ModOrder order;
  std::vector<ModElem> elems;
  bool reduced = false;
};

namespace detail {

/// Canonical total comparison used to sort generators for determinism.
inline bool elem_canonical_less(const ModElem& a, const ModElem& b, const ModOrder& ord) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    int c = ord.compare(a.terms[i], b.terms[i]);
    if (c != 0) return c < 0;
    if (a.terms[i].c != b.terms[i].c) return a.terms[i].c < b.terms[i].c;
  }
  return a.terms.size() < b.terms.size();
}

inline ModElem make_monic(const ModElem& f, const GradedRing& R) {
  if (f.is_zero() || f.lead().c == 1) return f;
  return mod_scale(f, fp_inv(f.lead().c, R.char_p), R);
}

}  // namespace detail

/// Full reduction: returns the remainder of f against basis; no term of the
/// result is divisible by any basis leading term. normal_form(f) == 0 iff f
/// lies in the submodule the basis generates.
inline ModElem normal_form(const ModElem& f, const std::vector<ModElem>& basis,
                           const GradedRing& R, const ModOrder& ord) {
  ModElem rem;
  ModElem h = f;
  while (!h.is_zero()) {
    check_deadline();
    const ModTerm& lt = h.lead();
    bool reduced_step = false;
    for (const ModElem& g : basis) {
      const ModTerm& gl = g.lead();
      if (gl.comp == lt.comp && divides(gl.m, lt.m)) {
        fp_t c = fp_div(lt.c, gl.c, R.char_p);
        h = mod_axpy_sub(h, c, quotient(lt.m, gl.m), g, R, ord);
        reduced_step = true;
        break;
      }
    }
    if (!reduced_step) {
      rem.terms.push_back(lt);
      h.terms.erase(h.terms.begin());
    }
  }
  return rem;
}

inline ModElem normal_form(const ModElem& f, const GroebnerBasis& gb, const GradedRing& R) {
  if (!f.is_zero())
    for (const ModTerm& t : f.terms)
      if (t.comp >= gb.ambient.rank())
        throw std::invalid_argument("normal_form: ambient module mismatch");
  return normal_form(f, gb.elems, R, gb.order);
}

/// Buchberger's algorithm with the normal pair-selection strategy (minimal
/// lcm degree first). The product criterion is applied only in rank one,
/// where it is valid; the chain criterion is applied componentwise.
inline GroebnerBasis buchberger(const Submodule& sub, const ModOrder& ord, const GradedRing& R) {
  GroebnerBasis gb;
  gb.ambient = sub.ambient;
  gb.order = ord;

  std::vector<ModElem> g;
  for (const ModElem& e : sub.gens) {
    ModElem x = e;
    mod_normalize(x, R, ord);
    if (!x.is_zero()) g.push_back(detail::make_monic(x, R));
  }
  std::sort(g.begin(), g.end(), [&](const ModElem& a, const ModElem& b) {
    int da = mod_degree(a, sub.ambient), db = mod_degree(b, sub.ambient);
    if (da != db) return da < db;
    return detail::elem_canonical_less(a, b, ord);
  });

  struct Pair {
    int deg;
    int i, j;
    bool operator<(const Pair& o) const {
      if (deg != o.deg) return deg < o.deg;
      if (i != o.i) return i < o.i;
      return j < o.j;
    }
  };
  std::set<Pair> pairs;
  std::set<std::pair<int, int>> done;

  auto push_pairs = [&](int k) {
    for (int i = 0; i < k; ++i) {
      if (g[i].lead().comp != g[k].lead().comp) continue;
      Monomial u = lcm(g[i].lead().m, g[k].lead().m);
      pairs.insert({u.degree() + sub.ambient.twists[g[k].lead().comp], i, k});
    }
  };
  for (int k = 0; k < static_cast<int>(g.size()); ++k) push_pairs(k);

  while (!pairs.empty()) {
    check_deadline();
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    done.insert({p.i, p.j});
    const ModElem &fi = g[p.i], &fj = g[p.j];
    const Monomial &mi = fi.lead().m, &mj = fj.lead().m;

    if (sub.ambient.rank() == 1 && coprime(mi, mj)) continue;  // product criterion

    Monomial u = lcm(mi, mj);
    bool chained = false;
    for (int k = 0; k < static_cast<int>(g.size()) && !chained; ++k) {
      if (k == p.i || k == p.j) continue;
      if (g[k].lead().comp != fi.lead().comp) continue;
      if (!divides(g[k].lead().m, u)) continue;
      auto h1 = std::minmax(p.i, k), h2 = std::minmax(p.j, k);
      if (done.count({h1.first, h1.second}) && done.count({h2.first, h2.second}))
        chained = true;
    }
    if (chained) continue;

    ModElem s = mod_axpy_sub(mod_mul_term(fi, quotient(u, mi), 1, R), 1, quotient(u, mj), fj, R, ord);
    ModElem r = normal_form(s, g, R, ord);
    if (!r.is_zero()) {
      g.push_back(detail::make_monic(r, R));
      push_pairs(static_cast<int>(g.size()) - 1);
    }
  }

  // Reduce: drop elements whose lead is divisible by another lead, then
  // tail-reduce each against the rest. Result is the unique reduced basis.
  std::vector<ModElem> min;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const ModTerm &a = g[i].lead(), &b = g[j].lead();
      if (b.comp == a.comp && divides(b.m, a.m) && !(a.m == b.m && j > i)) redundant = true;
    }
    if (!redundant) min.push_back(g[i]);
  }
  std::vector<ModElem> out = min;
  for (size_t i = 0; i < out.size(); ++i) {
    std::vector<ModElem> others;
    for (size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    out[i] = detail::make_monic(normal_form(min[i], others, R, ord), R);
  }
  std::sort(out.begin(), out.end(),
            [&](const ModElem& a, const ModElem& b) { return detail::elem_canonical_less(a, b, ord); });
  gb.elems = std::move(out);
  gb.reduced = true;
  return gb;
}

inline bool submodule_contains(const GroebnerBasis& gb, const ModElem& f, const GradedRing& R) {
  return normal_form(f, gb, R).is_zero();
}

/// Generators of {(a_1..a_r) : Σ a_i g_i = 0}, living in a free module with
/// twists deg(g_i). Computed by eliminating the ambient block from the graph
/// module {(g_i, e_i)}.
inline Submodule syzygy_module(const Submodule& sub, const ModOrder& ord, const GradedRing& R) {
  int fr = sub.ambient.rank();
  int r = static_cast<int>(sub.gens.size());
  FreeMod big;
  big.twists = sub.ambient.twists;
  for (const ModElem& gel : sub.gens) big.twists.push_back(mod_degree(gel, sub.ambient));

  std::vector<ModElem> graph;
  for (int i = 0; i < r; ++i) {
    ModElem e = sub.gens[i];
    e.terms.push_back({fr + i, Monomial(R.nvars), 1});
    graph.push_back(std::move(e));
  }
  ModOrder elim{ord.term, fr};
  GroebnerBasis gb = buchberger(Submodule(big, std::move(graph)), elim, R);

  FreeMod syz_amb;
  for (int i = 0; i < r; ++i) syz_amb.twists.push_back(big.twists[fr + i]);
  std::vector<ModElem> syz;
  ModOrder plain{ord.term, 0};
  for (const ModElem& e : gb.elems) {
    bool pure = std::all_of(e.terms.begin(), e.terms.end(),
                            [&](const ModTerm& t) { return t.comp >= fr; });
    if (!pure) continue;
    ModElem s;
    for (const ModTerm& t : e.terms) s.terms.push_back({t.comp - fr, t.m, t.c});
    mod_normalize(s, R, plain);
    syz.push_back(std::move(s));
  }
  return Submodule(syz_amb, std::move(syz));
}

/// N : f = {v in the ambient free module : f·v ∈ N}, for homogeneous f ≠ 0.
/// The quotient (N : f)/N is then 0 :_{F/N} f.
inline Submodule colon_submodule(const Submodule& N, const Poly& f, const ModOrder& ord,
                                 const GradedRing& R) {
  if (f.is_zero()) throw std::invalid_argument("colon_submodule: zero divisor polynomial");
  int fr = N.ambient.rank();
  int e = poly_degree(f);

  FreeMod srcs;
  std::vector<ModElem> cols;
  for (int i = 0; i < fr; ++i) {
    srcs.twists.push_back(N.ambient.twists[i] + e);
    cols.push_back(embed_poly(f, i));
  }
  for (const ModElem& g : N.gens) {
    srcs.twists.push_back(mod_degree(g, N.ambient));
    cols.push_back(g);
  }
  Submodule stacked(N.ambient, cols);
  // Rebuild with zero gens retained implicitly impossible here: f ≠ 0 and N
  // generators are nonzero by construction, so the index layout is stable.
  Submodule syz = syzygy_module(stacked, ord, R);

  std::vector<ModElem> out;
  ModOrder plain{ord.term, 0};
  for (const ModElem& s : syz.gens) {
    ModElem v;
    for (const ModTerm& t : s.terms)
      if (t.comp < fr) v.terms.push_back(t);
    mod_normalize(v, R, plain);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return Submodule(N.ambient, std::move(out));
}

/// A ∩ B from the mixed syzygies of the concatenated generator lists.
inline Submodule intersect_submodules(const Submodule& A, const Submodule& B, const ModOrder& ord,
                                      const GradedRing& R) {
  if (!(A.ambient == B.ambient))
    throw std::invalid_argument("intersect_submodules: ambient mismatch");
  std::vector<ModElem> cols = A.gens;
  cols.insert(cols.end(), B.gens.begin(), B.gens.end());
  Submodule syz = syzygy_module(Submodule(A.ambient, cols), ord, R);
  size_t ra = A.gens.size();
  std::vector<ModElem> out;
  ModOrder plain{ord.term, 0};
  for (const ModElem& s : syz.gens) {
    ModElem v;
    for (const ModTerm& t : s.terms) {
      if (t.comp < static_cast<int>(ra)) {
        ModElem part = mod_mul_term(A.gens[t.comp], t.m, t.c, R);
        v = mod_add(v, part, R, plain);
      }
    }
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return Submodule(A.ambient, std::move(out));
}

/// True iff the two submodules of the same ambient are equal (mutual
/// membership of generators).
inline bool submodule_equal(const Submodule& A, const Submodule& B, const ModOrder& ord,
                            const GradedRing& R) {
  GroebnerBasis ga = buchberger(A, ord, R), gbb = buchberger(B, ord, R);
  for (const ModElem& b : B.gens)
    if (!submodule_contains(ga, b, R)) return false;
  for (const ModElem& a : A.gens)
    if (!submodule_contains(gbb, a, R)) return false;
  return true;
}

/// Minimal homogeneous generating set: generators are taken in increasing
/// degree and kept only if not already generated (graded Nakayama).
inline Submodule minimal_generators(const Submodule& sub, const ModOrder& ord,
                                    const GradedRing& R) {
  std::vector<ModElem> sorted = sub.gens;
  for (ModElem& e : sorted) mod_normalize(e, R, ord);
  std::erase_if(sorted, [](const ModElem& e) { return e.is_zero(); });
  std::sort(sorted.begin(), sorted.end(), [&](const ModElem& a, const ModElem& b) {
    int da = mod_degree(a, sub.ambient), db = mod_degree(b, sub.ambient);
    if (da != db) return da < db;
    return detail::elem_canonical_less(a, b, ord);
  });
  std::vector<ModElem> kept;
  for (const ModElem& e : sorted) {
    if (kept.empty()) {
      kept.push_back(e);
      continue;
    }
    GroebnerBasis gb = buchberger(Submodule(sub.ambient, kept), ord, R);
    if (!submodule_contains(gb, e, R)) kept.push_back(e);
  }
  return Submodule(sub.ambient, std::move(kept));
}

}  // namespace regcalc
