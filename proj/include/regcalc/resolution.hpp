#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regcalc/groebner.hpp"

namespace regcalc {

/// Finitely presented graded module: cokernel of the map defined by
/// `relations` into the free module on `gen_twists`. The zero module is
/// gen_twists = [].
struct GradedModuleP {
  GradedRing ring;
  std::vector<int> gen_twists;
  std::vector<ModElem> relations;

  FreeMod presenting_module() const { return FreeMod{gen_twists}; }
};

inline GradedModuleP zero_module(const GradedRing& R) { return {R, {}, {}}; }

inline GradedModuleP free_module_p(const GradedRing& R, std::vector<int> twists) {
  return {R, std::move(twists), {}};
}

/// R/I for an ideal given by homogeneous generators.
inline GradedModuleP quotient_ring(const GradedRing& R, const std::vector<Poly>& ideal_gens) {
  GradedModuleP M{R, {0}, {}};
  for (const Poly& f : ideal_gens)
    if (!f.is_zero()) M.relations.push_back(embed_poly(f, 0));
  return M;
}

/// An ideal I ⊆ R as a module: generators of I become module generators.
inline GradedModuleP ideal_as_module(const GradedRing& R, const std::vector<Poly>& gens,
                                     const ModOrder& ord) {
  std::vector<ModElem> cols;
  std::vector<int> tw;
  for (const Poly& f : gens) {
    if (f.is_zero()) continue;
    cols.push_back(embed_poly(f, 0));
    tw.push_back(poly_degree(f));
  }
  Submodule sub(FreeMod::rank_one(), cols);
  Submodule syz = syzygy_module(sub, ord, R);
  return {R, tw, syz.gens};
}

/// Module twist M(−shift): generator degrees move up by shift.
inline GradedModuleP twist_module(const GradedModuleP& M, int shift) {
  GradedModuleP T = M;
  for (int& a : T.gen_twists) a += shift;
  return T;
}

/// Canonical text fingerprint of a presentation, used as a memo key.
inline std::string fingerprint(const GradedModuleP& M) {
  std::ostringstream os;
  os << M.ring.nvars << '/' << M.ring.char_p << ';';
  for (int a : M.gen_twists) os << a << ',';
  os << ';';
  std::vector<std::string> rel;
  for (const ModElem& e : M.relations) {
    std::ostringstream r;
    for (const ModTerm& t : e.terms) {
      r << t.comp << ':' << t.c << ':';
      for (int x : t.m.e) r << x << '.';
      r << '|';
    }
    rel.push_back(r.str());
  }
  std::sort(rel.begin(), rel.end());
  for (const std::string& s : rel) os << s << '#';
  return os.str();
}

/// Graded matrix, entry [row][col]; represents a degree-0 map between free
/// modules where column c is the image of the source generator c.
using PolyMatrix = std::vector<std::vector<Poly>>;

inline ModElem matrix_column(const PolyMatrix& A, int c, const GradedRing& R,
                             const ModOrder& ord) {
  ModElem e;
  for (int r = 0; r < static_cast<int>(A.size()); ++r)
    for (const Term& t : A[r][c].terms) e.terms.push_back({r, t.m, t.c});
  mod_normalize(e, R, ord);
  return e;
}

inline PolyMatrix matrix_from_columns(const std::vector<ModElem>& cols, int rows) {
  PolyMatrix A(rows, std::vector<Poly>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const ModTerm& t : cols[c].terms) A[t.comp][c].terms.push_back({t.m, t.c});
  return A;
}

/// Chain of graded matrices F_0 <- F_1 <- ... <- F_len; maps[k] carries
/// F_{k+1} -> F_k.
struct FreeResolution {
  std::vector<FreeMod> mods;
  std::vector<PolyMatrix> maps;
  bool minimal = false;

  int length() const { return static_cast<int>(maps.size()); }
};

struct BettiTable {
  std::map<std::pair<int, int>, long long> beta;  // (i, j) -> rank

  long long at(int i, int j) const {
    auto it = beta.find({i, j});
    return it == beta.end() ? 0 : it->second;
  }
};

namespace detail {

inline void sort_matrix_entries(PolyMatrix& A, const GradedRing& R, const TermOrder& ord) {
  for (auto& row : A)
    for (Poly& f : row) poly_normalize(f, R, ord);
}

}  // namespace detail

/// Minimal presentation: prunes unit entries from the relation matrix
/// (eliminating superfluous generators) and then keeps only a minimal
/// homogeneous generating set of the relations.
inline GradedModuleP minimal_presentation(const GradedModuleP& M, const ModOrder& ord) {
  const GradedRing& R = M.ring;
  std::vector<int> tw = M.gen_twists;
  std::vector<ModElem> rel;
  for (const ModElem& e : M.relations) {
    ModElem x = e;
    mod_normalize(x, R, ord);
    if (!x.is_zero()) rel.push_back(std::move(x));
  }

  // Repeatedly substitute away any generator hit by a degree-zero relation
  // coefficient.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t gi = 0; gi < rel.size() && !changed; ++gi) {
      const ModElem& g = rel[gi];
      for (const ModTerm& t : g.terms) {
        if (!t.m.is_one()) continue;
        int j = t.comp;
        fp_t u = t.c;
        // h -> h - (h_j / u) * g for every other relation, killing their
        // component-j parts; then drop generator j and relation g.
        std::vector<ModElem> next;
        for (size_t hi = 0; hi < rel.size(); ++hi) {
          if (hi == gi) continue;
          Poly hj = component_poly(rel[hi], j);
          ModElem h = rel[hi];
          if (!hj.is_zero()) {
            Poly coeff = poly_scale(hj, fp_neg(fp_inv(u, R.char_p), R.char_p), R);
            h = mod_add(h, mod_mul_poly(g, coeff, R, ord), R, ord);
          }
          // Remove generator j and renumber components above it.
          ModElem h2;
          for (const ModTerm& s : h.terms) {
            if (s.comp == j) throw std::logic_error("minimal_presentation: elimination failed");
            h2.terms.push_back({s.comp > j ? s.comp - 1 : s.comp, s.m, s.c});
          }
          mod_normalize(h2, R, ord);
          if (!h2.is_zero()) next.push_back(std::move(h2));
        }
        tw.erase(tw.begin() + j);
        rel = std::move(next);
        changed = true;
        break;
      }
    }
  }

  Submodule mg = minimal_generators(Submodule(FreeMod{tw}, rel), ord, R);
  return {R, tw, mg.gens};
}

/// Kernel of the degree-0 map sending source generator i to cols[i] in the
/// target; returned as a submodule of the free module on src_twists.
inline Submodule kernel_of_map(const std::vector<ModElem>& cols, const std::vector<int>& src_twists,
                               const FreeMod& target, const ModOrder& ord, const GradedRing& R) {
  std::vector<int> nz;
  std::vector<ModElem> nz_cols;
  std::vector<ModElem> kernel;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].is_zero()) {
      kernel.push_back(unit_vector(static_cast<int>(i), R));
    } else {
      if (mod_degree(cols[i], target) != src_twists[i])
        throw std::invalid_argument("kernel_of_map: map is not degree zero");
      nz.push_back(static_cast<int>(i));
      nz_cols.push_back(cols[i]);
    }
  }
  Submodule syz = syzygy_module(Submodule(target, nz_cols), ord, R);
  ModOrder plain{ord.term, 0};
  for (const ModElem& s : syz.gens) {
    ModElem v;
    for (const ModTerm& t : s.terms) v.terms.push_back({nz[t.comp], t.m, t.c});
    mod_normalize(v, R, plain);
    kernel.push_back(std::move(v));
  }
  return Submodule(FreeMod{src_twists}, std::move(kernel));
}

/// Presentation of the subquotient (span of gens + denom)/denom inside the
/// ambient free module: generators stay, relations are the coefficient
/// vectors landing in the denominator.
inline GradedModuleP subquotient_presentation(const std::vector<ModElem>& gens,
                                              const std::vector<ModElem>& denom,
                                              const FreeMod& ambient, const ModOrder& ord,
                                              const GradedRing& R) {
  std::vector<ModElem> stack = gens;
  int s = static_cast<int>(gens.size());
  for (const ModElem& m : denom)
    if (!m.is_zero()) stack.push_back(m);
  std::vector<int> tw;
  for (const ModElem& g : gens) tw.push_back(mod_degree(g, ambient));
  for (int i = 0; i < s; ++i)
    if (gens[i].is_zero()) throw std::invalid_argument("subquotient: zero generator");

  Submodule syz = syzygy_module(Submodule(ambient, stack), ord, R);
  std::vector<ModElem> rel;
  ModOrder plain{ord.term, 0};
  for (const ModElem& e : syz.gens) {
    ModElem v;
    for (const ModTerm& t : e.terms)
      if (t.comp < s) v.terms.push_back(t);
    mod_normalize(v, R, plain);
    if (!v.is_zero()) rel.push_back(std::move(v));
  }
  return {R, tw, rel};
}

/// Resolution builder for a presentation already in minimal form.
inline FreeResolution build_resolution(const GradedModuleP& P, const ModOrder& ord, int max_len) {
  const GradedRing& R = P.ring;
  FreeResolution res;
  res.mods.push_back(FreeMod{P.gen_twists});
  res.minimal = true;

  Submodule cur(FreeMod{P.gen_twists}, P.relations);
  int step = 0;
  while (!cur.gens.empty() && step < max_len) {
    check_deadline();
    FreeMod next;
    for (const ModElem& g : cur.gens) next.twists.push_back(mod_degree(g, cur.ambient));
    res.maps.push_back(matrix_from_columns(cur.gens, cur.ambient.rank()));
    res.mods.push_back(next);
    Submodule syz = syzygy_module(cur, ord, R);
    // Post: the syzygies must annihilate the previous map's columns.
    for (const ModElem& s : syz.gens) {
      ModElem img;
      for (const ModTerm& t : s.terms)
        img = mod_add(img, mod_mul_term(cur.gens[t.comp], t.m, t.c, R), R, ord);
      if (!img.is_zero()) throw std::logic_error("build_resolution: composite is nonzero");
    }
    cur = minimal_generators(syz, ord, R);
    ++step;
  }
  if (!cur.gens.empty()) res.minimal = false;  // truncated below pd
  return res;
}

/// Minimal graded free resolution by iterated syzygies, pruning to minimal
/// generators at every step; terminates at pd(M) <= nvars.
inline FreeResolution free_resolution(const GradedModuleP& M, const ModOrder& ord, int max_len) {
  return build_resolution(minimal_presentation(M, ord), ord, max_len);
}

inline FreeResolution free_resolution(const GradedModuleP& M, const ModOrder& ord) {
  return free_resolution(M, ord, M.ring.nvars + 1);
}

/// True iff every consecutive composite is exactly zero.
inline bool composites_vanish(const FreeResolution& res, const GradedRing& R, const ModOrder& ord) {
  for (size_t k = 0; k + 1 < res.maps.size(); ++k) {
    int cols = res.mods[k + 2].rank();
    for (int c = 0; c < cols; ++c) {
      ModElem v = matrix_column(res.maps[k + 1], c, R, ord);
      ModElem img;
      for (const ModTerm& t : v.terms) {
        ModElem col = matrix_column(res.maps[k], t.comp, R, ord);
        img = mod_add(img, mod_mul_term(col, t.m, t.c, R), R, ord);
      }
      if (!img.is_zero()) return false;
    }
  }
  return true;
}

/// Gaussian cancellation of unit entries, degree by degree, with basis
/// changes propagated to the neighbouring maps. Idempotent.
inline FreeResolution minimize(FreeResolution res, const GradedRing& R, const ModOrder& ord) {
  const TermOrder& tord = ord.term;
  auto find_unit = [&](const PolyMatrix& A, int& pr, int& pc) {
    for (size_t r = 0; r < A.size(); ++r)
      for (size_t c = 0; c < A[r].size(); ++c)
        for (const Term& t : A[r][c].terms)
          if (t.m.is_one() && t.c != 0) {
            pr = static_cast<int>(r);
            pc = static_cast<int>(c);
            return true;
          }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < res.maps.size(); ++k) {
      int pr, pc;
      if (!find_unit(res.maps[k], pr, pc)) continue;
      changed = true;
      PolyMatrix& A = res.maps[k];
      int rows = static_cast<int>(A.size());
      int cols = static_cast<int>(A[0].size());
      fp_t u = 0;
      for (const Term& t : A[pr][pc].terms)
        if (t.m.is_one()) u = t.c;
      fp_t uinv = fp_inv(u, R.char_p);

      // Column operations kill row pr outside the pivot; propagate the basis
      // change of F_{k+1} into the rows of maps[k+1].
      for (int c = 0; c < cols; ++c) {
        if (c == pc || A[pr][c].is_zero()) continue;
        Poly lam = poly_scale(A[pr][c], uinv, R);
        for (int r = 0; r < rows; ++r)
          A[r][c] = poly_sub(A[r][c], poly_mul(lam, A[r][pc], R, tord), R, tord);
        if (k + 1 < res.maps.size()) {
          PolyMatrix& B = res.maps[k + 1];
          for (size_t bc = 0; bc < B[0].size(); ++bc)
            B[pc][bc] = poly_add(B[pc][bc], poly_mul(lam, B[c][bc], R, tord), R, tord);
        }
      }
      // Row operations kill column pc outside the pivot; propagate into the
      // columns of maps[k-1].
      for (int r = 0; r < rows; ++r) {
        if (r == pr || A[r][pc].is_zero()) continue;
        Poly mu = poly_scale(A[r][pc], uinv, R);
        for (int c = 0; c < cols; ++c)
          A[r][c] = poly_sub(A[r][c], poly_mul(mu, A[pr][c], R, tord), R, tord);
        if (k > 0) {
          PolyMatrix& C = res.maps[k - 1];
          for (size_t cr = 0; cr < C.size(); ++cr)
            C[cr][pr] = poly_add(C[cr][pr], poly_mul(mu, C[cr][r], R, tord), R, tord);
        }
      }

      // The contracted summand must now be isolated; neighbouring strands
      // vanish by the composite-zero identity.
      if (k + 1 < res.maps.size())
        for (const Poly& f : res.maps[k + 1][pc])
          if (!f.is_zero()) throw std::logic_error("minimize: nonzero strand after pivot");
      if (k > 0)
        for (size_t cr = 0; cr < res.maps[k - 1].size(); ++cr)
          if (!res.maps[k - 1][cr][pr].is_zero())
            throw std::logic_error("minimize: nonzero strand after pivot");

      // Delete row pr / col pc of A, generator pr of F_k, generator pc of
      // F_{k+1}, the matching column of maps[k-1] and row of maps[k+1].
      A.erase(A.begin() + pr);
      for (auto& row : A) row.erase(row.begin() + pc);
      res.mods[k].twists.erase(res.mods[k].twists.begin() + pr);
      res.mods[k + 1].twists.erase(res.mods[k + 1].twists.begin() + pc);
      if (k > 0)
        for (auto& row : res.maps[k - 1]) row.erase(row.begin() + pr);
      if (k + 1 < res.maps.size()) res.maps[k + 1].erase(res.maps[k + 1].begin() + pc);
    }
  }
  while (!res.mods.empty() && res.mods.back().rank() == 0) {
    res.mods.pop_back();
    if (!res.maps.empty()) res.maps.pop_back();
  }
  res.minimal = true;
  return res;
}

inline BettiTable betti_table(const FreeResolution& res) {
  BettiTable b;
  for (size_t i = 0; i < res.mods.size(); ++i)
    for (int j : res.mods[i].twists) b.beta[{static_cast<int>(i), j}]++;
  return b;
}

/// reg(M) = max{j - i : beta_{i,j} != 0}; kNegInfty for the zero module.
inline int regularity_betti(const BettiTable& b) {
  int r = kNegInfty;
  for (const auto& [ij, v] : b.beta)
    if (v > 0) r = std::max(r, ij.second - ij.first);
  return r;
}

inline int projective_dimension(const FreeResolution& res) { return res.length(); }

/// depth via Auslander-Buchsbaum; rejects the zero module.
inline int depth_ab(const FreeResolution& res, const GradedRing& R) {
  if (res.mods.empty() || res.mods[0].rank() == 0)
    throw std::invalid_argument("depth_ab: zero module");
  return R.nvars - res.length();
}

/// Largest minimal-generator degree; kNegInfty for the zero module.
inline int gen_degree(const FreeResolution& res) {
  if (res.mods.empty() || res.mods[0].rank() == 0) return kNegInfty;
  int g = kNegInfty;
  for (int a : res.mods[0].twists) g = std::max(g, a);
  return g;
}

/// Macaulay2-style Betti table layout (rows j-i, columns i), display only.
inline std::string betti_to_string(const BettiTable& b) {
  if (b.beta.empty()) return "(zero module)\n";
  int imin = 1 << 30, imax = -(1 << 30), smin = 1 << 30, smax = -(1 << 30);
  for (const auto& [ij, v] : b.beta) {
    imin = std::min(imin, ij.first);
    imax = std::max(imax, ij.first);
    smin = std::min(smin, ij.second - ij.first);
    smax = std::max(smax, ij.second - ij.first);
  }
  std::ostringstream os;
  os << "      ";
  for (int i = imin; i <= imax; ++i) os << i << "\t";
  os << "\n";
  for (int s = smin; s <= smax; ++s) {
    os << s << ":    ";
    for (int i = imin; i <= imax; ++i) {
      long long v = b.at(i, s + i);
      os << (v ? std::to_string(v) : ".") << "\t";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace regcalc
