#pragma once

// Shared helpers for the test suites: small constructors and an
// implementation-independent exactness oracle based on per-degree F_p rank.

#include <string>
#include <vector>

#include "regcalc/resolution.hpp"

namespace regcalc::testutil {

inline Poly make_poly(std::initializer_list<std::pair<std::vector<int>, long long>> terms,
                      const GradedRing& R) {
  Poly f;
  for (const auto& [e, c] : terms) {
    Monomial m;
    m.e = e;
    f.terms.push_back({m, fp_reduce(c, R.char_p)});
  }
  poly_normalize(f, R, grevlex_top());
  return f;
}

inline Submodule ideal_sub(const std::vector<Poly>& gens) {
  std::vector<ModElem> elems;
  for (const Poly& f : gens) elems.push_back(embed_poly(f, 0));
  return Submodule(FreeMod::rank_one(), elems);
}

inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial m(n);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      m.e[pos] = rem;
      out.push_back(m);
      m.e[pos] = 0;
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      m.e[pos] = v;
      self(self, pos + 1, rem - v);
    }
    m.e[pos] = 0;
  };
  if (d >= 0) rec(rec, 0, d);
  return out;
}

/// Scalar matrix of the degree-j slice of a graded map, rows over the basis
/// of (target)_j, columns over the basis of (source)_j.
inline std::vector<std::vector<fp_t>> degree_slice(const PolyMatrix& A, const FreeMod& target,
                                                   const FreeMod& source, int j,
                                                   const GradedRing& R) {
  std::vector<std::pair<int, Monomial>> rows, cols;
  for (int r = 0; r < target.rank(); ++r)
    for (const Monomial& m : monomials_of_degree(R.nvars, j - target.twists[r]))
      rows.push_back({r, m});
  for (int c = 0; c < source.rank(); ++c)
    for (const Monomial& m : monomials_of_degree(R.nvars, j - source.twists[c]))
      cols.push_back({c, m});
  std::vector<std::vector<fp_t>> M(rows.size(), std::vector<fp_t>(cols.size(), 0));
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    auto [c, mc] = cols[ci];
    for (int r = 0; r < target.rank(); ++r) {
      for (const Term& t : A[r][c].terms) {
        Monomial prod = t.m * mc;
        for (size_t ri = 0; ri < rows.size(); ++ri)
          if (rows[ri].first == r && rows[ri].second == prod) M[ri][ci] = t.c;
      }
    }
  }
  return M;
}

inline int fp_rank(std::vector<std::vector<fp_t>> M, fp_t p) {
  int rank = 0;
  size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    size_t piv = rank;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[rank], M[piv]);
    fp_t inv = fp_inv(M[rank][c], p);
    for (size_t cc = c; cc < cols; ++cc) M[rank][cc] = fp_mul(M[rank][cc], inv, p);
    for (size_t r = 0; r < rows; ++r) {
      if (r == static_cast<size_t>(rank) || M[r][c] == 0) continue;
      fp_t f = M[r][c];
      for (size_t cc = c; cc < cols; ++cc)
        M[r][cc] = fp_sub(M[r][cc], fp_mul(f, M[rank][cc], p), p);
    }
    ++rank;
  }
  return rank;
}

inline long long free_dim(const FreeMod& f, int j, int n) {
  long long d = 0;
  for (int tw : f.twists) {
    long long a = j - tw + n - 1;
    if (a < n - 1) continue;
    long long b = 1;
    for (int i = 1; i <= n - 1; ++i) b = b * (a - (n - 1) + i) / i;
    d += b;
  }
  return d;
}

/// Exactness of the resolution at homological positions >= 1 over a degree
/// window: dim ker(d_k)_j == rank(d_{k+1})_j.
inline bool resolution_exact_in_window(const FreeResolution& res, const GradedRing& R, int lo,
                                       int hi) {
  for (int k = 0; k < res.length(); ++k) {
    for (int j = lo; j <= hi; ++j) {
      int rk = fp_rank(degree_slice(res.maps[k], res.mods[k], res.mods[k + 1], j, R), R.char_p);
      long long src_dim = free_dim(res.mods[k + 1], j, R.nvars);
      long long ker_dim = src_dim - rk;
      long long img_next = 0;
      if (k + 1 < res.length())
        img_next =
            fp_rank(degree_slice(res.maps[k + 1], res.mods[k + 1], res.mods[k + 2], j, R), R.char_p);
      if (ker_dim != img_next) return false;
    }
  }
  return true;
}

}  // namespace regcalc::testutil
