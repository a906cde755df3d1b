#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regcalc/deficiency.hpp"

namespace regcalc {

/// Deterministic 64-bit generator (splitmix64). Used instead of the
/// standard-library distributions so that identical seeds give identical
/// streams on every platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, m) by rejection.
  std::uint64_t below(std::uint64_t m) {
    std::uint64_t limit = ~0ull - (~0ull % m);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % m;
  }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (0x6a09e667f3bcc909ull + salt * 0x9e3779b97f4a7c15ull));
  return g.next();
}

struct GenericCertificate {
  std::uint64_t seed = 0;
  int attempts = 0;
  std::string property;
  std::vector<std::string> checked;  // per-module verification notes
  bool verified = false;
};

/// Random nonzero linear form with coefficients drawn from F_p.
inline Poly random_linear_form(const GradedRing& R, SplitMix64& rng) {
  Poly f;
  while (f.is_zero()) {
    f = Poly{};
    for (int i = 0; i < R.nvars; ++i) {
      fp_t c = static_cast<fp_t>(rng.below(R.char_p));
      if (c == 0) continue;
      Monomial m(R.nvars);
      m.e[i] = 1;
      f.terms.push_back({m, c});
    }
    poly_normalize(f, R, grevlex_top());
  }
  return f;
}

/// Presentation of 0 :_M f as a module: (N : f)/N over the presenting free
/// module of M.
inline GradedModuleP annihilator_submodule(const GradedModuleP& M, const Poly& f,
                                           const ModOrder& ord) {
  Submodule N(M.presenting_module(), M.relations);
  Submodule C = colon_submodule(N, f, ord, M.ring);
  if (C.gens.empty()) return zero_module(M.ring);
  return subquotient_presentation(C.gens, M.relations, N.ambient, ord, M.ring);
}

struct FilterRegularResult {
  Poly element;
  GenericCertificate cert;
};

/// Draws random linear forms until one is filter-regular for every listed
/// module (0 :_M x of finite length), verifying each candidate exactly.
/// Throws when the attempt budget runs out, which signals a characteristic
/// too small for the arrangement of associated primes.
inline FilterRegularResult filter_regular_element(Analyzer& az,
                                                  const std::vector<GradedModuleP>& mods,
                                                  const std::vector<std::string>& labels,
                                                  std::uint64_t seed, int max_attempts = 64) {
  if (mods.empty()) throw std::invalid_argument("filter_regular_element: empty module list");
  const GradedRing& R = az.ring();
  SplitMix64 rng(mix_seed(seed, 0xf17e));
  FilterRegularResult out;
  out.cert.seed = seed;
  out.cert.property = "filter_regular_for";

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    out.cert.attempts = attempt;
    out.cert.checked.clear();
    Poly x = random_linear_form(R, rng);
    bool ok = true;
    for (size_t k = 0; k < mods.size(); ++k) {
      const ModuleAnalysis& q = az.analyze(annihilator_submodule(mods[k], x, az.order()));
      std::string label = k < labels.size() ? labels[k] : ("module[" + std::to_string(k) + "]");
      if (q.dd.dim > 0) {
        ok = false;
        break;
      }
      long long len = q.is_zero ? 0 : q.dd.degree;
      out.cert.checked.push_back(label + ": colon_length=" + std::to_string(len) +
                                 (len == 0 ? " (regular)" : ""));
    }
    if (ok) {
      out.element = x;
      out.cert.verified = true;
      return out;
    }
  }
  throw std::runtime_error(
      "filter_regular_element: attempt budget exhausted; the characteristic appears too small "
      "for a generic linear form on this input");
}

/// N : m = intersection of the colons by the variables.
inline Submodule colon_by_irrelevant(const Submodule& N, const ModOrder& ord,
                                     const GradedRing& R) {
  Submodule acc = colon_submodule(N, poly_var(0, R), ord, R);
  for (int i = 1; i < R.nvars; ++i)
    acc = intersect_submodules(acc, colon_submodule(N, poly_var(i, R), ord, R), ord, R);
  return acc;
}

/// Saturation N : m^infinity by iterating the colon until it stabilizes.
inline Submodule saturate_irrelevant(Submodule N, const ModOrder& ord, const GradedRing& R) {
  while (true) {
    check_deadline();
    Submodule next = colon_by_irrelevant(N, ord, R);
    for (const ModElem& g : N.gens) next.gens.push_back(g);
    if (submodule_equal(next, N, ord, R)) return N;
    N = std::move(next);
  }
}

/// M / H^0_m(M): divide out the saturation of the relations.
inline GradedModuleP quotient_by_finite_part(const GradedModuleP& M, const ModOrder& ord) {
  if (M.gen_twists.empty()) return M;
  Submodule sat = saturate_irrelevant(Submodule(M.presenting_module(), M.relations), ord, M.ring);
  return {M.ring, M.gen_twists, sat.gens};
}

/// M/xM for a homogeneous x: appends x·e_j to the relations.
inline GradedModuleP quotient_by_linear(const GradedModuleP& M, const Poly& x,
                                        const ModOrder& ord) {
  if (x.is_zero()) throw std::invalid_argument("quotient_by_linear: zero element");
  GradedModuleP Q = M;
  for (size_t j = 0; j < M.gen_twists.size(); ++j) {
    ModElem e = embed_poly(x, static_cast<int>(j));
    mod_normalize(e, M.ring, ord);
    Q.relations.push_back(std::move(e));
  }
  return Q;
}

/// Minimal monomial generators of the ideal of leading terms of the reduced
/// basis, sorted for canonical comparison.
inline std::vector<Monomial> initial_ideal(const std::vector<Poly>& gens, const TermOrder& tord,
                                           const GradedRing& R) {
  std::vector<ModElem> elems;
  for (const Poly& f : gens)
    if (!f.is_zero()) elems.push_back(embed_poly(f, 0));
  ModOrder ord{tord, 0};
  GroebnerBasis gb = buchberger(Submodule(FreeMod::rank_one(), elems), ord, R);
  std::vector<Monomial> leads;
  for (const ModElem& g : gb.elems) leads.push_back(g.lead().m);
  std::sort(leads.begin(), leads.end(),
            [&](const Monomial& a, const Monomial& b) { return compare_monomials(a, b, tord) > 0; });
  return leads;
}

/// Random matrix in GL_n(F_p) by rejection on the determinant.
inline std::vector<std::vector<fp_t>> random_invertible_matrix(const GradedRing& R,
                                                               SplitMix64& rng) {
  int n = R.nvars;
  while (true) {
    std::vector<std::vector<fp_t>> g(n, std::vector<fp_t>(n));
    for (auto& row : g)
      for (fp_t& v : row) v = static_cast<fp_t>(rng.below(R.char_p));
    // determinant by Gaussian elimination
    auto m = g;
    fp_t det = 1;
    bool singular = false;
    for (int c = 0; c < n && !singular; ++c) {
      int piv = c;
      while (piv < n && m[piv][c] == 0) ++piv;
      if (piv == n) {
        singular = true;
        break;
      }
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = fp_neg(det, R.char_p);
      }
      det = fp_mul(det, m[c][c], R.char_p);
      fp_t inv = fp_inv(m[c][c], R.char_p);
      for (int r = c + 1; r < n; ++r) {
        fp_t f = fp_mul(m[r][c], inv, R.char_p);
        for (int cc = c; cc < n; ++cc)
          m[r][cc] = fp_sub(m[r][cc], fp_mul(f, m[c][cc], R.char_p), R.char_p);
      }
    }
    if (!singular && det != 0) return g;
  }
}

/// Substitution x_i -> sum_j g[i][j] x_j, expanded exactly.
inline Poly apply_linear_change(const Poly& f, const std::vector<std::vector<fp_t>>& g,
                                const GradedRing& R, const TermOrder& tord) {
  std::vector<Poly> images;
  for (int i = 0; i < R.nvars; ++i) {
    Poly li;
    for (int j = 0; j < R.nvars; ++j) {
      if (g[i][j] == 0) continue;
      Monomial m(R.nvars);
      m.e[j] = 1;
      li.terms.push_back({m, g[i][j]});
    }
    poly_normalize(li, R, tord);
    images.push_back(std::move(li));
  }
  Poly out;
  for (const Term& t : f.terms) {
    Poly term = poly_constant(t.c, R);
    for (int i = 0; i < R.nvars; ++i)
      for (int rep = 0; rep < t.m.e[i]; ++rep) term = poly_mul(term, images[i], R, tord);
    out = poly_add(out, term, R, tord);
  }
  return out;
}

struct GinResult {
  std::vector<Monomial> gens;  // minimal monomial generators
  GenericCertificate cert;
};

/// Generic initial ideal: initial ideal after a random coordinate change,
/// accepted only when two independent seeds agree. Borel-fixedness is not
/// asserted (positive characteristic).
inline GinResult gin(const std::vector<Poly>& ideal_gens, const TermOrder& tord,
                     std::uint64_t seed, const GradedRing& R, int max_attempts = 4) {
  bool nonzero = false;
  for (const Poly& f : ideal_gens) nonzero |= !f.is_zero();
  if (!nonzero) throw std::invalid_argument("gin: zero ideal");

  GinResult out;
  out.cert.seed = seed;
  out.cert.property = "gin_stable";
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    out.cert.attempts = attempt;
    std::vector<std::vector<Monomial>> results;
    for (int trial = 0; trial < 2; ++trial) {
      SplitMix64 rng(mix_seed(seed, 0x61a * attempt + trial));
      auto g = random_invertible_matrix(R, rng);
      std::vector<Poly> moved;
      for (const Poly& f : ideal_gens)
        if (!f.is_zero()) moved.push_back(apply_linear_change(f, g, R, tord));
      results.push_back(initial_ideal(moved, tord, R));
    }
    if (results[0] == results[1]) {
      out.gens = results[0];
      out.cert.verified = true;
      out.cert.checked.push_back("two independent coordinate changes agree");
      return out;
    }
  }
  throw std::runtime_error(
      "gin: initial ideals from independent coordinate changes keep disagreeing; "
      "the field is too small for a stable generic initial ideal here");
}

enum class IdealFlavor { monomial, binomial, dense };

inline IdealFlavor flavor_from_string(const std::string& s) {
  if (s == "monomial") return IdealFlavor::monomial;
  if (s == "binomial") return IdealFlavor::binomial;
  if (s == "dense") return IdealFlavor::dense;
  throw std::invalid_argument("unknown ideal flavor: " + s);
}

inline Monomial random_monomial(const GradedRing& R, int deg, SplitMix64& rng) {
  Monomial m(R.nvars);
  for (int t = 0; t < deg; ++t) m.e[rng.below(R.nvars)]++;
  return m;
}

/// Random homogeneous generators for the search command; always nonzero.
inline std::vector<Poly> random_ideal_gens(const GradedRing& R, IdealFlavor flavor, int max_deg,
                                           int num_gens, SplitMix64& rng) {
  std::vector<Poly> gens;
  for (int k = 0; k < num_gens; ++k) {
    int deg = 1 + static_cast<int>(rng.below(max_deg));
    Poly f;
    switch (flavor) {
      case IdealFlavor::monomial:
        f = poly_monomial(random_monomial(R, deg, rng), 1, R);
        break;
      case IdealFlavor::binomial: {
        Monomial a = random_monomial(R, deg, rng);
        Monomial b = random_monomial(R, deg, rng);
        f.terms.push_back({a, 1});
        if (!(b == a)) f.terms.push_back({b, static_cast<fp_t>(1 + rng.below(R.char_p - 1))});
        poly_normalize(f, R, grevlex_top());
        break;
      }
      case IdealFlavor::dense: {
        // all monomials of the chosen degree, random coefficients
        std::vector<Monomial> all;
        Monomial m(R.nvars);
        auto rec = [&](auto&& self, int pos, int rem) -> void {
          if (pos == R.nvars - 1) {
            m.e[pos] = rem;
            all.push_back(m);
            m.e[pos] = 0;
            return;
          }
          for (int v = 0; v <= rem; ++v) {
            m.e[pos] = v;
            self(self, pos + 1, rem - v);
          }
          m.e[pos] = 0;
        };
        rec(rec, 0, deg);
        for (const Monomial& mm : all) {
          fp_t c = static_cast<fp_t>(rng.below(R.char_p));
          if (c != 0) f.terms.push_back({mm, c});
        }
        poly_normalize(f, R, grevlex_top());
        break;
      }
    }
    if (!f.is_zero()) gens.push_back(f);
  }
  if (gens.empty()) gens.push_back(poly_monomial(random_monomial(R, 1, rng), 1, R));
  return gens;
}

}  // namespace regcalc
