#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "regcalc/poly.hpp"

namespace regcalc {

/// Graded free module ⊕_j R(−twists[j]); generator j sits in degree twists[j].
/// Rank 0 is the zero module.
struct FreeMod {
  std::vector<int> twists;

  FreeMod() = default;
  explicit FreeMod(std::vector<int> tw) : twists(std::move(tw)) {}
  static FreeMod rank_one() { return FreeMod{{0}}; }

  int rank() const { return static_cast<int>(twists.size()); }
  bool operator==(const FreeMod& o) const = default;
};

inline FreeMod dual_module(const FreeMod& f) {
  FreeMod d;
  d.twists.reserve(f.twists.size());
  for (int a : f.twists) d.twists.push_back(-a);
  return d;
}

inline FreeMod twisted(const FreeMod& f, int shift) {
  FreeMod d = f;
  for (int& a : d.twists) a += shift;
  return d;
}

struct ModTerm {
  int comp = 0;
  Monomial m;
  fp_t c = 0;
};

/// Element of a graded free module: terms sorted strictly descending in the
/// active module order, no zero coefficients.
struct ModElem {
  std::vector<ModTerm> terms;

  bool is_zero() const { return terms.empty(); }
  const ModTerm& lead() const {
    if (terms.empty()) throw std::logic_error("ModElem::lead on zero element");
    return terms.front();
  }
};

/// Order on module terms. Components below elim_split form an elimination
/// block: any term there compares above any term at or past the split.
/// Within a block, term_over_position compares monomials first and breaks
/// ties toward the lower component index.
struct ModOrder {
  TermOrder term;
  int elim_split = 0;  // 0 = no elimination block

  /// <0, 0, >0 as a <, ==, > b.
  int compare(const ModTerm& a, const ModTerm& b) const {
    if (elim_split > 0) {
      bool ea = a.comp < elim_split, eb = b.comp < elim_split;
      if (ea != eb) return ea ? 1 : -1;
    }
    if (term.pos == ModulePos::position_over_term) {
      if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
      return compare_monomials(a.m, b.m, term);
    }
    int c = compare_monomials(a.m, b.m, term);
    if (c != 0) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return 0;
  }
  bool less(const ModTerm& a, const ModTerm& b) const { return compare(a, b) < 0; }
};

inline ModOrder default_module_order() { return ModOrder{grevlex_top(), 0}; }

inline void mod_normalize(ModElem& f, const GradedRing& R, const ModOrder& ord) {
  std::sort(f.terms.begin(), f.terms.end(),
            [&](const ModTerm& a, const ModTerm& b) { return ord.compare(a, b) > 0; });
  std::vector<ModTerm> out;
  out.reserve(f.terms.size());
  for (const ModTerm& t : f.terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m)
      out.back().c = fp_add(out.back().c, t.c, R.char_p);
    else
      out.push_back({t.comp, t.m, t.c % R.char_p});
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  f.terms = std::move(out);
}

inline ModElem mod_add(const ModElem& a, const ModElem& b, const GradedRing& R,
                       const ModOrder& ord) {
  ModElem r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int cmp;
    if (i == a.terms.size())
      cmp = -1;
    else if (j == b.terms.size())
      cmp = 1;
    else
      cmp = ord.compare(a.terms[i], b.terms[j]);
    if (cmp > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (cmp < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      fp_t c = fp_add(a.terms[i].c, b.terms[j].c, R.char_p);
      if (c != 0) r.terms.push_back({a.terms[i].comp, a.terms[i].m, c});
      ++i, ++j;
    }
  }
  return r;
}

inline ModElem mod_scale(const ModElem& a, fp_t c, const GradedRing& R) {
  ModElem r;
  if (c % R.char_p == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const ModTerm& t : a.terms)
    r.terms.push_back({t.comp, t.m, fp_mul(t.c, c % R.char_p, R.char_p)});
  return r;
}

/// a * (c * x^m); order-preserving.
inline ModElem mod_mul_term(const ModElem& a, const Monomial& m, fp_t c, const GradedRing& R) {
  ModElem r;
  if (c % R.char_p == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const ModTerm& t : a.terms)
    r.terms.push_back({t.comp, t.m * m, fp_mul(t.c, c % R.char_p, R.char_p)});
  return r;
}

/// f - (c * x^m) * g, the reduction step primitive.
inline ModElem mod_axpy_sub(const ModElem& f, fp_t c, const Monomial& m, const ModElem& g,
                            const GradedRing& R, const ModOrder& ord) {
  return mod_add(f, mod_mul_term(g, m, fp_neg(c, R.char_p), R), R, ord);
}

inline ModElem mod_mul_poly(const ModElem& a, const Poly& f, const GradedRing& R,
                            const ModOrder& ord) {
  ModElem r;
  for (const Term& t : f.terms) r = mod_add(r, mod_mul_term(a, t.m, t.c, R), R, ord);
  return r;
}

inline bool mod_equal(const ModElem& a, const ModElem& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i) {
    const ModTerm &x = a.terms[i], &y = b.terms[i];
    if (!(x.comp == y.comp && x.m == y.m && x.c == y.c)) return false;
  }
  return true;
}

/// Degree of a homogeneous element in the given ambient; kNegInfty for 0.
inline int mod_degree(const ModElem& f, const FreeMod& amb) {
  if (f.is_zero()) return kNegInfty;
  int d = kNegInfty;
  for (const ModTerm& t : f.terms)
    d = std::max(d, t.m.degree() + amb.twists.at(t.comp));
  return d;
}

inline bool mod_is_homogeneous(const ModElem& f, const FreeMod& amb) {
  if (f.is_zero()) return true;
  int d = f.terms.front().m.degree() + amb.twists.at(f.terms.front().comp);
  for (const ModTerm& t : f.terms)
    if (t.m.degree() + amb.twists.at(t.comp) != d) return false;
  return true;
}

/// Embeds a polynomial into component comp of a free module.
inline ModElem embed_poly(const Poly& f, int comp) {
  ModElem r;
  r.terms.reserve(f.terms.size());
  for (const Term& t : f.terms) r.terms.push_back({comp, t.m, t.c});
  return r;
}

/// Extracts component comp as a polynomial (sorted once normalized).
inline Poly component_poly(const ModElem& f, int comp) {
  Poly r;
  for (const ModTerm& t : f.terms)
    if (t.comp == comp) r.terms.push_back({t.m, t.c});
  return r;
}

inline ModElem unit_vector(int comp, const GradedRing& R) {
  return ModElem{{{comp, Monomial(R.nvars), 1}}};
}

inline std::string mod_to_string(const ModElem& f, const std::vector<std::string>& names,
                                 const GradedRing& R) {
  if (f.is_zero()) return "0";
  std::string s;
  int max_comp = 0;
  for (const ModTerm& t : f.terms) max_comp = std::max(max_comp, t.comp);
  s = "(";
  for (int c = 0; c <= max_comp; ++c) {
    if (c) s += ", ";
    s += poly_to_string(component_poly(f, c), names, R);
  }
  return s + ")";
}

}  // namespace regcalc
