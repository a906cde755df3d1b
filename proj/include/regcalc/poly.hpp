#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regcalc/ring.hpp"

namespace regcalc {

struct Term {
  Monomial m;
  fp_t c = 0;
};

/// Sparse polynomial: terms sorted strictly descending in the order it was
/// normalized with, no zero coefficients stored.
struct Poly {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const {
    if (terms.empty()) throw std::logic_error("Poly::lead on zero polynomial");
    return terms.front();
  }
  size_t size() const { return terms.size(); }
};

inline Poly poly_zero() { return {}; }

inline Poly poly_constant(fp_t c, const GradedRing& R) {
  Poly f;
  if (c % R.char_p != 0) f.terms.push_back({Monomial(R.nvars), c % R.char_p});
  return f;
}

inline Poly poly_var(int i, const GradedRing& R) {
  if (i < 0 || i >= R.nvars) throw std::out_of_range("poly_var: bad index");
  Monomial m(R.nvars);
  m.e[i] = 1;
  return Poly{{{m, 1}}};
}

inline Poly poly_monomial(const Monomial& m, fp_t c, const GradedRing& R) {
  Poly f;
  if (c % R.char_p != 0) f.terms.push_back({m, c % R.char_p});
  return f;
}

/// Sorts descending and combines equal monomials; drops zeros.
inline void poly_normalize(Poly& f, const GradedRing& R, const TermOrder& ord) {
  std::sort(f.terms.begin(), f.terms.end(), [&](const Term& a, const Term& b) {
    return compare_monomials(a.m, b.m, ord) > 0;
  });
  std::vector<Term> out;
  out.reserve(f.terms.size());
  for (const Term& t : f.terms) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c = fp_add(out.back().c, t.c, R.char_p);
    else
      out.push_back({t.m, t.c % R.char_p});
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  f.terms = std::move(out);
}

inline void check_same_ring(const Poly& a, const GradedRing& R) {
  for (const Term& t : a.terms)
    if (static_cast<int>(t.m.e.size()) != R.nvars)
      throw std::invalid_argument("poly: operand from a different ring");
}

inline Poly poly_add(const Poly& a, const Poly& b, const GradedRing& R, const TermOrder& ord) {
  check_same_ring(a, R);
  check_same_ring(b, R);
  Poly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int cmp;
    if (i == a.terms.size())
      cmp = -1;
    else if (j == b.terms.size())
      cmp = 1;
    else
      cmp = compare_monomials(a.terms[i].m, b.terms[j].m, ord);
    if (cmp > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (cmp < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      fp_t c = fp_add(a.terms[i].c, b.terms[j].c, R.char_p);
      if (c != 0) r.terms.push_back({a.terms[i].m, c});
      ++i, ++j;
    }
  }
  return r;
}

inline Poly poly_scale(const Poly& a, fp_t c, const GradedRing& R) {
  Poly r;
  if (c % R.char_p == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const Term& t : a.terms) r.terms.push_back({t.m, fp_mul(t.c, c % R.char_p, R.char_p)});
  return r;
}

inline Poly poly_neg(const Poly& a, const GradedRing& R) {
  return poly_scale(a, R.char_p - 1, R);
}

inline Poly poly_sub(const Poly& a, const Poly& b, const GradedRing& R, const TermOrder& ord) {
  return poly_add(a, poly_neg(b, R), R, ord);
}

/// a * (c * x^m), preserving sort order (multiplication by a monomial is
/// order-preserving for any multiplicative order).
inline Poly poly_mul_term(const Poly& a, const Monomial& m, fp_t c, const GradedRing& R) {
  Poly r;
  if (c % R.char_p == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const Term& t : a.terms)
    r.terms.push_back({t.m * m, fp_mul(t.c, c % R.char_p, R.char_p)});
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b, const GradedRing& R, const TermOrder& ord) {
  check_same_ring(a, R);
  check_same_ring(b, R);
  Poly r;
  for (const Term& t : b.terms) r = poly_add(r, poly_mul_term(a, t.m, t.c, R), R, ord);
  return r;
}

inline bool poly_equal(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i].m == b.terms[i].m && a.terms[i].c == b.terms[i].c)) return false;
  return true;
}

/// Degree of a homogeneous polynomial; kNegInfty for 0.
inline int poly_degree(const Poly& f) {
  if (f.is_zero()) return kNegInfty;
  int d = f.terms.front().m.degree();
  for (const Term& t : f.terms) d = std::max(d, t.m.degree());
  return d;
}

inline bool poly_is_homogeneous(const Poly& f) {
  if (f.is_zero()) return true;
  int d = f.terms.front().m.degree();
  for (const Term& t : f.terms)
    if (t.m.degree() != d) return false;
  return true;
}

/// Splits into homogeneous components, lowest degree first.
inline std::vector<std::pair<int, Poly>> homogeneous_components(const Poly& f,
                                                                const GradedRing& R,
                                                                const TermOrder& ord) {
  std::vector<std::pair<int, Poly>> comps;
  for (const Term& t : f.terms) {
    int d = t.m.degree();
    auto it = std::find_if(comps.begin(), comps.end(),
                           [d](const auto& c) { return c.first == d; });
    if (it == comps.end()) {
      comps.push_back({d, Poly{{t}}});
    } else {
      it->second.terms.push_back(t);
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [d, g] : comps) poly_normalize(g, R, ord);
  return comps;
}

inline std::string poly_to_string(const Poly& f, const std::vector<std::string>& names,
                                  const GradedRing& R) {
  if (f.is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < f.terms.size(); ++i) {
    const Term& t = f.terms[i];
    fp_t c = t.c;
    bool neg = c > R.char_p / 2;  // print small negatives as -k for readability
    fp_t mag = neg ? R.char_p - c : c;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (t.m.is_one())
      s += std::to_string(mag);
    else if (mag != 1)
      s += std::to_string(mag) + "*" + monomial_to_string(t.m, names);
    else
      s += monomial_to_string(t.m, names);
  }
  return s;
}

}  // namespace regcalc
