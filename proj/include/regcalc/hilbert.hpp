#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "regcalc/resolution.hpp"

namespace regcalc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// C(a, b) with the convention C(a, b) = 0 for a < b or b < 0.
inline long long binom_ll(long long a, int b) {
  if (b < 0 || a < b) return 0;
  b = static_cast<int>(std::min<long long>(b, a - b));
  long long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

inline BigInt binom_big(const BigInt& a, int b) {
  if (b < 0 || a < b) return 0;
  BigInt r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

/// Hilbert series numerator / (1-t)^nvars, numerator a Laurent polynomial
/// with integer coefficients keyed by degree.
struct HilbertSeries {
  std::map<int, long long> num;
  int nvars = 0;
};

inline HilbertSeries hilbert_series_from_betti(const BettiTable& b, int nvars) {
  HilbertSeries hs;
  hs.nvars = nvars;
  for (const auto& [ij, v] : b.beta) {
    hs.num[ij.second] += (ij.first % 2 == 0 ? v : -v);
    if (hs.num[ij.second] == 0) hs.num.erase(ij.second);
  }
  return hs;
}

/// dim_k M_j, by expanding num(t) / (1-t)^n.
inline long long hilbert_value(const HilbertSeries& hs, int j) {
  long long v = 0;
  for (const auto& [k, c] : hs.num)
    if (k <= j) v += c * binom_ll(static_cast<long long>(j) - k + hs.nvars - 1, hs.nvars - 1);
  return v;
}

/// Polynomial with exact rational coefficients, ascending powers.
struct HilbertPolynomial {
  std::vector<BigRat> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  BigRat operator()(const BigInt& t) const {
    BigRat v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * BigRat(t) + coeffs[i];
    return v;
  }
  /// Evaluation at an integer; Hilbert polynomials are integer-valued.
  BigInt eval_int(long long t) const {
    BigRat v = (*this)(BigInt(t));
    if (denominator(v) != 1)
      throw std::logic_error("HilbertPolynomial: non-integer value at an integer point");
    return numerator(v);
  }
};

namespace detail {

inline void hp_trim(HilbertPolynomial& p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

}  // namespace detail

/// Lagrange interpolation through (x_s, v_s), s = 0..k-1, exact rationals.
inline HilbertPolynomial interpolate(const std::vector<long long>& xs,
                                     const std::vector<long long>& vs) {
  HilbertPolynomial p;
  size_t k = xs.size();
  for (size_t s = 0; s < k; ++s) {
    std::vector<BigRat> basis = {1};
    BigRat denom = 1;
    for (size_t u = 0; u < k; ++u) {
      if (u == s) continue;
      // basis *= (t - xs[u])
      std::vector<BigRat> next(basis.size() + 1, 0);
      for (size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * xs[u];
      }
      basis = std::move(next);
      denom *= BigRat(xs[s]) - xs[u];
    }
    if (p.coeffs.size() < basis.size()) p.coeffs.resize(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) p.coeffs[i] += basis[i] * vs[s] / denom;
  }
  detail::hp_trim(p);
  return p;
}

/// The unique polynomial agreeing with the Hilbert function for j >> 0.
/// Interpolates at nvars consecutive points past reg(M), which is safe since
/// ri(M) <= reg(M).
inline HilbertPolynomial hilbert_polynomial(const HilbertSeries& hs, int reg) {
  if (hs.num.empty()) return {};
  int start = is_finite_deg(reg) ? reg + 1 : 1;
  std::vector<long long> xs, vs;
  for (int s = 0; s < hs.nvars; ++s) {
    xs.push_back(start + s);
    vs.push_back(hilbert_value(hs, start + s));
  }
  return interpolate(xs, vs);
}

/// dim, multiplicity, beg, end of a module with the given series data.
/// dim = -1 for the zero module; end = kPosInfty when dim >= 1.
struct DimensionData {
  int dim = -1;
  long long degree = 0;
  int beg = kPosInfty;
  int end = kNegInfty;
};

inline DimensionData dimension_data(const HilbertSeries& hs, const HilbertPolynomial& hp,
                                    int reg) {
  DimensionData d;
  if (hs.num.empty()) return d;

  int lo = hs.num.begin()->first;
  while (hilbert_value(hs, lo) == 0) ++lo;  // hits a nonzero value by construction
  d.beg = lo;

  if (hp.is_zero()) {
    d.dim = 0;
    int hi = std::max(reg, d.beg);
    while (hilbert_value(hs, hi) == 0) --hi;
    d.end = hi;
    long long len = 0;
    for (int j = d.beg; j <= d.end; ++j) len += hilbert_value(hs, j);
    d.degree = len;
  } else {
    d.dim = hp.degree() + 1;
    d.end = kPosInfty;
    BigRat lead = hp.coeffs.back();
    for (int i = 1; i <= hp.degree(); ++i) lead *= i;
    if (denominator(lead) != 1 || lead <= 0)
      throw std::logic_error("dimension_data: multiplicity is not a positive integer");
    d.degree = static_cast<long long>(numerator(lead));
  }
  return d;
}

/// ri(M) = max{j : H_M(j) != P_M(j)}; kNegInfty if they agree everywhere.
/// Scans down from reg; once below beg, n+1 consecutive agreements certify
/// that P vanishes identically below, so nothing further can disagree.
inline int regularity_index(const HilbertSeries& hs, const HilbertPolynomial& hp, int reg,
                            int beg) {
  if (hs.num.empty()) return hp.is_zero() ? kNegInfty : kPosInfty;
  for (int j = reg; j >= beg - hs.nvars - 2; --j) {
    long long h = hilbert_value(hs, j);
    if (BigInt(h) != hp.eval_int(j)) return j;
  }
  return kNegInfty;
}

/// Independent oracle for monomial ideals: counts the degree-j standard
/// monomials (those divisible by no generator).
inline long long staircase_hilbert(const std::vector<Monomial>& gens, int j, int nvars) {
  if (j < 0) return 0;
  long long count = 0;
  Monomial m(nvars);
  // Enumerate all exponent vectors of total degree j.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == nvars - 1) {
      m.e[pos] = rem;
      for (const Monomial& g : gens)
        if (divides(g, m)) {
          m.e[pos] = 0;
          return;
        }
      ++count;
      m.e[pos] = 0;
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      m.e[pos] = v;
      self(self, pos + 1, rem - v);
    }
    m.e[pos] = 0;
  };
  rec(rec, 0, j);
  return count;
}

}  // namespace regcalc
