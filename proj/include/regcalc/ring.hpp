#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "regcalc/field.hpp"

namespace regcalc {

/// Default coefficient characteristic. Large enough that random linear
/// forms behave generically with high probability; every generic choice
/// is still verified exactly downstream.
inline constexpr fp_t kDefaultChar = 32003;

/// Sentinels for beg/end/reg of the zero module. Chosen far from any
/// attainable degree but safe to add small offsets to.
inline constexpr int kNegInfty = -1000000000;
inline constexpr int kPosInfty = 1000000000;

inline bool is_finite_deg(int v) { return v > kNegInfty / 2 && v < kPosInfty / 2; }

/// The ambient standard graded polynomial ring F_p[x_1..x_n], deg x_i = 1.
struct GradedRing {
  int nvars = 0;
  fp_t char_p = kDefaultChar;

  GradedRing() = default;
  GradedRing(int n, fp_t p) : nvars(n), char_p(p) {
    if (n < 1) throw std::invalid_argument("GradedRing: need at least one variable");
    if (!is_prime(p)) throw std::invalid_argument("GradedRing: characteristic must be prime");
    if (p >= (1u << 31)) throw std::invalid_argument("GradedRing: characteristic too large");
  }

  bool operator==(const GradedRing& o) const = default;
};

/// Exponent vector of length nvars.
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(int n) : e(n, 0) {}
  Monomial(std::initializer_list<int> l) : e(l) {}

  int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }
  bool operator==(const Monomial& o) const = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

/// b / a, assuming divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r = b;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= a.e[i];
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

enum class OrderKind { lex, grevlex };

/// Tie-break policy for module terms sharing a monomial comparison.
enum class ModulePos { term_over_position, position_over_term };

struct TermOrder {
  OrderKind kind = OrderKind::grevlex;
  ModulePos pos = ModulePos::term_over_position;
};

inline TermOrder grevlex_top() { return TermOrder{}; }
inline TermOrder lex_top() { return TermOrder{OrderKind::lex, ModulePos::term_over_position}; }

/// Returns <0, 0, >0 as a <, ==, > b in the given order.
inline int compare_monomials(const Monomial& a, const Monomial& b, const TermOrder& ord) {
  if (a.e.size() != b.e.size())
    throw std::invalid_argument("compare_monomials: mixed-ring operands");
  switch (ord.kind) {
    case OrderKind::lex:
      for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
      return 0;
    case OrderKind::grevlex: {
      int da = a.degree(), db = b.degree();
      if (da != db) return da < db ? -1 : 1;
      // Same degree: a > b iff the last nonzero entry of a - b is negative.
      for (size_t i = a.e.size(); i-- > 0;) {
        int d = a.e[i] - b.e[i];
        if (d != 0) return d < 0 ? 1 : -1;
      }
      return 0;
    }
  }
  return 0;
}

inline bool monomial_less(const Monomial& a, const Monomial& b, const TermOrder& ord) {
  return compare_monomials(a, b, ord) < 0;
}

/// x1..xn naming used when no user-declared identifiers are available.
inline std::vector<std::string> default_var_names(int n) {
  std::vector<std::string> v;
  v.reserve(n);
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace regcalc
