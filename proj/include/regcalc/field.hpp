#pragma once

#include <cstdint>
#include <stdexcept>

namespace regcalc {

/// Coefficients of the prime field F_p, stored as residues in [0, p).
/// p must fit in 31 bits so that products fit in uint64_t.
using fp_t = std::uint32_t;

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
    if (m == q) return true;
    if (m % q == 0) return false;
  }
  for (std::uint64_t d = 11; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

inline fp_t fp_reduce(std::int64_t v, fp_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<fp_t>(r);
}

inline fp_t fp_add(fp_t a, fp_t b, fp_t p) {
  fp_t s = a + b;
  return s >= p ? s - p : s;
}

inline fp_t fp_neg(fp_t a, fp_t p) { return a == 0 ? 0 : p - a; }

inline fp_t fp_sub(fp_t a, fp_t b, fp_t p) { return fp_add(a, fp_neg(b, p), p); }

inline fp_t fp_mul(fp_t a, fp_t b, fp_t p) {
  return static_cast<fp_t>((static_cast<std::uint64_t>(a) * b) % p);
}

/// Inverse by extended Euclid; throws on zero.
inline fp_t fp_inv(fp_t a, fp_t p) {
  if (a == 0) throw std::domain_error("fp_inv: zero has no inverse");
  std::int64_t t = 0, newt = 1;
  std::int64_t r = p, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<fp_t>(t);
}

inline fp_t fp_div(fp_t a, fp_t b, fp_t p) { return fp_mul(a, fp_inv(b, p), p); }

}  // namespace regcalc
