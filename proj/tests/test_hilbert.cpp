#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "regcalc/hilbert.hpp"
#include "test_util.hpp"

using namespace regcalc;
using namespace regcalc::testutil;

namespace {

const GradedRing R2(2, 32003);
const GradedRing R3(3, 32003);
const ModOrder kOrd = default_module_order();

struct HData {
  HilbertSeries hs;
  HilbertPolynomial hp;
  DimensionData dd;
  int reg;
  int ri;
};

HData hdata(const GradedModuleP& M) {
  FreeResolution res = free_resolution(M, kOrd);
  BettiTable b = betti_table(res);
  HData h;
  h.hs = hilbert_series_from_betti(b, M.ring.nvars);
  h.reg = regularity_betti(b);
  h.hp = hilbert_polynomial(h.hs, h.reg);
  h.dd = dimension_data(h.hs, h.hp, h.reg);
  h.ri = h.hs.num.empty() ? kNegInfty : regularity_index(h.hs, h.hp, h.reg, h.dd.beg);
  return h;
}

GradedModuleP x2_xy() {
  return quotient_ring(R2, {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2)});
}
GradedModuleP x2_y2() {
  return quotient_ring(R2, {make_poly({{{2, 0}, 1}}, R2), make_poly({{{0, 2}, 1}}, R2)});
}

}  // namespace

TEST_CASE("series of the free ring") {
  HData h = hdata(free_module_p(R2, {0}));
  REQUIRE(h.hs.num == std::map<int, long long>{{0, 1}});
  for (int j = 0; j <= 6; ++j) REQUIRE(hilbert_value(h.hs, j) == j + 1);
  REQUIRE(hilbert_value(h.hs, -1) == 0);
  // P(t) = t + 1.
  REQUIRE(h.hp.degree() == 1);
  REQUIRE(h.hp.eval_int(10) == 11);
}

TEST_CASE("series of R/(x^2, xy)") {
  HData h = hdata(x2_xy());
  REQUIRE(h.hs.num == std::map<int, long long>{{0, 1}, {2, -2}, {3, 1}});
  std::vector<long long> expect = {1, 2, 1, 1, 1, 1};
  for (int j = 0; j < 6; ++j) REQUIRE(hilbert_value(h.hs, j) == expect[j]);
  REQUIRE(h.hp.degree() == 0);
  REQUIRE(h.hp.eval_int(0) == 1);
  REQUIRE(h.ri == 1);
  REQUIRE(h.dd.dim == 1);
  REQUIRE(h.dd.degree == 1);
  REQUIRE(h.dd.beg == 0);
  REQUIRE(h.dd.end == kPosInfty);
}

TEST_CASE("series of the complete intersection R/(x^2, y^2)") {
  HData h = hdata(x2_y2());
  std::vector<long long> expect = {1, 2, 1, 0, 0};
  for (int j = 0; j < 5; ++j) REQUIRE(hilbert_value(h.hs, j) == expect[j]);
  REQUIRE(h.hp.is_zero());
  REQUIRE(h.ri == 2);
  REQUIRE(h.dd.dim == 0);
  REQUIRE(h.dd.degree == 4);  // length
  REQUIRE(h.dd.beg == 0);
  REQUIRE(h.dd.end == 2);
}

TEST_CASE("regularity equals regularity index plus dimension on CM quotients") {
  // Lemma-style cross-check on Cohen-Macaulay members: reg = ri + d.
  HData h = hdata(x2_y2());
  REQUIRE(h.reg == h.ri + h.dd.dim);
  HData hf = hdata(quotient_ring(R2, {make_poly({{{3, 0}, 1}, {{0, 3}, 2}}, R2)}));
  REQUIRE(hf.reg == hf.ri + hf.dd.dim);
}

TEST_CASE("zero module sentinels") {
  HData h = hdata(zero_module(R2));
  REQUIRE(h.hs.num.empty());
  REQUIRE(h.dd.dim == -1);
  REQUIRE(h.dd.beg == kPosInfty);
  REQUIRE(h.dd.end == kNegInfty);
  REQUIRE(h.reg == kNegInfty);
}

TEST_CASE("staircase oracle for monomial ideals") {
  // (x^2, xy): only y^2 survives in degree 2.
  REQUIRE(staircase_hilbert({{2, 0}, {1, 1}}, 2, 2) == 1);
  // Zero ideal: all monomials.
  for (int d = 0; d <= 5; ++d) REQUIRE(staircase_hilbert({}, d, 3) == binom_ll(d + 2, 2));
  // m^2 in two variables leaves x and y in degree 1.
  REQUIRE(staircase_hilbert({{2, 0}, {1, 1}, {0, 2}}, 1, 2) == 2);
  REQUIRE(staircase_hilbert({{2, 0}, {1, 1}, {0, 2}}, 2, 2) == 0);
}

TEST_CASE("resolution series agrees with the staircase on random monomial ideals") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    const GradedRing& R = (n == 2) ? R2 : R3;
    std::vector<Monomial> mgens;
    std::vector<Poly> gens;
    for (int k = 0; k < 3; ++k) {
      Monomial m(n);
      int deg = 1 + static_cast<int>(rng() % 3);
      for (int t = 0; t < deg; ++t) m.e[rng() % n]++;
      mgens.push_back(m);
      gens.push_back(poly_monomial(m, 1, R));
    }
    HData h = hdata(quotient_ring(R, gens));
    for (int j = 0; j <= h.reg + n + 3; ++j)
      REQUIRE(hilbert_value(h.hs, j) == staircase_hilbert(mgens, j, n));
  }
}

TEST_CASE("hilbert polynomial is integer valued and matches the function in the tail") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Poly> gens;
    for (int k = 0; k < 2; ++k) {
      Monomial m(3);
      int deg = 1 + static_cast<int>(rng() % 3);
      for (int t = 0; t < deg; ++t) m.e[rng() % 3]++;
      gens.push_back(poly_monomial(m, 1, R3));
    }
    HData h = hdata(quotient_ring(R3, gens));
    for (int j = h.reg + 1; j <= h.reg + 8; ++j)
      REQUIRE(h.hp.eval_int(j) == BigInt(hilbert_value(h.hs, j)));
    for (int j = -5; j <= h.reg + 8; ++j) REQUIRE_NOTHROW(h.hp.eval_int(j));
    REQUIRE(h.ri <= h.reg);
  }
}

TEST_CASE("interpolation reproduces exact rational polynomials") {
  // p(t) = t(t-1)/2: values at 3..6.
  HilbertPolynomial p = interpolate({3, 4, 5, 6}, {3, 6, 10, 15});
  REQUIRE(p.degree() == 2);
  REQUIRE(p.eval_int(100) == 4950);
  REQUIRE(p.coeffs[2] == BigRat(1, 2));
}

TEST_CASE("binomial convention") {
  REQUIRE(binom_ll(5, 2) == 10);
  REQUIRE(binom_ll(1, 3) == 0);
  REQUIRE(binom_ll(-2, 1) == 0);
  REQUIRE(binom_ll(7, 0) == 1);
  REQUIRE(binom_big(BigInt(50), 25) == BigInt("126410606437752"));
}
