#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "regcalc/poly.hpp"

using namespace regcalc;

namespace {

const GradedRing R2(2, 32003);
const GradedRing R3(3, 32003);
const TermOrder kGrevlex = grevlex_top();
const TermOrder kLex = lex_top();

Poly make(std::initializer_list<std::pair<std::vector<int>, long long>> terms,
          const GradedRing& R, const TermOrder& ord = grevlex_top()) {
  Poly f;
  for (const auto& [e, c] : terms) {
    Monomial m;
    m.e = e;
    f.terms.push_back({m, fp_reduce(c, R.char_p)});
  }
  poly_normalize(f, R, ord);
  return f;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  fp_t p = 32003;
  REQUIRE(is_prime(p));
  REQUIRE_FALSE(is_prime(32001));
  REQUIRE(fp_add(32000, 10, p) == 7);
  REQUIRE(fp_mul(fp_inv(1234, p), 1234, p) == 1);
  REQUIRE(fp_reduce(-5, p) == p - 5);
  REQUIRE_THROWS_AS(fp_inv(0, p), std::domain_error);
}

TEST_CASE("field arithmetic agrees with big-integer reduction") {
  std::mt19937_64 rng(12345);
  fp_t p = 32003;
  for (int trial = 0; trial < 500; ++trial) {
    long long a = static_cast<long long>(rng() % 2000000) - 1000000;
    long long b = static_cast<long long>(rng() % 2000000) - 1000000;
    fp_t ra = fp_reduce(a, p), rb = fp_reduce(b, p);
    REQUIRE(fp_add(ra, rb, p) == fp_reduce(a + b, p));
    REQUIRE(fp_sub(ra, rb, p) == fp_reduce(a - b, p));
    REQUIRE(fp_mul(ra, rb, p) == fp_reduce(a * b, p));
  }
}

TEST_CASE("monomial product of x with itself") {
  Poly x = poly_var(0, R2);
  Poly x2 = poly_mul(x, x, R2, kGrevlex);
  REQUIRE(x2.size() == 1);
  REQUIRE(x2.lead().m == Monomial{2, 0});
}

TEST_CASE("additive inverse cancels") {
  Poly f = make({{{1, 0}, 1}, {{0, 1}, 1}}, R2);
  REQUIRE(poly_sub(f, f, R2, kGrevlex).is_zero());
}

TEST_CASE("square of x+y expands with the cross term") {
  Poly f = make({{{1, 0}, 1}, {{0, 1}, 1}}, R2);
  Poly sq = poly_mul(f, f, R2, kGrevlex);
  Poly expect = make({{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}, R2);
  REQUIRE(poly_equal(sq, expect));
}

TEST_CASE("grevlex comparisons") {
  // Same degree in two variables: x^2 beats x*y.
  REQUIRE(compare_monomials(Monomial{2, 0}, Monomial{1, 1}, kGrevlex) > 0);
  // Three variables: y^2 beats x*z.
  REQUIRE(compare_monomials(Monomial{1, 0, 1}, Monomial{0, 2, 0}, kGrevlex) < 0);
  // Degree dominates.
  REQUIRE(compare_monomials(Monomial{0, 0, 3}, Monomial{1, 1, 0}, kGrevlex) > 0);
}

TEST_CASE("grevlex in three variables matches the textbook order on degree 2") {
  // Brute-force oracle: grevlex sorts degree-2 monomials in 3 variables as
  // x^2 > xy > y^2 > xz > yz > z^2.
  std::vector<Monomial> expect = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                  {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  std::vector<Monomial> all = expect;
  std::sort(all.begin(), all.end(),
            [](const Monomial& a, const Monomial& b) { return compare_monomials(a, b, grevlex_top()) > 0; });
  REQUIRE(all == expect);
}

TEST_CASE("lex ignores degree") {
  REQUIRE(compare_monomials(Monomial{1, 0, 0}, Monomial{0, 5, 0}, kLex) > 0);
  REQUIRE(compare_monomials(Monomial{0, 1, 0}, Monomial{0, 0, 9}, kLex) > 0);
}

TEST_CASE("order multiplicativity on random triples") {
  std::mt19937_64 rng(99);
  for (const TermOrder& ord : {grevlex_top(), lex_top()}) {
    for (int trial = 0; trial < 300; ++trial) {
      auto rand_mono = [&] {
        Monomial m(3);
        for (int i = 0; i < 3; ++i) m.e[i] = static_cast<int>(rng() % 4);
        return m;
      };
      Monomial a = rand_mono(), b = rand_mono(), c = rand_mono();
      int ab = compare_monomials(a, b, ord);
      REQUIRE(compare_monomials(a * c, b * c, ord) == ab);
    }
  }
}

TEST_CASE("mixed-ring operands rejected") {
  Poly f = poly_var(0, R2);
  Poly g = poly_var(0, R3);
  REQUIRE_THROWS_AS(poly_add(f, g, R2, kGrevlex), std::invalid_argument);
}

TEST_CASE("homogeneous component split and resum is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Poly f;
    for (int t = 0; t < 8; ++t) {
      Monomial m(3);
      for (int i = 0; i < 3; ++i) m.e[i] = static_cast<int>(rng() % 3);
      f.terms.push_back({m, static_cast<fp_t>(rng() % 32003)});
    }
    poly_normalize(f, R3, kGrevlex);
    Poly sum;
    for (const auto& [d, comp] : homogeneous_components(f, R3, kGrevlex)) {
      REQUIRE(poly_is_homogeneous(comp));
      REQUIRE(poly_degree(comp) == d);
      sum = poly_add(sum, comp, R3, kGrevlex);
    }
    REQUIRE(poly_equal(sum, f));
  }
}

TEST_CASE("ring validation") {
  REQUIRE_THROWS_AS(GradedRing(2, 32001), std::invalid_argument);
  REQUIRE_THROWS_AS(GradedRing(0, 32003), std::invalid_argument);
  REQUIRE_NOTHROW(GradedRing(4, 2));
}
