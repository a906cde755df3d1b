#include <catch2/catch_amalgamated.hpp>

#include "regcalc/generic.hpp"
#include "test_util.hpp"

using namespace regcalc;
using namespace regcalc::testutil;

namespace {

const GradedRing R2(2, 32003);
const ModOrder kOrd = default_module_order();

GradedModuleP x2_xy() {
  return quotient_ring(R2, {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2)});
}

}  // namespace

TEST_CASE("filter regular element for R/(x^2, xy)") {
  Analyzer az(R2);
  GradedModuleP S = x2_xy();
  FilterRegularResult r = filter_regular_element(az, {S}, {"S"}, 17);
  REQUIRE(r.cert.verified);
  REQUIRE(poly_degree(r.element) == 1);
  // The colon by the found element has finite length.
  const ModuleAnalysis& q = az.analyze(annihilator_submodule(S, r.element, kOrd));
  REQUIRE(q.dd.dim <= 0);
  // And equals length 1: 0:_S x = (x-bar) for any form with nonzero y-part.
  REQUIRE(q.dd.degree == 1);
}

TEST_CASE("pure x is rejected by the filter-regular verification") {
  Analyzer az(R2);
  GradedModuleP S = x2_xy();
  const ModuleAnalysis& q = az.analyze(annihilator_submodule(S, poly_var(0, R2), kOrd));
  REQUIRE(q.dd.dim == 1);  // infinite length colon: x is not filter-regular
  const ModuleAnalysis& qy = az.analyze(annihilator_submodule(S, poly_var(1, R2), kOrd));
  REQUIRE(qy.dd.dim <= 0);
  REQUIRE(qy.dd.degree == 1);
}

TEST_CASE("regular elements report a zero colon") {
  Analyzer az(R2);
  GradedModuleP F = free_module_p(R2, {0});
  FilterRegularResult r = filter_regular_element(az, {F}, {"R"}, 5);
  REQUIRE(r.cert.verified);
  REQUIRE(az.analyze(annihilator_submodule(F, r.element, kOrd)).is_zero);
  REQUIRE(r.cert.checked.at(0).find("regular") != std::string::npos);
}

TEST_CASE("same seed gives the same filter-regular element") {
  Analyzer az(R2);
  GradedModuleP S = x2_xy();
  Poly a = filter_regular_element(az, {S}, {}, 99).element;
  Poly b = filter_regular_element(az, {S}, {}, 99).element;
  REQUIRE(poly_equal(a, b));
}

TEST_CASE("quotient by a linear form") {
  Analyzer az(R2);
  GradedModuleP S = x2_xy();
  GradedModuleP Q = quotient_by_linear(S, poly_var(1, R2), kOrd);
  const ModuleAnalysis& a = az.analyze(Q);
  REQUIRE(a.hilbert(0) == 1);
  REQUIRE(a.hilbert(1) == 1);
  REQUIRE(a.hilbert(2) == 0);
  // R mod x: a polynomial ring in one variable fewer.
  GradedModuleP P = quotient_by_linear(free_module_p(R2, {0}), poly_var(0, R2), kOrd);
  for (int j = 0; j <= 5; ++j) REQUIRE(az.analyze(P).hilbert(j) == 1);
  REQUIRE_THROWS_AS(quotient_by_linear(S, Poly{}, kOrd), std::invalid_argument);
}

TEST_CASE("lemma A7(ii) instance on the worked example") {
  // reg S = max(reg(S/yS), ri(S)) = max(1, 1).
  Analyzer az(R2);
  GradedModuleP S = x2_xy();
  const ModuleAnalysis& a = az.analyze(S);
  const ModuleAnalysis& q = az.analyze(quotient_by_linear(S, poly_var(1, R2), kOrd));
  REQUIRE(q.reg == 1);
  REQUIRE(a.ri == 1);
  REQUIRE(a.reg == std::max(q.reg, a.ri));
}

TEST_CASE("initial ideal of the running example") {
  Poly x2 = make_poly({{{2, 0}, 1}}, R2);
  Poly xy_y2 = make_poly({{{1, 1}, 1}, {{0, 2}, 1}}, R2);
  std::vector<Monomial> in = initial_ideal({x2, xy_y2}, grevlex_top(), R2);
  std::vector<Monomial> want = {{2, 0}, {1, 1}, {0, 3}};
  std::sort(want.begin(), want.end(), [](const Monomial& a, const Monomial& b) {
    return compare_monomials(a, b, grevlex_top()) > 0;
  });
  REQUIRE(in == want);
  // Initial ideal of a monomial ideal is itself.
  std::vector<Monomial> self = initial_ideal({x2}, grevlex_top(), R2);
  REQUIRE(self == std::vector<Monomial>{{2, 0}});
  // Lex initial of (x + y) is (x).
  std::vector<Monomial> lexin =
      initial_ideal({make_poly({{{1, 0}, 1}, {{0, 1}, 1}}, R2)}, lex_top(), R2);
  REQUIRE(lexin == std::vector<Monomial>{{1, 0}});
}

TEST_CASE("random invertible matrices are invertible and deterministic") {
  SplitMix64 rng(4);
  auto g = random_invertible_matrix(R2, rng);
  SplitMix64 rng2(4);
  auto h = random_invertible_matrix(R2, rng2);
  REQUIRE(g == h);
}

TEST_CASE("linear change of coordinates is a ring map") {
  SplitMix64 rng(11);
  auto g = random_invertible_matrix(R2, rng);
  Poly f1 = make_poly({{{2, 0}, 1}, {{1, 1}, 3}}, R2);
  Poly f2 = make_poly({{{0, 1}, 1}}, R2);
  Poly lhs = apply_linear_change(poly_mul(f1, f2, R2, grevlex_top()), g, R2, grevlex_top());
  Poly rhs = poly_mul(apply_linear_change(f1, g, R2, grevlex_top()),
                      apply_linear_change(f2, g, R2, grevlex_top()), R2, grevlex_top());
  REQUIRE(poly_equal(lhs, rhs));
  // Degree is preserved.
  REQUIRE(poly_degree(lhs) == 3);
}

TEST_CASE("gin of GL-invariant and principal monomial ideals") {
  // m^2 is GL-invariant.
  std::vector<Poly> m2 = {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2),
                          make_poly({{{0, 2}, 1}}, R2)};
  GinResult g1 = gin(m2, grevlex_top(), 7, R2);
  REQUIRE(g1.cert.verified);
  REQUIRE(g1.gens == initial_ideal(m2, grevlex_top(), R2));

  // gin of a principal ideal is the pure power of the leading variable.
  GinResult g2 = gin({make_poly({{{1, 1}, 1}}, R2)}, grevlex_top(), 7, R2);
  REQUIRE(g2.gens == std::vector<Monomial>{{2, 0}});
  GinResult g3 = gin({make_poly({{{2, 0}, 1}}, R2)}, grevlex_top(), 7, R2);
  REQUIRE(g3.gens == std::vector<Monomial>{{2, 0}});
}

TEST_CASE("gin preserves the Hilbert function") {
  Analyzer az(R2);
  std::vector<std::vector<Poly>> ideals = {
      {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2)},
      {make_poly({{{2, 0}, 1}, {{0, 2}, 1}}, R2)},
      {make_poly({{{3, 0}, 1}, {{1, 2}, 4}}, R2), make_poly({{{2, 1}, 1}}, R2)},
  };
  for (const auto& gens : ideals) {
    GinResult g = gin(gens, grevlex_top(), 23, R2);
    std::vector<Poly> gin_polys;
    for (const Monomial& m : g.gens) gin_polys.push_back(poly_monomial(m, 1, R2));
    const ModuleAnalysis& a = az.analyze(quotient_ring(R2, gens));
    const ModuleAnalysis& b = az.analyze(quotient_ring(R2, gin_polys));
    REQUIRE(a.hs.num == b.hs.num);
  }
}

TEST_CASE("gin is idempotent on its own output") {
  std::vector<Poly> gens = {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2)};
  GinResult g = gin(gens, grevlex_top(), 3, R2);
  std::vector<Poly> gin_polys;
  for (const Monomial& m : g.gens) gin_polys.push_back(poly_monomial(m, 1, R2));
  GinResult gg = gin(gin_polys, grevlex_top(), 51, R2);
  REQUIRE(gg.gens == g.gens);
}

TEST_CASE("random ideal generators are deterministic per seed and flavor") {
  for (IdealFlavor f : {IdealFlavor::monomial, IdealFlavor::binomial, IdealFlavor::dense}) {
    SplitMix64 a(42), b(42);
    auto ga = random_ideal_gens(R2, f, 3, 3, a);
    auto gb = random_ideal_gens(R2, f, 3, 3, b);
    REQUIRE(ga.size() == gb.size());
    for (size_t i = 0; i < ga.size(); ++i) {
      REQUIRE(poly_equal(ga[i], gb[i]));
      REQUIRE(poly_is_homogeneous(ga[i]));
      REQUIRE_FALSE(ga[i].is_zero());
    }
  }
}
