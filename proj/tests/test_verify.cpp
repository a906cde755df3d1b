#include <catch2/catch_amalgamated.hpp>

#include "regcalc/verify.hpp"
#include "test_util.hpp"

using namespace regcalc;
using namespace regcalc::testutil;

namespace {

const GradedRing R2(2, 32003);
const ModOrder kOrd = default_module_order();

std::vector<Poly> gens_x2_xy() {
  return {make_poly({{{2, 0}, 1}}, R2), make_poly({{{1, 1}, 1}}, R2)};
}
std::vector<Poly> gens_x2_y2() {
  return {make_poly({{{2, 0}, 1}}, R2), make_poly({{{0, 2}, 1}}, R2)};
}

const CheckResult& find_check(const VerifyOutcome& out, const std::string& id) {
  for (const CheckResult& c : out.checks)
    if (c.check_id == id) return c;
  FAIL("missing check " + id);
  static CheckResult dummy;
  return dummy;
}

}  // namespace

TEST_CASE("lemma B2 worked instances") {
  Analyzer az(R2);
  std::string dg = "test";
  CheckResult c1 = check_lemma_B2(az, quotient_ring(R2, gens_x2_xy()), dg);
  REQUIRE(c1.passed);
  REQUIRE(c1.lhs == 1);
  REQUIRE(c1.rhs == 1);
  REQUIRE(c1.slack == 0);

  CheckResult c2 = check_lemma_B2(az, quotient_ring(R2, gens_x2_y2()), dg);
  REQUIRE(c2.passed);
  REQUIRE(c2.lhs == 2);
  REQUIRE(c2.rhs == 3);

  CheckResult c3 = check_lemma_B2(az, free_module_p(R2, {0}), dg);
  REQUIRE(c3.passed);
  REQUIRE(c3.lhs == 0);
  REQUIRE(c3.rhs == 0);
}

TEST_CASE("theorem B4 worked instances") {
  Analyzer az(R2);
  GradedModuleP S = quotient_ring(R2, gens_x2_xy());
  CheckResult c1 = check_thm_B4(az, S, 1, "t");
  REQUIRE(c1.passed);
  REQUIRE(c1.lhs == 1);
  REQUIRE(c1.rhs == 2);

  CheckResult c0 = check_thm_B4(az, S, 0, "t");
  REQUIRE(c0.passed);
  REQUIRE(c0.lhs == -1);
  REQUIRE(c0.rhs == 1);
}

TEST_CASE("EB2b equality on CM members") {
  Analyzer az(R2);
  CheckResult c = check_EB2b(az, quotient_ring(R2, gens_x2_y2()), "t");
  REQUIRE(c.passed);
  REQUIRE(c.lhs == 0);
  REQUIRE(c.rhs == 0);

  // Hypersurface of degree e in 2 variables: reg K^1 = 1 - 0.
  CheckResult ch = check_EB2b(az, quotient_ring(R2, {make_poly({{{3, 0}, 1}, {{0, 3}, 1}}, R2)}), "t");
  REQUIRE(ch.passed);
  REQUIRE(ch.lhs == 1);

  // The free ring: reg K^n = n.
  CheckResult cr = check_EB2b(az, free_module_p(R2, {0}), "t");
  REQUIRE(cr.passed);
  REQUIRE(cr.lhs == 2);

  REQUIRE_THROWS_AS(check_EB2b(az, quotient_ring(R2, gens_x2_xy()), "t"), std::invalid_argument);
}

TEST_CASE("theorem C1 worked instance and big-integer branch") {
  Analyzer az(R2);
  GradedModuleP S = quotient_ring(R2, gens_x2_xy());
  CheckResult c1 = check_thm_C1(az, S, 2, 1, "t");
  REQUIRE(c1.passed);
  REQUIRE(c1.lhs == 1);
  REQUIRE(c1.rhs == 4);

  // The i = 2 branch exponent at n = 2, reg I = 2: (2*2)^{2*3*2} = 4^12.
  CheckResult c2 = check_thm_C1(az, S, 2, 2, "t");
  REQUIRE(c2.rhs == detail::bigpow(4, 12));
  REQUIRE(c2.passed);  // lhs is the -infinity sentinel: K^2 = 0 for a curve
  REQUIRE(c2.lhs_is_neg_infty);

  // Linear form in the ideal: skipped with an explanatory record.
  GradedModuleP L = quotient_ring(R2, {poly_var(0, R2)});
  CheckResult cs = check_thm_C1(az, L, 1, 1, "t");
  REQUIRE(cs.skipped);
  REQUIRE_FALSE(cs.failed());
}

TEST_CASE("lemma C2 and the Delta machinery on the worked example") {
  Analyzer az(R2);
  GradedModuleP S = quotient_ring(R2, gens_x2_xy());
  std::vector<BMMEntry> rows = bmm_data(az, S, 1);
  REQUIRE(rows[0].delta == 2);

  CheckResult c = check_lemma_C2(az, S, rows, 1, "t");
  REQUIRE(c.passed);
  REQUIRE(c.lhs == 0);
  REQUIRE(c.rhs == 4);  // [2(1+2)]^1 - 2

  CheckResult cs = check_lemma_C2_sharp(az, S, rows, "t");
  REQUIRE(cs.passed);
  REQUIRE(cs.lhs == 0);
  REQUIRE(cs.rhs == 4);  // 2 * Delta_0
}

TEST_CASE("lemma C3 pointwise instances") {
  Analyzer az(R2);
  GradedModuleP S = quotient_ring(R2, gens_x2_xy());
  // h^0(1) = 1 < 2 * C(0, 0) = 2 and h^0(0) = 0 < 2 * C(1, 0) = 2.
  CheckResult c = check_lemma_C3(az, S, 2, 0, "t");
  REQUIRE(c.passed);
  REQUIRE(c.slack == 1);  // the tightest point is t = 1: 2 - 1
  CheckResult out_of_range = check_lemma_C3(az, S, 2, 1, "t");
  REQUIRE(out_of_range.skipped);
}

TEST_CASE("corollary C5 spot check is finite and stable") {
  C5Report a = spot_check_C5(2, 0, 2, 100000);
  REQUIRE_FALSE(a.budget_exceeded);
  REQUIRE(a.qualifying > 0);
  REQUIRE(a.distinct_functions > 0);
  REQUIRE(a.distinct_functions <= 10);
  // Doubling the generator-degree bound does not add new functions.
  C5Report b = spot_check_C5(2, 0, 2, 100000, 4);
  REQUIRE_FALSE(b.budget_exceeded);
  REQUIRE(b.distinct_functions == a.distinct_functions);

  C5Report i1 = spot_check_C5(2, 1, 2, 100000);
  C5Report i1b = spot_check_C5(2, 1, 2, 100000, 4);
  REQUIRE(i1.distinct_functions == i1b.distinct_functions);

  // r <= 1 admits no nonzero ideal without linear forms.
  C5Report r1 = spot_check_C5(2, 1, 1, 100000);
  REQUIRE(r1.qualifying == 0);
  REQUIRE(r1.distinct_functions == 0);
}

TEST_CASE("full check suite on the worked example") {
  Analyzer az(R2);
  VerifyOptions opt;
  opt.b7_additivity = true;
  opt.seed = 11;
  VerifyOutcome out = verify_ideal(az, gens_x2_xy(), opt);

  REQUIRE_FALSE(out.any_failed());
  REQUIRE(out.inv.reg == 1);
  REQUIRE(out.inv.hdeg == 2);
  REQUIRE(out.inv.dim == 1);
  REQUIRE(out.inv.depth == 0);
  REQUIRE(out.inv.deg == 1);
  REQUIRE(out.inv.reg_ideal == 2);

  REQUIRE(find_check(out, "reg_dual_vs_betti").passed);
  REQUIRE(find_check(out, "staircase_agreement").passed);
  REQUIRE(find_check(out, "gs_residual").passed);
  REQUIRE(find_check(out, "lemma_B7bn").passed);
  REQUIRE(find_check(out, "thm_B4.i=1").lhs == 1);
  REQUIRE(find_check(out, "thm_B4.i=1").rhs == 2);
  REQUIRE(find_check(out, "thm_C1.i=1").lhs == 1);
  REQUIRE(find_check(out, "thm_C1.i=1").rhs == 4);
  REQUIRE(find_check(out, "eb2b").skipped);  // not CM
  REQUIRE(find_check(out, "lemma_A7i").passed);
  REQUIRE(find_check(out, "lemma_A7ii").passed);
  REQUIRE(find_check(out, "lemma_B7.additivity").passed);
  REQUIRE(find_check(out, "note_b_h0_additivity").passed);
  REQUIRE(find_check(out, "sec4_ED2.i=0").passed);
  REQUIRE(find_check(out, "sec4_D1").passed);
  REQUIRE(find_check(out, "sec4_D1").lhs == 1);

  // K-profile summary matches the duality values.
  REQUIRE(out.profile.size() == 2);
  REQUIRE(out.profile[0].beg == -1);
  REQUIRE(out.profile[1].reg == 1);

  // certificates recorded for the generic choices
  REQUIRE(out.certificates.size() >= 2);
  for (const GenericCertificate& c : out.certificates) REQUIRE(c.verified);
}

TEST_CASE("full check suite on CM members reports the equalities") {
  Analyzer az(R2);
  VerifyOptions opt;
  opt.seed = 5;
  VerifyOutcome out = verify_ideal(az, gens_x2_y2(), opt);
  REQUIRE_FALSE(out.any_failed());
  REQUIRE(find_check(out, "eb2b").passed);
  REQUIRE(find_check(out, "lemma_A7iii").passed);
  REQUIRE(find_check(out, "note_a_hdeg_eq_deg_iff_cm").passed);
  REQUIRE(out.inv.hdeg == 4);
  REQUIRE(out.inv.cm);
}

TEST_CASE("sequentially CM detection accepts the worked example") {
  // R/(x^2, xy) is sequentially CM; the Herzog-Sbarra comparison against the
  // reverse-lex gin certifies it and D2(i) then holds.
  Analyzer az(R2);
  VerifyOptions opt;
  opt.seed = 9;
  VerifyOutcome out = verify_ideal(az, gens_x2_xy(), opt);
  REQUIRE(find_check(out, "sec4_D2i.i=0").passed);
  REQUIRE(find_check(out, "sec4_D2i.i=1").passed);
  REQUIRE(find_check(out, "sec4_D3.i=1").passed);
}

TEST_CASE("ideal with a linear form skips C1 but runs the rest") {
  Analyzer az(R2);
  VerifyOptions opt;
  opt.seed = 3;
  VerifyOutcome out = verify_ideal(az, {poly_var(0, R2), make_poly({{{0, 2}, 1}}, R2)}, opt);
  REQUIRE_FALSE(out.any_failed());
  bool saw_c1_skip = false;
  for (const CheckResult& c : out.checks)
    if (c.check_id.rfind("thm_C1", 0) == 0) {
      REQUIRE(c.skipped);
      saw_c1_skip = true;
    }
  REQUIRE(saw_c1_skip);
  REQUIRE(find_check(out, "reg_dual_vs_betti").passed);
}

TEST_CASE("digest is deterministic and seed dependent") {
  std::string a = ideal_digest(gens_x2_xy(), R2, 7);
  std::string b = ideal_digest(gens_x2_xy(), R2, 7);
  std::string c = ideal_digest(gens_x2_xy(), R2, 8);
  REQUIRE(a == b);
  REQUIRE(a != c);
  REQUIRE(a.size() == 16);
}
