#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regcalc/generic.hpp"

namespace regcalc {

/// One executable statement instance: both sides of the relation, the
/// verdict, and enough context to reproduce it. Skipped checks (failed
/// hypotheses) are first-class results.
struct CheckResult {
  std::string check_id;
  std::string relation;  // "<", "<=", "==", "iff"
  BigInt lhs = 0;
  BigInt rhs = 0;
  bool lhs_is_neg_infty = false;  // zero-module sentinel on the left side
  bool passed = false;
  bool skipped = false;
  std::string note;
  std::string inputs_digest;
  std::vector<std::string> caveats;
  BigInt slack = 0;

  bool failed() const { return !passed && !skipped; }
};

namespace detail {

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline CheckResult make_check(std::string id, std::string relation, const BigInt& lhs,
                              const BigInt& rhs, const std::string& digest) {
  CheckResult c;
  c.check_id = std::move(id);
  c.relation = std::move(relation);
  c.lhs = lhs;
  c.rhs = rhs;
  c.inputs_digest = digest;
  if (c.relation == "<")
    c.passed = lhs < rhs;
  else if (c.relation == "<=")
    c.passed = lhs <= rhs;
  else if (c.relation == "==")
    c.passed = lhs == rhs;
  else
    throw std::logic_error("make_check: unknown relation");
  c.slack = rhs - lhs;
  return c;
}

/// lhs is the -infinity sentinel of a vanishing module: any bound holds.
inline CheckResult make_check_neg_infty(std::string id, std::string relation, const BigInt& rhs,
                                        const std::string& digest) {
  CheckResult c;
  c.check_id = std::move(id);
  c.relation = std::move(relation);
  c.lhs_is_neg_infty = true;
  c.rhs = rhs;
  c.passed = true;
  c.inputs_digest = digest;
  c.note = "lhs is -infinity (zero module)";
  return c;
}

inline CheckResult make_skip(std::string id, std::string reason, const std::string& digest) {
  CheckResult c;
  c.check_id = std::move(id);
  c.skipped = true;
  c.passed = false;
  c.note = std::move(reason);
  c.inputs_digest = digest;
  return c;
}

inline BigInt bigpow(const BigInt& base, const BigInt& exp) {
  if (exp < 0) throw std::invalid_argument("bigpow: negative exponent");
  BigInt r = 1, b = base, e = exp;
  while (e > 0) {
    if ((e & 1) != 0) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

inline std::string ideal_digest(const std::vector<Poly>& gens, const GradedRing& R,
                                std::uint64_t seed) {
  std::string s = std::to_string(R.nvars) + "/" + std::to_string(R.char_p) + ";";
  std::vector<std::string> parts;
  for (const Poly& f : gens) parts.push_back(poly_to_string(f, default_var_names(R.nvars), R));
  std::sort(parts.begin(), parts.end());
  for (const std::string& p : parts) s += p + ";";
  s += "seed=" + std::to_string(seed);
  return detail::fnv1a_hex(s);
}

/// reg(M) <= gen(M) + hdeg(M) - 1.
inline CheckResult check_lemma_B2(Analyzer& az, const GradedModuleP& M,
                                  const std::string& digest) {
  const ModuleAnalysis& a = az.analyze(M);
  if (a.is_zero) return detail::make_skip("lemma_B2", "zero module", digest);
  BigInt rhs = BigInt(a.gen) + az.hdeg(M).value - 1;
  return detail::make_check("lemma_B2", "<=", a.reg, rhs, digest);
}

/// reg(K^i(M)) <= d[hdeg(M) - deg(M)] - beg(M) + i.
inline CheckResult check_thm_B4(Analyzer& az, const GradedModuleP& M, int i,
                                const std::string& digest) {
  std::string id = "thm_B4.i=" + std::to_string(i);
  const ModuleAnalysis& a = az.analyze(M);
  if (a.is_zero) return detail::make_skip(id, "zero module", digest);
  int d = a.dd.dim;
  BigInt rhs = BigInt(d) * (az.hdeg(M).value - a.dd.degree) - a.dd.beg + i;
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(M, i));
  if (K.is_zero) return detail::make_check_neg_infty(id, "<=", rhs, digest);
  return detail::make_check(id, "<=", K.reg, rhs, digest);
}

/// Cohen-Macaulay equality reg(K^d(M)) = d - beg(M).
inline CheckResult check_EB2b(Analyzer& az, const GradedModuleP& M, const std::string& digest) {
  const ModuleAnalysis& a = az.analyze(M);
  if (a.is_zero || !a.is_cm)
    throw std::invalid_argument("check_EB2b: input must be a nonzero Cohen-Macaulay module");
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(M, a.dd.dim));
  return detail::make_check("eb2b", "==", K.reg, BigInt(a.dd.dim) - a.dd.beg, digest);
}

/// True iff the degree-one part of I is nonzero, read off the Hilbert
/// function of R/I.
inline bool ideal_contains_linear_form(Analyzer& az, const GradedModuleP& S) {
  return az.analyze(S).hilbert(1) < az.ring().nvars;
}

/// Strict bound on reg(K^i(S)) in terms of reg(I), exact big integers.
inline CheckResult check_thm_C1(Analyzer& az, const GradedModuleP& S, int reg_ideal, int i,
                                const std::string& digest) {
  std::string id = "thm_C1.i=" + std::to_string(i);
  const GradedRing& R = az.ring();
  int n = R.nvars;
  if (n < 2) return detail::make_skip(id, "needs at least two variables", digest);
  if (i < 1) return detail::make_skip(id, "stated for i >= 1", digest);
  if (ideal_contains_linear_form(az, S))
    return detail::make_skip(id, "ideal contains a linear form", digest);
  BigInt r = reg_ideal;
  BigInt rhs;
  if (i == 1) {
    rhs = 4 * detail::bigpow(r, n - 1) - 4 * detail::bigpow(r, n - 2);
  } else {
    BigInt exponent = 1;
    for (int t = 0; t < i; ++t) exponent *= (n + t);
    exponent *= detail::bigpow(2, BigInt(i) * (i - 1) / 2);
    rhs = detail::bigpow(2 * r, exponent);
  }
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
  if (K.is_zero) return detail::make_check_neg_infty(id, "<", rhs, digest);
  return detail::make_check(id, "<", K.reg, rhs, digest);
}

/// The sharper top bound: reg(K^d) < (2 reg I)^{n...(n+d-2) 2^{(d-1)(d-2)/2}}
/// - 2 (reg I)^n - 2n + 2, recorded as an auxiliary result for d >= 2.
inline CheckResult check_thm_C1_claim7(Analyzer& az, const GradedModuleP& S, int reg_ideal,
                                       const std::string& digest) {
  const std::string id = "thm_C1.claim7";
  const GradedRing& R = az.ring();
  int n = R.nvars;
  const ModuleAnalysis& a = az.analyze(S);
  int d = a.dd.dim;
  if (n < 2) return detail::make_skip(id, "needs at least two variables", digest);
  if (d < 2) return detail::make_skip(id, "stated for dimension >= 2", digest);
  if (ideal_contains_linear_form(az, S))
    return detail::make_skip(id, "ideal contains a linear form", digest);
  BigInt r = reg_ideal;
  BigInt exponent = 1;
  for (int t = 0; t <= d - 2; ++t) exponent *= (n + t);
  exponent *= detail::bigpow(2, BigInt(d - 1) * (d - 2) / 2);
  BigInt rhs = detail::bigpow(2 * r, exponent) - 2 * detail::bigpow(r, n) - 2 * n + 2;
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, d));
  if (K.is_zero) return detail::make_check_neg_infty(id, "<", rhs, digest);
  return detail::make_check(id, "<", K.reg, rhs, digest);
}

/// ri(K^i(S)) <= [2(1+Delta_{i-1})]^{2^{i-1}} - 2 for i >= 1.
inline CheckResult check_lemma_C2(Analyzer& az, const GradedModuleP& S,
                                  const std::vector<BMMEntry>& bmm, int i,
                                  const std::string& digest) {
  std::string id = "lemma_C2.i=" + std::to_string(i);
  if (i < 1) return detail::make_skip(id, "stated for i >= 1", digest);
  if (i - 1 >= static_cast<int>(bmm.size()))
    return detail::make_skip(id, "Delta row not computed", digest);
  BigInt rhs = detail::bigpow(2 * (1 + bmm[i - 1].delta), detail::bigpow(2, i - 1)) - 2;
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
  if (K.is_zero || !is_finite_deg(K.ri))
    return detail::make_check_neg_infty(id, "<=", rhs, digest);
  return detail::make_check(id, "<=", K.ri, rhs, digest);
}

/// The proof's sharper i=1 form: ri(K^1(S)) <= 2 Delta_0.
inline CheckResult check_lemma_C2_sharp(Analyzer& az, const GradedModuleP& S,
                                        const std::vector<BMMEntry>& bmm,
                                        const std::string& digest) {
  const std::string id = "lemma_C2.sharp_i1";
  if (bmm.empty()) return detail::make_skip(id, "Delta row not computed", digest);
  BigInt rhs = 2 * bmm[0].delta;
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, 1));
  if (K.is_zero || !is_finite_deg(K.ri))
    return detail::make_check_neg_infty(id, "<=", rhs, digest);
  return detail::make_check(id, "<=", K.ri, rhs, digest);
}

/// Pointwise h^i_S(t) < (reg I)^{n-i-1} C(reg S - t, i) over the window;
/// where the binomial vanishes the check degenerates to h = 0.
inline CheckResult check_lemma_C3(Analyzer& az, const GradedModuleP& S, int reg_ideal, int i,
                                  const std::string& digest, int win_lo_override = kPosInfty,
                                  int win_hi_override = kPosInfty) {
  std::string id = "lemma_C3.i=" + std::to_string(i);
  const GradedRing& R = az.ring();
  int n = R.nvars;
  const ModuleAnalysis& a = az.analyze(S);
  int d = a.dd.dim;
  if (i < 0 || i >= d) return detail::make_skip(id, "stated for 0 <= i < dim", digest);
  if (ideal_contains_linear_form(az, S))
    return detail::make_skip(id, "ideal contains a linear form", digest);
  const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
  int lo = is_finite_deg(K.reg) ? -K.reg - n - 3 : -(std::max(a.reg, 0)) - n - 3;
  int hi = a.reg + 1;
  if (win_lo_override != kPosInfty) lo = win_lo_override;
  if (win_hi_override != kPosInfty) hi = win_hi_override;

  BigInt r = reg_ideal;
  CheckResult worst;
  bool have_worst = false;
  bool all_pass = true;
  for (int t = lo; t <= hi; ++t) {
    BigInt h = az.local_cohomology_hf(S, i, t);
    BigInt bound = detail::bigpow(r, n - i - 1) * binom_big(BigInt(a.reg) - t, i);
    bool pass_t = (bound > 0) ? (h < bound) : (h == 0);
    all_pass = all_pass && pass_t;
    if (bound > 0 && (!have_worst || bound - h < worst.slack)) {
      worst = detail::make_check(id, "<", h, bound, digest);
      have_worst = true;
    }
    if (!pass_t && bound == 0) {
      worst = detail::make_check(id, "<", h, bound, digest);
      have_worst = true;
    }
  }
  if (!have_worst) worst = detail::make_check(id, "<", 0, 1, digest);
  worst.passed = all_pass;
  worst.note = "pointwise over t in [" + std::to_string(lo) + ", " + std::to_string(hi) +
               "], tightest point recorded";
  return worst;
}

/// Finiteness spot check: enumerate monomial ideals (no linear generators)
/// with reg I <= r and collect the distinct local cohomology Hilbert
/// functions l(H^i_m(R/I)_t) as exact fingerprints.
struct C5Report {
  int nvars = 0, i = 0, r = 0;
  int gen_degree_bound = 0;
  long long ideals_enumerated = 0;
  long long qualifying = 0;
  long long distinct_functions = 0;
  bool budget_exceeded = false;
};

inline C5Report spot_check_C5(int nvars, int i, int r, long long budget,
                              int gen_degree_bound = -1) {
  GradedRing R(nvars, kDefaultChar);
  C5Report rep;
  rep.nvars = nvars;
  rep.i = i;
  rep.r = r;
  rep.gen_degree_bound = gen_degree_bound < 0 ? std::max(r, 2) : gen_degree_bound;

  // Candidate generators: monomials of degree 2 .. bound (linear forms are
  // excluded by the standing hypothesis).
  std::vector<Monomial> pool;
  for (int d = 2; d <= rep.gen_degree_bound; ++d) {
    Monomial m(nvars);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
      if (pos == nvars - 1) {
        m.e[pos] = rem;
        pool.push_back(m);
        m.e[pos] = 0;
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        m.e[pos] = v;
        self(self, pos + 1, rem - v);
      }
      m.e[pos] = 0;
    };
    rec(rec, 0, d);
  }
  if (pool.size() > 24) throw std::invalid_argument("spot_check_C5: pool too large, keep n and r tiny");

  std::set<std::string> fingerprints;
  Analyzer az(R);
  for (std::uint64_t mask = 1; mask < (1ull << pool.size()); ++mask) {
    if (rep.ideals_enumerated >= budget) {
      rep.budget_exceeded = true;
      break;
    }
    std::vector<Monomial> gens;
    for (size_t b = 0; b < pool.size(); ++b)
      if (mask & (1ull << b)) gens.push_back(pool[b]);
    // Keep antichains only, so each ideal is enumerated once.
    bool antichain = true;
    for (size_t u = 0; u < gens.size() && antichain; ++u)
      for (size_t v = 0; v < gens.size() && antichain; ++v)
        if (u != v && divides(gens[u], gens[v])) antichain = false;
    if (!antichain) continue;
    ++rep.ideals_enumerated;

    std::vector<Poly> pgens;
    for (const Monomial& m : gens) pgens.push_back(poly_monomial(m, 1, R));
    GradedModuleP S = quotient_ring(R, pgens);
    const ModuleAnalysis& a = az.analyze(S);
    int reg_ideal = a.reg + 1;
    if (reg_ideal > r) continue;
    ++rep.qualifying;
    // The Hilbert numerator of K^i determines t -> l(H^i_m(R/I)_t) exactly.
    const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
    std::string fp;
    for (const auto& [deg, c] : K.hs.num) fp += std::to_string(deg) + ":" + std::to_string(c) + ",";
    fingerprints.insert(fp);
  }
  rep.distinct_functions = static_cast<long long>(fingerprints.size());
  return rep;
}

/// Container for everything the checks derive from one ideal, consumed by
/// the report writer.
struct InvariantReport {
  int dim = -1, depth = 0, reg = kNegInfty, ri = kNegInfty;
  int beg = kPosInfty, end = kNegInfty, gen = kNegInfty, pd = 0;
  long long deg = 0, hdeg = 0;
  bool cm = false;
  int reg_ideal = kNegInfty;
};

struct KSummary {
  int i = 0;
  bool zero = true;
  int reg = kNegInfty, dim = -1, beg = kPosInfty, end = kNegInfty, ri = kNegInfty;
  long long deg = 0;
  std::map<int, long long> hilbert_numerator;
  std::vector<std::string> hp_coeffs;  // rational coefficients, ascending
  std::pair<int, int> window{0, 0};
  std::vector<long long> hf_window_values;
};

struct VerifyOptions {
  bool b7_additivity = false;       // the heavier exact-sequence length check
  bool profile_duality_checks = true;  // dual-pipeline regularity on each K^i
  std::uint64_t seed = 0;
};

struct VerifyOutcome {
  InvariantReport inv;
  std::vector<KSummary> profile;
  std::vector<BMMEntry> bmm;
  HdegNode hdeg_trace;
  std::vector<GenericCertificate> certificates;
  std::vector<CheckResult> checks;
  std::string digest;

  bool any_failed() const {
    for (const CheckResult& c : checks)
      if (c.failed()) return true;
    return false;
  }
};

namespace detail {

inline KSummary summarize_K(int i, const ModuleAnalysis& K) {
  KSummary s;
  s.i = i;
  s.zero = K.is_zero;
  s.reg = K.reg;
  s.dim = K.dd.dim;
  s.beg = K.dd.beg;
  s.end = K.dd.end;
  s.ri = K.ri;
  s.deg = K.is_zero ? 0 : K.dd.degree;
  s.hilbert_numerator = K.hs.num;
  for (const BigRat& c : K.hp.coeffs) s.hp_coeffs.push_back(c.str());
  int lo = K.is_zero ? 0 : K.dd.beg - 1;
  int hi = K.is_zero ? 0 : std::max(K.reg, K.dd.beg) + 2;
  s.window = {lo, hi};
  for (int j = lo; j <= hi; ++j) s.hf_window_values.push_back(K.hilbert(j));
  return s;
}

inline long long finite_length(const ModuleAnalysis& a) {
  if (a.is_zero) return 0;
  if (a.dd.dim > 0) throw std::logic_error("finite_length: module has positive dimension");
  return a.dd.degree;
}

}  // namespace detail

/// Runs the complete per-ideal check suite. S = R/I with the given
/// generators; every hypothesis is itself verified before a statement is
/// scored, and inapplicable statements are recorded as skips.
inline VerifyOutcome verify_ideal(Analyzer& az, const std::vector<Poly>& ideal_gens,
                                  const VerifyOptions& opt = {}) {
  const GradedRing& R = az.ring();
  const ModOrder& ord = az.order();
  int n = R.nvars;
  VerifyOutcome out;
  out.digest = ideal_digest(ideal_gens, R, opt.seed);
  const std::string& dg = out.digest;

  GradedModuleP S = quotient_ring(R, ideal_gens);
  const ModuleAnalysis& a = az.analyze(S);
  const int d = a.dd.dim;
  auto add = [&](CheckResult c) { out.checks.push_back(std::move(c)); };

  // --- invariants of S and of I as a module ---
  GradedModuleP I_mod = ideal_as_module(R, ideal_gens, ord);
  const ModuleAnalysis& ai = az.analyze(I_mod);
  out.inv.dim = d;
  if (!a.is_zero) {
    out.inv.depth = a.depth;
    out.inv.deg = a.dd.degree;
    out.inv.hdeg = az.hdeg(S).value;
    out.inv.cm = a.is_cm;
  }
  out.inv.reg = a.reg;
  out.inv.ri = a.ri;
  out.inv.beg = a.dd.beg;
  out.inv.end = a.dd.end;
  out.inv.gen = a.gen;
  out.inv.pd = a.pd;
  out.inv.reg_ideal = ai.is_zero ? kNegInfty : ai.reg;
  out.hdeg_trace = a.is_zero ? HdegNode{} : az.hdeg(S).trace;

  if (a.is_zero) {
    add(detail::make_skip("all", "quotient is the zero module", dg));
    return out;
  }

  if (!ai.is_zero) {
    // reg(I) = reg(R/I) + 1.
    add(detail::make_check("reg_ideal_eq_reg_quotient_plus_one", "==", ai.reg, BigInt(a.reg) + 1,
                           dg));
    // Exact-sequence bounds on 0 -> I -> R -> R/I -> 0.
    add(detail::make_check("lemma_A3.middle", "<=", 0, BigInt(std::max(ai.reg, a.reg)), dg));
    add(detail::make_check("lemma_A3.sub", "<=", ai.reg, BigInt(std::max(0, a.reg + 1)), dg));
  }

  // Dual-pipeline regularity.
  add(detail::make_check("reg_dual_vs_betti", "==", az.regularity_duality(S), a.reg, dg));

  // Monomial staircase oracle.
  bool monomial = true;
  std::vector<Monomial> mono_gens;
  for (const Poly& f : ideal_gens) {
    if (f.is_zero()) continue;
    if (f.size() != 1 || f.lead().c != 1) monomial = false;
    if (f.size() == 1) mono_gens.push_back(f.lead().m);
  }
  if (monomial) {
    bool ok = true;
    for (int j = 0; j <= a.reg + n + 3 && ok; ++j)
      ok = (a.hilbert(j) == staircase_hilbert(mono_gens, j, n));
    CheckResult c = detail::make_check("staircase_agreement", "==", 0, 0, dg);
    c.passed = ok;
    c.note = "resolution series vs standard-monomial count, degrees 0.." +
             std::to_string(a.reg + n + 3);
    add(std::move(c));
  } else {
    add(detail::make_skip("staircase_agreement", "ideal is not monomial", dg));
  }

  // Grothendieck-Serre residual over the certified window.
  {
    bool ok = true;
    int lo = -std::max(a.reg, 0) - n - 5, hi = a.reg + 5;
    for (int i = 0; i <= d; ++i) {
      const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
      if (!K.is_zero) lo = std::min(lo, -K.reg - n - 2);
    }
    for (int j = lo; j <= hi && ok; ++j) ok = (az.gs_residual(S, j) == 0);
    CheckResult c = detail::make_check("gs_residual", "==", 0, 0, dg);
    c.passed = ok;
    c.note = "residual over j in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    add(std::move(c));
  }

  // Deficiency profile, structural facts, per-K duality agreement.
  for (int i = 0; i <= d; ++i) {
    const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
    out.profile.push_back(detail::summarize_K(i, K));
    if (i < d) {
      if (K.is_zero)
        add(detail::make_check_neg_infty("dim_K.i=" + std::to_string(i), "<=", i, dg));
      else
        add(detail::make_check("dim_K.i=" + std::to_string(i), "<=", K.dd.dim, i, dg));
    } else {
      add(detail::make_check("dim_Kd", "==", K.dd.dim, d, dg));
      if (!K.is_zero)
        add(detail::make_check("depth_Kd", "<=", std::min(2, d), K.depth, dg));
    }
    if (opt.profile_duality_checks && !K.is_zero)
      add(detail::make_check("reg_dual_vs_betti.K" + std::to_string(i), "==",
                             az.regularity_duality(K.pres), K.reg, dg));
  }
  {
    // K^i vanishes outside [0, d]; probe one step beyond both ends.
    bool ok = az.analyze(az.deficiency_module(S, -1)).is_zero &&
              az.analyze(az.deficiency_module(S, d + 1)).is_zero;
    CheckResult c = detail::make_check("K_vanishes_outside_range", "==", 0, 0, dg);
    c.passed = ok;
    add(std::move(c));
  }

  // reg(K^0) <= -beg.
  {
    const ModuleAnalysis& K0 = az.analyze(az.deficiency_module(S, 0));
    if (K0.is_zero)
      add(detail::make_check_neg_infty("lemma_B7bn", "<=", -a.dd.beg, dg));
    else
      add(detail::make_check("lemma_B7bn", "<=", K0.reg, -a.dd.beg, dg));
  }

  // Homological degree facts.
  long long hdeg_S = az.hdeg(S).value;
  add(detail::make_check("hdeg_ge_deg", "<=", a.dd.degree, hdeg_S, dg));
  {
    CheckResult c;
    c.check_id = "note_a_hdeg_eq_deg_iff_cm";
    c.relation = "iff";
    c.lhs = hdeg_S;
    c.rhs = a.dd.degree;
    c.passed = ((hdeg_S == a.dd.degree) == a.is_cm);
    c.note = a.is_cm ? "module is Cohen-Macaulay" : "module is not Cohen-Macaulay";
    c.inputs_digest = dg;
    add(std::move(c));
  }
  {
    // note (b): hdeg(M) = hdeg(M/H^0) + l(H^0); the length is read off the
    // dual side, the quotient from the saturation.
    GradedModuleP Sbar = quotient_by_finite_part(S, ord);
    const ModuleAnalysis& K0 = az.analyze(az.deficiency_module(S, 0));
    long long ell = detail::finite_length(K0);
    add(detail::make_check("note_b_h0_additivity", "==", hdeg_S,
                           BigInt(az.hdeg(Sbar).value) + ell, dg));
  }

  // Lemma B2 on S and on I as a module.
  add(check_lemma_B2(az, S, dg));

  // Theorem B4 for all 0 <= i <= d.
  for (int i = 0; i <= d; ++i) add(check_thm_B4(az, S, i, dg));

  // EB2b on Cohen-Macaulay members.
  if (a.is_cm)
    add(check_EB2b(az, S, dg));
  else
    add(detail::make_skip("eb2b", "module is not Cohen-Macaulay", dg));

  // Lemma A7(iii) on CM members: reg = ri + d.
  if (a.is_cm)
    add(detail::make_check("lemma_A7iii", "==", a.reg, BigInt(a.ri) + d, dg));
  else
    add(detail::make_skip("lemma_A7iii", "module is not Cohen-Macaulay", dg));

  // BMM data + Lemma C2.
  out.bmm = bmm_data(az, S, std::max(d, 0));
  for (int i = 1; i <= d; ++i) add(check_lemma_C2(az, S, out.bmm, i, dg));
  add(check_lemma_C2_sharp(az, S, out.bmm, dg));

  // Theorem C1, the claim-7 refinement, Lemma C3 pointwise bounds.
  int reg_ideal = ai.reg;
  if (!ai.is_zero) {
    for (int i = 1; i <= d; ++i) add(check_thm_C1(az, S, reg_ideal, i, dg));
    add(check_thm_C1_claim7(az, S, reg_ideal, dg));
    for (int i = 0; i < d; ++i) add(check_lemma_C3(az, S, reg_ideal, i, dg));
  }

  // Lemma B7cn and the strictness remark, for depth > 0.
  if (a.depth > 0 && d >= 2) {
    for (int i = 1; i < d; ++i) {
      std::string id = "lemma_B7cn.i=" + std::to_string(i);
      BigInt rhs = BigInt(-a.dd.beg) + i;
      for (int j = 1; j <= i; ++j) {
        const GradedModuleP Kj = az.deficiency_module(S, j);
        rhs += BigInt(binom_ll(d, j)) * az.hdeg(Kj).value;
      }
      const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
      if (K.is_zero)
        add(detail::make_check_neg_infty(id, "<=", rhs, dg));
      else
        add(detail::make_check(id, "<=", K.reg, rhs, dg));
      if (i == d - 1 && !K.is_zero) {
        CheckResult c = detail::make_check("lemma_B7cn.remark_strict", "<", K.reg, rhs, dg);
        add(std::move(c));
      }
    }
  }

  // Generic linear form: filter-regular for S and all its deficiency
  // modules, then the A5/A7 ladder and optionally the B7 length additivity.
  {
    std::vector<GradedModuleP> targets = {S};
    std::vector<std::string> labels = {"S"};
    for (int i = 0; i <= d; ++i) {
      GradedModuleP K = az.deficiency_module(S, i);
      if (!az.analyze(K).is_zero) {
        targets.push_back(K);
        labels.push_back("K^" + std::to_string(i));
      }
    }
    try {
      FilterRegularResult fr = filter_regular_element(az, targets, labels, opt.seed);
      out.certificates.push_back(fr.cert);
      const Poly& x = fr.element;
      GradedModuleP Q = quotient_by_linear(S, x, ord);
      const ModuleAnalysis& q = az.analyze(Q);
      int reg_q = q.is_zero ? kNegInfty : q.reg;

      int reg1 = kNegInfty;  // max over i >= 1 of (i - beg K^i)
      for (int i = 1; i <= d; ++i) {
        const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
        if (!K.is_zero) reg1 = std::max(reg1, i - K.dd.beg);
      }
      if (is_finite_deg(reg1))
        add(detail::make_check("lemma_A5.lower", "<=", reg1, reg_q, dg));
      else
        add(detail::make_check_neg_infty("lemma_A5.lower", "<=", reg_q, dg));
      add(detail::make_check("lemma_A5.upper", "<=", reg_q, a.reg, dg));

      const ModuleAnalysis& K0 = az.analyze(az.deficiency_module(S, 0));
      int end_h0 = K0.is_zero ? kNegInfty : -K0.dd.beg;
      int rhs_a7i = std::max(reg_q, end_h0);
      add(detail::make_check("lemma_A7i", "==", a.reg, rhs_a7i, dg));
      int rhs_a7ii = std::max(reg_q, a.ri);
      add(detail::make_check("lemma_A7ii", "==", a.reg, rhs_a7ii, dg));

      if (opt.b7_additivity) {
        bool ok = true;
        std::string where;
        for (int i = 0; i <= d && ok; ++i) {
          const ModuleAnalysis& KQ = az.analyze(az.deficiency_module(Q, i));
          const ModuleAnalysis& Ki = az.analyze(az.deficiency_module(S, i));
          const ModuleAnalysis& Knext = az.analyze(az.deficiency_module(S, i + 1));
          GradedModuleP Kq = az.deficiency_module(S, i + 1);
          const ModuleAnalysis& KnextModX =
              az.analyze(Knext.is_zero ? zero_module(R) : quotient_by_linear(Kq, x, ord));
          const ModuleAnalysis& ann =
              az.analyze(Ki.is_zero ? zero_module(R)
                                    : annihilator_submodule(Ki.pres, x, ord));
          int lo = std::min({KQ.is_zero ? 0 : KQ.dd.beg, KnextModX.is_zero ? 0 : KnextModX.dd.beg - 1,
                             ann.is_zero ? 0 : ann.dd.beg}) -
                   2;
          int hi = std::max({KQ.is_zero ? 0 : std::max(KQ.reg, KQ.dd.beg),
                             KnextModX.is_zero ? 0 : std::max(KnextModX.reg, KnextModX.dd.beg),
                             ann.is_zero ? 0 : std::max(ann.reg, ann.dd.beg)}) +
                   n + 2;
          for (int j = lo; j <= hi && ok; ++j) {
            long long lhs = KQ.hilbert(j);
            long long rhs = KnextModX.hilbert(j + 1) + ann.hilbert(j);
            if (lhs != rhs) {
              ok = false;
              where = "i=" + std::to_string(i) + ", j=" + std::to_string(j);
            }
          }
        }
        CheckResult c = detail::make_check("lemma_B7.additivity", "==", 0, 0, dg);
        c.passed = ok;
        c.note = ok ? "length additivity over all profile windows" : ("first failure at " + where);
        add(std::move(c));
      }
    } catch (const std::runtime_error& e) {
      add(detail::make_skip("lemma_A5.upper", std::string("no certified generic form: ") + e.what(), dg));
    }
  }

  // Section 4 suite: monomial / generalized CM / sequentially CM cases and
  // the gin corollary.
  {
    bool gen_cm = true;
    for (int i = 0; i < d; ++i) {
      const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
      if (!K.is_zero && K.dd.dim > 0) gen_cm = false;
    }
    std::string char_caveat =
        "verified over F_" + std::to_string(R.char_p) + "; the quoted statement assumes characteristic zero";

    if (monomial && gen_cm) {
      for (int i = 0; i < d; ++i) {
        const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
        std::string id = "sec4_ED2.i=" + std::to_string(i);
        if (K.is_zero) {
          add(detail::make_check_neg_infty(id, "<=", 0, dg));
        } else {
          CheckResult c = detail::make_check(id, "<=", K.reg, 0, dg);
          c.passed = c.passed && (K.reg == K.dd.end);
          c.note = "also requires reg = end; end = " + std::to_string(K.dd.end);
          add(std::move(c));
        }
      }
      const ModuleAnalysis& Kd = az.analyze(az.deficiency_module(S, d));
      if (Kd.is_zero)
        add(detail::make_check_neg_infty("sec4_D1", "<=", d, dg));
      else
        add(detail::make_check("sec4_D1", "<=", Kd.reg, d, dg));
    } else {
      std::string why = monomial ? "not generalized Cohen-Macaulay" : "ideal is not monomial";
      add(detail::make_skip("sec4_ED2", why, dg));
      add(detail::make_skip("sec4_D1", why, dg));
    }

    if (gen_cm && !ai.is_zero && !ideal_contains_linear_form(az, S) && n >= 2) {
      for (int i = 1; i < d; ++i) {
        std::string id = "remark_C4.i=" + std::to_string(i);
        BigInt r = reg_ideal;
        BigInt base = detail::bigpow(2, i + 1) *
                      (detail::bigpow(r, n - 1) - detail::bigpow(r, n - 2));
        BigInt rhs = detail::bigpow(base, detail::bigpow(2, i - 1));
        const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
        if (K.is_zero)
          add(detail::make_check_neg_infty(id, "<", rhs, dg));
        else
          add(detail::make_check(id, "<", K.reg, rhs, dg));
      }
    }

    // gin-based checks.
    if (ai.is_zero) {
      add(detail::make_skip("sec4_D3", "zero ideal", dg));
    } else
    try {
      GinResult gr = gin(ideal_gens, grevlex_top(), mix_seed(opt.seed, 0x91f), R);
      out.certificates.push_back(gr.cert);
      std::vector<Poly> gin_polys;
      for (const Monomial& m : gr.gens) gin_polys.push_back(poly_monomial(m, 1, R));
      GradedModuleP G = quotient_ring(R, gin_polys);
      const ModuleAnalysis& ag = az.analyze(G);

      // Flat degeneration: the Hilbert function is preserved.
      {
        CheckResult c = detail::make_check("gin_hilbert_preserved", "==", 0, 0, dg);
        c.passed = (ag.hs.num == a.hs.num);
        c.caveats.push_back(char_caveat);
        add(std::move(c));
      }

      int dg_dim = ag.dd.dim;
      for (int i = 0; i <= dg_dim; ++i) {
        const ModuleAnalysis& K = az.analyze(az.deficiency_module(G, i));
        std::string id = "sec4_D3.i=" + std::to_string(i);
        CheckResult c;
        if (K.is_zero)
          c = detail::make_check_neg_infty(id, "<=", i, dg);
        else
          c = detail::make_check(id, "<=", K.reg, i, dg);
        c.caveats.push_back(char_caveat);
        add(std::move(c));
      }

      // Herzog-Sbarra criterion: S is sequentially CM iff every K^i keeps
      // its Hilbert function under the reverse-lex gin.
      bool seq_cm = (dg_dim == d);
      for (int i = 0; i <= d && seq_cm; ++i) {
        const ModuleAnalysis& Ka = az.analyze(az.deficiency_module(S, i));
        const ModuleAnalysis& Kb = az.analyze(az.deficiency_module(G, i));
        seq_cm = (Ka.hs.num == Kb.hs.num);
      }
      if (seq_cm) {
        for (int i = 0; i <= d; ++i) {
          const ModuleAnalysis& K = az.analyze(az.deficiency_module(S, i));
          std::string id = "sec4_D2i.i=" + std::to_string(i);
          CheckResult c;
          if (K.is_zero)
            c = detail::make_check_neg_infty(id, "<=", BigInt(i) - a.dd.beg, dg);
          else
            c = detail::make_check(id, "<=", K.reg, BigInt(i) - a.dd.beg, dg);
          c.caveats.push_back(char_caveat);
          add(std::move(c));
        }
      } else {
        add(detail::make_skip("sec4_D2i", "Herzog-Sbarra criterion: not sequentially CM", dg));
      }
    } catch (const std::runtime_error& e) {
      add(detail::make_skip("sec4_D3", std::string("gin unavailable: ") + e.what(), dg));
    }
  }

  return out;
}

}  // namespace regcalc
