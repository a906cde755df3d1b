#pragma once

#include <json.hpp>
#include <string>

#include "regcalc/parse.hpp"
#include "regcalc/verify.hpp"

namespace regcalc {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

namespace detail {

/// Degrees print as numbers; the +-infinity sentinels as strings.
inline OrderedJson deg_json(int v) {
  if (v <= kNegInfty / 2) return "-inf";
  if (v >= kPosInfty / 2) return "+inf";
  return v;
}

inline OrderedJson big_json(const BigInt& v) { return v.str(); }

inline OrderedJson check_json(const CheckResult& c) {
  OrderedJson j;
  j["id"] = c.check_id;
  if (c.skipped) {
    j["status"] = "skip";
    j["reason"] = c.note;
  } else {
    j["status"] = c.passed ? "pass" : "fail";
    j["relation"] = c.relation;
    j["lhs"] = c.lhs_is_neg_infty ? OrderedJson("-inf") : big_json(c.lhs);
    j["rhs"] = big_json(c.rhs);
    if (!c.lhs_is_neg_infty) j["slack"] = big_json(c.slack);
    if (!c.note.empty()) j["note"] = c.note;
  }
  j["inputs_digest"] = c.inputs_digest;
  if (!c.caveats.empty()) j["caveats"] = c.caveats;
  return j;
}

inline OrderedJson hdeg_trace_json(const HdegNode& n) {
  OrderedJson j;
  if (n.ext_index >= 0) j["ext"] = n.ext_index;
  j["dim"] = n.dim;
  j["deg"] = n.deg;
  j["hdeg"] = n.value;
  if (!n.children.empty()) {
    OrderedJson kids = OrderedJson::array();
    for (const HdegNode& c : n.children) kids.push_back(hdeg_trace_json(c));
    j["children"] = kids;
  }
  return j;
}

inline OrderedJson cert_json(const GenericCertificate& c) {
  OrderedJson j;
  j["seed"] = c.seed;
  j["attempts"] = c.attempts;
  j["property"] = c.property;
  j["verified"] = c.verified;
  j["checked"] = c.checked;
  return j;
}

}  // namespace detail

inline OrderedJson report_json(const IdealFile& file, const VerifyOutcome& out,
                               std::uint64_t seed, long long elapsed_ms) {
  OrderedJson j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["ring"] = {{"char", file.ring.char_p}, {"vars", file.var_names}};
  if (!file.label.empty()) j["label"] = file.label;
  OrderedJson gens = OrderedJson::array();
  for (const Poly& g : file.gens) gens.push_back(poly_to_string(g, file.var_names, file.ring));
  j["ideal"] = gens;
  j["inputs_digest"] = out.digest;

  OrderedJson inv;
  inv["dim"] = out.inv.dim;
  inv["depth"] = out.inv.depth;
  inv["deg"] = out.inv.deg;
  inv["reg"] = detail::deg_json(out.inv.reg);
  inv["reg_ideal"] = detail::deg_json(out.inv.reg_ideal);
  inv["ri"] = detail::deg_json(out.inv.ri);
  inv["beg"] = detail::deg_json(out.inv.beg);
  inv["end"] = detail::deg_json(out.inv.end);
  inv["gen"] = detail::deg_json(out.inv.gen);
  inv["pd"] = out.inv.pd;
  inv["hdeg"] = out.inv.hdeg;
  inv["cohen_macaulay"] = out.inv.cm;
  j["invariants"] = inv;

  OrderedJson prof = OrderedJson::array();
  for (const KSummary& k : out.profile) {
    OrderedJson kj;
    kj["i"] = k.i;
    kj["zero"] = k.zero;
    if (!k.zero) {
      kj["reg"] = detail::deg_json(k.reg);
      kj["dim"] = k.dim;
      kj["deg"] = k.deg;
      kj["beg"] = detail::deg_json(k.beg);
      kj["end"] = detail::deg_json(k.end);
      kj["ri"] = detail::deg_json(k.ri);
      OrderedJson num = OrderedJson::array();
      for (const auto& [d, c] : k.hilbert_numerator) num.push_back({d, c});
      kj["hilbert_numerator"] = num;
      kj["hilbert_polynomial"] = k.hp_coeffs;
      kj["window"] = {k.window.first, k.window.second};
      kj["hilbert_window_values"] = k.hf_window_values;
    }
    prof.push_back(kj);
  }
  j["deficiency_profile"] = prof;

  OrderedJson bmm = OrderedJson::array();
  for (const BMMEntry& e : out.bmm) {
    OrderedJson ej;
    ej["i"] = e.i;
    ej["window"] = {e.win_lo, e.win_hi};
    ej["d_values"] = e.d_values;
    OrderedJson q = OrderedJson::array();
    // coefficients are exact rationals rendered as strings
    for (size_t k = 0; k < e.q.coeffs.size(); ++k) q.push_back(BigRat(e.q.coeffs[k]).str());
    ej["q_coeffs"] = q;
    if (e.nu)
      ej["nu"] = *e.nu;
    else
      ej["nu"] = "+inf";
    ej["delta"] = detail::big_json(e.delta);
    bmm.push_back(ej);
  }
  j["bmm"] = bmm;

  j["hdeg_trace"] = detail::hdeg_trace_json(out.hdeg_trace);

  OrderedJson certs = OrderedJson::array();
  for (const GenericCertificate& c : out.certificates) certs.push_back(detail::cert_json(c));
  j["generic_certificates"] = certs;

  OrderedJson checks = OrderedJson::array();
  long long pass = 0, fail = 0, skip = 0;
  for (const CheckResult& c : out.checks) {
    checks.push_back(detail::check_json(c));
    if (c.skipped)
      ++skip;
    else if (c.passed)
      ++pass;
    else
      ++fail;
  }
  j["checks"] = checks;
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
  j["timing_ms"] = elapsed_ms;
  return j;
}

/// Human-readable report text.
inline std::string report_text(const IdealFile& file, const VerifyOutcome& out,
                               const BettiTable& betti) {
  std::ostringstream os;
  os << "ring: F_" << file.ring.char_p << "[";
  for (size_t i = 0; i < file.var_names.size(); ++i)
    os << (i ? ", " : "") << file.var_names[i];
  os << "]\n";
  if (!file.label.empty()) os << "label: " << file.label << "\n";
  os << "ideal:";
  for (const Poly& g : file.gens) os << " (" << poly_to_string(g, file.var_names, file.ring) << ")";
  os << "\n\nbetti table of R/I:\n" << betti_to_string(betti);

  auto deg_str = [](int v) -> std::string {
    if (v <= kNegInfty / 2) return "-inf";
    if (v >= kPosInfty / 2) return "+inf";
    return std::to_string(v);
  };
  os << "\ninvariants:\n";
  os << "  dim " << out.inv.dim << "   depth " << out.inv.depth << "   deg " << out.inv.deg
     << "   pd " << out.inv.pd << "\n";
  os << "  reg " << deg_str(out.inv.reg) << "   reg(I) " << deg_str(out.inv.reg_ideal) << "   ri "
     << deg_str(out.inv.ri) << "\n";
  os << "  beg " << deg_str(out.inv.beg) << "   end " << deg_str(out.inv.end) << "   gen "
     << deg_str(out.inv.gen) << "\n";
  os << "  hdeg " << out.inv.hdeg << (out.inv.cm ? "   (Cohen-Macaulay: hdeg = deg)" : "") << "\n";

  os << "\ndeficiency modules:\n";
  for (const KSummary& k : out.profile) {
    os << "  K^" << k.i << ": ";
    if (k.zero) {
      os << "0\n";
      continue;
    }
    os << "dim " << k.dim << ", deg " << k.deg << ", reg " << deg_str(k.reg) << ", beg "
       << deg_str(k.beg) << ", end " << deg_str(k.end) << ", ri " << deg_str(k.ri) << "\n";
  }

  os << "\nchecks:\n";
  for (const CheckResult& c : out.checks) {
    std::string status = c.skipped ? "SKIP" : (c.passed ? "pass" : "FAIL");
    os << "  [" << status << "] " << c.check_id;
    if (!c.skipped) {
      os << ": " << (c.lhs_is_neg_infty ? std::string("-inf") : c.lhs.str()) << " " << c.relation
         << " " << c.rhs.str();
    } else {
      os << " (" << c.note << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace regcalc
