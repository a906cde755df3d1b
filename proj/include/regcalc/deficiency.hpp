#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regcalc/hilbert.hpp"

namespace regcalc {

/// Everything derived from one minimal presentation: resolution, Betti
/// numbers, Hilbert data, the standard numeric invariants.
struct ModuleAnalysis {
  GradedModuleP pres;
  FreeResolution res;
  BettiTable betti;
  HilbertSeries hs;
  HilbertPolynomial hp;
  DimensionData dd;
  int reg = kNegInfty;
  int pd = 0;
  int depth = 0;  // meaningless for the zero module
  int gen = kNegInfty;
  int ri = kNegInfty;
  bool is_zero = true;
  bool is_cm = false;

  long long hilbert(int j) const { return hilbert_value(hs, j); }
};

struct HdegNode {
  int ext_index = -1;  // which Ext produced this child; -1 at the root
  int dim = -1;
  long long deg = 0;
  long long value = 0;
  std::vector<HdegNode> children;
};

struct HdegValue {
  long long value = 0;
  HdegNode trace;
};

/// Shared computation cache: analyses, deficiency modules and hdeg values
/// are memoized on presentation fingerprints.
class Analyzer {
 public:
  explicit Analyzer(GradedRing ring, ModOrder ord = default_module_order())
      : ring_(ring), ord_(ord) {}

  const GradedRing& ring() const { return ring_; }
  const ModOrder& order() const { return ord_; }

  const ModuleAnalysis& analyze(const GradedModuleP& M) {
    std::string key = fingerprint(M);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto a = std::make_unique<ModuleAnalysis>(compute_analysis(M));
    const ModuleAnalysis& ref = *a;
    cache_.emplace(std::move(key), std::move(a));
    return ref;
  }

  /// Ext^k(M, R) as a minimally presented graded module, by dualizing the
  /// minimal free resolution and presenting kernel modulo image.
  GradedModuleP ext_module(const GradedModuleP& M, int k) {
    const ModuleAnalysis& a = analyze(M);
    if (a.is_zero || k < 0 || k > a.pd) return zero_module(ring_);
    const FreeResolution& res = a.res;
    FreeMod dual_k = dual_module(res.mods[k]);

    std::vector<ModElem> kernel_gens;
    if (k == res.length()) {
      for (int j = 0; j < dual_k.rank(); ++j) kernel_gens.push_back(unit_vector(j, ring_));
    } else {
      FreeMod dual_k1 = dual_module(res.mods[k + 1]);
      std::vector<ModElem> cols;
      for (int j = 0; j < dual_k.rank(); ++j) cols.push_back(matrix_row_elem(res.maps[k], j));
      Submodule ker = kernel_of_map(cols, dual_k.twists, dual_k1, ord_, ring_);
      kernel_gens = ker.gens;
    }
    std::vector<ModElem> image_gens;
    if (k > 0) {
      int prev_rank = res.mods[k - 1].rank();
      for (int j = 0; j < prev_rank; ++j) {
        ModElem row = matrix_row_elem(res.maps[k - 1], j);
        if (!row.is_zero()) image_gens.push_back(std::move(row));
      }
    }
    if (kernel_gens.empty()) return zero_module(ring_);
    GradedModuleP E = subquotient_presentation(kernel_gens, image_gens, dual_k, ord_, ring_);
    return minimal_presentation(E, ord_);
  }

  /// K^i(M) = Ext^{n-i}(M, R)(-n); the zero module outside 0 <= i <= dim M.
  GradedModuleP deficiency_module(const GradedModuleP& M, int i) {
    const ModuleAnalysis& a = analyze(M);
    if (i < 0 || i > a.dd.dim) return zero_module(ring_);
    return twist_module(ext_module(M, ring_.nvars - i), ring_.nvars);
  }

  /// Analyses of K^0(M) .. K^d(M).
  std::vector<const ModuleAnalysis*> deficiency_profile(const GradedModuleP& M) {
    const ModuleAnalysis& a = analyze(M);
    std::vector<const ModuleAnalysis*> prof;
    for (int i = 0; i <= std::max(a.dd.dim, -1); ++i)
      prof.push_back(&analyze(deficiency_module(M, i)));
    return prof;
  }

  /// l(H^i_m(M)_t) = H_{K^i(M)}(-t), via graded local duality.
  long long local_cohomology_hf(const GradedModuleP& M, int i, int t) {
    const ModuleAnalysis& a = analyze(M);
    if (i < 0 || i > a.dd.dim) return 0;
    const ModuleAnalysis& K = analyze(deficiency_module(M, i));
    return hilbert_value(K.hs, -t);
  }

  /// reg(M) = max_i (i + end H^i_m(M)) with end H^i = -beg K^i.
  int regularity_duality(const GradedModuleP& M) {
    const ModuleAnalysis& a = analyze(M);
    if (a.is_zero) return kNegInfty;
    int r = kNegInfty;
    for (int i = 0; i <= a.dd.dim; ++i) {
      const ModuleAnalysis& K = analyze(deficiency_module(M, i));
      if (!K.is_zero) r = std::max(r, i - K.dd.beg);
    }
    return r;
  }

  /// Vasconcelos' homological degree: deg(M) plus binomially weighted hdeg
  /// of the Ext modules, recursing into strictly smaller dimension.
  HdegValue hdeg(const GradedModuleP& M) {
    std::string key = fingerprint(M);
    auto it = hdeg_memo_.find(key);
    if (it != hdeg_memo_.end()) return it->second;

    const ModuleAnalysis& a = analyze(M);
    HdegValue out;
    out.trace.dim = a.dd.dim;
    out.trace.deg = a.is_zero ? 0 : a.dd.degree;
    if (a.is_zero) {
      out.value = 0;
    } else if (a.dd.dim <= 0) {
      out.value = a.dd.degree;  // length
    } else {
      int d = a.dd.dim;
      long long total = a.dd.degree;
      for (int i = 0; i <= d - 1; ++i) {
        int ext_idx = ring_.nvars + i + 1 - d;
        HdegValue child = hdeg(ext_module(M, ext_idx));
        child.trace.ext_index = ext_idx;
        total += binom_ll(d - 1, i) * child.value;
        out.trace.children.push_back(child.trace);
      }
      out.value = total;
    }
    out.trace.value = out.value;
    hdeg_memo_.emplace(std::move(key), out);
    return out;
  }

  /// H_M(j) - P_M(j) - sum_i (-1)^i l(H^i_m(M)_j); identically zero by the
  /// Grothendieck-Serre formula.
  long long gs_residual(const GradedModuleP& M, int j) {
    const ModuleAnalysis& a = analyze(M);
    long long lhs = a.hilbert(j);
    if (!a.is_zero) lhs -= static_cast<long long>(a.hp.eval_int(j));
    long long sum = 0;
    for (int i = 0; i <= a.dd.dim; ++i) {
      long long h = local_cohomology_hf(M, i, j);
      sum += (i % 2 == 0) ? h : -h;
    }
    return lhs - sum;
  }

 private:
  ModElem matrix_row_elem(const PolyMatrix& A, int row) {
    ModElem e;
    for (size_t c = 0; c < A[row].size(); ++c)
      for (const Term& t : A[row][c].terms) e.terms.push_back({static_cast<int>(c), t.m, t.c});
    mod_normalize(e, ring_, ord_);
    return e;
  }

  ModuleAnalysis compute_analysis(const GradedModuleP& M) {
    check_deadline();
    ModuleAnalysis a;
    a.pres = minimal_presentation(M, ord_);
    a.res = build_resolution(a.pres, ord_, ring_.nvars + 1);
    a.betti = betti_table(a.res);
    a.hs = hilbert_series_from_betti(a.betti, ring_.nvars);
    a.reg = regularity_betti(a.betti);
    a.pd = projective_dimension(a.res);
    a.gen = gen_degree(a.res);
    a.is_zero = a.pres.gen_twists.empty();
    a.hp = hilbert_polynomial(a.hs, a.reg);
    a.dd = dimension_data(a.hs, a.hp, a.reg);
    a.ri = a.is_zero ? kNegInfty : regularity_index(a.hs, a.hp, a.reg, a.dd.beg);
    if (!a.is_zero) {
      a.depth = depth_ab(a.res, ring_);
      a.is_cm = (a.depth == a.dd.dim);
    }
    return a;
  }

  GradedRing ring_;
  ModOrder ord_;
  std::map<std::string, std::unique_ptr<ModuleAnalysis>> cache_;
  std::map<std::string, HdegValue> hdeg_memo_;
};

/// One line of the Brodmann-Matteotti-Minh data of a cyclic module S: the
/// difference function d^i, its polynomial tail q^i, the first-disagreement
/// index nu^i and the bound ingredient Delta_i.
struct BMMEntry {
  int i = 0;
  int win_lo = 0, win_hi = 0;
  std::vector<long long> d_values;  // d^i(t), t in [win_lo, win_hi]
  HilbertPolynomial q;              // q^i as a polynomial in t
  std::optional<long long> nu;      // empty means d^i == q^i everywhere
  BigInt delta = 0;
};

/// q(t) = P(-t): flip coefficient signs in odd degrees.
inline HilbertPolynomial negate_argument(const HilbertPolynomial& p) {
  HilbertPolynomial q = p;
  for (size_t k = 1; k < q.coeffs.size(); k += 2) q.coeffs[k] = -q.coeffs[k];
  return q;
}

/// d^0(t) = H_S(t) - h^0(t) + h^1(t); d^i(t) = h^{i+1}(t) for i >= 1.
inline long long bmm_d_value(Analyzer& az, const GradedModuleP& S, int i, int t) {
  if (i == 0) {
    const ModuleAnalysis& a = az.analyze(S);
    return a.hilbert(t) - az.local_cohomology_hf(S, 0, t) + az.local_cohomology_hf(S, 1, t);
  }
  return az.local_cohomology_hf(S, i + 1, t);
}

inline std::vector<BMMEntry> bmm_data(Analyzer& az, const GradedModuleP& S, int i_max) {
  const GradedRing& R = az.ring();
  const ModuleAnalysis& a = az.analyze(S);
  std::vector<BMMEntry> rows;

  for (int i = 0; i <= i_max; ++i) {
    BMMEntry e;
    e.i = i;
    const ModuleAnalysis& Knext = az.analyze(az.deficiency_module(S, i + 1));
    e.q = negate_argument(Knext.hp);

    // Window below which d^i == q^i is certified: local cohomology values in
    // degree t equal the K-polynomial for t < -reg(K^{i+1}); for i = 0 the
    // extra terms vanish below beg(S) and below -end(K^0).
    int lo = 0;
    if (!Knext.is_zero) lo = std::min(lo, -Knext.reg);
    if (i == 0) {
      lo = std::min(lo, a.dd.beg);
      const ModuleAnalysis& K0 = az.analyze(az.deficiency_module(S, 0));
      if (!K0.is_zero) lo = std::min(lo, -K0.dd.end);
    }
    e.win_lo = lo - R.nvars - 2;
    e.win_hi = (is_finite_deg(a.reg) ? a.reg : 0) + 2;

    for (int t = e.win_lo; t <= e.win_hi; ++t) {
      long long dv = bmm_d_value(az, S, i, t);
      e.d_values.push_back(dv);
      if (!e.nu && BigInt(dv) != e.q.eval_int(t)) e.nu = t;
    }
    if (!e.nu) {
      // Above the window d^i agrees with its own polynomial tail; compare the
      // two polynomials and locate the first integer disagreement, if any.
      HilbertPolynomial tail = (i == 0) ? a.hp : HilbertPolynomial{};
      bool same = true;
      size_t deg = std::max(tail.coeffs.size(), e.q.coeffs.size());
      for (size_t kk = 0; kk < deg && same; ++kk) {
        BigRat ca = kk < tail.coeffs.size() ? tail.coeffs[kk] : BigRat(0);
        BigRat cb = kk < e.q.coeffs.size() ? e.q.coeffs[kk] : BigRat(0);
        same = (ca == cb);
      }
      if (!same) {
        for (long long t = e.win_hi + 1;; ++t) {
          if (tail.eval_int(t) != e.q.eval_int(t)) {
            e.nu = t;
            break;
          }
          if (t > e.win_hi + 100000)
            throw std::logic_error("bmm_data: runaway tail disagreement scan");
        }
      }
    }

    // Delta_i = sum_j C(i,j) (d^j(-j) + |q^j(-j)|), per the earlier rows.
    BigInt delta = 0;
    for (int j = 0; j <= i; ++j) {
      const BMMEntry& prev = (j == i) ? e : rows[j];
      BigInt dj = bmm_d_value(az, S, j, -j);
      BigInt qj = prev.q.eval_int(-j);
      if (qj < 0) qj = -qj;
      delta += BigInt(binom_ll(i, j)) * (dj + qj);
    }
    e.delta = delta;
    rows.push_back(std::move(e));
  }
  return rows;
}

}  // namespace regcalc
