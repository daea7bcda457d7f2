#include "otlab/metrics.hpp"

#include <algorithm>

#include "otlab/cohomology.hpp"
#include "otlab/dga.hpp"
#include "otlab/errors.hpp"

namespace otlab {

namespace {

ExponentVector pair_relation(int s, int t, int i, int ip) {
  std::vector<long> e(s + 2 * t, 0);
  e[s + i - 1] += 1;
  e[s + t + i - 1] += 1;
  e[s + ip - 1] -= 1;
  e[s + t + ip - 1] -= 1;
  return ExponentVector(std::move(e));
}

// Interval within tol of v, tol = 2^(-prec/4). B widths are below
// 2^(-prec/2), so failing this certifies the entry differs from v.
bool near(const RIval& entry, long v, Prec prec) {
  if (entry.contains(v)) return true;
  Rational tol(Integer(1), Integer(1) << static_cast<unsigned long>(prec / 4));
  RIval lo = RIval::from_rational(Rational(v) - tol, entry.precision());
  RIval hi = RIval::from_rational(Rational(v) + tol, entry.precision());
  return RIval::hull(lo, hi).contains_interval(entry);
}

}  // namespace

const char* metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::LcK: return "lcK";
    case MetricKind::Pluriclosed: return "pluriclosed";
    case MetricKind::Balanced: return "balanced";
    case MetricKind::Lcb: return "lcb";
  }
  return "unknown";
}

MetricVerdict decide_lck(const OTStructure& ot) {
  MetricVerdict v;
  v.kind = MetricKind::LcK;
  if (ot.t == 1) {
    v.exists = true;
    v.note = "single complex place; the equal-moduli condition is vacuous";
    return v;
  }
  bool refuted = false;
  bool inconclusive = false;
  std::string first_undecided;
  for (int i = 1; i <= ot.t; ++i) {
    for (int ip = i + 1; ip <= ot.t; ++ip) {
      ExponentVector ev = pair_relation(ot.s, ot.t, i, ip);
      RelationVerdict rv = ot.emb->certify_relation(ot.units, ev);
      if (rv.status == RelStatus::Refuted) {
        refuted = true;
        if (v.note.empty())
          v.note = "moduli differ at complex places " + std::to_string(i) + " and " +
                   std::to_string(ip) + ": " + rv.detail;
      } else if (rv.status == RelStatus::Inconclusive && first_undecided.empty()) {
        inconclusive = true;
        first_undecided = "places " + std::to_string(i) + "," + std::to_string(ip);
      }
      v.certification.emplace_back(std::move(ev), std::move(rv));
    }
  }
  if (!refuted && inconclusive)
    throw_precision("equal-moduli relation undecided at the precision cap (" + first_undecided + ")");
  v.exists = !refuted;
  if (v.exists) {
    // Second route: equal moduli means equal columns of B. The certified
    // intervals of any two columns must overlap row by row.
    for (int i = 0; i < ot.t; ++i)
      for (int ip = i + 1; ip < ot.t; ++ip)
        for (int k = 0; k < ot.s; ++k) {
          RIval meet;
          if (!RIval::intersect(ot.B[k][i], ot.B[k][ip], meet))
            throw_internal("lcK routes disagree: relations verify but B columns separate");
        }
    v.note = "all complex places carry equal moduli on every generator";
  }
  return v;
}

MetricVerdict decide_pluriclosed(const OTStructure& ot) {
  MetricVerdict v;
  v.kind = MetricKind::Pluriclosed;
  if (ot.s != ot.t) {
    v.note = "signature has s != t, which the coefficient condition excludes";
    return v;
  }
  int s = ot.s, t = ot.t;
  std::vector<int> perm(t, 0);
  for (int i = 0; i < t; ++i) {
    // A matching column equals a negated standard basis vector. An entry
    // whose interval excludes both 0 and -1 refutes the whole column.
    std::vector<int> cand;
    for (int k = 0; k < s; ++k) {
      bool n0 = near(ot.B[k][i], 0, ot.prec);
      bool n1 = near(ot.B[k][i], -1, ot.prec);
      if (!n0 && !n1) {
        v.note = "B(" + std::to_string(k + 1) + "," + std::to_string(i + 1) +
                 ") is certified away from both 0 and -1";
        return v;
      }
      if (n1) cand.push_back(k);
    }
    if (cand.empty()) {
      v.note = "no row of column " + std::to_string(i + 1) + " admits the value -1";
      return v;
    }
    int found = 0;
    for (int k : cand) {
      ExponentVector ev =
          ExponentVector::from_support(s + 2 * t, {k + 1, s + i + 1, s + t + i + 1});
      RelationVerdict rv = ot.emb->certify_relation(ot.units, ev);
      RelStatus st = rv.status;
      if (st == RelStatus::Inconclusive)
        throw_precision("coefficient relation undecided at the precision cap: " + rv.detail);
      v.certification.emplace_back(std::move(ev), std::move(rv));
      if (st == RelStatus::Verified) {
        found = k + 1;
        break;
      }
    }
    if (found == 0) {
      v.note = "every candidate relation for column " + std::to_string(i + 1) + " is refuted";
      return v;
    }
    perm[i] = found;
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    v.note = "two complex places certify against the same real place; no relabeling exists";
    return v;
  }
  v.exists = true;
  MetricWitness w;
  w.permutation = perm;
  // Model metric with identity coefficients under B = -P, free C atoms.
  std::vector<std::vector<Rational>> bv(s, std::vector<Rational>(t, 0));
  for (int i = 0; i < t; ++i) bv[perm[i] - 1][i] = -1;
  StructureConstants sc = StructureConstants::with_rational_b(s, t, bv);
  InvariantForm om = metric_form(s, t, hermitian_identity(s + t));
  w.dga_verified = ddc(om, sc).is_zero();
  if (!w.dga_verified)
    throw_internal("pluriclosed witness failed the symbolic dd^c check");
  v.witness = std::move(w);
  v.note = "every column of B is a certified negated standard basis vector";
  return v;
}

MetricVerdict decide_balanced(const OTStructure& ot) {
  MetricVerdict v;
  v.kind = MetricKind::Balanced;
  v.exists = false;
  // Signature-level symbolic witness: with row sums -1 the top-power
  // differential keeps the diagonal coefficients -(i/2) a(k,k), which are
  // nonzero for any positive definite coefficient matrix. The construction
  // asserts the coefficient identity internally.
  StructureConstants sc = StructureConstants::symbolic(ot.s, ot.t, true);
  BalancedObstruction bo = balanced_obstruction(sc, hermitian_symbolic(ot.s + ot.t));
  MetricWitness w;
  w.dga_verified = true;
  for (int k = 0; k < ot.s; ++k)
    if (bo.m_coeff[k].is_zero() || bo.m_bar_coeff[k].is_zero())
      throw_internal("balanced obstruction vanished symbolically");
  v.witness = std::move(w);
  v.note = "certified row sums place the manifold in the obstructed family";
  return v;
}

MetricVerdict lcb_metric(const OTStructure& ot) {
  MetricVerdict v;
  v.kind = MetricKind::Lcb;
  v.exists = true;
  StructureConstants sc = StructureConstants::symbolic(ot.s, ot.t, true);
  LcbCheck lc = verify_lcb(sc);
  if (!lc.verified) throw_internal("lcb identity failed symbolically");
  MetricWitness w;
  w.dga_verified = true;
  w.lee_form = "(1/(2 i)) sum_k (omega_k - conj omega_k)";
  w.exponents.assign(ot.s, {});
  for (int k = 0; k < ot.s; ++k)
    for (int i = 0; i < ot.t; ++i) w.exponents[k].push_back(-ot.B[k][i]);
  v.witness = std::move(w);
  v.note = "coordinate coefficients prod_k (Im w_k)^(-b_ki); Lee form closed";
  return v;
}

bool corollary_gate(bool lck, bool pluriclosed, int s, int t) {
  return !(lck && pluriclosed) || (s == 1 && t == 1);
}

MetricsReport classify(const OTStructure& ot) {
  MetricsReport r;
  r.lck = decide_lck(ot);
  r.pluriclosed = decide_pluriclosed(ot);
  r.balanced = decide_balanced(ot);
  r.lcb = lcb_metric(ot);
  if (r.pluriclosed.exists && ot.s != ot.t)
    throw_internal("pluriclosed verdict with s != t");
  if (r.balanced.exists || !r.lcb.exists)
    throw_internal("constant verdict violated");
  r.corollary_gate = corollary_gate(r.lck.exists, r.pluriclosed.exists, ot.s, ot.t);
  if (!r.corollary_gate)
    throw_internal("lcK and pluriclosed certified together outside a surface");
  return r;
}

Dim4Result classify_dim4(const OTStructure& ot) {
  if (ot.s + ot.t != 4) throw_domain("dimension-4 classification requires s + t = 4");
  Dim4Result r;
  r.pluriclosed = decide_pluriclosed(ot).exists;
  r.b3 = betti3(ot);
  r.h21 = dolbeault_dim(ot, 2, 1);
  r.equivalent = ((r.b3 == 2) == r.pluriclosed) && ((r.h21 == 2) == r.pluriclosed);
  return r;
}

}  // namespace otlab
