#include "otlab/report.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "otlab/cohomology.hpp"
#include "otlab/dga.hpp"
#include "otlab/errors.hpp"
#include "otlab/metrics.hpp"
#include "otlab/search.hpp"

namespace otlab {

namespace {

using json = nlohmann::ordered_json;

json ival_json(const RIval& v) {
  json j;
  j["value"] = v.decimal(40);
  j["pm"] = v.radius_decimal();
  return j;
}

json imat_json(const IMat& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(ival_json(v));
    rows.push_back(r);
  }
  return rows;
}

json verdict_json(const MetricVerdict& v) {
  json j;
  j["kind"] = metric_kind_name(v.kind);
  j["exists"] = v.exists;
  if (v.witness) {
    json w;
    if (!v.witness->permutation.empty()) w["permutation"] = v.witness->permutation;
    if (!v.witness->exponents.empty()) w["exponents"] = imat_json(v.witness->exponents);
    if (!v.witness->lee_form.empty()) w["lee_form"] = v.witness->lee_form;
    w["dga_verified"] = v.witness->dga_verified;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  json certs = json::array();
  for (const auto& [ev, rv] : v.certification) {
    json c;
    c["exponents"] = ev.e;
    c["status"] = rel_status_name(rv.status);
    c["precision_used"] = static_cast<long>(rv.precision_used);
    c["residual_bound"] = rv.residual_bound;
    c["detail"] = rv.detail;
    certs.push_back(c);
  }
  j["certificates"] = certs;
  j["note"] = v.note;
  return j;
}

// Symbolic self-checks of the invariant calculus at signature (s, t).
json dga_section(int s, int t) {
  json dj;
  StructureConstants free_sc = StructureConstants::symbolic(s, t, false);
  StructureConstants row_sc = StructureConstants::symbolic(s, t, true);
  int n = s + t;

  bool d2 = true;
  for (int g = 0; g < 2 * n; ++g)
    d2 = d2 && d(d(InvariantForm::generator(s, t, g), free_sc), free_sc).is_zero();
  dj["d_squared_zero"] = d2;

  SymPoly i_half = SymPoly::from_gauss(GaussRat(Rational(0), Rational(1, 2)));
  SymPoly mi_half = SymPoly::from_gauss(GaussRat(Rational(0), Rational(-1, 2)));
  bool se = true;
  for (int k = 1; k <= s; ++k)
    se = se &&
         d(omega(s, t, k), free_sc) == omega(s, t, k).wedge(omega_bar(s, t, k)).scaled(i_half);
  dj["omega_structure_equation"] = se;

  auto a_sym = hermitian_symbolic(n);
  // construction asserts the closed form of the double contraction
  pluriclosed_obstruction(free_sc, a_sym);
  dj["pluriclosed_contraction_formula"] = true;

  BalancedObstruction bo = balanced_obstruction(row_sc, a_sym);
  bool bal = true;
  for (int k = 0; k < s; ++k)
    bal = bal && bo.m_coeff[k] == a_sym[k][k] * mi_half &&
          bo.m_bar_coeff[k] == a_sym[k][k] * i_half;
  dj["balanced_coefficient_formula"] = bal;

  LcbCheck lc = verify_lcb(row_sc);
  dj["lcb_residual_zero"] = lc.residual.is_zero();
  dj["lee_form_closed"] = lc.lee_closed;

  bool all = d2 && se && bal && lc.residual.is_zero() && lc.lee_closed && lc.verified;
  dj["verified"] = all;
  if (!all)
    throw_internal("invariant-calculus self-check failed at signature (" + std::to_string(s) +
                   "," + std::to_string(t) + ")");
  return dj;
}

}  // namespace

std::string analyze(const Manifest& m, const AnalyzeOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();

  json rep;
  rep["tool"] = kToolName;
  rep["version"] = kToolVersion;
  rep["schema"] = 1;
  rep["input"] = json::parse(m.to_json_text());

  Poly f = Poly::from_int_coeffs(m.polynomial);
  FieldPtr field = NumberField::make(f, m.assert_irreducible);
  std::vector<FieldElem> elems;
  elems.reserve(m.units.size());
  for (const auto& r : m.units) elems.push_back(FieldElem::from_int_coeffs(field, r));

  PrecisionPolicy policy = PrecisionPolicy::from_env(m.precision);
  OTStructure ot = OTStructure::build(field, elems, policy, m.branch);

  const IrredCertificate& cert = field->certificate();
  json fld;
  fld["degree"] = field->degree();
  fld["signature"] = {{"s", ot.s}, {"t", ot.t}};
  json irr;
  irr["status"] = cert.status == IrredStatus::Certified ? "certified" : "asserted";
  irr["route"] = cert.route;
  irr["prime"] = cert.prime ? json(*cert.prime) : json(nullptr);
  fld["irreducibility"] = irr;
  rep["field"] = fld;

  json us = json::array();
  for (size_t i = 0; i < ot.units.size(); ++i) {
    json ju;
    ju["rep"] = m.units[i];
    ju["norm"] = ot.units[i].norm().get_str();
    ju["totally_positive"] = true;
    us.push_back(ju);
  }
  rep["units"] = us;

  json adm;
  adm["admissible"] = ot.adm.admissible;
  adm["det"] = ival_json(ot.adm.det);
  adm["note"] = ot.adm.note;
  rep["admissibility"] = adm;

  // row sums certified near -1; checked regardless of requested sections
  std::vector<RIval> row_sums;
  for (int k = 0; k < ot.s; ++k) {
    RIval sum(ot.internal);
    for (int i = 0; i < ot.t; ++i) sum = sum + ot.B[k][i];
    if (!sum.contains(Rational(-1)) ||
        !sum.width_below_2exp(-(static_cast<long>(ot.prec) / 2)))
      throw_internal("row sum of B failed the certified -1 check");
    row_sums.push_back(std::move(sum));
  }

  if (m.requested("structure")) {
    json mx;
    mx["L"] = imat_json(ot.L);
    mx["B"] = imat_json(ot.B);
    mx["C"] = imat_json(ot.C);
    json rs = json::array();
    for (const auto& v : row_sums) rs.push_back(ival_json(v));
    mx["b_row_sums"] = rs;
    mx["reconstruction_residual"] = ival_json(ot.reconstruction_residual);
    rep["matrices"] = mx;
  }

  std::optional<MetricsReport> mr;
  if (m.requested("metrics")) {
    mr = classify(ot);
    json ms;
    ms["lck"] = verdict_json(mr->lck);
    ms["pluriclosed"] = verdict_json(mr->pluriclosed);
    ms["balanced"] = verdict_json(mr->balanced);
    ms["lcb"] = verdict_json(mr->lcb);
    ms["corollary_gate"] = mr->corollary_gate;
    rep["metrics"] = ms;
  }

  std::optional<CohomologyTable> ct;
  if (m.requested("cohomology")) {
    std::vector<std::pair<int, int>> pairs =
        m.hodge_pairs.empty() ? default_hodge_pairs(ot.s, ot.t) : m.hodge_pairs;
    ct = cohomology_table(ot, pairs);
    json ch;
    ch["rho2"] = ct->rho2;
    ch["rho3"] = ct->rho3;
    ch["b3"] = ct->b3;
    json hodge;
    for (const auto& [pq, dim] : ct->hodge)
      hodge["h" + std::to_string(pq.first) + "," + std::to_string(pq.second)] = dim;
    ch["hodge"] = hodge;
    rep["cohomology"] = ch;
  }

  if (m.requested("dga-verify")) rep["dga"] = dga_section(ot.s, ot.t);

  std::optional<Dim4Result> d4;
  bool want_dim4 = m.requests.empty() ? (ot.s + ot.t == 4) : m.requested("dim4");
  if (want_dim4) {
    d4 = classify_dim4(ot);
    json dj;
    dj["pluriclosed"] = d4->pluriclosed;
    dj["b3"] = d4->b3;
    dj["h21"] = d4->h21;
    dj["equivalent"] = d4->equivalent;
    rep["dim4"] = dj;
    if (!d4->equivalent)
      throw_internal("dimension-4 equivalence cross-check failed");
  }

  json cons;
  cons["b_row_sums_near_minus_one"] = true;
  cons["corollary_gate"] = mr ? json(mr->corollary_gate) : json(nullptr);
  if (mr && ct && mr->pluriclosed.exists) {
    bool ok = ct->rho2 == 0 && ct->rho3 == ot.s &&
              (!ct->hodge.count({2, 1}) || ct->hodge.at({2, 1}) == ot.s);
    if (!ok) throw_internal("pluriclosed cohomology pattern violated");
    cons["pluriclosed_cohomology_pattern"] = true;
  } else {
    cons["pluriclosed_cohomology_pattern"] = nullptr;
  }
  if (mr && d4) {
    if (d4->pluriclosed != mr->pluriclosed.exists)
      throw_internal("dimension-4 verdict disagrees with the metrics section");
    cons["dim4_matches_metrics"] = true;
  } else {
    cons["dim4_matches_metrics"] = nullptr;
  }
  rep["consistency"] = cons;

  json pj;
  pj["requested"] = static_cast<long>(m.precision);
  pj["internal"] = static_cast<long>(ot.internal);
  pj["cap"] = static_cast<long>(policy.cap);
  rep["precision"] = pj;

  if (opts.timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rep["timing"] = {{"total_ms", static_cast<long>(ms)}};
  } else {
    rep["timing"] = nullptr;
  }

  return rep.dump(2) + "\n";
}

std::string error_json(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j.dump(2) + "\n";
}

const char* bundled_dim4_manifest() {
  return R"({
  "polynomial": [1, -2, -1, 2, 0, 0, 1],
  "units": [[0, 1, 0, 0, 0, 0], [1, -1, 0, 0, 0, 0]],
  "precision": 256
})";
}

const char* bundled_surface_manifest() {
  return R"({
  "polynomial": [-1, -1, 0, 1],
  "units": [[0, 1, 0]],
  "precision": 256
})";
}

namespace {

constexpr const char* kBundledFamilySpec = R"({
  "family": {"degree": 6, "coeff_ranges": [[1,1],[-2,-2],[-1,-1],[2,2],[0,0],[0,0]]},
  "target": "pluriclosed",
  "unit_strategy": {"kind": "low_height_scan", "bound": 1},
  "limits": {"max_candidates": 10, "max_hits": 10},
  "precision": 256
})";

// Lazy per-manifest context so each checklist item fails independently.
class Ctx {
 public:
  explicit Ctx(Manifest m) : m_(std::move(m)) {}

  const Manifest& manifest() const { return m_; }
  FieldPtr field() { ensure_field(); return field_; }
  const std::vector<FieldElem>& elems() { ensure_field(); return elems_; }
  EmbeddingSystem& emb() { ensure_field(); return *emb_; }
  const OTStructure& ot() {
    ensure_field();
    if (ot_fail_) throw Error(ot_kind_, ot_err_);
    if (!ot_) {
      try {
        ot_ = OTStructure::build(field_, elems_, PrecisionPolicy::from_env(m_.precision),
                                 m_.branch);
      } catch (const Error& e) {
        ot_fail_ = true;
        ot_kind_ = e.kind();
        ot_err_ = e.what();
        throw;
      }
    }
    return *ot_;
  }

 private:
  void ensure_field() {
    if (field_fail_) throw Error(field_kind_, field_err_);
    if (field_) return;
    try {
      Poly f = Poly::from_int_coeffs(m_.polynomial);
      field_ = NumberField::make(f, m_.assert_irreducible);
      for (const auto& r : m_.units) elems_.push_back(FieldElem::from_int_coeffs(field_, r));
      emb_ = std::make_shared<EmbeddingSystem>(field_, PrecisionPolicy::from_env(m_.precision));
    } catch (const Error& e) {
      field_fail_ = true;
      field_kind_ = e.kind();
      field_err_ = e.what();
      field_.reset();
      throw;
    }
  }

  Manifest m_;
  FieldPtr field_;
  std::vector<FieldElem> elems_;
  std::shared_ptr<EmbeddingSystem> emb_;
  std::optional<OTStructure> ot_;
  bool field_fail_ = false, ot_fail_ = false;
  ErrorKind field_kind_ = ErrorKind::Internal, ot_kind_ = ErrorKind::Internal;
  std::string field_err_, ot_err_;
};

struct Checker {
  std::ostream& os;
  VerifyOutcome out;

  void item(const std::string& what, const std::function<bool()>& fn) {
    try {
      if (fn()) {
        os << "[PASS] " << what << "\n";
        ++out.passed;
      } else {
        os << "[FAIL] " << what << "\n";
        ++out.failed;
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Precision) {
        os << "[INCONCLUSIVE] " << what << " (" << e.what() << ")\n";
        ++out.inconclusive;
      } else {
        os << "[FAIL] " << what << " (" << e.kind_name() << ": " << e.what() << ")\n";
        ++out.failed;
      }
    }
  }
};

// 2 log |sigma_{s+i}(u)| at width <= 2^(-prec), i 1-based.
RIval two_log_modulus(EmbeddingSystem& emb, const FieldElem& u, int i, Prec prec) {
  for (Prec p = prec + 16;; p *= 2) {
    if (p > 64 * static_cast<Prec>(emb.policy().cap))
      throw_precision("log modulus failed to converge");
    RIval a2 = emb.embed(u, emb.s() + i, p).abs2();
    if (!a2.is_positive()) continue;
    RIval lg = a2.log();
    if (lg.width_below_2exp(-static_cast<long>(prec))) return lg;
  }
}

bool is_bijection_onto(const std::vector<int>& perm, int s) {
  if (static_cast<int>(perm.size()) != s) return false;
  std::vector<bool> seen(s, false);
  for (int v : perm) {
    if (v < 1 || v > s || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  return true;
}

}  // namespace

VerifyOutcome verify_paper_example(std::ostream& os, Prec precision,
                                   const Manifest* dim4_override) {
  Manifest ma = dim4_override ? *dim4_override
                              : Manifest::from_json_text(bundled_dim4_manifest());
  ma.precision = precision;
  Manifest mb = Manifest::from_json_text(bundled_surface_manifest());
  mb.precision = precision;

  Ctx a(std::move(ma));
  Ctx b(std::move(mb));
  Checker ck{os, {}};

  SymPoly i_half = SymPoly::from_gauss(GaussRat(Rational(0), Rational(1, 2)));
  SymPoly mi_half = SymPoly::from_gauss(GaussRat(Rational(0), Rational(-1, 2)));

  // sextic example
  ck.item("defining polynomial is monic of degree 6 with value 1 at x = 1", [&] {
    const Poly& f = a.field()->defining_poly();
    return f.degree() == 6 && f.eval(Rational(1)) == Rational(1);
  });
  ck.item("irreducibility certified by a modular witness", [&] {
    return a.field()->certificate().status == IrredStatus::Certified;
  });
  ck.item("signature is (2, 2)", [&] { return a.emb().s() == 2 && a.emb().t() == 2; });
  ck.item("generator and its reflection are units of norm 1", [&] {
    if (a.elems().size() != 2) return false;
    return a.elems()[0].norm() == Rational(1) && a.elems()[1].norm() == Rational(1);
  });
  ck.item("both real embeddings of the generator lie in (1/2, 1)", [&] {
    FieldElem gen = FieldElem::generator(a.field());
    for (int k = 1; k <= a.emb().s(); ++k) {
      RIval v = a.emb().embed_real(gen, k, 256);
      if (!v.certainly_greater(Rational(1, 2)) || !v.certainly_less(Rational(1))) return false;
    }
    return true;
  });
  ck.item("unit generators are totally positive", [&] {
    for (const auto& u : a.elems())
      if (!check_totally_positive(a.emb(), u)) return false;
    return true;
  });
  ck.item("full log image of each generator sums to zero within 2^-200", [&] {
    for (const auto& u : a.elems()) {
      std::vector<RIval> lg = l_map(a.emb(), u, 256);
      RIval sum(256);
      for (const auto& v : lg) sum = sum + v;
      for (int i = 1; i <= a.emb().t(); ++i) sum = sum + two_log_modulus(a.emb(), u, i, 256);
      if (!sum.contains(Rational(0)) || !sum.width_below_2exp(-200)) return false;
    }
    return true;
  });
  ck.item("unit pair is admissible: certified rank-2 log lattice", [&] {
    return a.ot().adm.admissible && !a.ot().adm.det.contains_zero();
  });
  ck.item("multiplicative relation with support {1, 4, 6} verified", [&] {
    ExponentVector ev = ExponentVector::from_support(6, {1, 4, 6});
    return a.emb().certify_relation(a.ot().units, ev).status == RelStatus::Verified;
  });
  ck.item("multiplicative relation with support {2, 3, 5} verified", [&] {
    ExponentVector ev = ExponentVector::from_support(6, {2, 3, 5});
    return a.emb().certify_relation(a.ot().units, ev).status == RelStatus::Verified;
  });
  ck.item("support-3 relation scan finds exactly those two relations", [&] {
    std::vector<ExponentVector> rels = a.emb().detect_relations(a.ot().units, 3);
    ExponentVector r1 = ExponentVector::from_support(6, {1, 4, 6});
    ExponentVector r2 = ExponentVector::from_support(6, {2, 3, 5});
    if (rels.size() != 2) return false;
    return (rels[0] == r1 && rels[1] == r2) || (rels[0] == r2 && rels[1] == r1);
  });
  ck.item("pluriclosed metric exists with a bijective place-matching witness", [&] {
    MetricVerdict v = decide_pluriclosed(a.ot());
    return v.exists && v.witness && is_bijection_onto(v.witness->permutation, 2);
  });
  ck.item("witness matches each complex place to the factor-exchanged real place", [&] {
    MetricVerdict v = decide_pluriclosed(a.ot());
    return v.exists && v.witness && v.witness->permutation == std::vector<int>{2, 1};
  });
  ck.item("model metric re-verified pluriclosed in the invariant calculus", [&] {
    MetricVerdict v = decide_pluriclosed(a.ot());
    return v.exists && v.witness && v.witness->dga_verified;
  });
  ck.item("no lcK metric: complex moduli relations refuted", [&] {
    MetricVerdict v = decide_lck(a.ot());
    if (v.exists) return false;
    for (const auto& [ev, rv] : v.certification)
      if (rv.status == RelStatus::Refuted) return true;
    return false;
  });
  ck.item("no balanced metric: top-degree obstruction machine-checked nonzero", [&] {
    MetricVerdict v = decide_balanced(a.ot());
    return !v.exists && v.witness && v.witness->dga_verified;
  });
  ck.item("lcb metric exists with residual verified zero and closed Lee form", [&] {
    MetricVerdict v = lcb_metric(a.ot());
    return v.exists && v.witness && v.witness->dga_verified;
  });
  ck.item("lcb exponent matrix is the negated relation matrix", [&] {
    MetricVerdict pc = decide_pluriclosed(a.ot());
    MetricVerdict v = lcb_metric(a.ot());
    if (!v.exists || !v.witness || !pc.witness) return false;
    const IMat& e = v.witness->exponents;
    const std::vector<int>& perm = pc.witness->permutation;
    for (int k = 0; k < a.ot().s; ++k)
      for (int i = 0; i < a.ot().t; ++i) {
        long expect = (k == perm[i] - 1) ? 1 : 0;
        if (!e[k][i].contains(Rational(expect))) return false;
        if (!e[k][i].width_below_2exp(-64)) return false;
      }
    return true;
  });
  ck.item("second cohomology relation counts: rho_2 = 0, rho_3 = 2", [&] {
    return count_rho(a.ot(), 2) == 0 && count_rho(a.ot(), 3) == 2;
  });
  ck.item("third Betti number equals 2 = C(s,3) + s", [&] { return betti3(a.ot()) == 2; });
  ck.item("Dolbeault dimension h^{2,1} equals 2", [&] {
    return dolbeault_dim(a.ot(), 2, 1) == 2;
  });
  ck.item("dimension-4 equivalence: pluriclosed, b_3 = 2, h^{2,1} = 2 agree", [&] {
    Dim4Result r = classify_dim4(a.ot());
    return r.equivalent && r.pluriclosed && r.b3 == 2 && r.h21 == 2;
  });

  // invariant calculus at the example signature
  ck.item("coframe differentials square to zero with free structure constants", [&] {
    StructureConstants sc = StructureConstants::symbolic(2, 2, false);
    for (int g = 0; g < 8; ++g)
      if (!d(d(InvariantForm::generator(2, 2, g), sc), sc).is_zero()) return false;
    return true;
  });
  ck.item("structure equation d omega_k = (i/2) omega_k ^ conj(omega_k)", [&] {
    StructureConstants sc = StructureConstants::symbolic(2, 2, false);
    for (int k = 1; k <= 2; ++k)
      if (d(omega(2, 2, k), sc) != omega(2, 2, k).wedge(omega_bar(2, 2, k)).scaled(i_half))
        return false;
    return true;
  });
  ck.item("top gamma block differential reduces to the alternating omega sum", [&] {
    StructureConstants sc = StructureConstants::symbolic(2, 2, true);
    InvariantForm lam = gamma_form(2, 2, 1)
                            .wedge(gamma_bar(2, 2, 1))
                            .wedge(gamma_form(2, 2, 2))
                            .wedge(gamma_bar(2, 2, 2));
    InvariantForm expect(2, 2);
    for (int k = 1; k <= 2; ++k) {
      expect += omega(2, 2, k).scaled(mi_half).wedge(lam);
      expect += omega_bar(2, 2, k).scaled(i_half).wedge(lam);
    }
    return d(lam, sc) == expect;
  });
  ck.item("dd^c of the diagonal model metric vanishes for the exchanged pattern", [&] {
    std::vector<std::vector<Rational>> swap_b = {{Rational(0), Rational(-1)},
                                                 {Rational(-1), Rational(0)}};
    std::vector<std::vector<Rational>> ident_b = {{Rational(-1), Rational(0)},
                                                  {Rational(0), Rational(-1)}};
    for (const auto& bv : {swap_b, ident_b}) {
      StructureConstants sc = StructureConstants::with_rational_b(2, 2, bv);
      if (!ddc(metric_form(2, 2, hermitian_identity(4)), sc).is_zero()) return false;
    }
    return true;
  });
  ck.item("pluriclosed obstruction vanishes exactly on {0, -1} entry patterns", [&] {
    std::vector<std::vector<Rational>> swap_b = {{Rational(0), Rational(-1)},
                                                 {Rational(-1), Rational(0)}};
    StructureConstants sc = StructureConstants::with_rational_b(2, 2, swap_b);
    PluriclosedObstruction po = pluriclosed_obstruction(sc, hermitian_symbolic(4));
    for (const auto& row : po.closed)
      for (const auto& c : row)
        if (!c.is_zero()) return false;
    std::vector<std::vector<Rational>> off_b = {{Rational(-1, 2), Rational(-1, 2)},
                                                {Rational(-1), Rational(0)}};
    StructureConstants sc2 = StructureConstants::with_rational_b(2, 2, off_b);
    // closed[i][k] tracks b[k][i]: rows of off_b are real places k
    PluriclosedObstruction po2 = pluriclosed_obstruction(sc2, hermitian_symbolic(4));
    return !po2.closed[0][0].is_zero() && po2.closed[0][1].is_zero() &&
           !po2.closed[1][0].is_zero() && po2.closed[1][1].is_zero();
  });
  ck.item("balanced obstruction coefficient is -(i/2) a(k,k) at every real place", [&] {
    StructureConstants sc = StructureConstants::symbolic(2, 2, true);
    auto av = hermitian_symbolic(4);
    BalancedObstruction bo = balanced_obstruction(sc, av);
    for (int k = 0; k < 2; ++k) {
      if (bo.m_coeff[k] != av[k][k] * mi_half) return false;
      if (bo.m_bar_coeff[k] != av[k][k] * i_half) return false;
    }
    return true;
  });
  ck.item("surface instance: balanced obstruction coefficient equals -(i/2)", [&] {
    StructureConstants sc = StructureConstants::symbolic(1, 1, true);
    BalancedObstruction bo = balanced_obstruction(sc, hermitian_identity(2));
    return bo.m_coeff[0] == mi_half && bo.m_bar_coeff[0] == i_half;
  });
  ck.item("Lee form -(i/2) sum (omega_k - conj omega_k) closed with zero residual", [&] {
    StructureConstants sc = StructureConstants::symbolic(2, 2, true);
    LcbCheck lc = verify_lcb(sc);
    InvariantForm expect(2, 2);
    for (int k = 1; k <= 2; ++k) {
      expect += omega(2, 2, k).scaled(mi_half);
      expect += omega_bar(2, 2, k).scaled(i_half);
    }
    return lc.verified && lc.residual.is_zero() && lc.lee_closed && lc.theta0 == expect;
  });

  // cubic surface example
  ck.item("cubic field has signature (1, 1) and the generator is a norm-1 unit", [&] {
    return b.emb().s() == 1 && b.emb().t() == 1 && b.elems().size() == 1 &&
           b.elems()[0].norm() == Rational(1);
  });
  ck.item("relation matrix is [[-1]] within 2^-200", [&] {
    const RIval& v = b.ot().B[0][0];
    return v.contains(Rational(-1)) && v.width_below_2exp(-200);
  });
  ck.item("lcK and pluriclosed both exist at the surface signature", [&] {
    MetricVerdict lk = decide_lck(b.ot());
    MetricVerdict pc = decide_pluriclosed(b.ot());
    return lk.exists && pc.exists && pc.witness &&
           pc.witness->permutation == std::vector<int>{1};
  });
  ck.item("surface coexistence passes the compatibility gate", [&] {
    MetricsReport r = classify(b.ot());
    return r.corollary_gate;
  });
  ck.item("surface has no balanced metric but an lcb metric", [&] {
    return !decide_balanced(b.ot()).exists && lcb_metric(b.ot()).exists;
  });
  ck.item("surface relation counts: rho_3 = 1, b_3 = 1", [&] {
    return count_rho(b.ot(), 3) == 1 && betti3(b.ot()) == 1;
  });
  ck.item("surface Hodge dimensions: h^{0,0} = 1 and h^{2,1} = 1", [&] {
    return dolbeault_dim(b.ot(), 0, 0) == 1 && dolbeault_dim(b.ot(), 2, 1) == 1;
  });

  // one-member family search
  ck.item("bundled one-member family search certifies exactly one pluriclosed hit", [&] {
    SearchSpec spec = search_spec_from_json(kBundledFamilySpec);
    std::ostringstream lines;
    SearchOutcome so = run_search(spec, lines);
    if (so.hits != 1 || !so.exhausted) return false;
    std::istringstream in(lines.str());
    std::string line;
    while (std::getline(in, line)) {
      json j = json::parse(line);
      if (j["event"] != "hit") continue;
      if (j["units"] != json::parse("[[0,1,0,0,0,0],[1,-1,0,0,0,0]]")) return false;
      if (j["witness_permutation"] != json::parse("[2,1]")) return false;
      return true;
    }
    return false;
  });

  return ck.out;
}

}  // namespace otlab
