#include <string>
#include <vector>

#include "doctest.h"
#include "otlab/errors.hpp"
#include "otlab/metrics.hpp"

using namespace otlab;

namespace {

OTStructure sextic_structure() {
  FieldPtr k = NumberField::make(Poly::from_int_coeffs({1, -2, -1, 2, 0, 0, 1}));
  FieldElem alpha = FieldElem::generator(k);
  return OTStructure::build(k, {alpha, FieldElem::one(k) - alpha});
}

OTStructure principal_structure(std::vector<long> coeffs) {
  FieldPtr k = NumberField::make(Poly::from_int_coeffs(std::move(coeffs)));
  return OTStructure::build(k, {FieldElem::generator(k)});
}

}  // namespace

TEST_CASE("metric kind names") {
  CHECK(std::string(metric_kind_name(MetricKind::LcK)) == "lcK");
  CHECK(std::string(metric_kind_name(MetricKind::Pluriclosed)) == "pluriclosed");
  CHECK(std::string(metric_kind_name(MetricKind::Balanced)) == "balanced");
  CHECK(std::string(metric_kind_name(MetricKind::Lcb)) == "lcb");
}

TEST_CASE("surface case admits lcK and pluriclosed together") {
  OTStructure ot = principal_structure({-1, -1, 0, 1});
  CHECK(ot.s == 1);
  CHECK(ot.t == 1);

  MetricVerdict lck = decide_lck(ot);
  CHECK(lck.exists);
  CHECK(lck.note.find("vacuous") != std::string::npos);
  CHECK(lck.certification.empty());

  MetricVerdict pc = decide_pluriclosed(ot);
  CHECK(pc.exists);
  REQUIRE(pc.witness.has_value());
  CHECK(pc.witness->permutation == std::vector<int>{1});
  CHECK(pc.witness->dga_verified);
  REQUIRE(pc.certification.size() == 1);
  CHECK(pc.certification[0].first == ExponentVector::from_support(3, {1, 2, 3}));
  CHECK(pc.certification[0].second.status == RelStatus::Verified);

  MetricVerdict bal = decide_balanced(ot);
  CHECK(!bal.exists);
  REQUIRE(bal.witness.has_value());
  CHECK(bal.witness->dga_verified);

  MetricVerdict lcb = lcb_metric(ot);
  CHECK(lcb.exists);
  REQUIRE(lcb.witness.has_value());
  CHECK(lcb.witness->dga_verified);
  REQUIRE(lcb.witness->exponents.size() == 1);
  CHECK(lcb.witness->exponents[0][0].contains(Rational(1)));

  MetricsReport rep = classify(ot);
  CHECK(rep.lck.exists);
  CHECK(rep.pluriclosed.exists);
  CHECK(!rep.balanced.exists);
  CHECK(rep.lcb.exists);
  CHECK(rep.corollary_gate);
}

TEST_CASE("the sextic example is pluriclosed but not lcK") {
  OTStructure ot = sextic_structure();

  MetricVerdict lck = decide_lck(ot);
  CHECK(!lck.exists);
  CHECK(lck.note.find("moduli differ") != std::string::npos);
  REQUIRE(lck.certification.size() == 1);
  CHECK(lck.certification[0].second.status == RelStatus::Refuted);

  MetricVerdict pc = decide_pluriclosed(ot);
  CHECK(pc.exists);
  REQUIRE(pc.witness.has_value());
  CHECK(pc.witness->permutation == std::vector<int>{2, 1});
  CHECK(pc.witness->dga_verified);
  CHECK(pc.certification.size() == 2);
  for (const auto& [ev, rv] : pc.certification) CHECK(rv.status == RelStatus::Verified);

  MetricVerdict lcb = lcb_metric(ot);
  REQUIRE(lcb.witness.has_value());
  CHECK(!lcb.witness->lee_form.empty());
  const IMat& e = lcb.witness->exponents;
  REQUIRE(e.size() == 2);
  // exponents are -B, and the permutation slots carry the ones
  CHECK(e[0][0].contains(Rational(0)));
  CHECK(e[0][1].contains(Rational(1)));
  CHECK(e[1][0].contains(Rational(1)));
  CHECK(e[1][1].contains(Rational(0)));
  for (int i = 0; i < 2; ++i) {
    int k = pc.witness->permutation[i] - 1;
    CHECK(e[k][i].contains(Rational(1)));
    CHECK(e[k][i].width_below_2exp(-64));
  }

  MetricsReport rep = classify(ot);
  CHECK(!rep.lck.exists);
  CHECK(rep.pluriclosed.exists);
  CHECK(!rep.balanced.exists);
  CHECK(rep.lcb.exists);
  CHECK(rep.corollary_gate);
}

TEST_CASE("unequal place counts exclude pluriclosed without certification work") {
  OTStructure ot = principal_structure({-1, -1, 0, 0, 0, 1});
  CHECK(ot.s == 1);
  CHECK(ot.t == 2);

  MetricVerdict pc = decide_pluriclosed(ot);
  CHECK(!pc.exists);
  CHECK(pc.note.find("s != t") != std::string::npos);
  CHECK(pc.certification.empty());
  CHECK(!pc.witness.has_value());

  MetricVerdict lck = decide_lck(ot);
  CHECK(!lck.exists);
  REQUIRE(lck.certification.size() == 1);
  CHECK(lck.certification[0].second.status == RelStatus::Refuted);

  CHECK(!decide_balanced(ot).exists);
  CHECK(lcb_metric(ot).exists);
  CHECK(classify(ot).corollary_gate);
}

TEST_CASE("corollary gate truth table") {
  CHECK(corollary_gate(true, true, 1, 1));
  CHECK(!corollary_gate(true, true, 2, 2));
  CHECK(!corollary_gate(true, true, 1, 2));
  CHECK(corollary_gate(true, false, 2, 2));
  CHECK(corollary_gate(false, true, 2, 2));
  CHECK(corollary_gate(false, false, 3, 1));
}

TEST_CASE("dimension-four equivalence") {
  SUBCASE("the pluriclosed side") {
    Dim4Result r = classify_dim4(sextic_structure());
    CHECK(r.pluriclosed);
    CHECK(r.b3 == 2);
    CHECK(r.h21 == 2);
    CHECK(r.equivalent);
  }
  SUBCASE("the obstructed side") {
    Dim4Result r = classify_dim4(principal_structure({-1, -1, 0, 0, 0, 0, 0, 1}));
    CHECK(!r.pluriclosed);
    CHECK(r.b3 == 0);
    CHECK(r.h21 == 0);
    CHECK(r.equivalent);
  }
  SUBCASE("other dimensions are rejected") {
    OTStructure ot = principal_structure({-1, -1, 0, 0, 0, 1});
    try {
      classify_dim4(ot);
      FAIL("expected a domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Domain);
    }
  }
}
