#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otlab/otstruct.hpp"

namespace otlab {

enum class MetricKind { LcK, Pluriclosed, Balanced, Lcb };

const char* metric_kind_name(MetricKind k);

struct MetricWitness {
  // Pluriclosed: k_i per complex place i = 1..t, a bijection into {1..s}.
  std::vector<int> permutation;
  // Lcb: s x t enclosures of -B, the coordinate-metric exponents.
  IMat exponents;
  std::string lee_form;
  // Outcome of the symbolic re-verification backing the witness.
  bool dga_verified = false;
};

struct MetricVerdict {
  MetricKind kind = MetricKind::LcK;
  bool exists = false;
  std::optional<MetricWitness> witness;
  std::vector<std::pair<ExponentVector, RelationVerdict>> certification;
  std::string note;
};

// Equal moduli at all complex places for every generator, decided by
// certified pair relations and cross-checked against column equality of B.
MetricVerdict decide_lck(const OTStructure& ot);

// s = t and every column of B a negated standard basis vector, certified by
// exact unit relations; the witness permutation records the relabeling and
// the model metric is re-verified symbolically.
MetricVerdict decide_pluriclosed(const OTStructure& ot);

// Never exists; the verdict carries the symbolic obstruction check for this
// signature as a machine-checked witness.
MetricVerdict decide_balanced(const OTStructure& ot);

// Always exists; the witness carries the Lee form and the exponent matrix -B.
MetricVerdict lcb_metric(const OTStructure& ot);

// Both lcK and pluriclosed force a surface: false only in that violation.
bool corollary_gate(bool lck, bool pluriclosed, int s, int t);

struct MetricsReport {
  MetricVerdict lck;
  MetricVerdict pluriclosed;
  MetricVerdict balanced;
  MetricVerdict lcb;
  bool corollary_gate = false;
};

// All four verdicts; a corollary gate violation raises an internal error.
MetricsReport classify(const OTStructure& ot);

struct Dim4Result {
  bool pluriclosed = false;
  long b3 = 0;
  long h21 = 0;
  bool equivalent = false;
};

// Requires s + t = 4. The three conditions are computed independently;
// equivalent records whether (b3 = 2) and (h21 = 2) both match the verdict.
Dim4Result classify_dim4(const OTStructure& ot);

}  // namespace otlab
