#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "otlab/numfield.hpp"
#include "otlab/rootisol.hpp"

namespace otlab {

struct PrecisionPolicy {
  Prec initial = 256;
  Prec cap = 16384;
  // Reads OTLAB_PRECISION_CAP; the certification ladder always starts at
  // max(64, initial) and doubles up to the cap.
  static PrecisionPolicy from_env(Prec initial = 256);
};

// Exponent vector over the canonical embedding order: indices 1..s are the
// real embeddings ascending, s+1..s+t the upper-half-plane representatives by
// (Re, Im), s+t+1..s+2t their conjugates in matching order.
struct ExponentVector {
  std::vector<long> e;

  ExponentVector() = default;
  explicit ExponentVector(std::vector<long> v) : e(std::move(v)) {}
  static ExponentVector from_support(int length, const std::vector<int>& support_1based);

  long abs_sum() const;
  bool is_zero() const;
  std::vector<int> support_1based() const;
  bool operator==(const ExponentVector& o) const = default;
  bool operator<(const ExponentVector& o) const { return e < o.e; }
};

enum class RelStatus { Verified, Refuted, Inconclusive };

const char* rel_status_name(RelStatus s);

struct RelationVerdict {
  RelStatus status = RelStatus::Inconclusive;
  Prec precision_used = 0;
  // Verified: certified upper bound on max over generators of |prod - 1|.
  // Refuted: certified positive lower bound on |prod - 1| for the generator
  // named in detail. Inconclusive: the last upper bound reached.
  std::string residual_bound;
  std::string detail;
};

class EmbeddingSystem {
public:
  explicit EmbeddingSystem(FieldPtr field, PrecisionPolicy policy = PrecisionPolicy::from_env());

  int s() const { return s_; }
  int t() const { return t_; }
  int n() const { return s_ + 2 * t_; }
  const FieldPtr& field() const { return field_; }
  const PrecisionPolicy& policy() const { return policy_; }

  // 1-based canonical index; the result has width at most 2^(-prec).
  CIval embed(const FieldElem& a, int index, Prec prec) const;
  RIval embed_real(const FieldElem& a, int k, Prec prec) const;

  RelationVerdict certify_relation(const std::vector<FieldElem>& units,
                                   const ExponentVector& ev) const;

  // All nonzero vectors with entries in {0..exponent_bound} and support size
  // at most max_support whose relation certifies as Verified. Exhaustive
  // enumeration in lexicographic support order. Inconclusive aborts.
  std::vector<ExponentVector> detect_relations(const std::vector<FieldElem>& units,
                                               int max_support, long exponent_bound = 1) const;

private:
  FieldPtr field_;
  PrecisionPolicy policy_;
  int s_ = 0, t_ = 0;
  mutable std::mutex mu_;
  mutable RootEnclosures roots_;
  mutable long root_bits_ = 0;

  CIval enclosure_for(int index, long bits) const;  // takes the lock
  void validate_elem(const FieldElem& a) const;
};

}  // namespace otlab
