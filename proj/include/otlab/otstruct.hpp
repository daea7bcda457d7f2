#pragma once

#include <memory>
#include <vector>

#include "otlab/embeddings.hpp"

namespace otlab {

using IMat = std::vector<std::vector<RIval>>;

struct AdmissibilityCert {
  bool admissible = false;
  RIval det;         // certified enclosure of det of the log lattice
  std::string note;  // exact dependency witness when rank drop was proven
};

// Certified sign of every real embedding; escalates up to the policy cap.
bool check_totally_positive(const EmbeddingSystem& emb, const FieldElem& u);

// (log sigma_1(u), ..., log sigma_s(u)); u totally positive. Each component
// has width at most 2^(-prec).
std::vector<RIval> l_map(const EmbeddingSystem& emb, const FieldElem& u, Prec prec);

// Exact small-power dependency screen plus a certified determinant. False
// only with an exact witness; a determinant interval still containing zero
// at the cap raises a precision error, never a silent pass.
AdmissibilityCert check_admissible(const EmbeddingSystem& emb,
                                   const std::vector<FieldElem>& units);

// s x t solution of sum_k L[j][k] b_ki = 2 log|sigma_{s+i}(u_j)|.
IMat compute_b_matrix(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec);

// s x t solution of sum_k L[j][k] c_ki = Arg sigma_{s+i}(u_j) + 2 pi m_ji,
// with the branch offsets m_ji given row-major per (unit, complex place).
IMat compute_c_matrix(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec,
                      const std::vector<long>& branch);

struct OTStructure {
  FieldPtr field;
  std::shared_ptr<EmbeddingSystem> emb;
  std::vector<FieldElem> units;
  int s = 0, t = 0;
  Prec prec = 256;      // requested working precision
  Prec internal = 512;  // precision the matrices were computed at
  std::vector<long> branch;
  IMat L;  // s x s, L[j][k] = log sigma_{k+1}(u_{j+1})
  IMat B;  // s x t
  IMat C;  // s x t
  AdmissibilityCert adm;
  RIval reconstruction_residual;  // certified max over (unit, place)

  // Validates the signature, unit count, norms, positivity, admissibility;
  // computes L, B, C and the reconstruction check.
  static OTStructure build(FieldPtr field, std::vector<FieldElem> units,
                           PrecisionPolicy policy = PrecisionPolicy::from_env(),
                           std::vector<long> branch = {});
};

// Interval Gaussian elimination with certified pivots. X solves A X = RHS;
// det receives the determinant enclosure. Throws a precision error when a
// pivot interval straddles zero.
IMat solve_linear(const IMat& a, const IMat& rhs, RIval& det);

}  // namespace otlab
