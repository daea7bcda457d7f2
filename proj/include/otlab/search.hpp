#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otlab/otstruct.hpp"

namespace otlab {

struct UnitCandidate {
  FieldElem u;
  bool squared = false;  // normalization u -> u^2 was applied
};

// Elements with rep coefficients in [-bound, bound] and |norm| = 1, made
// totally positive by squaring when some real embedding is negative. The
// constant 1 is dropped, duplicates removed, result sorted by
// (sum of |coefficients|, rep degree, lexicographic coefficients).
std::vector<UnitCandidate> candidate_units(const EmbeddingSystem& emb, long bound);

// First certified-admissible s-subset in lexicographic index order.
std::optional<std::vector<UnitCandidate>> assemble_admissible(
    const EmbeddingSystem& emb, const std::vector<UnitCandidate>& cands);

struct SearchFamily {
  int degree = 0;
  // Inclusive range per coefficient slot, constant term first; the leading
  // coefficient is always 1. Slot 0 is the fastest-moving odometer digit.
  std::vector<std::pair<long, long>> coeff_ranges;
};

struct SearchLimits {
  long max_candidates = -1;  // total polynomials examined; -1 = unbounded
  long max_hits = -1;
};

struct SearchSpec {
  SearchFamily family;
  std::string target = "pluriclosed";  // or "lcK"
  long unit_bound = 1;
  // Nonempty selects the given-list strategy instead of the low-height scan.
  std::vector<std::vector<long>> given_units;
  SearchLimits limits;
  Prec precision = 256;
};

SearchSpec search_spec_from_json(const std::string& text);

struct SearchOptions {
  std::string checkpoint_path;  // empty disables checkpointing
  bool resume = false;
  int jobs = 1;
  long run_budget = -1;  // candidates processed this invocation; -1 = all
};

struct SearchOutcome {
  long examined = 0;  // cumulative across resumed runs
  long hits = 0;
  bool exhausted = false;  // family fully scanned or a global cap reached
};

// Streams one JSON line per examined polynomial (a hit record or a skip
// record with its reason) in family order; output is byte-identical for any
// jobs value. Every hit is re-verified at doubled precision before emission.
// At most one hit per field: the first certified unit subset in canonical
// order.
SearchOutcome run_search(const SearchSpec& spec, std::ostream& out,
                         const SearchOptions& opts = {});

}  // namespace otlab
