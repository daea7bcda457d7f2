#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otlab/interval.hpp"

namespace otlab {

// Input description of one manifold: monic integer polynomial (constant term
// first) plus unit generator reps in the power basis. Empty requests means
// every applicable section; empty hodge_pairs means the default (p, q) set;
// empty branch means all principal arguments.
struct Manifest {
  std::vector<long> polynomial;
  std::vector<std::vector<long>> units;
  Prec precision = 256;
  std::vector<std::string> requests;
  std::vector<std::pair<int, int>> hodge_pairs;
  bool assert_irreducible = false;
  std::vector<long> branch;

  // Strict parse: unknown keys, wrong types, or out-of-range precision throw
  // input errors. Request names are validated against the known section set.
  static Manifest from_json_text(const std::string& text);

  std::string to_json_text() const;

  // True when `what` is requested, treating an empty list as "all sections
  // except dim4", which is auto-enabled only at complex dimension 4.
  bool requested(const std::string& what) const;
};

}  // namespace otlab
