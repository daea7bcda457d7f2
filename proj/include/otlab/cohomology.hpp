#pragma once

#include <map>
#include <utility>
#include <vector>

#include "otlab/otstruct.hpp"

namespace otlab {

// Number of unordered k-subsets of the embedding indices 1..s+2t whose
// product of images equals 1 on every unit generator; k in {2, 3}. Every
// membership is certified, an undecided relation raises a precision error.
long count_rho(const OTStructure& ot, int k);

// b_3 = C(s,3) + s rho_2 + rho_3.
long betti3(const OTStructure& ot);

// Invariant Dolbeault dimension: sum over i + j = q of C(s,i) times the
// number of pairs I in {1..s+t} with |I| = p, J in {1..t} with |J| = j such
// that the product of sigma over I times the product of the conjugate
// embeddings s+t+j over J is identically 1 on the unit group.
long dolbeault_dim(const OTStructure& ot, int p, int q);

struct CohomologyTable {
  long rho2 = 0;
  long rho3 = 0;
  long b3 = 0;
  std::map<std::pair<int, int>, long> hodge;
};

// Hodge entries computed for exactly the requested (p, q) pairs.
CohomologyTable cohomology_table(const OTStructure& ot,
                                 const std::vector<std::pair<int, int>>& pairs);

// CLI default request: all pairs with p + q <= 3.
std::vector<std::pair<int, int>> default_hodge_pairs(int s, int t);

}  // namespace otlab
