#include "otlab/cohomology.hpp"

#include <algorithm>
#include <functional>

#include "otlab/errors.hpp"

namespace otlab {

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Lexicographic enumeration of k-subsets of {1..m}, 1-based members.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    fn(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == m - (k - 1 - p)) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

bool relation_holds(const OTStructure& ot, const ExponentVector& ev, const char* what) {
  RelationVerdict v = ot.emb->certify_relation(ot.units, ev);
  if (v.status == RelStatus::Inconclusive)
    throw_precision(std::string(what) + " relation undecided at the precision cap: " + v.detail);
  return v.status == RelStatus::Verified;
}

}  // namespace

long count_rho(const OTStructure& ot, int k) {
  if (k != 2 && k != 3) throw_domain("count_rho expects subset size 2 or 3");
  int m = ot.s + 2 * ot.t;
  long count = 0;
  for_each_subset(m, k, [&](const std::vector<int>& sub) {
    ExponentVector ev = ExponentVector::from_support(m, sub);
    if (relation_holds(ot, ev, "index-subset")) ++count;
  });
  return count;
}

long betti3(const OTStructure& ot) {
  return binom(ot.s, 3) + ot.s * count_rho(ot, 2) + count_rho(ot, 3);
}

long dolbeault_dim(const OTStructure& ot, int p, int q) {
  int s = ot.s, t = ot.t, n = s + t, m = s + 2 * t;
  if (p < 0 || q < 0 || p > n || q > n)
    throw_domain("Hodge indices must lie in 0..s+t");
  long total = 0;
  for (int j = std::max(0, q - s); j <= std::min(t, q); ++j) {
    int i = q - j;
    long pairs = 0;
    for_each_subset(n, p, [&](const std::vector<int>& isub) {
      for_each_subset(t, j, [&](const std::vector<int>& jsub) {
        std::vector<long> e(m, 0);
        for (int idx : isub) e[idx - 1] += 1;
        for (int jj : jsub) e[s + t + jj - 1] += 1;
        if (relation_holds(ot, ExponentVector(std::move(e)), "Dolbeault")) ++pairs;
      });
    });
    total += pairs * binom(s, i);
  }
  return total;
}

CohomologyTable cohomology_table(const OTStructure& ot,
                                 const std::vector<std::pair<int, int>>& pairs) {
  CohomologyTable tab;
  tab.rho2 = count_rho(ot, 2);
  tab.rho3 = count_rho(ot, 3);
  tab.b3 = binom(ot.s, 3) + ot.s * tab.rho2 + tab.rho3;
  for (const auto& [p, q] : pairs) tab.hodge[{p, q}] = dolbeault_dim(ot, p, q);
  return tab;
}

std::vector<std::pair<int, int>> default_hodge_pairs(int s, int t) {
  int n = s + t;
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p <= std::min(n, 3); ++p)
    for (int q = 0; q <= std::min(n, 3 - p); ++q) out.emplace_back(p, q);
  return out;
}

}  // namespace otlab
