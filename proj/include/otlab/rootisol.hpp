#pragma once

#include <vector>

#include "otlab/interval.hpp"
#include "otlab/poly.hpp"

namespace otlab {

// Interval Horner evaluation; coefficients rounded at the argument precision.
RIval eval_poly(const Poly& f, const RIval& x);
CIval eval_poly(const Poly& f, const CIval& z);

// Certified enclosures for all roots of a squarefree polynomial, widths at
// most 2^(-prec). real_roots ascending; complex_reps are the upper-half-plane
// representatives sorted by (Re, Im), one per conjugate pair.
struct RootEnclosures {
  std::vector<RIval> real_roots;
  std::vector<CIval> complex_reps;
};

RootEnclosures isolate_roots(const Poly& f, Prec prec);

// In-place refinement to width <= 2^(-target); the enclosure must isolate a
// simple root of f.
void refine_real_root(const Poly& f, RIval& enc, long target);
void refine_complex_root(const Poly& f, CIval& enc, long target);

namespace sturm {
std::vector<Poly> chain(const Poly& f);
int variations_at(const std::vector<Poly>& ch, const Rational& x);
// number of roots in (a, b]; endpoints must not be roots of f
long count_in(const std::vector<Poly>& ch, const Rational& a, const Rational& b);
long count_real_roots(const Poly& f);
}  // namespace sturm

}  // namespace otlab
