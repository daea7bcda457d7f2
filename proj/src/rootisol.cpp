#include "otlab/rootisol.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "otlab/errors.hpp"

namespace otlab {

RIval eval_poly(const Poly& f, const RIval& x) {
  Prec p = x.precision();
  RIval acc(p);
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RIval::from_rational(*it, p);
  return acc;
}

CIval eval_poly(const Poly& f, const CIval& z) {
  Prec p = z.precision();
  CIval acc{RIval(p), RIval(p)};
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + CIval::from_rational(*it, p);
  return acc;
}

namespace sturm {

std::vector<Poly> chain(const Poly& f) {
  std::vector<Poly> ch;
  ch.push_back(f);
  Poly d = f.derivative();
  if (d.is_zero()) return ch;
  ch.push_back(d);
  while (true) {
    const Poly& a = ch[ch.size() - 2];
    const Poly& b = ch[ch.size() - 1];
    Poly r = a.mod(b);
    if (r.is_zero()) break;
    ch.push_back(-r);
    if (ch.back().degree() == 0) break;
  }
  return ch;
}

int variations_at(const std::vector<Poly>& ch, const Rational& x) {
  int var = 0, last = 0;
  for (const Poly& p : ch) {
    Rational v = p.eval(x);
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

long count_in(const std::vector<Poly>& ch, const Rational& a, const Rational& b) {
  return variations_at(ch, a) - variations_at(ch, b);
}

long count_real_roots(const Poly& f) {
  if (f.degree() <= 0) return 0;
  auto ch = chain(f);
  Rational bound(1);
  for (const auto& c : f.coeffs()) {
    Rational r = abs(c / f.leading());
    if (r > bound) bound = r;
  }
  bound += 1;
  return count_in(ch, -bound, bound);
}

}  // namespace sturm

namespace {

// Midpoint of (a,b) that is not a root of f; tries skewed cut points.
Rational non_root_cut(const Poly& f, const Rational& a, const Rational& b) {
  static const int nums[] = {1, 1, 2, 3, 2, 5};
  static const int dens[] = {2, 3, 3, 5, 5, 7};
  for (size_t i = 0; i < sizeof(nums) / sizeof(nums[0]); ++i) {
    Rational m = a + (b - a) * Rational(nums[i], dens[i]);
    if (f.eval(m) != 0) return m;
  }
  throw_internal("could not find a non-root cut point");
}

struct RatInterval {
  Rational a, b;
  long count;
};

// Exact bisection of [a,b] containing one simple root with sign(f(a)) !=
// sign(f(b)), down to width <= 2^(-bits).
void bisect_rational(const Poly& f, Rational& a, Rational& b, long bits) {
  Rational width = b - a;
  Rational target(Integer(1), Integer(1) << std::min<long>(bits, 62));
  for (long i = std::min<long>(bits, 62); i < bits; ++i) target /= 2;
  int sa = sgn(f.eval(a));
  while (b - a > target) {
    Rational m = (a + b) / 2;
    Rational fm = f.eval(m);
    if (fm == 0) {
      // rational root hit; collapse
      a = m;
      b = m;
      return;
    }
    if (sgn(fm) == sa)
      a = m;
    else
      b = m;
  }
}

// One certified interval Newton contraction step; returns false when the
// derivative box straddles zero or the intersection fails to shrink.
bool newton_step_real(const Poly& f, const Poly& fd, RIval& x) {
  RIval dfx = eval_poly(fd, x);
  if (dfx.contains_zero()) return false;
  RIval m = x.midpoint();
  RIval fm = eval_poly(f, m);
  RIval n = m - fm / dfx;
  RIval out;
  if (!RIval::intersect(n, x, out)) throw_internal("Newton step lost the real root");
  double before = x.width_log2(), after = out.width_log2();
  x = std::move(out);
  return after < before - 0.5;
}

bool newton_step_complex(const Poly& f, const Poly& fd, CIval& z) {
  CIval dfz = eval_poly(fd, z);
  if (dfz.abs2().contains_zero()) return false;
  CIval m(z.re.midpoint(), z.im.midpoint());
  CIval fm = eval_poly(f, m);
  CIval n = m - fm / dfz;
  RIval re_out, im_out;
  if (!RIval::intersect(n.re, z.re, re_out) || !RIval::intersect(n.im, z.im, im_out))
    throw_internal("Newton step lost the complex root");
  double before = std::max(z.re.width_log2(), z.im.width_log2());
  double after = std::max(re_out.width_log2(), im_out.width_log2());
  z = CIval(std::move(re_out), std::move(im_out));
  return after < before - 0.5;
}

}  // namespace

void refine_real_root(const Poly& f, RIval& enc, long target) {
  if (enc.width_below_2exp(-target)) return;
  Poly fd = f.derivative();
  Prec work = std::max<Prec>(enc.precision(), target + 64);
  RIval x = enc.rounded_to(work);
  int stalls = 0;
  while (!x.width_below_2exp(-target)) {
    if (newton_step_real(f, fd, x)) {
      stalls = 0;
      continue;
    }
    if (++stalls > 4) {
      // exact bisection fallback: rebuild from dyadic endpoints
      mpq_class a, b;
      mpfr_get_q(a.get_mpq_t(), x.lo());
      mpfr_get_q(b.get_mpq_t(), x.hi());
      if (a == b) break;
      bisect_rational(f, a, b, target + 4);
      x = RIval::hull(RIval::from_rational(a, work), RIval::from_rational(b, work));
      stalls = 0;
    } else {
      work *= 2;
      x = x.rounded_to(work);
    }
  }
  enc = std::move(x);
}

void refine_complex_root(const Poly& f, CIval& enc, long target) {
  if (enc.width_below_2exp(-target)) return;
  Poly fd = f.derivative();
  Prec work = std::max<Prec>(enc.precision(), target + 64);
  CIval z(enc.re.rounded_to(work), enc.im.rounded_to(work));
  int stalls = 0;
  while (!z.width_below_2exp(-target)) {
    if (newton_step_complex(f, fd, z)) {
      stalls = 0;
      continue;
    }
    work *= 2;
    z = CIval(z.re.rounded_to(work), z.im.rounded_to(work));
    if (++stalls > 24) throw_precision("complex root refinement stalled");
  }
  enc = std::move(z);
}

namespace {

// Newton-polish a double estimate at MPFR point precision, then certify a
// surrounding box by Newton contraction: K(X) strictly inside X proves a
// unique simple root in X.
bool certify_complex_box(const Poly& f, const Poly& fd, std::complex<double> est, Prec work,
                         CIval& out) {
  mpfr_t re, im, t1, t2, t3, t4, d;
  mpfr_inits2(work, re, im, t1, t2, t3, t4, d, (mpfr_ptr) nullptr);
  mpfr_set_d(re, est.real(), MPFR_RNDN);
  mpfr_set_d(im, est.imag(), MPFR_RNDN);

  // point Newton iterations, non-certified
  long iters = 8 + static_cast<long>(std::log2(static_cast<double>(work)));
  std::vector<Rational> fc = f.coeffs(), dc = fd.coeffs();
  for (long it = 0; it < iters; ++it) {
    // Horner for f and f' at (re, im), plain rounding
    mpfr_set_zero(t1, 1);
    mpfr_set_zero(t2, 1);  // f value
    mpfr_set_zero(t3, 1);
    mpfr_set_zero(t4, 1);  // f' value
    for (auto it2 = fc.rbegin(); it2 != fc.rend(); ++it2) {
      // (t1 + i t2) = (t1 + i t2)*(re + i im) + c
      mpfr_mul(d, t1, re, MPFR_RNDN);
      mpfr_fms(d, t2, im, d, MPFR_RNDN);
      mpfr_neg(d, d, MPFR_RNDN);  // new real = t1*re - t2*im
      mpfr_mul(t2, t2, re, MPFR_RNDN);
      mpfr_fma(t2, t1, im, t2, MPFR_RNDN);
      mpfr_swap(t1, d);
      mpfr_add_q(t1, t1, it2->get_mpq_t(), MPFR_RNDN);
    }
    for (auto it2 = dc.rbegin(); it2 != dc.rend(); ++it2) {
      mpfr_mul(d, t3, re, MPFR_RNDN);
      mpfr_fms(d, t4, im, d, MPFR_RNDN);
      mpfr_neg(d, d, MPFR_RNDN);
      mpfr_mul(t4, t4, re, MPFR_RNDN);
      mpfr_fma(t4, t3, im, t4, MPFR_RNDN);
      mpfr_swap(t3, d);
      mpfr_add_q(t3, t3, it2->get_mpq_t(), MPFR_RNDN);
    }
    // delta = f/f'; z -= delta
    mpfr_mul(d, t3, t3, MPFR_RNDN);
    mpfr_fma(d, t4, t4, d, MPFR_RNDN);
    if (mpfr_zero_p(d)) break;
    // (t1 + i t2)/(t3 + i t4) = ((t1 t3 + t2 t4) + i(t2 t3 - t1 t4))/d
    mpfr_t nr, ni;
    mpfr_inits2(work, nr, ni, (mpfr_ptr) nullptr);
    mpfr_mul(nr, t1, t3, MPFR_RNDN);
    mpfr_fma(nr, t2, t4, nr, MPFR_RNDN);
    mpfr_div(nr, nr, d, MPFR_RNDN);
    mpfr_mul(ni, t2, t3, MPFR_RNDN);
    mpfr_fms(ni, t1, t4, ni, MPFR_RNDN);
    mpfr_neg(ni, ni, MPFR_RNDN);
    mpfr_div(ni, ni, d, MPFR_RNDN);
    mpfr_sub(re, re, nr, MPFR_RNDN);
    mpfr_sub(im, im, ni, MPFR_RNDN);
    mpfr_clears(nr, ni, (mpfr_ptr) nullptr);
  }

  // candidate box: polished point +- 2^(-work/3)
  mpfr_t rad;
  mpfr_init2(rad, 32);
  mpfr_set_ui_2exp(rad, 1, -static_cast<long>(work) / 3, MPFR_RNDN);
  bool ok = false;
  for (int infl = 0; infl < 6 && !ok; ++infl) {
    mpfr_t alo, ahi, blo, bhi;
    mpfr_inits2(work, alo, ahi, blo, bhi, (mpfr_ptr) nullptr);
    mpfr_sub(alo, re, rad, MPFR_RNDD);
    mpfr_add(ahi, re, rad, MPFR_RNDU);
    mpfr_sub(blo, im, rad, MPFR_RNDD);
    mpfr_add(bhi, im, rad, MPFR_RNDU);
    CIval box(RIval::hull_of(alo, ahi, work), RIval::hull_of(blo, bhi, work));
    mpfr_clears(alo, ahi, blo, bhi, (mpfr_ptr) nullptr);

    CIval dfz = eval_poly(fd, box);
    if (!dfz.abs2().contains_zero()) {
      CIval m(box.re.midpoint(), box.im.midpoint());
      CIval k = m - eval_poly(f, m) / dfz;
      if (box.re.strictly_contains_interval(k.re) && box.im.strictly_contains_interval(k.im)) {
        out = std::move(k);
        ok = true;
      }
    }
    mpfr_mul_ui(rad, rad, 16, MPFR_RNDU);
  }
  mpfr_clears(re, im, t1, t2, t3, t4, d, rad, (mpfr_ptr) nullptr);
  return ok;
}

}  // namespace

RootEnclosures isolate_roots(const Poly& f, Prec prec) {
  if (f.degree() < 1) throw_domain("root isolation needs degree >= 1");
  if (!f.is_squarefree()) throw_domain("root isolation needs a squarefree polynomial");

  RootEnclosures out;
  int n = f.degree();

  // real part: Sturm bisection to isolating rational intervals
  auto ch = sturm::chain(f);
  Rational bound(1);
  for (const auto& c : f.coeffs()) {
    Rational r = abs(c / f.leading());
    if (r > bound) bound = r;
  }
  bound += 1;
  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<Rational> exact_roots;
  std::vector<RatInterval> work_stack;
  long total = sturm::count_in(ch, -bound, bound);
  if (total > 0) work_stack.push_back({-bound, bound, total});
  while (!work_stack.empty()) {
    RatInterval cur = work_stack.back();
    work_stack.pop_back();
    if (cur.count == 1) {
      isolated.emplace_back(cur.a, cur.b);
      continue;
    }
    Rational m = non_root_cut(f, cur.a, cur.b);
    long left = sturm::count_in(ch, cur.a, m);
    long right = cur.count - left;
    if (left > 0) work_stack.push_back({cur.a, m, left});
    if (right > 0) work_stack.push_back({m, cur.b, right});
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  long target = prec + 4;
  for (auto& [a, b] : isolated) {
    // ensure a sign change for the bisection fallback
    if (f.eval(a) == 0 || f.eval(b) == 0) throw_internal("isolating endpoints hit a root");
    bisect_rational(f, a, b, 32);
    Prec work = std::max<Prec>(prec + 64, 128);
    RIval enc = (a == b) ? RIval::from_rational(a, work)
                         : RIval::hull(RIval::from_rational(a, work), RIval::from_rational(b, work));
    refine_real_root(f, enc, target);
    out.real_roots.push_back(std::move(enc));
  }

  int s = static_cast<int>(out.real_roots.size());
  if ((n - s) % 2 != 0) throw_internal("parity mismatch between real and complex root counts");
  int t = (n - s) / 2;

  if (t > 0) {
    // double-precision companion estimates seed certified Newton boxes
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -Rational(f.coeff(i) / f.leading()).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> ests;
    for (int i = 0; i < n; ++i) {
      std::complex<double> z(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
      if (z.imag() > 1e-12) ests.push_back(z);
    }
    if (static_cast<int>(ests.size()) != t)
      throw_precision("complex root estimation disagrees with the Sturm count");

    Poly fd = f.derivative();
    for (auto est : ests) {
      CIval box;
      bool ok = false;
      for (Prec work = std::max<Prec>(prec + 64, 192); work <= 64 * 1024; work *= 2) {
        if (certify_complex_box(f, fd, est, work, box)) {
          ok = true;
          break;
        }
      }
      if (!ok) throw_precision("complex root certification failed");
      if (!box.im.is_positive())
        throw_internal("certified complex box not in the upper half plane");
      refine_complex_root(f, box, target);
      out.complex_reps.push_back(std::move(box));
    }

    // canonical (Re, Im) sort with refinement on ties
    auto cmp_resolved = [](const RIval& x, const RIval& y, int& r) {
      if (mpfr_cmp(x.hi(), y.lo()) < 0) {
        r = -1;
        return true;
      }
      if (mpfr_cmp(y.hi(), x.lo()) < 0) {
        r = 1;
        return true;
      }
      return false;
    };
    std::sort(out.complex_reps.begin(), out.complex_reps.end(), [&](const CIval& x, const CIval& y) {
      int r = 0;
      if (cmp_resolved(x.re, y.re, r)) return r < 0;
      if (cmp_resolved(x.im, y.im, r)) return r < 0;
      return false;  // identical boxes would be a distinctness bug caught below
    });
    for (int i = 0; i + 1 < t; ++i) {
      CIval& x = out.complex_reps[i];
      CIval& y = out.complex_reps[i + 1];
      int r = 0;
      bool distinct = cmp_resolved(x.re, y.re, r) || cmp_resolved(x.im, y.im, r);
      if (!distinct) {
        refine_complex_root(f, x, 2 * target);
        refine_complex_root(f, y, 2 * target);
        distinct = cmp_resolved(x.re, y.re, r) || cmp_resolved(x.im, y.im, r);
      }
      if (!distinct) throw_internal("complex enclosures overlap after refinement");
    }
  }
  return out;
}

}  // namespace otlab
