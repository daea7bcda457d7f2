#include "otlab/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "otlab/errors.hpp"

namespace otlab {

namespace {
constexpr Prec kMinPrec = 16;
}

void RIval::init(Prec prec) {
  prec_ = std::max(prec, kMinPrec);
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
}

RIval::RIval() : RIval(kMinPrec) {}

RIval::RIval(Prec prec) {
  init(prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RIval::RIval(const RIval& o) {
  init(o.prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RIval::RIval(RIval&& o) noexcept : prec_(o.prec_) {
  lo_[0] = o.lo_[0];
  hi_[0] = o.hi_[0];
  // leave the source valid for its destructor
  mpfr_init2(o.lo_, kMinPrec);
  mpfr_init2(o.hi_, kMinPrec);
  mpfr_set_zero(o.lo_, 1);
  mpfr_set_zero(o.hi_, 1);
  o.prec_ = kMinPrec;
}

RIval& RIval::operator=(const RIval& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    mpfr_set_prec(lo_, o.prec_);
    mpfr_set_prec(hi_, o.prec_);
    prec_ = o.prec_;
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

RIval& RIval::operator=(RIval&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

RIval::~RIval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RIval RIval::from_long(long v, Prec prec) {
  RIval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RIval RIval::from_rational(const Rational& q, Prec prec) {
  RIval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RIval RIval::point(const mpfr_t v, Prec prec) {
  RIval r(prec);
  mpfr_set(r.lo_, v, MPFR_RNDD);
  mpfr_set(r.hi_, v, MPFR_RNDU);
  return r;
}

RIval RIval::hull_of(const mpfr_t lo, const mpfr_t hi, Prec prec) {
  RIval r(prec);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  if (mpfr_cmp(r.lo_, r.hi_) > 0) throw_internal("interval endpoints out of order");
  return r;
}

RIval RIval::pi(Prec prec) {
  RIval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

bool RIval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool RIval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RIval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RIval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RIval::contains(long v) const {
  return mpfr_cmp_si(lo_, v) <= 0 && mpfr_cmp_si(hi_, v) >= 0;
}

bool RIval::contains_interval(const RIval& inner) const {
  return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(hi_, inner.hi_) >= 0;
}

bool RIval::strictly_contains_interval(const RIval& inner) const {
  return mpfr_cmp(lo_, inner.lo_) < 0 && mpfr_cmp(hi_, inner.hi_) > 0;
}

bool RIval::certainly_less(const Rational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }
bool RIval::certainly_greater(const Rational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }

bool RIval::width_below_2exp(long e) const {
  mpfr_t w, bound;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_init2(bound, kMinPrec);
  mpfr_set_ui_2exp(bound, 1, e, MPFR_RNDN);
  bool ok = mpfr_cmp(w, bound) <= 0;
  mpfr_clear(w);
  mpfr_clear(bound);
  return ok;
}

double RIval::width_log2() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r;
  if (mpfr_zero_p(w)) {
    r = -1e9;
  } else {
    mpfr_log2(w, w, MPFR_RNDU);
    r = mpfr_get_d(w, MPFR_RNDU);
  }
  mpfr_clear(w);
  return r;
}

RIval RIval::operator-() const {
  RIval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RIval RIval::operator+(const RIval& o) const {
  RIval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RIval RIval::operator-(const RIval& o) const {
  RIval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RIval RIval::operator*(const RIval& o) const {
  RIval r(std::max(prec_, o.prec_));
  mpfr_t c;
  mpfr_init2(c, r.prec_);
  const mpfr_t* as[2] = {&lo_, &hi_};
  const mpfr_t* bs[2] = {&o.lo_, &o.hi_};
  bool first = true;
  for (auto a : as)
    for (auto b : bs) {
      mpfr_mul(c, *a, *b, MPFR_RNDD);
      if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
      mpfr_mul(c, *a, *b, MPFR_RNDU);
      if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(c);
  return r;
}

RIval RIval::operator/(const RIval& o) const {
  if (o.contains_zero()) throw_precision("interval division by an interval containing zero");
  RIval recip(o.prec_);
  mpfr_ui_div(recip.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(recip.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * recip;
}

RIval RIval::sqr() const {
  RIval a = abs();
  RIval r(prec_);
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RIval RIval::abs() const {
  RIval r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RIval RIval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw_domain("sqrt of an interval with negative lower end");
  RIval r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RIval RIval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw_precision("log of an interval not certainly positive");
  RIval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RIval RIval::exp() const {
  RIval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

// cos/sin via the midpoint and a mean value bound: |f(x) - f(m)| <= w/2.
// Adequate for narrow arguments; clamped to [-1, 1].
RIval RIval::cos() const {
  RIval r(prec_);
  mpfr_t m, w, v;
  mpfr_init2(m, prec_);
  mpfr_init2(w, prec_);
  mpfr_init2(v, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(w, w, 1, MPFR_RNDU);
  mpfr_cos(v, m, MPFR_RNDD);
  mpfr_sub(r.lo_, v, w, MPFR_RNDD);
  mpfr_cos(v, m, MPFR_RNDU);
  mpfr_add(r.hi_, v, w, MPFR_RNDU);
  if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
  mpfr_clear(m);
  mpfr_clear(w);
  mpfr_clear(v);
  return r;
}

RIval RIval::sin() const {
  RIval half_pi = pi(prec_) * from_rational(Rational(1, 2), prec_);
  return (half_pi - *this).cos();
}

RIval RIval::pow_int(long e) const {
  if (e == 0) return from_long(1, prec_);
  if (e < 0) {
    RIval p = pow_int(-e);
    return from_long(1, prec_) / p;
  }
  if (is_positive()) {
    RIval r(prec_);
    mpfr_pow_si(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_si(r.hi_, hi_, e, MPFR_RNDU);
    return r;
  }
  // general sign: square-and-multiply on intervals
  RIval acc = from_long(1, prec_);
  RIval base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1ul) acc = acc * base;
    if (k >>= 1) base = base.sqr();
  }
  return acc;
}

// Corner evaluation; valid when the box lies in a half-plane avoiding the
// branch cut (y > 0, y < 0, or x > 0), where atan2 is edge-monotone.
RIval RIval::atan2(const RIval& y, const RIval& x) {
  bool ok = y.is_positive() || y.is_negative() || x.is_positive();
  if (!ok) throw_precision("argument box touches the branch cut or zero");
  Prec prec = std::max(y.prec_, x.prec_);
  RIval r(prec);
  mpfr_t c;
  mpfr_init2(c, prec);
  const mpfr_t* ys[2] = {&y.lo_, &y.hi_};
  const mpfr_t* xs[2] = {&x.lo_, &x.hi_};
  bool first = true;
  for (auto yy : ys)
    for (auto xx : xs) {
      mpfr_atan2(c, *yy, *xx, MPFR_RNDD);
      if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
      mpfr_atan2(c, *yy, *xx, MPFR_RNDU);
      if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(c);
  return r;
}

RIval RIval::midpoint() const {
  RIval r(prec_);
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_set(r.lo_, m, MPFR_RNDD);
  mpfr_set(r.hi_, m, MPFR_RNDU);
  mpfr_clear(m);
  return r;
}

bool RIval::intersect(const RIval& a, const RIval& b, RIval& out) {
  RIval r(std::max(a.prec_, b.prec_));
  mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) >= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) <= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
  if (mpfr_cmp(r.lo_, r.hi_) > 0) return false;
  out = std::move(r);
  return true;
}

RIval RIval::hull(const RIval& a, const RIval& b) {
  RIval r(std::max(a.prec_, b.prec_));
  mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) <= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) >= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
  return r;
}

RIval RIval::rounded_to(Prec prec) const {
  RIval r(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::string RIval::decimal(int digits) const {
  mpfr_t m;
  mpfr_init2(m, std::max<Prec>(prec_, digits * 4));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, m);
  mpfr_clear(m);
  return buf;
}

std::string RIval::radius_decimal() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(w, w, 1, MPFR_RNDU);
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.1Re", w);
  mpfr_clear(w);
  return buf;
}

CIval CIval::from_real(RIval r) {
  Prec p = r.precision();
  return CIval(std::move(r), RIval(p));
}

CIval CIval::from_rational(const Rational& q, Prec prec) {
  return CIval(RIval::from_rational(q, prec), RIval(prec));
}

CIval CIval::conj() const { return CIval(re, -im); }
CIval CIval::operator-() const { return CIval(-re, -im); }
CIval CIval::operator+(const CIval& o) const { return CIval(re + o.re, im + o.im); }
CIval CIval::operator-(const CIval& o) const { return CIval(re - o.re, im - o.im); }

CIval CIval::operator*(const CIval& o) const {
  return CIval(re * o.re - im * o.im, re * o.im + im * o.re);
}

CIval CIval::inverse() const {
  RIval d = abs2();
  if (!d.is_positive()) throw_precision("inverse of a complex box not certainly nonzero");
  return CIval(re / d, (-im) / d);
}

CIval CIval::operator/(const CIval& o) const { return *this * o.inverse(); }

CIval CIval::pow_int(long e) const {
  Prec p = precision();
  if (e == 0) return from_rational(Rational(1), p);
  if (e < 0) return pow_int(-e).inverse();
  CIval acc = from_rational(Rational(1), p);
  CIval base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1ul) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

RIval CIval::abs2() const { return re.sqr() + im.sqr(); }
RIval CIval::abs() const { return abs2().sqrt(); }
RIval CIval::arg() const { return RIval::atan2(im, re); }

bool CIval::contains_zero() const { return re.contains_zero() && im.contains_zero(); }

bool CIval::width_below_2exp(long e) const {
  return re.width_below_2exp(e) && im.width_below_2exp(e);
}

std::string CIval::decimal(int digits) const {
  return re.decimal(digits) + (im.is_negative() ? " - " : " + ") + im.abs().decimal(digits) + "*I";
}

}  // namespace otlab
