#pragma once

#include <mpfr.h>

#include <string>

#include "otlab/poly.hpp"

namespace otlab {

using Prec = mpfr_prec_t;

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
// Binary operations compute at the larger of the operand precisions.
class RIval {
public:
  RIval();
  explicit RIval(Prec prec);
  RIval(const RIval& o);
  RIval(RIval&& o) noexcept;
  RIval& operator=(const RIval& o);
  RIval& operator=(RIval&& o) noexcept;
  ~RIval();

  static RIval from_long(long v, Prec prec);
  static RIval from_rational(const Rational& q, Prec prec);
  static RIval point(const mpfr_t v, Prec prec);
  static RIval hull_of(const mpfr_t lo, const mpfr_t hi, Prec prec);
  static RIval pi(Prec prec);

  Prec precision() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0
  bool contains(const Rational& q) const;
  bool contains(long v) const;
  bool contains_interval(const RIval& inner) const;           // inner subset of [lo,hi]
  bool strictly_contains_interval(const RIval& inner) const;  // subset of the interior
  // Certified comparisons: false means "not certainly".
  bool certainly_less(const Rational& q) const;     // hi < q
  bool certainly_greater(const Rational& q) const;  // lo > q

  bool width_below_2exp(long e) const;  // hi - lo <= 2^e
  double width_log2() const;            // diagnostic only

  RIval operator-() const;
  RIval operator+(const RIval& o) const;
  RIval operator-(const RIval& o) const;
  RIval operator*(const RIval& o) const;
  RIval operator/(const RIval& o) const;  // o must exclude zero
  RIval sqr() const;
  RIval abs() const;
  RIval sqrt() const;  // lo >= 0
  RIval log() const;   // lo > 0
  RIval exp() const;
  RIval cos() const;
  RIval sin() const;
  RIval pow_int(long e) const;
  static RIval atan2(const RIval& y, const RIval& x);

  RIval midpoint() const;  // point interval
  static bool intersect(const RIval& a, const RIval& b, RIval& out);
  static RIval hull(const RIval& a, const RIval& b);
  RIval rounded_to(Prec prec) const;  // outward re-rounding

  // Midpoint in scientific notation with the given significant digits.
  std::string decimal(int digits) const;
  // Upper bound on the radius, 2 significant digits.
  std::string radius_decimal() const;

private:
  mpfr_t lo_, hi_;
  Prec prec_;
  void init(Prec prec);
};

// Rectangular complex interval.
struct CIval {
  RIval re, im;

  CIval() = default;
  CIval(RIval r, RIval i) : re(std::move(r)), im(std::move(i)) {}
  static CIval from_real(RIval r);
  static CIval from_rational(const Rational& q, Prec prec);

  Prec precision() const { return std::max(re.precision(), im.precision()); }

  CIval conj() const;
  CIval operator-() const;
  CIval operator+(const CIval& o) const;
  CIval operator-(const CIval& o) const;
  CIval operator*(const CIval& o) const;
  CIval operator/(const CIval& o) const;  // |o|^2 must exclude zero
  CIval inverse() const;
  CIval pow_int(long e) const;
  RIval abs2() const;
  RIval abs() const;
  RIval arg() const;  // box must avoid the branch cut

  bool contains_zero() const;
  bool width_below_2exp(long e) const;  // both components
  std::string decimal(int digits) const;
};

}  // namespace otlab
