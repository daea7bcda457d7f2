#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace otlab {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense univariate polynomial over Q. Coefficients are stored constant term
// first; the zero polynomial has empty storage, so degree() is -1 for it.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly x();
  static Poly from_int_coeffs(const std::vector<long>& coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const;

  bool is_monic() const;
  bool is_integer() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const = default;

  Rational eval(const Rational& v) const;
  Poly derivative() const;

  // Euclidean division, b nonzero: a = q*b + r with deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  Poly mod(const Poly& b) const;

  // Monic gcd; gcd(0,0) = 0.
  static Poly gcd(Poly a, Poly b);
  static Rational resultant(const Poly& a, const Poly& b);

  bool is_squarefree() const;

  // Multiplies out denominators and divides by integer content; sign of the
  // leading coefficient preserved. Nonzero input.
  Poly primitive_integer() const;

  std::string to_string(const std::string& var = "x") const;

private:
  std::vector<Rational> coeffs_;
  void trim();
};

Rational poly_eval_exact(const Poly& f, const Rational& v);

}  // namespace otlab
