#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

namespace otlab {

using Rational = mpq_class;

// Exact element of Q(i).
struct GaussRat {
  Rational re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long r) : re(r), im(0) {}
  GaussRat(const Rational& r) : re(r), im(0) {}
  GaussRat(const Rational& r, const Rational& i) : re(r), im(i) {}

  static GaussRat i_unit() { return GaussRat(Rational(0), Rational(1)); }
  // i^k for any integer k.
  static GaussRat i_pow(long k);

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
  GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
  GaussRat operator*(const GaussRat& o) const {
    return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussRat operator/(const GaussRat& o) const;
  GaussRat conj() const { return GaussRat(re, -im); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  std::string to_string() const;
};

// Real-valued formal symbols: structure constants b(k,i), c(k,i) and the
// real and imaginary parts of Hermitian coefficients a(p,q).
enum class AtomKind : uint16_t { B = 0, C = 1, ARe = 2, AIm = 3 };

// Layout: kind << 12 | first << 6 | second, each index 0-based and < 64.
uint16_t atom_id(AtomKind kind, int first, int second);
AtomKind atom_kind(uint16_t id);
int atom_first(uint16_t id);
int atom_second(uint16_t id);
std::string atom_name(uint16_t id);

// Atom id -> positive exponent.
using Monomial = std::map<uint16_t, uint32_t>;

// Polynomial in real atoms with coefficients in Q(i).
class SymPoly {
 public:
  SymPoly() = default;

  static SymPoly from_gauss(const GaussRat& g);
  static SymPoly from_rational(const Rational& r);
  static SymPoly atom(AtomKind kind, int first, int second);

  SymPoly operator-() const;
  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);

  // Atoms denote real quantities, so conjugation only touches coefficients.
  SymPoly conj() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussRat constant_value() const;

  // Every atom appearing in the polynomial must be present in values.
  GaussRat eval(const std::map<uint16_t, Rational>& values) const;

  const std::map<Monomial, GaussRat>& terms() const { return terms_; }
  bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const SymPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::map<Monomial, GaussRat> terms_;
  void add(const Monomial& m, const GaussRat& g);
};

SymPoly operator*(const GaussRat& g, const SymPoly& p);

}  // namespace otlab
