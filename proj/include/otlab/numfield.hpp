#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "otlab/poly.hpp"

namespace otlab {

enum class IrredStatus { Certified, Reducible, Unknown, Asserted };

struct IrredCertificate {
  IrredStatus status = IrredStatus::Unknown;
  std::string route;
  std::optional<unsigned long> prime;      // mod-p witness
  std::optional<Rational> rational_root;   // Reducible witness
};

// Monic integer f, degree >= 1. Certified via rational-root test plus either
// low degree or irreducibility mod p for a prime not dividing disc(f).
// Returns Unknown when no prime up to 97 certifies.
IrredCertificate irreducibility_certificate(const Poly& f);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
public:
  // Throws on a Reducible certificate; Unknown throws unless assert_irreducible.
  static FieldPtr make(Poly f, bool assert_irreducible = false);

  const Poly& defining_poly() const { return f_; }
  int degree() const { return f_.degree(); }
  const IrredCertificate& certificate() const { return cert_; }

private:
  Poly f_;
  IrredCertificate cert_;
  NumberField(Poly f, IrredCertificate cert) : f_(std::move(f)), cert_(std::move(cert)) {}
};

class FieldElem {
public:
  FieldElem() = default;
  FieldElem(FieldPtr field, Poly rep);

  static FieldElem generator(FieldPtr field);
  static FieldElem one(FieldPtr field);
  static FieldElem constant(FieldPtr field, const Rational& c);
  static FieldElem from_int_coeffs(FieldPtr field, const std::vector<long>& coeffs);

  const FieldPtr& field() const { return field_; }
  const Poly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  FieldElem pow(long e) const;
  bool operator==(const FieldElem& o) const;

  Rational norm() const;
  // Characteristic polynomial of multiplication by this element, monic of
  // degree n, via the Faddeev-LeVerrier trace recursion. Exact.
  Poly char_poly() const;
  // Determinant of the multiplication matrix; equals norm(). Kept as an
  // independent route for cross-checks.
  Rational norm_via_matrix() const;
  // Upper bound on the absolute logarithmic Weil height: log of the L2 norm
  // of the primitive integer characteristic polynomial, rounded up.
  double height_bound() const;

private:
  FieldPtr field_;
  Poly rep_;
  void require_same_field(const FieldElem& o) const;
  std::vector<std::vector<Rational>> mult_matrix() const;
};

}  // namespace otlab
