#include <vector>

#include "doctest.h"
#include "otlab/errors.hpp"
#include "otlab/numfield.hpp"

using namespace otlab;

namespace {

FieldPtr sextic() {
  return NumberField::make(Poly::from_int_coeffs({1, -2, -1, 2, 0, 0, 1}));
}

}  // namespace

TEST_CASE("irreducibility certificates") {
  SUBCASE("degree <= 3 without rational roots certifies directly") {
    auto c = irreducibility_certificate(Poly::from_int_coeffs({-1, -1, 0, 1}));
    CHECK(c.status == IrredStatus::Certified);
    CHECK(!c.prime.has_value());
  }
  SUBCASE("rational root is reported with its witness") {
    auto c = irreducibility_certificate(Poly::from_int_coeffs({-1, 0, 1}));
    CHECK(c.status == IrredStatus::Reducible);
    REQUIRE(c.rational_root.has_value());
    CHECK((*c.rational_root == Rational(1) || *c.rational_root == Rational(-1)));
  }
  SUBCASE("sextic example certifies via a modular witness") {
    auto c = irreducibility_certificate(Poly::from_int_coeffs({1, -2, -1, 2, 0, 0, 1}));
    CHECK(c.status == IrredStatus::Certified);
    CHECK(c.prime.has_value());
  }
  SUBCASE("x^4 + 4 factors modulo every prime, so the status is unknown") {
    auto c = irreducibility_certificate(Poly::from_int_coeffs({4, 0, 0, 0, 1}));
    CHECK(c.status == IrredStatus::Unknown);
    CHECK_THROWS_AS(NumberField::make(Poly::from_int_coeffs({4, 0, 0, 0, 1})), Error);
    FieldPtr asserted = NumberField::make(Poly::from_int_coeffs({4, 0, 0, 0, 1}), true);
    CHECK(asserted->certificate().status == IrredStatus::Asserted);
  }
  SUBCASE("reducible polynomial is rejected even with the assertion flag") {
    CHECK_THROWS_AS(NumberField::make(Poly::from_int_coeffs({-1, 0, 1}), true), Error);
  }
  SUBCASE("non-monic and non-integer inputs are rejected") {
    CHECK_THROWS_AS(irreducibility_certificate(Poly::from_int_coeffs({1, 2})), Error);
    CHECK_THROWS_AS(irreducibility_certificate(Poly({Rational(1, 2), Rational(1)})), Error);
  }
}

TEST_CASE("field arithmetic against a brute polynomial oracle") {
  FieldPtr k = sextic();
  const Poly& f = k->defining_poly();
  unsigned long seed = 12345;
  auto next = [&seed](long lo, long hi) {
    seed = seed * 6364136223846793005UL + 1442695040888963407UL;
    return lo + static_cast<long>((seed >> 33) % static_cast<unsigned long>(hi - lo + 1));
  };
  for (int it = 0; it < 25; ++it) {
    std::vector<long> ac(6), bc(6);
    for (auto& v : ac) v = next(-3, 3);
    for (auto& v : bc) v = next(-3, 3);
    FieldElem a = FieldElem::from_int_coeffs(k, ac);
    FieldElem b = FieldElem::from_int_coeffs(k, bc);
    CHECK((a * b).rep() == (Poly::from_int_coeffs(ac) * Poly::from_int_coeffs(bc)).mod(f));
    CHECK((a + b).rep() == (Poly::from_int_coeffs(ac) + Poly::from_int_coeffs(bc)).mod(f));
  }
}

TEST_CASE("norms of the bundled units are exactly 1") {
  FieldPtr k = sextic();
  FieldElem alpha = FieldElem::generator(k);
  FieldElem refl = FieldElem::one(k) - alpha;
  CHECK(alpha.norm() == Rational(1));
  CHECK(refl.norm() == Rational(1));
  CHECK(alpha.norm_via_matrix() == Rational(1));
  CHECK(refl.norm_via_matrix() == Rational(1));
}

TEST_CASE("norm agrees with the matrix route on random elements") {
  FieldPtr k = sextic();
  unsigned long seed = 777;
  auto next = [&seed](long lo, long hi) {
    seed = seed * 6364136223846793005UL + 1442695040888963407UL;
    return lo + static_cast<long>((seed >> 33) % static_cast<unsigned long>(hi - lo + 1));
  };
  for (int it = 0; it < 15; ++it) {
    std::vector<long> c(6);
    for (auto& v : c) v = next(-4, 4);
    FieldElem a = FieldElem::from_int_coeffs(k, c);
    CHECK(a.norm() == a.norm_via_matrix());
  }
}

TEST_CASE("norm is multiplicative") {
  FieldPtr k = sextic();
  FieldElem a = FieldElem::from_int_coeffs(k, {1, 2, 0, -1, 0, 0});
  FieldElem b = FieldElem::from_int_coeffs(k, {0, 1, 1, 0, 0, 0});
  CHECK((a * b).norm() == a.norm() * b.norm());
}

TEST_CASE("inverse and powers") {
  FieldPtr k = sextic();
  FieldElem alpha = FieldElem::generator(k);
  CHECK(alpha * alpha.inverse() == FieldElem::one(k));
  CHECK(alpha.pow(3) == alpha * alpha * alpha);
  CHECK(alpha.pow(-2) == (alpha * alpha).inverse());
  CHECK(alpha.pow(0) == FieldElem::one(k));
  CHECK_THROWS_AS(FieldElem::constant(k, Rational(0)).inverse(), Error);
}

TEST_CASE("characteristic polynomial of the generator is the defining polynomial") {
  FieldPtr k = sextic();
  CHECK(FieldElem::generator(k).char_poly() == k->defining_poly());
  Poly cp = FieldElem::constant(k, Rational(3)).char_poly();
  // (x - 3)^6 has constant term 729 and degree 6
  CHECK(cp.degree() == 6);
  CHECK(cp.coeff(0) == Rational(729));
  CHECK(cp.eval(Rational(3)) == Rational(0));
}

TEST_CASE("height bound is finite and positive for nontrivial units") {
  FieldPtr k = sextic();
  double h = FieldElem::generator(k).height_bound();
  CHECK(h > 0.0);
  CHECK(h < 100.0);
  CHECK_THROWS_AS(FieldElem::constant(k, Rational(0)).height_bound(), Error);
}

TEST_CASE("elements of different fields do not mix") {
  FieldPtr k = sextic();
  FieldPtr c = NumberField::make(Poly::from_int_coeffs({-1, -1, 0, 1}));
  CHECK_THROWS_AS(FieldElem::generator(k) + FieldElem::generator(c), Error);
}
