#include <vector>

#include "doctest.h"
#include "otlab/errors.hpp"
#include "otlab/poly.hpp"

using namespace otlab;

namespace {

// deterministic LCG so oracle loops are reproducible
struct Rng {
  unsigned long state = 0x9e3779b97f4a7c15UL;
  long next(long lo, long hi) {
    state = state * 6364136223846793005UL + 1442695040888963407UL;
    return lo + static_cast<long>((state >> 33) % static_cast<unsigned long>(hi - lo + 1));
  }
  Rational rat() {
    long num = next(-9, 9);
    long den = next(1, 6);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Poly poly(int max_deg) {
    int deg = static_cast<int>(next(0, max_deg));
    std::vector<Rational> c(deg + 1);
    for (auto& v : c) v = rat();
    if (c.back() == 0) c.back() = 1;
    return Poly(std::move(c));
  }
};

}  // namespace

TEST_CASE("construction trims and zero polynomial has degree -1") {
  Poly z;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  Poly trimmed({Rational(3), Rational(0), Rational(0)});
  CHECK(trimmed.degree() == 0);
  CHECK(Poly({Rational(0), Rational(0)}).is_zero());
}

TEST_CASE("from_int_coeffs stores constant term first") {
  Poly f = Poly::from_int_coeffs({1, -2, -1, 2, 0, 0, 1});
  CHECK(f.degree() == 6);
  CHECK(f.coeff(0) == Rational(1));
  CHECK(f.coeff(1) == Rational(-2));
  CHECK(f.coeff(6) == Rational(1));
  CHECK(f.is_monic());
  CHECK(f.is_integer());
  CHECK(f.eval(Rational(1)) == Rational(1));
  CHECK(poly_eval_exact(f, Rational(1)) == Rational(1));
}

TEST_CASE("evaluation matches an independent Horner oracle") {
  Rng rng;
  for (int it = 0; it < 60; ++it) {
    Poly f = rng.poly(6);
    Rational x = rng.rat();
    Rational acc(0);
    for (int k = f.degree(); k >= 0; --k) acc = acc * x + f.coeff(k);
    CHECK(f.eval(x) == acc);
  }
}

TEST_CASE("ring operations agree with coefficient-level oracles") {
  Rng rng;
  for (int it = 0; it < 40; ++it) {
    Poly a = rng.poly(5);
    Poly b = rng.poly(5);
    Rational x = rng.rat();
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a - b).eval(x) == a.eval(x) - b.eval(x));
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((-a).eval(x) == -a.eval(x));
  }
}

TEST_CASE("divmod satisfies a = q b + r with deg r < deg b") {
  Rng rng;
  for (int it = 0; it < 40; ++it) {
    Poly a = rng.poly(7);
    Poly b = rng.poly(4);
    if (b.is_zero()) continue;
    Poly q, r;
    Poly::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(a.mod(b) == r);
  }
}

TEST_CASE("x^5 reduces to 4x modulo x^2 - 2") {
  Poly f = Poly::from_int_coeffs({0, 0, 0, 0, 0, 1});
  Poly m = Poly::from_int_coeffs({-2, 0, 1});
  CHECK(f.mod(m) == Poly::from_int_coeffs({0, 4}));
}

TEST_CASE("gcd is monic and divides both inputs") {
  Poly f = Poly::from_int_coeffs({-1, 1});       // x - 1
  Poly g = Poly::from_int_coeffs({1, 1});        // x + 1
  Poly h = Poly::from_int_coeffs({-2, 0, 1});    // x^2 - 2
  Poly gc = Poly::gcd(f * g, f * h);
  CHECK(gc == f);
  CHECK(Poly::gcd(g, h).degree() == 0);
  CHECK(Poly::gcd(Poly(), Poly()).is_zero());
  Poly scaled = Poly::gcd(f * Rational(3), f * Rational(5, 7));
  CHECK(scaled == f);
}

TEST_CASE("resultant of a linear factor evaluates the other argument") {
  Rng rng;
  for (int it = 0; it < 30; ++it) {
    Rational a = rng.rat();
    Poly lin({-a, Rational(1)});  // x - a
    Poly g = rng.poly(4);
    if (g.is_zero()) continue;
    CHECK(Poly::resultant(lin, g) == g.eval(a));
  }
  Poly f2 = Poly::from_int_coeffs({-2, 0, 1});
  Poly f3 = Poly::from_int_coeffs({-3, 0, 1});
  CHECK(Poly::resultant(f2, f3) == Rational(1));
}

TEST_CASE("primitive_integer clears denominators and content") {
  Poly f({Rational(9, 4), Rational(0), Rational(3, 2)});
  Poly p = f.primitive_integer();
  CHECK(p == Poly::from_int_coeffs({3, 0, 2}));
  Poly neg({Rational(2), Rational(-4)});
  CHECK(neg.primitive_integer() == Poly::from_int_coeffs({-1, 2}));
}

TEST_CASE("derivative and squarefree detection") {
  Poly f = Poly::from_int_coeffs({-2, 0, 1});
  CHECK(f.derivative() == Poly::from_int_coeffs({0, 2}));
  CHECK(f.is_squarefree());
  Poly sq = Poly::from_int_coeffs({-1, 1}) * Poly::from_int_coeffs({-1, 1});
  CHECK(!sq.is_squarefree());
}

TEST_CASE("to_string mentions the variable") {
  Poly f = Poly::from_int_coeffs({1, 0, -1});
  std::string s = f.to_string();
  CHECK(s.find('x') != std::string::npos);
}
