#include "doctest.h"
#include "otlab/errors.hpp"
#include "otlab/interval.hpp"

using namespace otlab;

namespace {

Rational tiny(long bits) { return Rational(Integer(1), Integer(1) << bits); }

}  // namespace

TEST_CASE("rational construction encloses the value tightly") {
  RIval v = RIval::from_rational(Rational(1, 3), 128);
  CHECK(v.contains(Rational(1, 3)));
  CHECK(v.width_below_2exp(-120));
  CHECK(v.is_positive());
  CHECK(!v.contains_zero());
  RIval w = RIval::from_long(-7, 64);
  CHECK(w.contains(-7));
  CHECK(w.is_negative());
}

TEST_CASE("arithmetic encloses the exact rational result") {
  unsigned long seed = 42;
  auto next = [&seed](long lo, long hi) {
    seed = seed * 6364136223846793005UL + 1442695040888963407UL;
    return lo + static_cast<long>((seed >> 33) % static_cast<unsigned long>(hi - lo + 1));
  };
  for (int it = 0; it < 80; ++it) {
    Rational a(next(-50, 50), next(1, 9));
    Rational b(next(-50, 50), next(1, 9));
    RIval ia = RIval::from_rational(a, 128);
    RIval ib = RIval::from_rational(b, 128);
    CHECK((ia + ib).contains(a + b));
    CHECK((ia - ib).contains(a - b));
    CHECK((ia * ib).contains(a * b));
    CHECK((-ia).contains(-a));
    CHECK(ia.sqr().contains(a * a));
    CHECK(ia.abs().contains(a >= 0 ? a : Rational(-a)));
    if (b != 0) CHECK((ia / ib).contains(a / b));
  }
}

TEST_CASE("division by an interval containing zero is rejected") {
  RIval one = RIval::from_long(1, 64);
  RIval z = RIval::from_long(0, 64);
  CHECK_THROWS_AS(one / z, Error);
}

TEST_CASE("pi enclosure brackets the classical bounds") {
  RIval p = RIval::pi(128);
  Rational lo(Integer("314159265358979323846"), Integer("100000000000000000000"));
  Rational hi(Integer("314159265358979323847"), Integer("100000000000000000000"));
  CHECK(p.certainly_greater(lo));
  CHECK(p.certainly_less(hi));
}

TEST_CASE("elementary functions satisfy defining identities") {
  RIval two = RIval::from_long(2, 192);
  CHECK(two.log().exp().contains(Rational(2)));
  CHECK(two.sqrt().sqr().contains(Rational(2)));
  RIval x = RIval::from_rational(Rational(7, 5), 192);
  RIval pyth = x.cos().sqr() + x.sin().sqr();
  CHECK(pyth.contains(Rational(1)));
  CHECK(pyth.width_below_2exp(-150));
  CHECK(x.pow_int(5).contains(Rational(16807, 3125)));
  CHECK(x.pow_int(-2).contains(Rational(25, 49)));
  CHECK(x.pow_int(0).contains(Rational(1)));
}

TEST_CASE("atan2 of equal positive arguments is pi over 4") {
  RIval one = RIval::from_long(1, 128);
  RIval q = RIval::atan2(one, one) * RIval::from_long(4, 128) - RIval::pi(128);
  CHECK(q.contains(Rational(0)));
  CHECK(q.width_below_2exp(-100));
}

TEST_CASE("interval predicates and set operations") {
  RIval a = RIval::hull(RIval::from_long(1, 64), RIval::from_long(3, 64));
  RIval b = RIval::hull(RIval::from_long(2, 64), RIval::from_long(5, 64));
  CHECK(a.contains(2));
  CHECK(!a.contains(4));
  RIval inter;
  CHECK(RIval::intersect(a, b, inter));
  CHECK(inter.contains(Rational(5, 2)));
  RIval c = RIval::from_long(10, 64);
  CHECK(!RIval::intersect(a, c, inter));
  CHECK(RIval::hull(a, c).contains(7));
  CHECK(a.contains_interval(RIval::from_long(2, 64)));
  CHECK(!a.strictly_contains_interval(a));
  CHECK(a.certainly_less(Rational(4)));
  CHECK(a.certainly_greater(Rational(1, 2)));
  CHECK(!a.certainly_less(Rational(2)));
}

TEST_CASE("midpoint and rounding keep containment") {
  RIval a = RIval::from_rational(Rational(22, 7), 256);
  RIval m = a.midpoint();
  CHECK(a.contains_interval(m));
  RIval r = a.rounded_to(64);
  CHECK(r.contains(Rational(22, 7)));
  CHECK(r.precision() == 64);
}

TEST_CASE("decimal rendering is stable and labeled") {
  RIval a = RIval::from_rational(Rational(1, 4), 128);
  CHECK(a.decimal(5).substr(0, 6) == "2.5000");
  CHECK(a.decimal(5) == a.decimal(5));
  CHECK(!a.radius_decimal().empty());
}

TEST_CASE("complex arithmetic matches component formulas") {
  Prec p = 128;
  CIval z{RIval::from_long(1, p), RIval::from_long(2, p)};
  CIval w{RIval::from_long(3, p), RIval::from_long(-1, p)};
  CIval prod = z * w;
  CHECK(prod.re.contains(Rational(5)));
  CHECK(prod.im.contains(Rational(5)));
  CHECK(z.conj().im.contains(Rational(-2)));
  CHECK(z.abs2().contains(Rational(5)));
  CHECK((z * z.inverse()).re.contains(Rational(1)));
  CHECK((z * z.inverse()).im.contains(Rational(0)));
  CHECK(z.pow_int(2).re.contains(Rational(-3)));
  CHECK(z.pow_int(2).im.contains(Rational(4)));
  CIval one{RIval::from_long(1, p), RIval::from_long(1, p)};
  RIval q = one.arg() * RIval::from_long(4, p) - RIval::pi(p);
  CHECK(q.contains(Rational(0)));
}

TEST_CASE("width predicates see through precision") {
  RIval tiny_box = RIval::from_rational(tiny(200), 300);
  CHECK(tiny_box.width_below_2exp(-250));
  RIval wide = RIval::hull(RIval::from_long(0, 64), RIval::from_long(1, 64));
  CHECK(!wide.width_below_2exp(-1));
  CHECK(wide.width_below_2exp(1));
}
