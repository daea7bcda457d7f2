#include <vector>

#include "doctest.h"
#include "otlab/errors.hpp"
#include "otlab/otstruct.hpp"

using namespace otlab;

namespace {

FieldPtr sextic() {
  return NumberField::make(Poly::from_int_coeffs({1, -2, -1, 2, 0, 0, 1}));
}

std::vector<FieldElem> sextic_units(const FieldPtr& k) {
  FieldElem alpha = FieldElem::generator(k);
  return {alpha, FieldElem::one(k) - alpha};
}

// exact rational Gaussian elimination, the oracle for solve_linear
std::vector<std::vector<Rational>> exact_solve(std::vector<std::vector<Rational>> a,
                                               std::vector<std::vector<Rational>> rhs) {
  size_t n = a.size(), m = rhs[0].size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    REQUIRE(piv < n);
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Rational f = a[r][col] / a[col][col];
      for (size_t j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
      for (size_t j = 0; j < m; ++j) rhs[r][j] -= f * rhs[col][j];
    }
  }
  std::vector<std::vector<Rational>> x(n, std::vector<Rational>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) x[i][j] = rhs[i][j] / a[i][i];
  return x;
}

}  // namespace

TEST_CASE("total positivity at the real places") {
  FieldPtr k = sextic();
  EmbeddingSystem emb(k);
  FieldElem alpha = FieldElem::generator(k);
  FieldElem one = FieldElem::one(k);
  CHECK(check_totally_positive(emb, alpha));
  CHECK(check_totally_positive(emb, one - alpha));
  CHECK(check_totally_positive(emb, FieldElem::constant(k, Rational(2))));
  CHECK(!check_totally_positive(emb, alpha - one));
  CHECK(!check_totally_positive(emb, -alpha));
  CHECK(!check_totally_positive(emb, FieldElem::constant(k, Rational(-3))));
  CHECK_THROWS_AS(check_totally_positive(emb, FieldElem::constant(k, Rational(0))), Error);
}

TEST_CASE("l-map returns one certified log per real place") {
  FieldPtr k = sextic();
  EmbeddingSystem emb(k);
  FieldElem alpha = FieldElem::generator(k);
  std::vector<RIval> l = l_map(emb, alpha, 160);
  REQUIRE(l.size() == 2);
  for (int kk = 0; kk < 2; ++kk) {
    CHECK(l[kk].width_below_2exp(-160));
    RIval probe;
    CHECK(RIval::intersect(l[kk].exp(), emb.embed_real(alpha, kk + 1, 160), probe));
  }
  // both real roots sit in (0, 1), so the logs are negative
  CHECK(l[0].is_negative());
  CHECK(l[1].is_negative());
  CHECK_THROWS_AS(l_map(emb, alpha - FieldElem::one(k), 128), Error);
}

TEST_CASE("full log image of a unit sums to zero") {
  FieldPtr k = sextic();
  EmbeddingSystem emb(k);
  for (const FieldElem& u : sextic_units(k)) {
    std::vector<RIval> l = l_map(emb, u, 256);
    RIval sum(256);
    for (const auto& v : l) sum = sum + v;
    for (int i = 0; i < emb.t(); ++i)
      sum = sum + emb.embed(u, emb.s() + 1 + i, 256).abs2().log();
    CHECK(sum.contains(Rational(0)));
    CHECK(sum.width_below_2exp(-200));
  }
}

TEST_CASE("admissibility certificates") {
  FieldPtr k = sextic();
  EmbeddingSystem emb(k);
  FieldElem alpha = FieldElem::generator(k);
  FieldElem one = FieldElem::one(k);

  SUBCASE("the bundled pair is admissible with a nonzero determinant") {
    AdmissibilityCert cert = check_admissible(emb, sextic_units(k));
    CHECK(cert.admissible);
    CHECK(!cert.det.contains_zero());
  }
  SUBCASE("an exact power dependency is caught before any numerics") {
    AdmissibilityCert cert = check_admissible(emb, {alpha, alpha * alpha});
    CHECK(!cert.admissible);
    CHECK(cert.note.find("exact dependency") != std::string::npos);
  }
  SUBCASE("roots of unity are rejected") {
    AdmissibilityCert cert = check_admissible(emb, {alpha, -one});
    CHECK(!cert.admissible);
    CHECK(cert.note.find("root of unity") != std::string::npos);
  }
}

TEST_CASE("structure build validates its input") {
  FieldPtr k = sextic();
  FieldElem alpha = FieldElem::generator(k);
  FieldElem one = FieldElem::one(k);

  SUBCASE("unit count must equal s") {
    try {
      OTStructure::build(k, {alpha});
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("rank mismatch") != std::string::npos);
    }
  }
  SUBCASE("non-units are rejected") {
    FieldElem u = alpha + FieldElem::constant(k, Rational(2));
    CHECK(u.norm() == Rational(49));
    try {
      OTStructure::build(k, {u, one - alpha});
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("not a unit") != std::string::npos);
    }
  }
  SUBCASE("units must be totally positive") {
    FieldElem u = alpha - one;
    CHECK(u.norm() == Rational(1));
    try {
      OTStructure::build(k, {u, one - alpha});
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("totally positive") != std::string::npos);
    }
  }
  SUBCASE("dependent unit pairs are rejected as inadmissible") {
    try {
      OTStructure::build(k, {alpha, alpha * alpha});
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("admissible") != std::string::npos);
    }
  }
  SUBCASE("a signature without complex places is out of scope") {
    FieldPtr quad = NumberField::make(Poly::from_int_coeffs({-2, 0, 1}));
    FieldElem u = FieldElem::from_int_coeffs(quad, {1, 1});
    try {
      OTStructure::build(quad, {u * u, u * u});
      FAIL("expected a domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Domain);
      CHECK(std::string(e.what()).find("does not support this construction") != std::string::npos);
    }
  }
  SUBCASE("a signature without real places is out of scope") {
    FieldPtr gauss = NumberField::make(Poly::from_int_coeffs({1, 0, 1}));
    CHECK_THROWS_AS(OTStructure::build(gauss, {}), Error);
  }
  SUBCASE("branch vector length must be s*t") {
    CHECK_THROWS_AS(OTStructure::build(k, sextic_units(k), PrecisionPolicy::from_env(),
                                       std::vector<long>{1, 0, 0}),
                    Error);
  }
}

TEST_CASE("the sextic structure matches its certified matrix values") {
  FieldPtr k = sextic();
  OTStructure ot = OTStructure::build(k, sextic_units(k));
  CHECK(ot.s == 2);
  CHECK(ot.t == 2);
  CHECK(ot.internal >= 2 * ot.prec);

  // B is the anti-diagonal of -1 entries
  CHECK(ot.B[0][0].contains(Rational(0)));
  CHECK(ot.B[0][1].contains(Rational(-1)));
  CHECK(ot.B[1][0].contains(Rational(-1)));
  CHECK(ot.B[1][1].contains(Rational(0)));
  for (int kk = 0; kk < 2; ++kk)
    for (int i = 0; i < 2; ++i) CHECK(ot.B[kk][i].width_below_2exp(-200));

  for (int kk = 0; kk < 2; ++kk) {
    RIval sum = ot.B[kk][0] + ot.B[kk][1];
    CHECK(sum.contains(Rational(-1)));
    CHECK(sum.width_below_2exp(-200));
  }

  CHECK(ot.adm.admissible);
  CHECK(!ot.adm.det.contains_zero());
  CHECK(ot.reconstruction_residual.certainly_less(Rational(Integer(1), Integer(1) << 100)));
}

TEST_CASE("matrices are invariants of the unit group, not the listing") {
  FieldPtr k = sextic();
  std::vector<FieldElem> base = sextic_units(k);
  OTStructure ot = OTStructure::build(k, base);

  SUBCASE("swapping the generators") {
    OTStructure other = OTStructure::build(k, {base[1], base[0]});
    RIval probe;
    for (int kk = 0; kk < 2; ++kk)
      for (int i = 0; i < 2; ++i) {
        CHECK(RIval::intersect(ot.B[kk][i], other.B[kk][i], probe));
        CHECK(RIval::intersect(ot.C[kk][i], other.C[kk][i], probe));
      }
  }
  SUBCASE("an index-one basis change") {
    OTStructure other = OTStructure::build(k, {base[0], base[0] * base[1]});
    RIval probe;
    for (int kk = 0; kk < 2; ++kk)
      for (int i = 0; i < 2; ++i) CHECK(RIval::intersect(ot.B[kk][i], other.B[kk][i], probe));
  }
}

TEST_CASE("branch shifts move C but never B") {
  FieldPtr k = sextic();
  std::vector<FieldElem> units = sextic_units(k);
  OTStructure base = OTStructure::build(k, units);
  OTStructure shifted =
      OTStructure::build(k, units, PrecisionPolicy::from_env(), std::vector<long>{1, 0, 0, 0});
  RIval probe;
  for (int kk = 0; kk < 2; ++kk)
    for (int i = 0; i < 2; ++i) CHECK(RIval::intersect(base.B[kk][i], shifted.B[kk][i], probe));
  bool all_c_equal = true;
  for (int kk = 0; kk < 2; ++kk)
    for (int i = 0; i < 2; ++i)
      if (!RIval::intersect(base.C[kk][i], shifted.C[kk][i], probe)) all_c_equal = false;
  CHECK(!all_c_equal);
  CHECK(shifted.reconstruction_residual.certainly_less(Rational(Integer(1), Integer(1) << 100)));
}

TEST_CASE("standalone matrix helpers agree with the structure build") {
  FieldPtr k = sextic();
  std::vector<FieldElem> units = sextic_units(k);
  OTStructure ot = OTStructure::build(k, units);
  IMat b = compute_b_matrix(*ot.emb, units, 128);
  IMat c = compute_c_matrix(*ot.emb, units, 128, {});
  RIval probe;
  for (int kk = 0; kk < 2; ++kk)
    for (int i = 0; i < 2; ++i) {
      CHECK(RIval::intersect(b[kk][i], ot.B[kk][i], probe));
      CHECK(RIval::intersect(c[kk][i], ot.C[kk][i], probe));
    }
  CHECK_THROWS_AS(compute_c_matrix(*ot.emb, units, 128, {0, 0, 0}), Error);
}

TEST_CASE("interval linear solve encloses the exact rational solution") {
  std::vector<std::vector<long>> av = {{3, 1, -2}, {1, 4, 0}, {-1, 2, 5}};
  std::vector<std::vector<long>> rv = {{1, 0}, {0, 1}, {2, -3}};
  Prec p = 192;
  IMat a(3, std::vector<RIval>(3, RIval(p)));
  IMat rhs(3, std::vector<RIval>(2, RIval(p)));
  std::vector<std::vector<Rational>> aq(3, std::vector<Rational>(3));
  std::vector<std::vector<Rational>> rq(3, std::vector<Rational>(2));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a[i][j] = RIval::from_long(av[i][j], p);
      aq[i][j] = Rational(av[i][j]);
    }
    for (int j = 0; j < 2; ++j) {
      rhs[i][j] = RIval::from_long(rv[i][j], p);
      rq[i][j] = Rational(rv[i][j]);
    }
  }
  RIval det;
  IMat x = solve_linear(a, rhs, det);
  std::vector<std::vector<Rational>> xq = exact_solve(aq, rq);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) CHECK(x[i][j].contains(xq[i][j]));
  // det(a) = 3(20-0) - 1(5-0) - 2(2+4) = 43
  CHECK(det.contains(Rational(43)));

  SUBCASE("a singular system raises a precision error") {
    IMat sing(2, std::vector<RIval>(2, RIval(p)));
    sing[0][0] = sing[0][1] = sing[1][0] = sing[1][1] = RIval::from_long(1, p);
    IMat one_rhs(2, std::vector<RIval>(1, RIval::from_long(1, p)));
    RIval d2;
    try {
      solve_linear(sing, one_rhs, d2);
      FAIL("expected a precision error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precision);
    }
  }
}
