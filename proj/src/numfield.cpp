#include "otlab/numfield.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdint>

#include "otlab/errors.hpp"

namespace otlab {

namespace {

// Arithmetic in F_p[x] for small p, dense coefficients, constant term first.
using PolyMod = std::vector<uint64_t>;

PolyMod trim_mod(PolyMod a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

PolyMod reduce_mod(const Poly& f, uint64_t p) {
  PolyMod r;
  r.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    Integer num = c.get_num();  // integer poly assumed
    unsigned long m = mpz_fdiv_ui(num.get_mpz_t(), p);
    r.push_back(m);
  }
  return trim_mod(std::move(r));
}

PolyMod mulmod(const PolyMod& a, const PolyMod& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyMod c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return trim_mod(std::move(c));
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  // p prime, a nonzero
  uint64_t r = 1, e = p - 2, base = a % p;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

PolyMod rem_mod(PolyMod a, const PolyMod& b, uint64_t p) {
  uint64_t lb_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    uint64_t f = a.back() * lb_inv % p;
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t sub = f * b[j] % p;
      a[shift + j] = (a[shift + j] + p - sub) % p;
    }
    a = trim_mod(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

PolyMod gcd_mod(PolyMod a, PolyMod b, uint64_t p) {
  while (!b.empty()) {
    PolyMod r = rem_mod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PolyMod deriv_mod(const PolyMod& a, uint64_t p) {
  if (a.size() <= 1) return {};
  PolyMod d(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
  return trim_mod(std::move(d));
}

// x^(p^k) mod f, exponent p^k fits in 64 bits for p <= 97, k <= 8
PolyMod x_pow_pk(const PolyMod& f, uint64_t p, int k, uint64_t pval) {
  uint64_t e = 1;
  for (int i = 0; i < k; ++i) e *= pval;
  PolyMod base{0, 1};
  base = rem_mod(std::move(base), f, p);
  PolyMod acc{1};
  while (e) {
    if (e & 1) acc = rem_mod(mulmod(acc, base, p), f, p);
    base = rem_mod(mulmod(base, base, p), f, p);
    e >>= 1;
  }
  return acc;
}

PolyMod sub_mod(PolyMod a, const PolyMod& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  return trim_mod(std::move(a));
}

// Irreducibility of squarefree f over F_p: x^(p^n) == x mod f and
// gcd(x^(p^(n/q)) - x, f) = 1 for each prime q | n.
bool irreducible_mod_p(const PolyMod& f, uint64_t p) {
  int n = static_cast<int>(f.size()) - 1;
  PolyMod xp = x_pow_pk(f, p, n, p);
  PolyMod x_only{0, 1};
  x_only = rem_mod(std::move(x_only), f, p);
  if (sub_mod(xp, x_only, p) != PolyMod{}) return false;
  std::vector<int> prime_divs;
  int m = n;
  for (int q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      prime_divs.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) prime_divs.push_back(m);
  for (int q : prime_divs) {
    PolyMod g = x_pow_pk(f, p, n / q, p);
    g = sub_mod(std::move(g), x_only, p);
    PolyMod d = gcd_mod(g, f, p);
    if (d.size() != 1) return false;
  }
  return true;
}

std::vector<Integer> positive_divisors(Integer v) {
  v = abs(v);
  std::vector<Integer> divs;
  if (v == 0) return divs;
  for (Integer d(1); d * d <= v; ++d) {
    if (v % d == 0) {
      divs.push_back(d);
      Integer q = v / d;
      if (q != d) divs.push_back(q);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

IrredCertificate irreducibility_certificate(const Poly& f) {
  if (f.is_zero() || f.degree() < 1) throw_input("defining polynomial must have degree >= 1");
  if (!f.is_monic()) throw_input("defining polynomial must be monic");
  if (!f.is_integer()) throw_input("defining polynomial must have integer coefficients");

  int n = f.degree();
  if (n == 1) return {IrredStatus::Certified, "degree 1", {}, {}};

  // Rational root test; monic integer, so candidate roots are integer
  // divisors of the constant term.
  Rational a0 = f.coeff(0);
  if (a0 == 0) return {IrredStatus::Reducible, "rational root", {}, Rational(0)};
  if (mpz_sizeinbase(a0.get_num().get_mpz_t(), 2) <= 48) {
    for (const Integer& d : positive_divisors(a0.get_num())) {
      for (int sign : {1, -1}) {
        Rational r = Rational(d) * sign;
        if (f.eval(r) == 0) return {IrredStatus::Reducible, "rational root", {}, r};
      }
    }
    if (n <= 3) return {IrredStatus::Certified, "degree <= 3, no rational root", {}, {}};
  }

  static const uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (uint64_t p : primes) {
    PolyMod fp = reduce_mod(f, p);
    if (fp.size() != static_cast<size_t>(n) + 1) continue;  // leading coeff vanished (never, monic)
    // p | disc(f) iff f mod p not squarefree; such primes carry no signal
    PolyMod g = gcd_mod(fp, deriv_mod(fp, p), p);
    if (g.size() != 1) continue;
    if (irreducible_mod_p(fp, p))
      return {IrredStatus::Certified, "irreducible mod p", p, {}};
  }
  return {IrredStatus::Unknown, "no modular certificate among primes <= 97", {}, {}};
}

FieldPtr NumberField::make(Poly f, bool assert_irreducible) {
  IrredCertificate cert = irreducibility_certificate(f);
  if (cert.status == IrredStatus::Reducible) {
    std::string root = cert.rational_root ? cert.rational_root->get_str() : "?";
    throw_input("defining polynomial is reducible (rational root " + root + ")");
  }
  if (cert.status == IrredStatus::Unknown) {
    if (!assert_irreducible)
      throw_input(
          "irreducibility could not be certified; pass assert-irreducible to "
          "proceed on your own responsibility");
    cert.status = IrredStatus::Asserted;
    cert.route = "asserted by caller (no modular certificate)";
  }
  return FieldPtr(new NumberField(std::move(f), std::move(cert)));
}

FieldElem::FieldElem(FieldPtr field, Poly rep) : field_(std::move(field)), rep_(std::move(rep)) {
  if (!field_) throw_domain("field element without a field");
  rep_ = rep_.mod(field_->defining_poly());
}

FieldElem FieldElem::generator(FieldPtr field) { return FieldElem(std::move(field), Poly::x()); }

FieldElem FieldElem::one(FieldPtr field) { return FieldElem(std::move(field), Poly::constant(1)); }

FieldElem FieldElem::constant(FieldPtr field, const Rational& c) {
  return FieldElem(std::move(field), Poly::constant(c));
}

FieldElem FieldElem::from_int_coeffs(FieldPtr field, const std::vector<long>& coeffs) {
  return FieldElem(std::move(field), Poly::from_int_coeffs(coeffs));
}

void FieldElem::require_same_field(const FieldElem& o) const {
  if (!field_ || !o.field_) throw_domain("uninitialized field element");
  if (field_ != o.field_ && !(field_->defining_poly() == o.field_->defining_poly()))
    throw_domain("field elements belong to different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require_same_field(o);
  return FieldElem(field_, rep_ + o.rep_);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  require_same_field(o);
  return FieldElem(field_, rep_ - o.rep_);
}

FieldElem FieldElem::operator-() const { return FieldElem(field_, -rep_); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require_same_field(o);
  return FieldElem(field_, rep_ * o.rep_);
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw_domain("inverse of zero");
  // Extended Euclid on (f, rep): u*f + v*rep = g with g constant since f is
  // irreducible and rep nonzero of smaller degree.
  Poly r0 = field_->defining_poly(), r1 = rep_;
  Poly v0, v1 = Poly::constant(1);
  while (!r1.is_zero()) {
    Poly q, r2;
    Poly::divmod(r0, r1, q, r2);
    Poly v2 = v0 - q * v1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.degree() != 0)
    throw_domain("element is a zero divisor; defining polynomial not irreducible");
  return FieldElem(field_, v0 * (Rational(1) / r0.coeff(0)));
}

FieldElem FieldElem::pow(long e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
  FieldElem acc = one(field_);
  while (k) {
    if (k & 1ul) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
  require_same_field(o);
  return rep_ == o.rep_;
}

Rational FieldElem::norm() const {
  if (is_zero()) return Rational(0);
  const Poly& f = field_->defining_poly();
  Rational res = Poly::resultant(f, rep_);
  Rational lc_pow(1);
  for (int i = 0; i < rep_.degree(); ++i) lc_pow *= f.leading();
  return res / lc_pow;
}

std::vector<std::vector<Rational>> FieldElem::mult_matrix() const {
  int n = field_->degree();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  Poly col = rep_;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= col.degree(); ++i) m[i][j] = col.coeff(i);
    col = (col * Poly::x()).mod(field_->defining_poly());
  }
  return m;
}

Poly FieldElem::char_poly() const {
  int n = field_->degree();
  auto M = mult_matrix();
  // Faddeev-LeVerrier: N_1 = M, c_{n-1} = -tr N_1,
  // N_{k+1} = M (N_k + c_{n-k} I), c_{n-k-1} = -tr(N_{k+1})/(k+1).
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  auto N = M;
  Rational tr(0);
  for (int i = 0; i < n; ++i) tr += N[i][i];
  c[n - 1] = -tr;
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i) N[i][i] += c[n - k];
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (M[i][l] == 0) continue;
        for (int j = 0; j < n; ++j) next[i][j] += M[i][l] * N[l][j];
      }
    N = std::move(next);
    tr = 0;
    for (int i = 0; i < n; ++i) tr += N[i][i];
    c[n - k - 1] = -tr / Rational(k + 1);
  }
  return Poly(std::move(c));
}

Rational FieldElem::norm_via_matrix() const {
  Poly cp = char_poly();
  Rational det = cp.coeff(0);
  if (field_->degree() % 2 == 1) det = -det;
  return det;
}

double FieldElem::height_bound() const {
  if (is_zero()) throw_domain("height of zero");
  Poly prim = char_poly().primitive_integer();
  Rational sum(0);
  for (const auto& c : prim.coeffs()) sum += c * c;
  mpfr_t v;
  mpfr_init2(v, 64);
  mpfr_set_q(v, sum.get_mpq_t(), MPFR_RNDU);
  mpfr_log(v, v, MPFR_RNDU);
  mpfr_div_ui(v, v, 2, MPFR_RNDU);
  double h = mpfr_get_d(v, MPFR_RNDU);
  mpfr_clear(v);
  return h < 0 ? 0.0 : h;
}

}  // namespace otlab
