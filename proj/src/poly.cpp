#include "otlab/poly.hpp"

#include <sstream>

#include "otlab/errors.hpp"

namespace otlab {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(const Rational& c) {
  if (c == 0) return Poly();
  return Poly(std::vector<Rational>{c});
}

Poly Poly::x() { return Poly(std::vector<Rational>{0, 1}); }

Poly Poly::from_int_coeffs(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[k];
}

const Rational& Poly::leading() const {
  if (is_zero()) throw_domain("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

bool Poly::is_monic() const { return !is_zero() && coeffs_.back() == 1; }

bool Poly::is_integer() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rational> c(coeffs_);
  for (auto& v : c) v = -v;
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& c) const {
  if (c == 0) return Poly();
  std::vector<Rational> r(coeffs_);
  for (auto& v : r) v *= c;
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& v) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rational> c(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw_domain("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  int db = b.degree();
  int da = a.degree();
  if (da < db) {
    q = Poly();
    r = a;
    return;
  }
  std::vector<Rational> quo(da - db + 1, Rational(0));
  const Rational& lb = b.coeffs_.back();
  for (int k = da - db; k >= 0; --k) {
    Rational f = rem[k + db] / lb;
    quo[k] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.coeffs_[j];
  }
  q = Poly(std::move(quo));
  rem.resize(db > 0 ? db : 0);
  r = Poly(std::move(rem));
}

Poly Poly::mod(const Poly& b) const {
  Poly q, r;
  divmod(*this, b, q, r);
  return r;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

Rational Poly::resultant(const Poly& a, const Poly& b) {
  // Euclidean recursion: Res(a,b) = (-1)^(da*db) lc(b)^(da-dr) Res(b, a mod b).
  if (a.is_zero() || b.is_zero()) {
    if (a.degree() == 0) return 1;  // Res(c, 0) with c constant is empty product
    if (b.degree() == 0) return 1;
    return Rational(0);
  }
  if (a.degree() == 0) {
    Rational r(1);
    for (int i = 0; i < b.degree(); ++i) r *= a.coeffs_.back();
    return r;
  }
  if (b.degree() == 0) {
    Rational r(1);
    for (int i = 0; i < a.degree(); ++i) r *= b.coeffs_.back();
    return r;
  }
  Poly r = a.mod(b);
  int da = a.degree(), db = b.degree(), dr = r.degree();
  Rational sign = (da % 2 == 1 && db % 2 == 1) ? Rational(-1) : Rational(1);
  Rational lead(1);
  for (int i = 0; i < da - (dr < 0 ? 0 : dr); ++i) lead *= b.coeffs_.back();
  if (r.is_zero()) return Rational(0);
  return sign * lead * resultant(b, r);
}

bool Poly::is_squarefree() const {
  if (is_zero()) return false;
  if (degree() == 0) return true;
  return gcd(*this, derivative()).degree() == 0;
}

Poly Poly::primitive_integer() const {
  if (is_zero()) throw_domain("primitive part of the zero polynomial");
  Integer den(1);
  for (const auto& c : coeffs_) {
    Integer d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Rational> scaled(coeffs_);
  for (auto& c : scaled) {
    c *= Rational(den);
    c.canonicalize();
  }
  Integer content(0);
  for (const auto& c : scaled) {
    Integer num = c.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  for (auto& c : scaled) c /= Rational(content);
  Poly p(std::move(scaled));
  if (p.leading() < 0) p = -p;
  return p;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational ac = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit_coeff = (ac == 1) && k > 0;
    if (!unit_coeff) os << ac.get_str();
    if (k > 0) {
      if (!unit_coeff) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Rational poly_eval_exact(const Poly& f, const Rational& v) { return f.eval(v); }

}  // namespace otlab
