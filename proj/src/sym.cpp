#include "otlab/sym.hpp"

#include <sstream>

#include "otlab/errors.hpp"

namespace otlab {

GaussRat GaussRat::i_pow(long k) {
  long r = ((k % 4) + 4) % 4;
  switch (r) {
    case 0: return GaussRat(Rational(1), Rational(0));
    case 1: return GaussRat(Rational(0), Rational(1));
    case 2: return GaussRat(Rational(-1), Rational(0));
    default: return GaussRat(Rational(0), Rational(-1));
  }
}

GaussRat GaussRat::operator/(const GaussRat& o) const {
  Rational n = o.re * o.re + o.im * o.im;
  if (n == 0) throw_domain("division by zero in Q(i)");
  GaussRat num = *this * o.conj();
  return GaussRat(num.re / n, num.im / n);
}

std::string GaussRat::to_string() const {
  std::ostringstream os;
  if (is_zero()) return "0";
  if (im == 0) {
    os << re.get_str();
  } else if (re == 0) {
    os << "(" << im.get_str() << ")*i";
  } else {
    os << "(" << re.get_str() << (im > 0 ? "+" : "") << im.get_str() << "*i)";
  }
  return os.str();
}

uint16_t atom_id(AtomKind kind, int first, int second) {
  if (first < 0 || first >= 64 || second < 0 || second >= 64)
    throw_domain("atom index out of range");
  return static_cast<uint16_t>((static_cast<uint16_t>(kind) << 12) | (first << 6) | second);
}

AtomKind atom_kind(uint16_t id) { return static_cast<AtomKind>(id >> 12); }
int atom_first(uint16_t id) { return (id >> 6) & 63; }
int atom_second(uint16_t id) { return id & 63; }

std::string atom_name(uint16_t id) {
  static const char* names[4] = {"b", "c", "aRe", "aIm"};
  std::ostringstream os;
  os << names[id >> 12] << "(" << atom_first(id) + 1 << "," << atom_second(id) + 1 << ")";
  return os.str();
}

void SymPoly::add(const Monomial& m, const GaussRat& g) {
  if (g.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, g);
  } else {
    it->second = it->second + g;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymPoly SymPoly::from_gauss(const GaussRat& g) {
  SymPoly p;
  p.add(Monomial{}, g);
  return p;
}

SymPoly SymPoly::from_rational(const Rational& r) { return from_gauss(GaussRat(r)); }

SymPoly SymPoly::atom(AtomKind kind, int first, int second) {
  SymPoly p;
  Monomial m;
  m[atom_id(kind, first, second)] = 1;
  p.add(m, GaussRat(Rational(1)));
  return p;
}

SymPoly SymPoly::operator-() const {
  SymPoly p;
  for (const auto& [m, g] : terms_) p.terms_.emplace(m, -g);
  return p;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly p = *this;
  p += o;
  return p;
}

SymPoly SymPoly::operator-(const SymPoly& o) const {
  SymPoly p = *this;
  p -= o;
  return p;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [m, g] : o.terms_) add(m, g);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  for (const auto& [m, g] : o.terms_) add(m, -g);
  return *this;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
  SymPoly p;
  for (const auto& [m1, g1] : terms_) {
    for (const auto& [m2, g2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [id, e] : m2) m[id] += e;
      p.add(m, g1 * g2);
    }
  }
  return p;
}

SymPoly SymPoly::conj() const {
  SymPoly p;
  for (const auto& [m, g] : terms_) p.terms_.emplace(m, g.conj());
  return p;
}

bool SymPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.empty();
}

GaussRat SymPoly::constant_value() const {
  if (!is_constant()) throw_domain("symbolic polynomial is not constant");
  if (terms_.empty()) return GaussRat();
  return terms_.begin()->second;
}

GaussRat SymPoly::eval(const std::map<uint16_t, Rational>& values) const {
  GaussRat total;
  for (const auto& [m, g] : terms_) {
    Rational factor(1);
    for (const auto& [id, e] : m) {
      auto it = values.find(id);
      if (it == values.end()) throw_domain("no value supplied for atom " + atom_name(id));
      Rational pw(1);
      for (uint32_t k = 0; k < e; ++k) pw *= it->second;
      factor *= pw;
    }
    total = total + g * GaussRat(factor);
  }
  return total;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, g] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << g.to_string();
    for (const auto& [id, e] : m) {
      os << "*" << atom_name(id);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

SymPoly operator*(const GaussRat& g, const SymPoly& p) { return SymPoly::from_gauss(g) * p; }

}  // namespace otlab
