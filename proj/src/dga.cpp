#include "otlab/dga.hpp"

#include <algorithm>
#include <sstream>

#include "otlab/errors.hpp"

namespace otlab {

namespace {

void check_type(int s, int t) {
  if (s < 0 || t < 0 || s + t < 1 || s + t > 60) throw_domain("unsupported type (s,t)");
}

void check_st_matrix(int s, int t, const std::vector<std::vector<SymPoly>>& m, const char* what) {
  if (static_cast<int>(m.size()) != s) throw_domain(std::string(what) + " has wrong row count");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != t) throw_domain(std::string(what) + " has wrong column count");
}

}  // namespace

StructureConstants StructureConstants::symbolic(int s, int t, bool eliminate_row_sum) {
  check_type(s, t);
  StructureConstants sc;
  sc.s = s;
  sc.t = t;
  sc.b.assign(s, std::vector<SymPoly>(t));
  sc.c.assign(s, std::vector<SymPoly>(t));
  for (int k = 0; k < s; ++k) {
    for (int i = 0; i < t; ++i) {
      sc.c[k][i] = SymPoly::atom(AtomKind::C, k, i);
      if (eliminate_row_sum && i == t - 1) {
        SymPoly last = SymPoly::from_rational(Rational(-1));
        for (int j = 0; j < t - 1; ++j) last -= SymPoly::atom(AtomKind::B, k, j);
        sc.b[k][i] = last;
      } else {
        sc.b[k][i] = SymPoly::atom(AtomKind::B, k, i);
      }
    }
  }
  return sc;
}

StructureConstants StructureConstants::from_rational(int s, int t,
                                                     const std::vector<std::vector<Rational>>& bv,
                                                     const std::vector<std::vector<Rational>>& cv) {
  check_type(s, t);
  if (static_cast<int>(bv.size()) != s || static_cast<int>(cv.size()) != s)
    throw_domain("structure constant matrix has wrong row count");
  StructureConstants sc;
  sc.s = s;
  sc.t = t;
  sc.b.assign(s, std::vector<SymPoly>(t));
  sc.c.assign(s, std::vector<SymPoly>(t));
  for (int k = 0; k < s; ++k) {
    if (static_cast<int>(bv[k].size()) != t || static_cast<int>(cv[k].size()) != t)
      throw_domain("structure constant matrix has wrong column count");
    for (int i = 0; i < t; ++i) {
      sc.b[k][i] = SymPoly::from_rational(bv[k][i]);
      sc.c[k][i] = SymPoly::from_rational(cv[k][i]);
    }
  }
  return sc;
}

StructureConstants StructureConstants::with_rational_b(int s, int t,
                                                       const std::vector<std::vector<Rational>>& bv) {
  check_type(s, t);
  if (static_cast<int>(bv.size()) != s) throw_domain("structure constant matrix has wrong row count");
  StructureConstants sc;
  sc.s = s;
  sc.t = t;
  sc.b.assign(s, std::vector<SymPoly>(t));
  sc.c.assign(s, std::vector<SymPoly>(t));
  for (int k = 0; k < s; ++k) {
    if (static_cast<int>(bv[k].size()) != t)
      throw_domain("structure constant matrix has wrong column count");
    for (int i = 0; i < t; ++i) {
      sc.b[k][i] = SymPoly::from_rational(bv[k][i]);
      sc.c[k][i] = SymPoly::atom(AtomKind::C, k, i);
    }
  }
  return sc;
}

std::pair<Word, int> InvariantForm::normalize(std::vector<uint8_t> ids) {
  int sign = 1;
  // Insertion sort; parity of the number of swaps gives the sign.
  for (size_t i = 1; i < ids.size(); ++i) {
    uint8_t v = ids[i];
    size_t j = i;
    while (j > 0 && ids[j - 1] > v) {
      ids[j] = ids[j - 1];
      --j;
      sign = -sign;
    }
    ids[j] = v;
  }
  for (size_t i = 1; i < ids.size(); ++i)
    if (ids[i] == ids[i - 1]) return {Word{}, 0};
  return {ids, sign};
}

void InvariantForm::add_term(std::vector<uint8_t> ids, const SymPoly& coeff) {
  if (coeff.is_zero()) return;
  for (uint8_t g : ids)
    if (g >= 2 * n()) throw_domain("generator id out of range for type");
  auto [w, sign] = normalize(std::move(ids));
  if (sign == 0) return;
  SymPoly add = sign == 1 ? coeff : -coeff;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(std::move(w), std::move(add));
  } else {
    it->second += add;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

InvariantForm InvariantForm::scalar(int s, int t, const SymPoly& c) {
  check_type(s, t);
  InvariantForm f(s, t);
  f.add_term({}, c);
  return f;
}

InvariantForm InvariantForm::generator(int s, int t, int gid) {
  check_type(s, t);
  if (gid < 0 || gid >= 2 * (s + t)) throw_domain("generator id out of range for type");
  InvariantForm f(s, t);
  f.add_term({static_cast<uint8_t>(gid)}, SymPoly::from_rational(Rational(1)));
  return f;
}

void InvariantForm::check_compatible(const InvariantForm& o) const {
  if (s_ != o.s_ || t_ != o.t_) throw_domain("forms have different types");
}

InvariantForm InvariantForm::operator-() const {
  InvariantForm f(s_, t_);
  for (const auto& [w, c] : terms_) f.terms_.emplace(w, -c);
  return f;
}

InvariantForm InvariantForm::operator+(const InvariantForm& o) const {
  InvariantForm f = *this;
  f += o;
  return f;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

InvariantForm InvariantForm::operator-(const InvariantForm& o) const { return *this + (-o); }

InvariantForm InvariantForm::wedge(const InvariantForm& o) const {
  check_compatible(o);
  InvariantForm f(s_, t_);
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : o.terms_) {
      std::vector<uint8_t> ids = w1;
      ids.insert(ids.end(), w2.begin(), w2.end());
      f.add_term(std::move(ids), c1 * c2);
    }
  }
  return f;
}

InvariantForm InvariantForm::scaled(const SymPoly& c) const {
  InvariantForm f(s_, t_);
  for (const auto& [w, cw] : terms_) {
    SymPoly p = cw * c;
    if (!p.is_zero()) f.terms_.emplace(w, std::move(p));
  }
  return f;
}

InvariantForm InvariantForm::conj() const {
  InvariantForm f(s_, t_);
  int nn = n();
  for (const auto& [w, c] : terms_) {
    std::vector<uint8_t> ids;
    ids.reserve(w.size());
    for (uint8_t g : w) ids.push_back(static_cast<uint8_t>(g < nn ? g + nn : g - nn));
    f.add_term(std::move(ids), c.conj());
  }
  return f;
}

InvariantForm InvariantForm::J() const {
  InvariantForm f(s_, t_);
  int nn = n();
  for (const auto& [w, c] : terms_) {
    long p = 0, q = 0;
    for (uint8_t g : w) (g < nn ? p : q)++;
    f.terms_.emplace(w, SymPoly::from_gauss(GaussRat::i_pow(p - q)) * c);
  }
  return f;
}

InvariantForm InvariantForm::J_inv() const {
  InvariantForm f(s_, t_);
  int nn = n();
  for (const auto& [w, c] : terms_) {
    long p = 0, q = 0;
    for (uint8_t g : w) (g < nn ? p : q)++;
    f.terms_.emplace(w, SymPoly::from_gauss(GaussRat::i_pow(q - p)) * c);
  }
  return f;
}

InvariantForm InvariantForm::contract(int gid) const {
  if (gid < 0 || gid >= 2 * n()) throw_domain("generator id out of range for type");
  InvariantForm f(s_, t_);
  for (const auto& [w, c] : terms_) {
    auto it = std::find(w.begin(), w.end(), static_cast<uint8_t>(gid));
    if (it == w.end()) continue;
    size_t pos = static_cast<size_t>(it - w.begin());
    Word rest;
    rest.reserve(w.size() - 1);
    rest.insert(rest.end(), w.begin(), it);
    rest.insert(rest.end(), it + 1, w.end());
    SymPoly add = (pos % 2 == 0) ? c : -c;
    auto jt = f.terms_.find(rest);
    if (jt == f.terms_.end()) {
      f.terms_.emplace(std::move(rest), std::move(add));
    } else {
      jt->second += add;
      if (jt->second.is_zero()) f.terms_.erase(jt);
    }
  }
  return f;
}

SymPoly InvariantForm::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? SymPoly() : it->second;
}

bool InvariantForm::operator==(const InvariantForm& o) const {
  return s_ == o.s_ && t_ == o.t_ && terms_ == o.terms_;
}

std::string InvariantForm::to_string() const {
  if (terms_.empty()) return "0";
  int nn = n();
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << "  +  ";
    first = false;
    os << "[" << c.to_string() << "]";
    for (uint8_t g : w) {
      os << " ";
      bool bar = g >= nn;
      int base = bar ? g - nn : g;
      if (base < s_)
        os << (bar ? "cw" : "w") << base + 1;
      else
        os << (bar ? "cg" : "g") << base - s_ + 1;
    }
  }
  return os.str();
}

namespace {

// Differentials of each generator as 2-forms, indexed by generator id.
std::vector<InvariantForm> generator_differentials(const StructureConstants& sc) {
  int s = sc.s, t = sc.t, nn = s + t;
  check_st_matrix(s, t, sc.b, "b");
  check_st_matrix(s, t, sc.c, "c");
  std::vector<InvariantForm> dg(2 * nn, InvariantForm(s, t));
  GaussRat half_i(Rational(0), Rational(1, 2));
  for (int k = 0; k < s; ++k)
    dg[k].add_term({static_cast<uint8_t>(k), static_cast<uint8_t>(k + nn)},
                   SymPoly::from_gauss(half_i));
  for (int i = 0; i < t; ++i) {
    int g = s + i;
    for (int k = 0; k < s; ++k) {
      SymPoly a = SymPoly::from_gauss(GaussRat(Rational(0), Rational(1, 4))) * sc.b[k][i] -
                  SymPoly::from_gauss(GaussRat(Rational(1, 2))) * sc.c[k][i];
      dg[g].add_term({static_cast<uint8_t>(k), static_cast<uint8_t>(g)}, a);
      dg[g].add_term({static_cast<uint8_t>(k + nn), static_cast<uint8_t>(g)}, -a);
    }
  }
  for (int g = 0; g < nn; ++g) dg[g + nn] = dg[g].conj();
  return dg;
}

enum class DPart { Full, Del, DelBar };

InvariantForm d_impl(const InvariantForm& f, const StructureConstants& sc, DPart part) {
  if (f.s() != sc.s || f.t() != sc.t) throw_domain("form and structure constants disagree on type");
  int nn = f.n();
  auto dg = generator_differentials(sc);
  InvariantForm out(f.s(), f.t());
  for (const auto& [w, c] : f.terms()) {
    for (size_t p = 0; p < w.size(); ++p) {
      const InvariantForm& dgen = dg[w[p]];
      for (const auto& [u, cu] : dgen.terms()) {
        if (part != DPart::Full) {
          // The inserted letter is the one not equal to w[p].
          uint8_t inserted = (u[0] == w[p]) ? u[1] : u[0];
          bool barred = inserted >= nn;
          if (part == DPart::Del && barred) continue;
          if (part == DPart::DelBar && !barred) continue;
        }
        std::vector<uint8_t> ids;
        ids.reserve(w.size() + 1);
        ids.insert(ids.end(), w.begin(), w.begin() + p);
        ids.insert(ids.end(), u.begin(), u.end());
        ids.insert(ids.end(), w.begin() + p + 1, w.end());
        SymPoly coeff = c * cu;
        out.add_term(std::move(ids), (p % 2 == 0) ? coeff : -coeff);
      }
    }
  }
  return out;
}

}  // namespace

InvariantForm d(const InvariantForm& f, const StructureConstants& sc) {
  return d_impl(f, sc, DPart::Full);
}

InvariantForm del(const InvariantForm& f, const StructureConstants& sc) {
  return d_impl(f, sc, DPart::Del);
}

InvariantForm delbar(const InvariantForm& f, const StructureConstants& sc) {
  return d_impl(f, sc, DPart::DelBar);
}

InvariantForm dc(const InvariantForm& f, const StructureConstants& sc) {
  return -(d(f.J(), sc).J_inv());
}

InvariantForm ddc(const InvariantForm& f, const StructureConstants& sc) {
  return d(dc(f, sc), sc);
}

InvariantForm omega(int s, int t, int k) {
  if (k < 1 || k > s) throw_domain("omega index out of range");
  return InvariantForm::generator(s, t, k - 1);
}

InvariantForm omega_bar(int s, int t, int k) {
  if (k < 1 || k > s) throw_domain("omega index out of range");
  return InvariantForm::generator(s, t, s + t + k - 1);
}

InvariantForm gamma_form(int s, int t, int i) {
  if (i < 1 || i > t) throw_domain("gamma index out of range");
  return InvariantForm::generator(s, t, s + i - 1);
}

InvariantForm gamma_bar(int s, int t, int i) {
  if (i < 1 || i > t) throw_domain("gamma index out of range");
  return InvariantForm::generator(s, t, 2 * s + t + i - 1);
}

int alpha_id(int s, int t, int p) {
  if (p < 1 || p > s + t) throw_domain("alpha index out of range");
  return p - 1;
}

int alpha_bar_id(int s, int t, int p) {
  if (p < 1 || p > s + t) throw_domain("alpha index out of range");
  return s + t + p - 1;
}

namespace {

// alpha_1, conj alpha_1, ..., alpha_n, conj alpha_n as generator ids.
std::vector<uint8_t> full_sequence(int n) {
  std::vector<uint8_t> seq;
  seq.reserve(2 * n);
  for (int p = 0; p < n; ++p) {
    seq.push_back(static_cast<uint8_t>(p));
    seq.push_back(static_cast<uint8_t>(p + n));
  }
  return seq;
}

std::vector<uint8_t> sequence_without(int n, std::vector<int> dropped) {
  std::vector<uint8_t> seq = full_sequence(n);
  std::vector<uint8_t> out;
  out.reserve(seq.size());
  for (uint8_t g : seq)
    if (std::find(dropped.begin(), dropped.end(), static_cast<int>(g)) == dropped.end())
      out.push_back(g);
  return out;
}

}  // namespace

InvariantForm m_pair(int s, int t, int i, int j) {
  int n = s + t;
  InvariantForm f(s, t);
  f.add_term(sequence_without(n, {alpha_id(s, t, i), alpha_bar_id(s, t, j)}),
             SymPoly::from_rational(Rational(1)));
  return f;
}

InvariantForm m_single(int s, int t, int i) {
  int n = s + t;
  InvariantForm f(s, t);
  f.add_term(sequence_without(n, {alpha_id(s, t, i)}),
             SymPoly::from_gauss(GaussRat::i_pow(n + 1)));
  return f;
}

InvariantForm m_single_bar(int s, int t, int i) {
  int n = s + t;
  InvariantForm f(s, t);
  f.add_term(sequence_without(n, {alpha_bar_id(s, t, i)}),
             SymPoly::from_gauss(GaussRat::i_pow(n + 1)));
  return f;
}

std::vector<std::vector<SymPoly>> hermitian_identity(int n) {
  std::vector<std::vector<SymPoly>> a(n, std::vector<SymPoly>(n));
  for (int p = 0; p < n; ++p) a[p][p] = SymPoly::from_rational(Rational(1));
  return a;
}

std::vector<std::vector<SymPoly>> hermitian_symbolic(int n) {
  std::vector<std::vector<SymPoly>> a(n, std::vector<SymPoly>(n));
  GaussRat iu = GaussRat::i_unit();
  for (int p = 0; p < n; ++p) {
    a[p][p] = SymPoly::atom(AtomKind::ARe, p, p);
    for (int q = p + 1; q < n; ++q) {
      SymPoly re = SymPoly::atom(AtomKind::ARe, p, q);
      SymPoly im = SymPoly::atom(AtomKind::AIm, p, q);
      a[p][q] = re + SymPoly::from_gauss(iu) * im;
      a[q][p] = re - SymPoly::from_gauss(iu) * im;
    }
  }
  return a;
}

namespace {

void check_hermitian(int n, const std::vector<std::vector<SymPoly>>& a) {
  if (static_cast<int>(a.size()) != n) throw_domain("coefficient matrix has wrong size");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw_domain("coefficient matrix has wrong size");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (a[p][q] != a[q][p].conj()) throw_domain("coefficient matrix is not Hermitian");
}

}  // namespace

InvariantForm metric_form(int s, int t, const std::vector<std::vector<SymPoly>>& a) {
  int n = s + t;
  check_hermitian(n, a);
  InvariantForm f(s, t);
  SymPoly iu = SymPoly::from_gauss(GaussRat::i_unit());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      f.add_term({static_cast<uint8_t>(p), static_cast<uint8_t>(n + q)}, iu * a[p][q]);
  return f;
}

PluriclosedObstruction pluriclosed_obstruction(const StructureConstants& sc,
                                               const std::vector<std::vector<SymPoly>>& a) {
  int s = sc.s, t = sc.t, n = s + t;
  check_hermitian(n, a);
  InvariantForm om = metric_form(s, t, a);
  InvariantForm T = d(d(om, sc).J(), sc);

  PluriclosedObstruction ob;
  ob.closed.assign(t, std::vector<SymPoly>(s));
  ob.contraction.reserve(t);
  SymPoly one = SymPoly::from_rational(Rational(1));
  SymPoly half = SymPoly::from_rational(Rational(1, 2));
  for (int i = 0; i < t; ++i) {
    int g = s + i;
    InvariantForm ci = T.contract(g + n).contract(g);
    for (int k = 0; k < s; ++k) {
      ob.closed[i][k] = -(a[g][g] * sc.b[k][i] * (sc.b[k][i] + one));
      Word diag{static_cast<uint8_t>(k), static_cast<uint8_t>(k + n)};
      if (ci.coeff(diag) != half * ob.closed[i][k])
        throw_internal("pluriclosed obstruction coefficient mismatch");
    }
    ob.contraction.push_back(std::move(ci));
  }
  return ob;
}

namespace {

// Coefficient of the normalized single-drop monomial in D, divided by the
// monomial's own unit prefactor.
SymPoly coefficient_of(const InvariantForm& D, const InvariantForm& mono) {
  if (mono.terms().size() != 1) throw_internal("monomial form expected");
  const auto& [w, c] = *mono.terms().begin();
  if (!c.is_constant()) throw_internal("monomial form expected");
  return D.coeff(w) * SymPoly::from_gauss(GaussRat(Rational(1)) / c.constant_value());
}

SymPoly row_sum_b(const StructureConstants& sc, int k) {
  SymPoly sum;
  for (int i = 0; i < sc.t; ++i) sum += sc.b[k][i];
  return sum;
}

void require_row_sums(const StructureConstants& sc, const char* what) {
  SymPoly minus_one = SymPoly::from_rational(Rational(-1));
  for (int k = 0; k < sc.s; ++k)
    if (row_sum_b(sc, k) != minus_one)
      throw_domain(std::string(what) + " requires b row sums equal to -1");
}

}  // namespace

BalancedObstruction balanced_obstruction(const StructureConstants& sc,
                                         const std::vector<std::vector<SymPoly>>& a) {
  int s = sc.s, t = sc.t, n = s + t;
  check_hermitian(n, a);
  require_row_sums(sc, "balanced obstruction");

  InvariantForm om0(s, t);
  SymPoly pref = SymPoly::from_gauss(GaussRat::i_pow(n - 1));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) om0 += m_pair(s, t, p + 1, q + 1).scaled(pref * a[p][q]);
  InvariantForm D = d(om0, sc);

  BalancedObstruction ob;
  ob.m_coeff.reserve(s);
  ob.m_bar_coeff.reserve(s);
  SymPoly half_i = SymPoly::from_gauss(GaussRat(Rational(0), Rational(1, 2)));
  for (int k = 0; k < s; ++k) {
    SymPoly mk = coefficient_of(D, m_single(s, t, k + 1));
    SymPoly mkb = coefficient_of(D, m_single_bar(s, t, k + 1));
    if (mk != -(half_i * a[k][k]) || mkb != half_i * a[k][k])
      throw_internal("balanced obstruction coefficient mismatch");
    ob.m_coeff.push_back(std::move(mk));
    ob.m_bar_coeff.push_back(std::move(mkb));
  }
  return ob;
}

LcbCheck verify_lcb(const StructureConstants& sc) {
  int s = sc.s, t = sc.t, n = s + t;
  require_row_sums(sc, "lcb verification");

  InvariantForm om0(s, t);
  for (int p = 0; p < n; ++p)
    om0 += m_pair(s, t, p + 1, p + 1).scaled(SymPoly::from_gauss(GaussRat::i_pow(n - 1)));

  LcbCheck out;
  out.theta0 = InvariantForm(s, t);
  GaussRat half_i(Rational(0), Rational(1, 2));
  for (int k = 0; k < s; ++k) {
    out.theta0.add_term({static_cast<uint8_t>(k)}, SymPoly::from_gauss(-half_i));
    out.theta0.add_term({static_cast<uint8_t>(k + n)}, SymPoly::from_gauss(half_i));
  }
  out.residual = d(om0, sc) - out.theta0.wedge(om0);
  out.lee_closed = d(out.theta0, sc).is_zero();
  out.verified = out.residual.is_zero() && out.lee_closed;
  return out;
}

}  // namespace otlab
