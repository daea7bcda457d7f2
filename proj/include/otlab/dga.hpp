#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "otlab/sym.hpp"

namespace otlab {

// Invariant co-frame generators for type (s,t), n = s+t:
// ids 0..s-1 are omega_1..omega_s, ids s..n-1 are gamma_1..gamma_t,
// and id+n is the conjugate of id.
using Word = std::vector<uint8_t>;

// Differential structure: d omega_k = (i/2) omega_k ^ conj(omega_k),
// d gamma_i = sum_k A_ki (omega_k - conj(omega_k)) ^ gamma_i with
// A_ki = (i/4) b_ki - (1/2) c_ki.
struct StructureConstants {
  int s = 0;
  int t = 0;
  std::vector<std::vector<SymPoly>> b;  // s x t
  std::vector<std::vector<SymPoly>> c;  // s x t

  // Free atoms; with eliminate_row_sum, b(k,t-1) is replaced by
  // -1 - sum_{i<t-1} b(k,i) so that every row of b sums to -1.
  static StructureConstants symbolic(int s, int t, bool eliminate_row_sum);
  static StructureConstants from_rational(int s, int t,
                                          const std::vector<std::vector<Rational>>& bv,
                                          const std::vector<std::vector<Rational>>& cv);
  // Rational b, free c atoms.
  static StructureConstants with_rational_b(int s, int t,
                                            const std::vector<std::vector<Rational>>& bv);
};

// Finite sum of wedge words in the generators with SymPoly coefficients.
class InvariantForm {
 public:
  InvariantForm() = default;
  InvariantForm(int s, int t) : s_(s), t_(t) {}

  static InvariantForm zero(int s, int t) { return InvariantForm(s, t); }
  static InvariantForm scalar(int s, int t, const SymPoly& c);
  static InvariantForm generator(int s, int t, int gid);

  int s() const { return s_; }
  int t() const { return t_; }
  int n() const { return s_ + t_; }

  // Sorts ids, returns sign in {-1,0,1}; 0 means a repeated letter.
  static std::pair<Word, int> normalize(std::vector<uint8_t> ids);

  void add_term(std::vector<uint8_t> ids, const SymPoly& coeff);

  InvariantForm operator-() const;
  InvariantForm operator+(const InvariantForm& o) const;
  InvariantForm operator-(const InvariantForm& o) const;
  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm wedge(const InvariantForm& o) const;
  InvariantForm scaled(const SymPoly& c) const;
  InvariantForm conj() const;

  // J acts on a (p,q) word as multiplication by i^(p-q).
  InvariantForm J() const;
  InvariantForm J_inv() const;

  // Interior product with the frame vector dual to gid.
  InvariantForm contract(int gid) const;

  SymPoly coeff(const Word& w) const;
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const InvariantForm& o) const;
  bool operator!=(const InvariantForm& o) const { return !(*this == o); }

  const std::map<Word, SymPoly>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  int s_ = 0;
  int t_ = 0;
  std::map<Word, SymPoly> terms_;
  void check_compatible(const InvariantForm& o) const;
};

InvariantForm d(const InvariantForm& f, const StructureConstants& sc);
// Components of d that raise the unbarred respectively barred letter count.
InvariantForm del(const InvariantForm& f, const StructureConstants& sc);
InvariantForm delbar(const InvariantForm& f, const StructureConstants& sc);
// d^c = -J^{-1} d J.
InvariantForm dc(const InvariantForm& f, const StructureConstants& sc);
InvariantForm ddc(const InvariantForm& f, const StructureConstants& sc);

// 1-based frame forms.
InvariantForm omega(int s, int t, int k);
InvariantForm omega_bar(int s, int t, int k);
InvariantForm gamma_form(int s, int t, int i);
InvariantForm gamma_bar(int s, int t, int i);

// 1-based alpha_p, p in 1..n: omega_p for p <= s, gamma_{p-s} otherwise.
int alpha_id(int s, int t, int p);
int alpha_bar_id(int s, int t, int p);

// Monomials built from the ordered sequence alpha_1, conj alpha_1, ...,
// alpha_n, conj alpha_n. m_pair(i,j) drops alpha_i and conj alpha_j and
// carries no prefactor. m_single drops one letter and carries i^(n+1);
// this orientation makes the codimension-one differential read
// d Omega_0 = -(i/2) sum a(k,k) m_k + (i/2) sum a(k,k) m_bar_k + gamma terms.
InvariantForm m_pair(int s, int t, int i, int j);
InvariantForm m_single(int s, int t, int i);
InvariantForm m_single_bar(int s, int t, int i);

// n x n Hermitian coefficient matrices (entries aRe/aIm atoms or constants).
std::vector<std::vector<SymPoly>> hermitian_identity(int n);
std::vector<std::vector<SymPoly>> hermitian_symbolic(int n);

// i * sum_{p,q} a[p][q] alpha_p ^ conj(alpha_q), the invariant (1,1) metric form.
InvariantForm metric_form(int s, int t, const std::vector<std::vector<SymPoly>>& a);

// For T = d J d of the metric form: contraction[i] is the double interior
// product by the i-th gamma pair; its omega_k ^ conj(omega_k) coefficient
// equals (1/2) * closed[i][k] with closed[i][k] = -a(s+i,s+i) b_ki (b_ki + 1).
// Holds for arbitrary b, c; checked internally.
struct PluriclosedObstruction {
  std::vector<std::vector<SymPoly>> closed;   // t x s
  std::vector<InvariantForm> contraction;     // size t
};
PluriclosedObstruction pluriclosed_obstruction(const StructureConstants& sc,
                                               const std::vector<std::vector<SymPoly>>& a);

// Coefficients of m_single(k) and m_single_bar(k) in d of the (n-1,n-1)
// form i^(n-1) sum a[p][q] m_pair(p,q). Requires row sums of b equal to -1;
// then m_coeff[k] = -(i/2) a(k,k) for k <= s, which blocks closedness.
struct BalancedObstruction {
  std::vector<SymPoly> m_coeff;      // size s
  std::vector<SymPoly> m_bar_coeff;  // size s
};
BalancedObstruction balanced_obstruction(const StructureConstants& sc,
                                         const std::vector<std::vector<SymPoly>>& a);

// Omega_0 = i^(n-1) sum_p m_pair(p,p), theta_0 = -(i/2) sum_k (omega_k - conj(omega_k)).
// Requires row sums of b equal to -1.
struct LcbCheck {
  InvariantForm theta0;
  InvariantForm residual;  // d(Omega_0) - theta_0 ^ Omega_0
  bool lee_closed = false;
  bool verified = false;
};
LcbCheck verify_lcb(const StructureConstants& sc);

}  // namespace otlab
