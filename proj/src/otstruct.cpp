#include "otlab/otstruct.hpp"

#include <algorithm>

#include "otlab/errors.hpp"

namespace otlab {

bool check_totally_positive(const EmbeddingSystem& emb, const FieldElem& u) {
  if (u.is_zero()) throw_domain("zero element has no sign");
  for (int k = 1; k <= emb.s(); ++k) {
    for (Prec p = emb.policy().initial;; p *= 2) {
      if (p > emb.policy().cap)
        throw_precision("sign of a real embedding undecided at the precision cap");
      RIval v = emb.embed_real(u, k, p);
      if (v.is_negative()) return false;
      if (v.is_positive()) break;
    }
  }
  return true;
}

std::vector<RIval> l_map(const EmbeddingSystem& emb, const FieldElem& u, Prec prec) {
  std::vector<RIval> out;
  out.reserve(emb.s());
  for (int k = 1; k <= emb.s(); ++k) {
    for (Prec p = prec + 16;; p *= 2) {
      if (p > 64 * static_cast<Prec>(emb.policy().cap))
        throw_precision("l-map component failed to converge");
      RIval v = emb.embed_real(u, k, p);
      if (!v.is_positive()) {
        if (v.is_negative()) throw_domain("l-map requires a totally positive argument");
        continue;  // widen until the sign resolves
      }
      RIval lg = v.log();
      if (lg.width_below_2exp(-static_cast<long>(prec))) {
        out.push_back(std::move(lg));
        break;
      }
    }
  }
  return out;
}

IMat solve_linear(const IMat& a, const IMat& rhs, RIval& det) {
  size_t n = a.size();
  if (n == 0 || rhs.size() != n) throw_domain("solve_linear dimension mismatch");
  size_t m = rhs[0].size();
  Prec prec = a[0][0].precision();

  IMat aug(n, std::vector<RIval>(n + m, RIval(prec)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    for (size_t j = 0; j < m; ++j) aug[i][n + j] = rhs[i][j];
  }

  det = RIval::from_long(1, prec);
  for (size_t col = 0; col < n; ++col) {
    // pivot: row with the largest |midpoint|, certified nonzero
    size_t pivot = col;
    double best = -1e18;
    for (size_t r = col; r < n; ++r) {
      RIval mid = aug[r][col].midpoint();
      double v = mpfr_get_d(mid.lo(), MPFR_RNDN);
      if (std::abs(v) > best) {
        best = std::abs(v);
        pivot = r;
      }
    }
    if (pivot != col) {
      std::swap(aug[pivot], aug[col]);
      det = -det;
    }
    if (aug[col][col].contains_zero())
      throw_precision("pivot interval contains zero in Gaussian elimination");
    det = det * aug[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      RIval factor = aug[r][col] / aug[col][col];
      for (size_t j = col; j < n + m; ++j) aug[r][j] = aug[r][j] - factor * aug[col][j];
    }
  }

  IMat x(n, std::vector<RIval>(m, RIval(prec)));
  for (size_t j = 0; j < m; ++j) {
    for (size_t ri = n; ri-- > 0;) {
      RIval acc = aug[ri][n + j];
      for (size_t k2 = ri + 1; k2 < n; ++k2) acc = acc - aug[ri][k2] * x[k2][j];
      x[ri][j] = acc / aug[ri][ri];
    }
  }
  return x;
}

namespace {

IMat log_lattice(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec) {
  size_t s = units.size();
  IMat L(s);
  for (size_t j = 0; j < s; ++j) L[j] = l_map(emb, units[j], prec);
  return L;
}

// 2 log |sigma_{s+i}(u_j)| at width <= 2^(-prec)
IMat log_moduli(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec) {
  IMat M(units.size(), std::vector<RIval>(emb.t(), RIval(prec)));
  for (size_t j = 0; j < units.size(); ++j)
    for (int i = 0; i < emb.t(); ++i) {
      for (Prec p = prec + 16;; p *= 2) {
        if (p > 64 * static_cast<Prec>(emb.policy().cap))
          throw_precision("log modulus failed to converge");
        RIval a2 = emb.embed(units[j], emb.s() + 1 + i, p).abs2();
        if (!a2.is_positive()) continue;
        RIval lg = a2.log();
        if (lg.width_below_2exp(-static_cast<long>(prec))) {
          M[j][i] = std::move(lg);
          break;
        }
      }
    }
  return M;
}

IMat arg_matrix(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec,
                const std::vector<long>& branch) {
  int t = emb.t();
  IMat A(units.size(), std::vector<RIval>(t, RIval(prec)));
  for (size_t j = 0; j < units.size(); ++j)
    for (int i = 0; i < t; ++i) {
      for (Prec p = prec + 16;; p *= 2) {
        if (p > 64 * static_cast<Prec>(emb.policy().cap))
          throw_precision("principal argument undecided near the branch cut");
        CIval z = emb.embed(units[j], emb.s() + 1 + i, p);
        RIval arg(p);
        try {
          arg = z.arg();
        } catch (const Error& err) {
          if (err.kind() == ErrorKind::Precision) continue;
          throw;
        }
        if (!arg.width_below_2exp(-static_cast<long>(prec))) continue;
        long m = branch[j * t + i];
        if (m != 0) arg = arg + RIval::from_long(2 * m, p) * RIval::pi(p);
        A[j][i] = std::move(arg);
        break;
      }
    }
  return A;
}

}  // namespace

AdmissibilityCert check_admissible(const EmbeddingSystem& emb,
                                   const std::vector<FieldElem>& units) {
  AdmissibilityCert cert;
  FieldElem one = FieldElem::one(emb.field());
  for (size_t i = 0; i < units.size(); ++i) {
    if (units[i] == one || units[i] == -one) {
      cert.admissible = false;
      cert.note = "generator " + std::to_string(i + 1) + " is a root of unity";
      return cert;
    }
  }
  // exact power dependencies u_i^a = u_j^{+-b} kill the rank
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = i + 1; j < units.size(); ++j)
      for (long a2 = 1; a2 <= 6; ++a2)
        for (long b2 = 1; b2 <= 6; ++b2) {
          FieldElem lhs = units[i].pow(a2);
          if (lhs == units[j].pow(b2) || lhs == units[j].pow(-b2)) {
            cert.admissible = false;
            cert.note = "exact dependency: u" + std::to_string(i + 1) + "^" + std::to_string(a2) +
                        " = u" + std::to_string(j + 1) + "^(+-" + std::to_string(b2) + ")";
            return cert;
          }
        }

  PrecisionPolicy pol = emb.policy();
  for (Prec p = std::max<Prec>(pol.initial, 128);; p *= 2) {
    if (p > pol.cap)
      throw_precision(
          "log lattice determinant enclosure still contains zero at the "
          "precision cap; possible genuine rank drop");
    try {
      IMat L = log_lattice(emb, units, p);
      IMat empty_rhs(L.size(), std::vector<RIval>(0));
      RIval det;
      solve_linear(L, empty_rhs, det);
      cert.admissible = true;
      cert.det = det;
      return cert;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Precision) throw;
    }
  }
}

IMat compute_b_matrix(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec) {
  IMat L = log_lattice(emb, units, prec);
  IMat M = log_moduli(emb, units, prec);
  RIval det;
  return solve_linear(L, M, det);
}

IMat compute_c_matrix(const EmbeddingSystem& emb, const std::vector<FieldElem>& units, Prec prec,
                      const std::vector<long>& branch) {
  std::vector<long> br = branch;
  if (br.empty()) br.assign(units.size() * emb.t(), 0);
  if (br.size() != units.size() * static_cast<size_t>(emb.t()))
    throw_input("branch vector must have one entry per (generator, complex place)");
  IMat L = log_lattice(emb, units, prec);
  IMat A = arg_matrix(emb, units, prec, br);
  RIval det;
  return solve_linear(L, A, det);
}

OTStructure OTStructure::build(FieldPtr field, std::vector<FieldElem> units,
                               PrecisionPolicy policy, std::vector<long> branch) {
  OTStructure ot;
  ot.field = field;
  ot.emb = std::make_shared<EmbeddingSystem>(field, policy);
  ot.s = ot.emb->s();
  ot.t = ot.emb->t();
  ot.prec = policy.initial;

  if (ot.s < 1 || ot.t < 1)
    throw_domain("signature (" + std::to_string(ot.s) + "," + std::to_string(ot.t) +
                 ") does not support this construction; need s >= 1 and t >= 1");
  if (static_cast<int>(units.size()) != ot.s)
    throw_input("rank mismatch: need exactly s = " + std::to_string(ot.s) +
                " unit generators, got " + std::to_string(units.size()));
  for (size_t i = 0; i < units.size(); ++i) {
    const FieldElem& u = units[i];
    if (u.is_zero()) throw_input("generator " + std::to_string(i + 1) + " is zero");
    Rational nu = u.norm();
    if (nu != 1 && nu != -1)
      throw_input("generator " + std::to_string(i + 1) + " is not a unit (norm " + nu.get_str() +
                  ")");
    if (!check_totally_positive(*ot.emb, u))
      throw_input("generator " + std::to_string(i + 1) + " is not totally positive");
  }
  ot.units = std::move(units);

  ot.branch = std::move(branch);
  if (ot.branch.empty()) ot.branch.assign(ot.s * ot.t, 0);
  if (ot.branch.size() != static_cast<size_t>(ot.s) * ot.t)
    throw_input("branch vector must have s*t entries");

  ot.adm = check_admissible(*ot.emb, ot.units);
  if (!ot.adm.admissible) throw_input("unit group is not admissible: " + ot.adm.note);

  // matrices at doubled precision so downstream screens have slack
  Prec target = std::max<Prec>(2 * ot.prec, ot.prec + 128);
  for (Prec p = target;; p *= 2) {
    if (p > 64 * static_cast<Prec>(policy.cap))
      throw_precision("matrix solve failed to stabilize below the cap");
    try {
      IMat L = log_lattice(*ot.emb, ot.units, p);
      IMat M = log_moduli(*ot.emb, ot.units, p);
      IMat A = arg_matrix(*ot.emb, ot.units, p, ot.branch);
      RIval det;
      IMat rhs(L.size());
      for (size_t j = 0; j < L.size(); ++j) {
        rhs[j] = M[j];
        for (auto& av : A[j]) rhs[j].push_back(av);
      }
      IMat X = solve_linear(L, rhs, det);
      bool narrow = true;
      for (const auto& row : X)
        for (const auto& v : row)
          if (!v.width_below_2exp(-static_cast<long>(ot.prec) - 8)) narrow = false;
      if (!narrow) continue;
      ot.internal = p;
      ot.L = std::move(L);
      ot.B.assign(ot.s, std::vector<RIval>(ot.t, RIval(p)));
      ot.C.assign(ot.s, std::vector<RIval>(ot.t, RIval(p)));
      for (int k = 0; k < ot.s; ++k)
        for (int i = 0; i < ot.t; ++i) {
          ot.B[k][i] = X[k][i];
          ot.C[k][i] = X[k][ot.t + i];
        }
      break;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Precision) throw;
    }
  }

  // row sums of B must contain -1 (norm 1 and rank s force it)
  for (int k = 0; k < ot.s; ++k) {
    RIval sum(ot.internal);
    for (int i = 0; i < ot.t; ++i) sum = sum + ot.B[k][i];
    if (!sum.contains(Rational(-1)))
      throw_internal("row sum of B does not contain -1; matrix solve inconsistent");
  }

  // reconstruct each complex embedding value from B, C and compare
  RIval max_resid(ot.internal);
  for (int j = 0; j < ot.s; ++j)
    for (int i = 0; i < ot.t; ++i) {
      RIval half_log(ot.internal), angle(ot.internal);
      for (int k = 0; k < ot.s; ++k) {
        half_log = half_log + ot.B[k][i] * ot.L[j][k];
        angle = angle + ot.C[k][i] * ot.L[j][k];
      }
      half_log = half_log * RIval::from_rational(Rational(1, 2), ot.internal);
      long m = ot.branch[j * ot.t + i];
      if (m != 0) angle = angle - RIval::from_long(2 * m, ot.internal) * RIval::pi(ot.internal);
      RIval mod = half_log.exp();
      CIval recon(mod * angle.cos(), mod * angle.sin());
      CIval actual = ot.emb->embed(ot.units[j], ot.s + 1 + i, ot.internal);
      RIval diff = (recon - actual).abs();
      max_resid = RIval::hull(max_resid, diff);
    }
  ot.reconstruction_residual = max_resid;
  if (!max_resid.width_below_2exp(-static_cast<long>(ot.prec) / 2))
    throw_internal("embedding reconstruction from B and C exceeded tolerance");

  return ot;
}

}  // namespace otlab
