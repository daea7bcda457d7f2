#include "otlab/embeddings.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "otlab/errors.hpp"

namespace otlab {

PrecisionPolicy PrecisionPolicy::from_env(Prec initial) {
  PrecisionPolicy p;
  p.initial = std::max<Prec>(initial, 64);
  if (const char* env = std::getenv("OTLAB_PRECISION_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 64)
      p.cap = v;
    else
      throw_input("OTLAB_PRECISION_CAP must be an integer >= 64");
  }
  if (p.initial > p.cap) p.initial = p.cap;
  return p;
}

ExponentVector ExponentVector::from_support(int length, const std::vector<int>& support_1based) {
  std::vector<long> v(length, 0);
  for (int idx : support_1based) {
    if (idx < 1 || idx > length) throw_domain("support index out of range");
    v[idx - 1] = 1;
  }
  return ExponentVector(std::move(v));
}

long ExponentVector::abs_sum() const {
  long s = 0;
  for (long x : e) s += std::abs(x);
  return s;
}

bool ExponentVector::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
}

std::vector<int> ExponentVector::support_1based() const {
  std::vector<int> s;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) s.push_back(static_cast<int>(i) + 1);
  return s;
}

const char* rel_status_name(RelStatus s) {
  switch (s) {
    case RelStatus::Verified: return "verified";
    case RelStatus::Refuted: return "refuted";
    case RelStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

EmbeddingSystem::EmbeddingSystem(FieldPtr field, PrecisionPolicy policy)
    : field_(std::move(field)), policy_(policy) {
  if (!field_) throw_domain("embedding system without a field");
  root_bits_ = std::max<long>(policy_.initial, 64) + 16;
  roots_ = isolate_roots(field_->defining_poly(), root_bits_);
  s_ = static_cast<int>(roots_.real_roots.size());
  t_ = static_cast<int>(roots_.complex_reps.size());
}

void EmbeddingSystem::validate_elem(const FieldElem& a) const {
  if (!a.field()) throw_domain("uninitialized field element");
  if (a.field() != field_ && !(a.field()->defining_poly() == field_->defining_poly()))
    throw_domain("element does not belong to this embedding system's field");
}

CIval EmbeddingSystem::enclosure_for(int index, long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (bits > root_bits_) {
    for (auto& r : roots_.real_roots) refine_real_root(field_->defining_poly(), r, bits);
    for (auto& z : roots_.complex_reps) refine_complex_root(field_->defining_poly(), z, bits);
    root_bits_ = bits;
  }
  if (index <= s_) return CIval::from_real(roots_.real_roots[index - 1]);
  if (index <= s_ + t_) return roots_.complex_reps[index - s_ - 1];
  return roots_.complex_reps[index - s_ - t_ - 1].conj();
}

CIval EmbeddingSystem::embed(const FieldElem& a, int index, Prec prec) const {
  validate_elem(a);
  if (index < 1 || index > n()) throw_domain("embedding index out of range");
  long bits = std::max<long>(prec + 16, root_bits_);
  for (int round = 0; round < 24; ++round) {
    CIval root = enclosure_for(index, bits);
    CIval val = eval_poly(a.rep(), CIval(root.re.rounded_to(bits), root.im.rounded_to(bits)));
    if (val.width_below_2exp(-static_cast<long>(prec))) return val;
    bits = bits * 2 + 32;
  }
  throw_internal("embedding evaluation failed to reach the requested width");
}

RIval EmbeddingSystem::embed_real(const FieldElem& a, int k, Prec prec) const {
  if (k < 1 || k > s_) throw_domain("real embedding index out of range");
  return embed(a, k, prec).re;
}

RelationVerdict EmbeddingSystem::certify_relation(const std::vector<FieldElem>& units,
                                                  const ExponentVector& ev) const {
  if (static_cast<int>(ev.e.size()) != n())
    throw_domain("exponent vector length does not match s + 2t");
  if (units.empty()) throw_domain("certify_relation needs at least one generator");
  for (const auto& u : units) {
    validate_elem(u);
    Rational nu = u.norm();
    if (nu != 1 && nu != -1) throw_domain("generator is not a unit (|norm| != 1)");
  }

  if (ev.is_zero()) {
    RelationVerdict v;
    v.status = RelStatus::Verified;
    v.precision_used = 0;
    v.residual_bound = "0";
    v.detail = "empty product";
    return v;
  }

  // Degree of the Galois closure bounds the degree of the product over Q.
  // n! overflows long past n = 20; the clamp only widens the gap estimate.
  long n_deg = field_->degree();
  long D = 1;
  for (long i = 2; i <= n_deg; ++i) {
    if (D > (1L << 40)) break;
    D *= i;
  }
  long abs_sum = ev.abs_sum();

  RelationVerdict verdict;
  mpfr_t max_hi;
  mpfr_init2(max_hi, 64);
  mpfr_set_zero(max_hi, 1);
  Prec max_prec = 0;

  for (size_t ui = 0; ui < units.size(); ++ui) {
    const FieldElem& u = units[ui];
    // Liouville gap: a nonzero algebraic beta of degree <= D satisfies
    // |beta| >= exp(-D*h(beta)), and h(prod - 1) <= abs_sum*h(u) + log 2.
    double h_u = u.height_bound();
    double delta_bits_d = D * (abs_sum * h_u + 0.6931471805599454) / 0.6931471805599453 + 2;
    long delta_bits = delta_bits_d > 1e9 ? -1 : static_cast<long>(delta_bits_d) + 1;

    bool unit_done = false;
    for (Prec p = std::max<Prec>(policy_.initial, 64); !unit_done; p *= 2) {
      if (p > policy_.cap) break;
      Prec work = p + 64;
      CIval prod = CIval::from_rational(Rational(1), work);
      for (int i = 0; i < n(); ++i) {
        if (ev.e[i] == 0) continue;
        CIval base = embed(u, i + 1, work);
        prod = prod * base.pow_int(ev.e[i]);
      }
      RIval residual = (prod - CIval::from_rational(Rational(1), work)).abs();
      if (residual.is_positive()) {
        verdict.status = RelStatus::Refuted;
        verdict.precision_used = p;
        verdict.residual_bound = RIval::point(residual.lo(), 64).decimal(4);
        verdict.detail = "generator " + std::to_string(ui + 1) + " violates the relation";
        mpfr_clear(max_hi);
        return verdict;
      }
      if (delta_bits > 0 && residual.width_below_2exp(-delta_bits)) {
        // residual.lo <= 0 here, so hi <= width <= 2^-delta_bits < gap
        if (mpfr_cmp(residual.hi(), max_hi) > 0) mpfr_set(max_hi, residual.hi(), MPFR_RNDU);
        max_prec = std::max(max_prec, p);
        unit_done = true;
      }
    }
    if (!unit_done) {
      verdict.status = RelStatus::Inconclusive;
      verdict.precision_used = policy_.cap;
      verdict.residual_bound = "";
      verdict.detail = "precision cap reached for generator " + std::to_string(ui + 1);
      mpfr_clear(max_hi);
      return verdict;
    }
  }

  verdict.status = RelStatus::Verified;
  verdict.precision_used = max_prec;
  verdict.residual_bound = mpfr_zero_p(max_hi) ? "0" : RIval::point(max_hi, 64).decimal(4);
  verdict.detail = "all generators verified";
  mpfr_clear(max_hi);
  return verdict;
}

std::vector<ExponentVector> EmbeddingSystem::detect_relations(const std::vector<FieldElem>& units,
                                                              int max_support,
                                                              long exponent_bound) const {
  if (exponent_bound < 1) throw_domain("exponent bound must be >= 1");
  if (max_support < 0) throw_domain("max support must be >= 0");
  int m = n();
  max_support = std::min(max_support, m);

  std::vector<ExponentVector> found;
  std::vector<int> support;
  // lexicographic enumeration of supports of each size
  auto scan_support = [&](const std::vector<int>& sup) {
    std::vector<long> entries(sup.size(), 1);
    while (true) {
      ExponentVector ev;
      ev.e.assign(m, 0);
      for (size_t i = 0; i < sup.size(); ++i) ev.e[sup[i]] = entries[i];
      RelationVerdict v = certify_relation(units, ev);
      if (v.status == RelStatus::Inconclusive)
        throw_precision("relation detection inconclusive at the precision cap (support size " +
                        std::to_string(sup.size()) + ")");
      if (v.status == RelStatus::Verified) found.push_back(std::move(ev));
      size_t pos = 0;
      while (pos < entries.size() && entries[pos] == exponent_bound) entries[pos++] = 1;
      if (pos == entries.size()) break;
      ++entries[pos];
    }
  };
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    if (remaining == 0) {
      if (!support.empty()) scan_support(support);
      return;
    }
    for (int i = start; i < m; ++i) {
      support.push_back(i);
      rec(i + 1, remaining - 1);
      support.pop_back();
    }
  };
  for (int size = 1; size <= max_support; ++size) rec(0, size);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace otlab
