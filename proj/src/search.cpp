#include "otlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "otlab/errors.hpp"
#include "otlab/metrics.hpp"

namespace otlab {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational coeff_abs_sum(const FieldElem& u) {
  Rational s = 0;
  for (const Rational& c : u.rep().coeffs()) s += abs(c);
  return s;
}

bool candidate_less(const UnitCandidate& a, const UnitCandidate& b) {
  Rational sa = coeff_abs_sum(a.u), sb = coeff_abs_sum(b.u);
  if (sa != sb) return sa < sb;
  int da = a.u.rep().degree(), db = b.u.rep().degree();
  if (da != db) return da < db;
  return a.u.rep().coeffs() < b.u.rep().coeffs();
}

std::vector<long> rep_int_coeffs(const FieldElem& u, int n) {
  std::vector<long> out(n, 0);
  const auto& cs = u.rep().coeffs();
  for (size_t i = 0; i < cs.size(); ++i) {
    Rational c = cs[i];
    c.canonicalize();
    if (c.get_den() != 1 || !c.get_num().fits_slong_p())
      throw_internal("unit rep coefficient is not a small integer");
    out[i] = c.get_num().get_si();
  }
  return out;
}

}  // namespace

std::vector<UnitCandidate> candidate_units(const EmbeddingSystem& emb, long bound) {
  if (bound < 1) throw_domain("candidate bound must be at least 1");
  int n = emb.field()->degree();
  long width = 2 * bound + 1;
  double log_total = n * std::log2(double(width));
  if (log_total > 24) throw_domain("candidate scan space too large");
  long total = 1;
  for (int i = 0; i < n; ++i) total *= width;

  FieldElem one = FieldElem::one(emb.field());
  std::vector<UnitCandidate> out;
  std::vector<long> c(n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int i = 0; i < n; ++i) {
      c[i] = -bound + rem % width;
      rem /= width;
    }
    FieldElem u = FieldElem::from_int_coeffs(emb.field(), c);
    if (u.is_zero()) continue;
    Rational nm = u.norm();
    if (nm != 1 && nm != -1) continue;
    UnitCandidate cand{u, false};
    if (!check_totally_positive(emb, u)) {
      cand.u = u * u;
      cand.squared = true;
    }
    if (cand.u == one) continue;
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), candidate_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const UnitCandidate& a, const UnitCandidate& b) {
                          return a.u == b.u;
                        }),
            out.end());
  return out;
}

std::optional<std::vector<UnitCandidate>> assemble_admissible(
    const EmbeddingSystem& emb, const std::vector<UnitCandidate>& cands) {
  int s = emb.s();
  int m = static_cast<int>(cands.size());
  if (m < s || s == 0) return std::nullopt;
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    std::vector<FieldElem> elems;
    std::vector<UnitCandidate> subset;
    for (int i : idx) {
      elems.push_back(cands[i].u);
      subset.push_back(cands[i]);
    }
    if (check_admissible(emb, elems).admissible) return subset;
    int p = s - 1;
    while (p >= 0 && idx[p] == m - (s - p)) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < s; ++q) idx[q] = idx[q - 1] + 1;
  }
  return std::nullopt;
}

SearchSpec search_spec_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw_input(std::string("search spec is not valid JSON: ") + e.what());
  }
  SearchSpec spec;
  if (!j.contains("family") || !j["family"].is_object())
    throw_input("search spec needs a family object");
  const auto& fam = j["family"];
  if (!fam.contains("degree") || !fam["degree"].is_number_integer())
    throw_input("family.degree must be an integer");
  spec.family.degree = fam["degree"].get<int>();
  if (spec.family.degree < 1 || spec.family.degree > 24)
    throw_input("family.degree must lie in 1..24");
  if (!fam.contains("coeff_ranges") || !fam["coeff_ranges"].is_array() ||
      fam["coeff_ranges"].size() != static_cast<size_t>(spec.family.degree))
    throw_input("family.coeff_ranges must list one [lo, hi] pair per slot 0..degree-1");
  for (const auto& r : fam["coeff_ranges"]) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw_input("coefficient range must be [lo, hi] with integers");
    spec.family.coeff_ranges.emplace_back(r[0].get<long>(), r[1].get<long>());
  }
  if (j.contains("target")) {
    spec.target = j["target"].get<std::string>();
    if (spec.target != "pluriclosed" && spec.target != "lcK")
      throw_input("target must be pluriclosed or lcK");
  }
  if (j.contains("unit_strategy")) {
    const auto& us = j["unit_strategy"];
    std::string kind = us.value("kind", "low_height_scan");
    if (kind == "low_height_scan") {
      spec.unit_bound = us.value("bound", 1L);
      if (spec.unit_bound < 1) throw_input("unit bound must be at least 1");
    } else if (kind == "given_list") {
      if (!us.contains("units") || !us["units"].is_array() || us["units"].empty())
        throw_input("given_list strategy needs a nonempty units array");
      for (const auto& u : us["units"]) spec.given_units.push_back(u.get<std::vector<long>>());
    } else {
      throw_input("unit_strategy.kind must be low_height_scan or given_list");
    }
  }
  if (j.contains("limits")) {
    spec.limits.max_candidates = j["limits"].value("max_candidates", -1L);
    spec.limits.max_hits = j["limits"].value("max_hits", -1L);
  }
  if (j.contains("precision")) {
    long p = j["precision"].get<long>();
    if (p < 64 || p > 1L << 20) throw_input("precision must lie in 64..2^20");
    spec.precision = static_cast<Prec>(p);
  }
  return spec;
}

namespace {

long family_size(const SearchFamily& fam) {
  long total = 1;
  for (const auto& [lo, hi] : fam.coeff_ranges) {
    if (hi < lo) return 0;
    long w = hi - lo + 1;
    if (total > 1000000 / w) throw_input("polynomial family too large to enumerate");
    total *= w;
  }
  return total;
}

std::vector<long> family_member(const SearchFamily& fam, long index) {
  std::vector<long> coeffs(fam.degree + 1, 0);
  long rem = index;
  for (int slot = 0; slot < fam.degree; ++slot) {
    const auto& [lo, hi] = fam.coeff_ranges[slot];
    long w = hi - lo + 1;
    coeffs[slot] = lo + rem % w;
    rem /= w;
  }
  coeffs[fam.degree] = 1;
  return coeffs;
}

ordered_json skip_line(long index, const std::vector<long>& coeffs, const std::string& reason) {
  ordered_json j;
  j["event"] = "skip";
  j["index"] = index;
  j["polynomial"] = coeffs;
  j["reason"] = reason;
  return j;
}

struct CandidateResult {
  std::string line;
  bool hit = false;
};

MetricVerdict decide_target(const std::string& target, const OTStructure& ot) {
  return target == "pluriclosed" ? decide_pluriclosed(ot) : decide_lck(ot);
}

CandidateResult evaluate_candidate(const SearchSpec& spec, long index) {
  std::vector<long> coeffs = family_member(spec.family, index);
  CandidateResult res;
  ordered_json line;
  try {
    Poly f = Poly::from_int_coeffs(coeffs);
    if (f.coeff(0) == 0) {
      res.line = skip_line(index, coeffs, "zero constant term").dump();
      return res;
    }
    IrredCertificate cert = irreducibility_certificate(f);
    if (cert.status == IrredStatus::Reducible) {
      res.line = skip_line(index, coeffs, "reducible").dump();
      return res;
    }
    if (cert.status == IrredStatus::Unknown) {
      res.line = skip_line(index, coeffs, "irreducibility unknown").dump();
      return res;
    }
    FieldPtr field = NumberField::make(f);
    PrecisionPolicy policy = PrecisionPolicy::from_env(spec.precision);
    EmbeddingSystem emb(field, policy);
    int s = emb.s(), t = emb.t();
    if (s == 0 || t == 0) {
      res.line = skip_line(index, coeffs,
                           "signature (" + std::to_string(s) + "," + std::to_string(t) +
                               ") excludes the construction")
                     .dump();
      return res;
    }
    if (spec.target == "pluriclosed" && s != t) {
      res.line = skip_line(index, coeffs,
                           "signature (" + std::to_string(s) + "," + std::to_string(t) +
                               ") excludes the target")
                     .dump();
      return res;
    }

    std::vector<UnitCandidate> cands;
    if (!spec.given_units.empty()) {
      for (const auto& rep : spec.given_units) {
        FieldElem u = FieldElem::from_int_coeffs(field, rep);
        Rational nm = u.norm();
        if (nm != 1 && nm != -1) {
          res.line = skip_line(index, coeffs, "given element is not a unit").dump();
          return res;
        }
        UnitCandidate cand{u, false};
        if (!check_totally_positive(emb, u)) {
          cand.u = u * u;
          cand.squared = true;
        }
        cands.push_back(std::move(cand));
      }
    } else {
      cands = candidate_units(emb, spec.unit_bound);
    }
    if (static_cast<int>(cands.size()) < s) {
      res.line = skip_line(index, coeffs, "not enough unit candidates").dump();
      return res;
    }

    // First certified subset in lexicographic order wins; one hit per field.
    int m = static_cast<int>(cands.size());
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::vector<FieldElem> elems;
      for (int i : idx) elems.push_back(cands[i].u);
      bool usable = false;
      try {
        usable = check_admissible(emb, elems).admissible;
      } catch (const Error&) {
        usable = false;
      }
      if (usable) {
        OTStructure ot = OTStructure::build(field, elems, policy);
        MetricVerdict v = decide_target(spec.target, ot);
        if (v.exists) {
          PrecisionPolicy doubled = PrecisionPolicy::from_env(2 * spec.precision);
          OTStructure ot2 = OTStructure::build(field, elems, doubled);
          MetricVerdict v2 = decide_target(spec.target, ot2);
          if (!v2.exists) throw_internal("hit failed the doubled-precision re-verification");
          line["event"] = "hit";
          line["index"] = index;
          line["polynomial"] = coeffs;
          line["signature"] = {{"s", s}, {"t", t}};
          ordered_json units = ordered_json::array();
          ordered_json squared = ordered_json::array();
          for (int i : idx) {
            units.push_back(rep_int_coeffs(cands[i].u, field->degree()));
            squared.push_back(cands[i].squared);
          }
          line["units"] = units;
          line["squared"] = squared;
          line["target"] = spec.target;
          line["exists"] = true;
          if (v.witness && !v.witness->permutation.empty())
            line["witness_permutation"] = v.witness->permutation;
          line["admissibility_det"] = {{"value", ot.adm.det.decimal(40)},
                                       {"pm", ot.adm.det.radius_decimal()}};
          line["precision"] = static_cast<long>(spec.precision);
          line["reverified_precision"] = static_cast<long>(2 * spec.precision);
          res.line = line.dump();
          res.hit = true;
          return res;
        }
      }
      int p = s - 1;
      while (p >= 0 && idx[p] == m - (s - p)) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < s; ++q) idx[q] = idx[q - 1] + 1;
    }
    res.line = skip_line(index, coeffs, "no admissible subset certified the target").dump();
    return res;
  } catch (const Error& e) {
    res.line =
        skip_line(index, coeffs, std::string("error (") + e.kind_name() + "): " + e.what())
            .dump();
    return res;
  }
}

struct Checkpoint {
  long next = 0;
  long examined = 0;
  long hits = 0;
};

void save_checkpoint(const std::string& path, const SearchSpec& spec, const Checkpoint& c) {
  ordered_json j;
  j["family_size"] = family_size(spec.family);
  j["target"] = spec.target;
  j["next_index"] = c.next;
  j["examined"] = c.examined;
  j["hits"] = c.hits;
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw_input("cannot write checkpoint file " + tmp);
    os << j.dump() << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw_input("cannot replace checkpoint file " + path);
}

bool load_checkpoint(const std::string& path, const SearchSpec& spec, Checkpoint& c) {
  std::ifstream is(path);
  if (!is) return false;
  ordered_json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw_input(std::string("checkpoint file is not valid JSON: ") + e.what());
  }
  if (j.value("family_size", -1L) != family_size(spec.family) ||
      j.value("target", std::string()) != spec.target)
    throw_input("checkpoint does not match the search spec");
  c.next = j.value("next_index", 0L);
  c.examined = j.value("examined", 0L);
  c.hits = j.value("hits", 0L);
  return true;
}

}  // namespace

SearchOutcome run_search(const SearchSpec& spec, std::ostream& out, const SearchOptions& opts) {
  if (spec.target != "pluriclosed" && spec.target != "lcK")
    throw_input("target must be pluriclosed or lcK");
  long total = family_size(spec.family);

  Checkpoint ck;
  if (opts.resume && !opts.checkpoint_path.empty()) load_checkpoint(opts.checkpoint_path, spec, ck);

  long end = total;
  if (opts.run_budget >= 0) end = std::min(end, ck.next + opts.run_budget);

  bool capped = false;
  auto cap_reached = [&]() {
    if (spec.limits.max_candidates >= 0 && ck.examined >= spec.limits.max_candidates) return true;
    if (spec.limits.max_hits >= 0 && ck.hits >= spec.limits.max_hits) return true;
    return false;
  };

  auto consume = [&](const CandidateResult& r, long index) {
    out << r.line << '\n';
    ck.examined += 1;
    if (r.hit) ck.hits += 1;
    ck.next = index + 1;
    if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, spec, ck);
  };

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || end - ck.next <= 1) {
    for (long index = ck.next; index < end; ++index) {
      if (cap_reached()) {
        capped = true;
        break;
      }
      consume(evaluate_candidate(spec, index), index);
    }
  } else {
    // Workers evaluate speculatively; the writer applies caps in index order,
    // so output and counters match the sequential run byte for byte.
    std::mutex mu;
    std::condition_variable cv;
    std::map<long, CandidateResult> ready;
    long dispatch = ck.next;
    bool stop = false;
    auto worker = [&]() {
      while (true) {
        long index;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (stop || dispatch >= end) return;
          index = dispatch++;
        }
        CandidateResult r = evaluate_candidate(spec, index);
        {
          std::lock_guard<std::mutex> lock(mu);
          ready.emplace(index, std::move(r));
        }
        cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (long index = ck.next; index < end; ++index) {
      if (cap_reached()) {
        capped = true;
        break;
      }
      CandidateResult r;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&]() { return ready.count(index) > 0; });
        r = std::move(ready[index]);
        ready.erase(index);
      }
      consume(r, index);
    }
    {
      std::lock_guard<std::mutex> lock(mu);
      stop = true;
    }
    for (auto& th : pool) th.join();
  }
  if (!capped && cap_reached()) capped = true;

  SearchOutcome outcome;
  outcome.examined = ck.examined;
  outcome.hits = ck.hits;
  outcome.exhausted = capped || ck.next >= total;
  return outcome;
}

}  // namespace otlab
