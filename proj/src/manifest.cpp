#include "otlab/manifest.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "otlab/errors.hpp"

namespace otlab {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string>& known_requests() {
  static const std::set<std::string> k = {"structure", "metrics", "cohomology", "dga-verify",
                                          "dim4"};
  return k;
}

long require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw_input(where + " must be an integer");
  return j.get<long>();
}

std::vector<long> int_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw_input(where + " must be an array of integers");
  std::vector<long> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(require_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Manifest Manifest::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw_input(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw_input("manifest must be a JSON object");

  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (key != "polynomial" && key != "units" && key != "precision" && key != "requests" &&
        key != "hodge_pairs" && key != "assert_irreducible" && key != "branch")
      throw_input("unknown manifest key \"" + key + "\"");
  }

  Manifest m;
  if (!j.contains("polynomial")) throw_input("manifest requires \"polynomial\"");
  m.polynomial = int_array(j["polynomial"], "polynomial");
  if (m.polynomial.size() < 2) throw_input("polynomial must have degree >= 1");

  if (!j.contains("units")) throw_input("manifest requires \"units\"");
  if (!j["units"].is_array() || j["units"].empty())
    throw_input("units must be a nonempty array of coefficient arrays");
  for (size_t i = 0; i < j["units"].size(); ++i) {
    std::vector<long> rep = int_array(j["units"][i], "units[" + std::to_string(i) + "]");
    if (rep.empty()) throw_input("units[" + std::to_string(i) + "] must be nonempty");
    m.units.push_back(std::move(rep));
  }

  if (j.contains("precision")) {
    long p = require_int(j["precision"], "precision");
    if (p < 64 || p > (1L << 20)) throw_input("precision must lie in [64, 2^20]");
    m.precision = static_cast<Prec>(p);
  }

  if (j.contains("requests")) {
    if (!j["requests"].is_array()) throw_input("requests must be an array of section names");
    for (const auto& r : j["requests"]) {
      if (!r.is_string()) throw_input("requests entries must be strings");
      std::string name = r.get<std::string>();
      if (!known_requests().count(name)) throw_input("unknown request \"" + name + "\"");
      if (std::find(m.requests.begin(), m.requests.end(), name) != m.requests.end())
        throw_input("duplicate request \"" + name + "\"");
      m.requests.push_back(std::move(name));
    }
  }

  if (j.contains("hodge_pairs")) {
    if (!j["hodge_pairs"].is_array()) throw_input("hodge_pairs must be an array of [p, q] pairs");
    for (size_t i = 0; i < j["hodge_pairs"].size(); ++i) {
      std::vector<long> pq = int_array(j["hodge_pairs"][i], "hodge_pairs[" + std::to_string(i) + "]");
      if (pq.size() != 2 || pq[0] < 0 || pq[1] < 0)
        throw_input("hodge_pairs entries must be nonnegative [p, q] pairs");
      m.hodge_pairs.emplace_back(static_cast<int>(pq[0]), static_cast<int>(pq[1]));
    }
  }

  if (j.contains("assert_irreducible")) {
    if (!j["assert_irreducible"].is_boolean()) throw_input("assert_irreducible must be a boolean");
    m.assert_irreducible = j["assert_irreducible"].get<bool>();
  }

  if (j.contains("branch")) m.branch = int_array(j["branch"], "branch");

  return m;
}

std::string Manifest::to_json_text() const {
  json j;
  j["polynomial"] = polynomial;
  j["units"] = units;
  j["precision"] = static_cast<long>(precision);
  j["requests"] = requests;
  json hp = json::array();
  for (const auto& [p, q] : hodge_pairs) hp.push_back({p, q});
  j["hodge_pairs"] = hp;
  j["assert_irreducible"] = assert_irreducible;
  j["branch"] = branch;
  return j.dump(2) + "\n";
}

bool Manifest::requested(const std::string& what) const {
  if (!known_requests().count(what)) throw_internal("unknown section name \"" + what + "\"");
  if (requests.empty()) return what != "dim4";
  return std::find(requests.begin(), requests.end(), what) != requests.end();
}

}  // namespace otlab
