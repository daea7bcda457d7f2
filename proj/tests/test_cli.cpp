#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "otlab/errors.hpp"
#include "otlab/report.hpp"

using namespace otlab;
using nlohmann::ordered_json;

namespace {

bool parse_rejects(const std::string& text, const std::string& needle) {
  try {
    Manifest::from_json_text(text);
    return false;
  } catch (const Error& e) {
    return e.kind() == ErrorKind::Input &&
           std::string(e.what()).find(needle) != std::string::npos;
  }
}

void check_no_floats(const ordered_json& j) {
  REQUIRE(!j.is_number_float());
  if (j.is_object() || j.is_array())
    for (const auto& child : j) check_no_floats(child);
}

size_t count_of(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("manifest parsing is strict") {
  CHECK(parse_rejects("{", "not valid JSON"));
  CHECK(parse_rejects("[1, 2]", "must be a JSON object"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "color": 3})",
                      "unknown manifest key"));
  CHECK(parse_rejects(R"({"units": [[0, 1]]})", "requires \"polynomial\""));
  CHECK(parse_rejects(R"({"polynomial": [7], "units": [[0, 1]]})", "degree >= 1"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1]})", "requires \"units\""));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": []})", "nonempty"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1.5], "units": [[0, 1]]})", "integer"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "precision": 32})",
                      "precision"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "precision": 2097152})",
                      "precision"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "requests": ["spectra"]})",
                      "unknown request"));
  CHECK(parse_rejects(
      R"({"polynomial": [0, 1], "units": [[0, 1]], "requests": ["metrics", "metrics"]})",
      "duplicate request"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "hodge_pairs": [[1]]})",
                      "hodge_pairs"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "hodge_pairs": [[-1, 0]]})",
                      "hodge_pairs"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "assert_irreducible": 1})",
                      "boolean"));
  CHECK(parse_rejects(R"({"polynomial": [0, 1], "units": [[0, 1]], "branch": ["x"]})",
                      "integer"));
}

TEST_CASE("manifests round-trip through their JSON form") {
  Manifest m = Manifest::from_json_text(bundled_dim4_manifest());
  m.requests = {"structure", "cohomology"};
  m.hodge_pairs = {{0, 1}, {2, 1}};
  m.branch = {0, 0, 0, 0};
  Manifest back = Manifest::from_json_text(m.to_json_text());
  CHECK(back.polynomial == m.polynomial);
  CHECK(back.units == m.units);
  CHECK(back.precision == m.precision);
  CHECK(back.requests == m.requests);
  CHECK(back.hodge_pairs == m.hodge_pairs);
  CHECK(back.assert_irreducible == m.assert_irreducible);
  CHECK(back.branch == m.branch);
}

TEST_CASE("the dimension-4 report is complete, exact, and reproducible") {
  Manifest m = Manifest::from_json_text(bundled_dim4_manifest());
  std::string text = analyze(m);
  CHECK(analyze(m) == text);

  ordered_json r = ordered_json::parse(text);
  check_no_floats(r);
  CHECK(r["tool"] == "otlab");
  CHECK(r["version"] == kToolVersion);
  CHECK(r["schema"] == 1);
  CHECK(r["field"]["degree"] == 6);
  CHECK(r["field"]["signature"]["s"] == 2);
  CHECK(r["field"]["signature"]["t"] == 2);
  CHECK(r["field"]["irreducibility"]["status"] == "certified");
  CHECK(r["units"].size() == 2);
  CHECK(r["units"][0]["norm"] == "1");
  CHECK(r["units"][0]["totally_positive"] == true);
  CHECK(r["admissibility"]["admissible"] == true);
  CHECK(r["matrices"]["B"].size() == 2);
  CHECK(r["matrices"]["b_row_sums"].size() == 2);
  CHECK(r["metrics"]["lck"]["exists"] == false);
  CHECK(r["metrics"]["pluriclosed"]["exists"] == true);
  CHECK(r["metrics"]["pluriclosed"]["witness"]["permutation"].get<std::vector<int>>() ==
        std::vector<int>{2, 1});
  CHECK(r["metrics"]["balanced"]["exists"] == false);
  CHECK(r["metrics"]["lcb"]["exists"] == true);
  CHECK(r["metrics"]["corollary_gate"] == true);
  CHECK(r["cohomology"]["rho2"] == 0);
  CHECK(r["cohomology"]["rho3"] == 2);
  CHECK(r["cohomology"]["b3"] == 2);
  CHECK(r["cohomology"]["hodge"]["h2,1"] == 2);
  CHECK(r["cohomology"]["hodge"]["h0,0"] == 1);
  CHECK(r["dga"]["verified"] == true);
  CHECK(r["dim4"]["pluriclosed"] == true);
  CHECK(r["dim4"]["b3"] == 2);
  CHECK(r["dim4"]["h21"] == 2);
  CHECK(r["dim4"]["equivalent"] == true);
  CHECK(r["consistency"]["b_row_sums_near_minus_one"] == true);
  CHECK(r["consistency"]["corollary_gate"] == true);
  CHECK(r["consistency"]["pluriclosed_cohomology_pattern"] == true);
  CHECK(r["consistency"]["dim4_matches_metrics"] == true);
  CHECK(r["precision"]["requested"] == 256);
  CHECK(r["timing"].is_null());
}

TEST_CASE("timings are opt-in because they break byte-identity") {
  Manifest m = Manifest::from_json_text(bundled_surface_manifest());
  AnalyzeOptions opts;
  opts.timings = true;
  ordered_json r = ordered_json::parse(analyze(m, opts));
  REQUIRE(r["timing"].is_object());
  CHECK(r["timing"]["total_ms"].is_number_integer());
  CHECK(r["timing"]["total_ms"].get<long>() >= 0);
}

TEST_CASE("requests select report sections") {
  Manifest m = Manifest::from_json_text(bundled_dim4_manifest());
  m.requests = {"structure"};
  ordered_json r = ordered_json::parse(analyze(m));
  CHECK(r.contains("matrices"));
  CHECK(!r.contains("metrics"));
  CHECK(!r.contains("cohomology"));
  CHECK(!r.contains("dga"));
  CHECK(!r.contains("dim4"));
  CHECK(r["consistency"]["corollary_gate"].is_null());
  CHECK(r["consistency"]["pluriclosed_cohomology_pattern"].is_null());
  CHECK(r["consistency"]["dim4_matches_metrics"].is_null());
}

TEST_CASE("the dimension-4 section respects the domain restriction") {
  Manifest m = Manifest::from_json_text(bundled_surface_manifest());
  ordered_json r = ordered_json::parse(analyze(m));
  CHECK(!r.contains("dim4"));

  m.requests = {"dim4"};
  try {
    analyze(m);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("hodge pair overrides narrow the cohomology table") {
  Manifest m = Manifest::from_json_text(bundled_dim4_manifest());
  m.requests = {"cohomology"};
  m.hodge_pairs = {{0, 0}};
  ordered_json r = ordered_json::parse(analyze(m));
  REQUIRE(r["cohomology"]["hodge"].size() == 1);
  CHECK(r["cohomology"]["hodge"]["h0,0"] == 1);
}

TEST_CASE("analysis reports typed input failures") {
  SUBCASE("reducible polynomial") {
    Manifest m;
    m.polynomial = {-1, 0, 1};
    m.units = {{0, 1}};
    try {
      analyze(m);
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("reducible") != std::string::npos);
    }
  }
  SUBCASE("unit rank mismatch") {
    Manifest m = Manifest::from_json_text(bundled_dim4_manifest());
    m.units.pop_back();
    try {
      analyze(m);
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
      CHECK(std::string(e.what()).find("rank mismatch") != std::string::npos);
    }
  }
}

TEST_CASE("error objects carry kind and message") {
  ordered_json j = ordered_json::parse(error_json("input", "bad manifest"));
  CHECK(j["error"]["kind"] == "input");
  CHECK(j["error"]["message"] == "bad manifest");
}

TEST_CASE("the bundled examples re-verify from scratch") {
  std::ostringstream os;
  VerifyOutcome oc = verify_paper_example(os);
  CHECK(oc.passed == 38);
  CHECK(oc.failed == 0);
  CHECK(oc.inconclusive == 0);
  CHECK(count_of(os.str(), "[PASS]") == 38);
  CHECK(os.str().find("[FAIL]") == std::string::npos);
}

TEST_CASE("verification verdicts are stable at low starting precision") {
  std::ostringstream os;
  VerifyOutcome oc = verify_paper_example(os, 64);
  CHECK(oc.passed == 38);
  CHECK(oc.failed == 0);
  CHECK(oc.inconclusive == 0);
}

TEST_CASE("a tampered manifest makes the verification fail loudly") {
  Manifest bad = Manifest::from_json_text(bundled_dim4_manifest());
  bad.units.pop_back();
  std::ostringstream os;
  VerifyOutcome oc = verify_paper_example(os, 256, &bad);
  CHECK(oc.failed >= 1);
  CHECK(os.str().find("[FAIL]") != std::string::npos);
}
