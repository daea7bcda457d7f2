#pragma once

#include <iosfwd>
#include <string>

#include "otlab/manifest.hpp"

namespace otlab {

inline constexpr const char* kToolName = "otlab";
inline constexpr const char* kToolVersion = "1.0.0";

struct AnalyzeOptions {
  bool timings = false;  // adds wall-clock data, breaking byte-identity
};

// Full JSON report for one manifest. All numeric payloads are decimal
// strings with explicit radii or exact integers, never floats; the output
// is byte-identical across runs for a fixed manifest and tool version
// unless timings is set. Throws typed errors: input for bad manifests,
// domain for violated preconditions, precision past the cap, internal when
// a cross-check fails.
std::string analyze(const Manifest& m, const AnalyzeOptions& opts = {});

// Structured {"error": {"kind", "message"}} object for CLI output.
std::string error_json(const std::string& kind, const std::string& message);

struct VerifyOutcome {
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
};

// Re-derives the bundled worked examples from scratch: one
// [PASS]/[FAIL]/[INCONCLUSIVE] line per check. A precision error inside a
// check marks it inconclusive; any other error marks it failed. The
// override substitutes the dimension-4 manifest (tamper hook for tests).
VerifyOutcome verify_paper_example(std::ostream& os, Prec precision = 256,
                                   const Manifest* dim4_override = nullptr);

// Bundled example manifests as JSON text.
const char* bundled_dim4_manifest();
const char* bundled_surface_manifest();

}  // namespace otlab
