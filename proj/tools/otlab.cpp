#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otlab/errors.hpp"
#include "otlab/report.hpp"
#include "otlab/search.hpp"

namespace {

using namespace otlab;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input:
    case ErrorKind::Domain:
      return 1;
    case ErrorKind::Precision:
      return 2;
    case ErrorKind::Internal:
      return 3;
  }
  return 3;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_input("cannot write \"" + path + "\"");
  out << content;
}

std::vector<std::pair<int, int>> parse_hodge(const std::vector<std::string>& args) {
  std::vector<long> flat;
  for (const std::string& arg : args) {
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        flat.push_back(v);
      } catch (const std::exception&) {
        throw_input("--hodge expects comma-separated nonnegative integers, got \"" + tok + "\"");
      }
    }
  }
  if (flat.size() % 2 != 0) throw_input("--hodge expects an even count forming (p, q) pairs");
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < flat.size(); i += 2)
    pairs.emplace_back(static_cast<int>(flat[i]), static_cast<int>(flat[i + 1]));
  return pairs;
}

int report_error(const Error& e) {
  std::cout << error_json(e.kind_name(), e.what());
  std::cerr << "error (" << e.kind_name() << "): " << e.what() << "\n";
  return exit_code_for(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified arithmetic and Hermitian-metric analysis for solvmanifold structures"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // analyze
  std::string an_manifest, an_out;
  long an_precision = 0;
  bool an_assert_irr = false, an_timings = false;
  std::vector<std::string> an_hodge;
  CLI::App* an = app.add_subcommand("analyze", "full JSON report for a manifold manifest file");
  an->add_option("manifest", an_manifest, "manifest JSON file")->required();
  an->add_option("--precision", an_precision, "working precision in bits (overrides the manifest)");
  an->add_option("--out", an_out, "write the report to a file instead of stdout");
  an->add_flag("--assert-irreducible", an_assert_irr,
               "accept an uncertified defining polynomial");
  an->add_option("--hodge", an_hodge,
                 "comma-separated p,q list forming (p, q) pairs; repeatable")
      ->take_all();
  an->add_flag("--timings", an_timings, "include wall-clock timings (breaks byte-identity)");

  // verify-paper-example
  long vf_precision = 256;
  CLI::App* vf = app.add_subcommand("verify-paper-example",
                                    "re-derive the bundled worked examples as a checklist");
  vf->add_option("--precision", vf_precision, "working precision in bits");

  // search
  std::string se_spec, se_out, se_checkpoint, se_resume;
  long se_precision = 0, se_budget = -1;
  int se_jobs = 1;
  CLI::App* se = app.add_subcommand("search", "scan a polynomial family for certified metrics");
  se->add_option("spec", se_spec, "search spec JSON file")->required();
  se->add_option("--out", se_out, "write JSON lines to a file instead of stdout");
  se->add_option("--checkpoint", se_checkpoint, "write a resumable checkpoint to this path");
  se->add_option("--resume", se_resume, "resume from this checkpoint path");
  se->add_option("--jobs", se_jobs, "worker threads; output is identical for any value")
      ->check(CLI::Range(1, 64));
  se->add_option("--budget", se_budget, "candidates to process this invocation");
  se->add_option("--precision", se_precision, "working precision in bits (overrides the spec)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (an->parsed()) {
      Manifest m = Manifest::from_json_text(read_file(an_manifest));
      if (an_precision != 0) {
        if (an_precision < 64 || an_precision > (1L << 20))
          throw_input("precision must lie in [64, 2^20]");
        m.precision = static_cast<Prec>(an_precision);
      }
      if (an_assert_irr) m.assert_irreducible = true;
      if (!an_hodge.empty()) m.hodge_pairs = parse_hodge(an_hodge);
      AnalyzeOptions opts;
      opts.timings = an_timings;
      std::string rep = analyze(m, opts);
      if (an_out.empty())
        std::cout << rep;
      else
        write_file(an_out, rep);
      return 0;
    }

    if (vf->parsed()) {
      if (vf_precision < 64 || vf_precision > (1L << 20))
        throw_input("precision must lie in [64, 2^20]");
      VerifyOutcome out = verify_paper_example(std::cout, static_cast<Prec>(vf_precision));
      std::cerr << out.passed << " passed, " << out.failed << " failed, " << out.inconclusive
                << " inconclusive\n";
      if (out.failed > 0) return 4;
      if (out.inconclusive > 0) return 2;
      return 0;
    }

    if (se->parsed()) {
      SearchSpec spec = search_spec_from_json(read_file(se_spec));
      if (se_precision != 0) {
        if (se_precision < 64 || se_precision > (1L << 20))
          throw_input("precision must lie in [64, 2^20]");
        spec.precision = static_cast<Prec>(se_precision);
      }
      SearchOptions opts;
      if (!se_checkpoint.empty() && !se_resume.empty())
        throw_input("--checkpoint and --resume are mutually exclusive");
      if (!se_resume.empty()) {
        opts.checkpoint_path = se_resume;
        opts.resume = true;
      } else {
        opts.checkpoint_path = se_checkpoint;
      }
      opts.jobs = se_jobs;
      opts.run_budget = se_budget;

      SearchOutcome outcome;
      if (se_out.empty()) {
        outcome = run_search(spec, std::cout, opts);
      } else {
        std::ios::openmode mode = std::ios::binary | (opts.resume ? std::ios::app : std::ios::trunc);
        std::ofstream out(se_out, mode);
        if (!out) throw_input("cannot write \"" + se_out + "\"");
        outcome = run_search(spec, out, opts);
      }
      std::cerr << "examined " << outcome.examined << ", hits " << outcome.hits << ", "
                << (outcome.exhausted ? "exhausted" : "budget reached") << "\n";
      return 0;
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cout << error_json("internal", e.what());
    std::cerr << "error (internal): " << e.what() << "\n";
    return 3;
  }
  return 0;
}
