// Command-line front end for the KH fuzzy rule interpolation library.
//
// Subcommands:
//   fri bench        run a benchmark suite and score it against expectations
//   fri analyze      print the linearity report for one or more cases
//   fri interpolate  print the conclusion cuts over an alpha grid
//   fri curves       export flank/chord/deviation curves as CSV
//
// Exit codes: 0 success (bench: all expected fields pass), 1 benchmark
// failures, 2 input or usage errors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kh/bench.hpp"

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;

struct CaseSelection {
  std::string case_id;
  std::string file;
};

void add_selection(CLI::App* cmd, CaseSelection& sel) {
  auto* case_opt =
      cmd->add_option("--case", sel.case_id, "Id of an embedded corpus case");
  auto* file_opt =
      cmd->add_option("--file", sel.file, "Path to a suite file (JSON)");
  case_opt->excludes(file_opt);
}

// Resolves --case/--file to benchmark cases; prints to stderr and returns
// an empty list on usage errors.
std::vector<kh::BenchmarkCase> resolve_cases(const CaseSelection& sel) {
  if (!sel.case_id.empty()) {
    const auto corpus = kh::embedded_corpus();
    const kh::BenchmarkCase* c = kh::find_case(corpus, sel.case_id);
    if (!c) {
      std::cerr << "fri: unknown case id \"" << sel.case_id
                << "\" (embedded corpus has X1-X4, Y1s1-Y1s3, Y2-Y4)\n";
      return {};
    }
    return {*c};
  }
  if (!sel.file.empty()) {
    const kh::Suite suite = kh::load_suite(sel.file);
    if (suite.cases.empty()) {
      std::cerr << "fri: suite file " << sel.file << " contains no cases\n";
      return {};
    }
    return suite.cases;
  }
  std::cerr << "fri: one of --case or --file is required\n";
  return {};
}

int run_bench(const std::string& suite_path, const std::string& method,
              double tol_scale, const std::string& format) {
  kh::Suite suite;
  if (suite_path.empty()) {
    suite.name = "paper_corpus";
    suite.cases = kh::embedded_corpus();
  } else {
    suite = kh::load_suite(suite_path);
  }
  const kh::RunReport report = kh::run_benchmark(suite, method, tol_scale);
  if (format == "text") {
    std::cout << kh::render_text(report);
  } else if (format == "csv") {
    std::cout << kh::render_csv(report);
  } else if (format == "json") {
    std::cout << kh::render_json(report).dump(2) << '\n';
  } else {
    std::cerr << "fri: unknown format \"" << format
              << "\" (expected text, csv or json)\n";
    return kExitUsage;
  }
  return report.all_pass ? 0 : kExitFailures;
}

int run_analyze(const CaseSelection& sel) {
  const auto cases = resolve_cases(sel);
  if (cases.empty()) return kExitUsage;
  for (const kh::BenchmarkCase& c : cases) {
    std::cout << kh::render_analysis_text(c);
  }
  return 0;
}

int run_interpolate(const CaseSelection& sel, double step) {
  const auto cases = resolve_cases(sel);
  if (cases.empty()) return kExitUsage;
  const kh::AlphaGrid grid = kh::AlphaGrid::with_step(step);
  for (const kh::BenchmarkCase& c : cases) {
    std::cout << kh::render_conclusion_text(c, grid);
  }
  return 0;
}

int run_curves(const CaseSelection& sel, double step,
               const std::string& out_path) {
  const auto cases = resolve_cases(sel);
  if (cases.empty()) return kExitUsage;
  if (cases.size() > 1) {
    std::cerr << "fri: curves needs exactly one case; the suite file has "
              << cases.size() << " (select one with --case)\n";
    return kExitUsage;
  }
  const auto rows = kh::export_curves(cases.front().problem, step);
  if (out_path.empty()) {
    kh::write_curves_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "fri: cannot write " << out_path << '\n';
      return kExitUsage;
    }
    kh::write_curves_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koczy-Hirota fuzzy rule interpolation and linearity analysis"};
  app.require_subcommand(1);

  std::string suite_path;
  std::string method = "KH";
  double tol_scale = 1.0;
  std::string format = "text";
  CLI::App* bench = app.add_subcommand(
      "bench", "Run a benchmark suite against its expected values");
  bench->add_option("--suite", suite_path,
                    "Suite file to run (default: embedded corpus)");
  bench->add_option("--method", method, "Interpolation method id");
  bench->add_option("--tol-scale", tol_scale,
                    "Multiplier applied to every numeric tolerance");
  bench->add_option("--format", format, "Report format: text, csv or json");

  CaseSelection analyze_sel;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Print the linearity report for cases");
  add_selection(analyze, analyze_sel);

  CaseSelection interp_sel;
  double interp_step = 0.1;
  CLI::App* interp = app.add_subcommand(
      "interpolate", "Print the conclusion cuts over an alpha grid");
  add_selection(interp, interp_sel);
  interp->add_option("--step", interp_step, "Grid step (default 0.1)");

  CaseSelection curves_sel;
  double curves_step = 0.1;
  std::string curves_out;
  CLI::App* curves = app.add_subcommand(
      "curves", "Export flank, chord and deviation curves as CSV");
  add_selection(curves, curves_sel);
  curves->add_option("--step", curves_step, "Grid step (default 0.1)");
  curves->add_option("--out", curves_out, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bench->parsed()) return run_bench(suite_path, method, tol_scale, format);
    if (analyze->parsed()) return run_analyze(analyze_sel);
    if (interp->parsed()) return run_interpolate(interp_sel, interp_step);
    if (curves->parsed()) return run_curves(curves_sel, curves_step, curves_out);
  } catch (const kh::Error& e) {
    std::cerr << "fri: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
