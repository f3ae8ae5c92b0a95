#include "cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/render.hpp"
#include "ddl/engine.hpp"
#include "ddl/estimator.hpp"
#include "ddl/harness.hpp"
#include "ddl/parser.hpp"

namespace ddl::cli {

namespace fs = std::filesystem;

namespace {

/// Raised from inside a command to stop with a given status.
struct Exit {
  int status;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    err << "ddl: cannot read '" << path << "': no such file\n";
    throw Exit{kUsageOrIo};
  }
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof()) {
    err << "ddl: cannot read '" << path << "'\n";
    throw Exit{kUsageOrIo};
  }
  return buf.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.flush();
  if (!file) {
    err << "ddl: cannot write '" << path << "'\n";
    throw Exit{kUsageOrIo};
  }
}

Theory load_theory(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  try {
    return parse_theory(text);
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    throw Exit{kDomainFailure};
  }
}

Scenario load_scenario(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  try {
    return parse_scenario(text, fs::path(path).stem().string());
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    throw Exit{kDomainFailure};
  }
}

void print_diagnostics(const std::string& path, const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) err << path << ": " << to_string(d) << "\n";
}

// Commands.

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const Theory theory = load_theory(path, err);
  auto diagnostics = validate_theory(theory);
  const auto lint = lint_superiority(theory);
  diagnostics.insert(diagnostics.end(), lint.begin(), lint.end());
  print_diagnostics(path, diagnostics, err);
  out << path << ": " << theory.facts().size() << " facts, " << theory.rules().size() << " rules, "
      << theory.superiority().size() << " superiority pairs\n";
  return kSuccess;
}

struct DeriveOptions {
  std::string theory;
  std::vector<std::string> scenarios;
  std::string format = "text";
  std::string output;
};

int cmd_derive(const DeriveOptions& opt, std::ostream& out, std::ostream& err) {
  Theory merged = load_theory(opt.theory, err);
  std::vector<Scenario> scenarios;
  for (const auto& path : opt.scenarios) scenarios.push_back(load_scenario(path, err));

  Derivation derivation;
  try {
    for (const auto& scenario : scenarios) merged = merge(merged, scenario);
    derivation = compute_extension(merged);
  } catch (const ValidationError& e) {
    print_diagnostics(opt.theory, e.diagnostics(), err);
    return kDomainFailure;
  }
  const std::string text = opt.format == "json" ? dump(to_json(derivation)) : to_text(derivation);
  write_output(text, opt.output, out, err);
  return kSuccess;
}

struct TestOptions {
  std::string theory;
  std::string dir;
  std::string report;
  std::string format = "text";
  std::optional<std::size_t> source_chars;
};

int cmd_test(const TestOptions& opt, std::ostream& out, std::ostream& err) {
  const Theory background = load_theory(opt.theory, err);

  std::error_code ec;
  if (!fs::is_directory(opt.dir, ec)) {
    err << "ddl: '" << opt.dir << "' is not a directory\n";
    return kUsageOrIo;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".case") files.push_back(entry.path());
  }
  if (ec) {
    err << "ddl: cannot list '" << opt.dir << "'\n";
    return kUsageOrIo;
  }
  if (files.empty()) {
    err << "ddl: no .case files in '" << opt.dir << "'\n";
    return kUsageOrIo;
  }
  std::sort(files.begin(), files.end());

  std::vector<Scenario> scenarios;
  for (const auto& file : files) scenarios.push_back(load_scenario(file.string(), err));

  SuiteReport report = run_suite(background, scenarios);
  if (opt.source_chars) {
    if (*opt.source_chars == 0) {
      err << "ddl: --source-chars must be positive\n";
      return kDomainFailure;
    }
    report.length_ratio = length_ratio(*opt.source_chars, read_file(opt.theory, err).size());
  }

  const std::string text = opt.format == "json" ? dump(to_json(report)) : to_text(report);
  if (opt.report.empty()) {
    out << text;
  } else {
    write_output(text, opt.report, out, err);
    out << report.scenarios.size() << " scenarios, " << report.review_count() << " to review\n";
  }
  return report.review_count() == 0 ? kSuccess : kDomainFailure;
}

struct EstimateOptions {
  effort::EffortParams params;
  bool staged_rounding = false;
  std::string format = "text";
};

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err) {
  effort::EffortReport report;
  try {
    report = opt.staged_rounding ? effort::estimate_effort_rounded(opt.params) : effort::estimate_effort(opt.params);
  } catch (const std::invalid_argument& e) {
    err << "ddl: " << e.what() << "\n";
    return kDomainFailure;
  }
  out << (opt.format == "json" ? dump(to_json(report, opt.staged_rounding)) : to_text(report, opt.staged_rounding));
  return kSuccess;
}

int cmd_stats(const std::string& path, const std::string& format, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path, err);
  effort::MeasurementLog log;
  try {
    log = effort::parse_measurement_log(text);
  } catch (const effort::LogFormatError& e) {
    for (const auto& problem : e.problems()) err << path << ":" << problem.row << ": " << problem.message << "\n";
    return kDomainFailure;
  }
  effort::CodingStats stats;
  try {
    stats = effort::coding_stats(log);
  } catch (const std::invalid_argument& e) {
    err << path << ": " << e.what() << "\n";
    return kDomainFailure;
  }
  const auto classes = effort::expertise_class_means(log);
  out << (format == "json" ? dump(to_json(stats, classes)) : to_text(stats, classes));
  return kSuccess;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deontic defeasible logic toolkit: check, derive and test rule theories; estimate coding effort."};
  app.name("ddl");
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Parse and validate a theory; print diagnostics");
  check->add_option("theory", check_path, "Theory file (.ddl)")->required();

  DeriveOptions derive_opt;
  auto* derive = app.add_subcommand("derive", "Compute the extension of a theory, optionally merged with scenarios");
  derive->add_option("theory", derive_opt.theory, "Background theory file (.ddl)")->required();
  derive->add_option("-s,--scenario", derive_opt.scenarios, "Scenario file (.case); repeatable");
  add_format(derive, derive_opt.format);
  derive->add_option("-o,--output", derive_opt.output, "Write the result to a file instead of stdout");

  TestOptions test_opt;
  std::size_t source_chars = 0;
  auto* test = app.add_subcommand("test", "Run every .case file in a directory against a background theory");
  test->add_option("theory", test_opt.theory, "Background theory file (.ddl)")->required();
  test->add_option("dir", test_opt.dir, "Directory holding .case files")->required();
  test->add_option("-r,--report", test_opt.report, "Write the suite report to a file");
  add_format(test, test_opt.format);
  auto* source_opt =
      test->add_option("--source-chars", source_chars, "Length of the source text; adds the coded/source length ratio");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Forecast coding effort for a normative text");
  estimate->add_option("--chars", est.params.chars, "Characters in the normative text")->required();
  estimate->add_option("--rate", est.params.rate_s_per_char, "Seconds per character")->capture_default_str();
  estimate->add_option("--retrieval-factor", est.params.retrieval_factor,
                       "Scenario search time as a fraction of coding time")
      ->capture_default_str();
  estimate->add_option("--scenario-multiplier", est.params.scenario_multiplier,
                       "Scenario coding time as a multiple of coding time")
      ->capture_default_str();
  estimate->add_option("--test-fraction", est.params.test_fraction,
                       "Testing overhead on coding plus scenario time")
      ->capture_default_str();
  estimate->add_flag("--paper-rounding", est.staged_rounding,
                     "Round coding time up to whole hours and every later phase to the nearest hour");
  estimate->add_option("--depth", est.params.depth, "Depth of the text, 0 to 5 (informational)")->capture_default_str();
  estimate->add_option("--expertise", est.params.expertise, "Coder expertise in [0, 1] (informational)")
      ->capture_default_str();
  estimate->add_option("--hours-per-month", est.params.hours_per_month, "Working hours per person-month")
      ->capture_default_str();
  add_format(estimate, est.format);

  std::string stats_path;
  std::string stats_format = "text";
  auto* stats = app.add_subcommand("stats", "Summarize a coding measurement log");
  stats->add_option("log", stats_path, "CSV with header subject,text,chars,depth,expertise,seconds")->required();
  add_format(stats, stats_format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    app.exit(e, out, err);
    return dynamic_cast<const CLI::ConversionError*>(&e) != nullptr ? kDomainFailure : kUsageOrIo;
  }

  try {
    if (*check) return cmd_check(check_path, out, err);
    if (*derive) return cmd_derive(derive_opt, out, err);
    if (*test) {
      if (*source_opt) test_opt.source_chars = source_chars;
      return cmd_test(test_opt, out, err);
    }
    if (*estimate) return cmd_estimate(est, out, err);
    if (*stats) return cmd_stats(stats_path, stats_format, out, err);
  } catch (const Exit& e) {
    return e.status;
  }
  return kUsageOrIo;
}

}  // namespace ddl::cli
