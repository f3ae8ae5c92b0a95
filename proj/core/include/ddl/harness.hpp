#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddl/engine.hpp"
#include "ddl/parser.hpp"
#include "ddl/theory.hpp"

namespace ddl {

enum class ExpectationOutcome { met, unmet, undetermined };
enum class ScenarioVerdict { pass, review };

std::string_view to_string(ExpectationOutcome outcome);
std::string_view to_string(ScenarioVerdict verdict);

struct ExpectationResult {
  TaggedConclusion expected;
  ExpectationOutcome outcome = ExpectationOutcome::unmet;
};

struct ScenarioReport {
  std::string name;
  std::vector<ExpectationResult> expectations;
  ScenarioVerdict verdict = ScenarioVerdict::pass;
  /// Conclusion counts keyed by e.g. "+defeasible O"; empty when derivation failed.
  std::map<std::string, std::size_t> summary;
  /// Merge or validation problems that prevented a derivation.
  std::vector<Diagnostic> diagnostics;
};

struct SuiteReport {
  /// Sorted by scenario name.
  std::vector<ScenarioReport> scenarios;
  double error_rate = 0.0;
  double expectation_error_rate = 0.0;
  std::optional<double> length_ratio;

  std::size_t review_count() const;
};

/// Derives background + scenario and checks each expectation for an exact
/// match. Undetermined conclusions and failed derivations yield `review`.
ScenarioReport run_scenario(const Theory& background, const Scenario& scenario);

/// Runs scenarios concurrently; aggregates are independent of input order.
/// Throws std::invalid_argument on an empty suite.
SuiteReport run_suite(const Theory& background, std::span<const Scenario> scenarios);

/// coded/source - 1, e.g. 0.19 for a coding 19% longer than its source text.
/// Throws std::invalid_argument when source_chars is zero.
double length_ratio(std::size_t source_chars, std::size_t coded_chars);

}  // namespace ddl
