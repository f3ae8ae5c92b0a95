#include "ddl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>
#include <stdexcept>

namespace ddl {

std::string_view to_string(ExpectationOutcome outcome) {
  switch (outcome) {
    case ExpectationOutcome::met: return "met";
    case ExpectationOutcome::unmet: return "unmet";
    case ExpectationOutcome::undetermined: return "undetermined";
  }
  return "?";
}

std::string_view to_string(ScenarioVerdict verdict) { return verdict == ScenarioVerdict::pass ? "pass" : "review"; }

std::size_t SuiteReport::review_count() const {
  return static_cast<std::size_t>(std::count_if(scenarios.begin(), scenarios.end(), [](const ScenarioReport& r) {
    return r.verdict == ScenarioVerdict::review;
  }));
}

namespace {

std::map<std::string, std::size_t> summarize(const Extension& ext) {
  std::map<std::string, std::size_t> out;
  for (Sign sign : {Sign::plus, Sign::minus}) {
    for (Tag tag : {Tag::definite, Tag::defeasible}) {
      for (Mode mode : kAllModes) {
        if (!is_legal(tag, mode)) continue;
        std::string key(to_string(sign));
        key += to_string(tag);
        key += ' ';
        key += mode_symbol(mode);
        out[key] = ext.count(sign, tag, mode);
      }
    }
  }
  out["undetermined"] = ext.undetermined.size();
  return out;
}

ExpectationOutcome judge(const Extension& ext, const TaggedConclusion& expected) {
  if (ext.contains(expected)) return ExpectationOutcome::met;
  const TaggedConclusion flipped{expected.sign == Sign::plus ? Sign::minus : Sign::plus, expected.tag, expected.mode,
                                 expected.literal};
  // Literals the theory never mentions have no status at all.
  if (!ext.contains(flipped)) return ExpectationOutcome::undetermined;
  return ExpectationOutcome::unmet;
}

}  // namespace

ScenarioReport run_scenario(const Theory& background, const Scenario& scenario) {
  ScenarioReport report;
  report.name = scenario.name;

  std::optional<Derivation> derivation;
  try {
    derivation = derive(background, scenario);
  } catch (const ValidationError& e) {
    report.diagnostics = e.diagnostics();
  }

  for (const auto& expected : scenario.expectations) {
    ExpectationOutcome outcome = ExpectationOutcome::undetermined;
    if (derivation) outcome = judge(derivation->extension, expected);
    report.expectations.push_back(ExpectationResult{expected, outcome});
  }
  if (derivation) report.summary = summarize(derivation->extension);

  const bool all_met = std::all_of(report.expectations.begin(), report.expectations.end(),
                                   [](const ExpectationResult& r) { return r.outcome == ExpectationOutcome::met; });
  report.verdict = all_met && derivation ? ScenarioVerdict::pass : ScenarioVerdict::review;
  return report;
}

SuiteReport run_suite(const Theory& background, std::span<const Scenario> scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("scenario suite is empty");

  SuiteReport suite;
  suite.scenarios.resize(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      suite.scenarios[i] = run_scenario(background, scenarios[i]);
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(scenarios.size(), 8));
  std::vector<std::future<void>> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();

  std::stable_sort(suite.scenarios.begin(), suite.scenarios.end(),
                   [](const ScenarioReport& a, const ScenarioReport& b) { return a.name < b.name; });

  std::size_t expectations = 0;
  std::size_t failed = 0;
  for (const auto& report : suite.scenarios) {
    for (const auto& result : report.expectations) {
      ++expectations;
      if (result.outcome != ExpectationOutcome::met) ++failed;
    }
  }
  suite.error_rate = static_cast<double>(suite.review_count()) / static_cast<double>(suite.scenarios.size());
  suite.expectation_error_rate =
      expectations == 0 ? 0.0 : static_cast<double>(failed) / static_cast<double>(expectations);
  return suite;
}

double length_ratio(std::size_t source_chars, std::size_t coded_chars) {
  if (source_chars == 0) throw std::invalid_argument("source text length must be positive");
  return static_cast<double>(coded_chars) / static_cast<double>(source_chars) - 1.0;
}

}  // namespace ddl
