#include "ddl/estimator.hpp"

#include <cmath>

namespace ddl::effort {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

EffortReport finish(EffortReport r, double hours_per_month) {
  r.total_hours = r.code_hours + r.retrieve_hours + r.scenario_hours + r.test_hours;
  r.person_months = r.total_hours / hours_per_month;
  return r;
}

}  // namespace

void check(const EffortParams& p) {
  require(non_negative(p.rate_s_per_char), "rate must be a non-negative number of seconds per character");
  require(non_negative(p.retrieval_factor), "retrieval factor must be non-negative");
  require(non_negative(p.scenario_multiplier), "scenario multiplier must be non-negative");
  require(non_negative(p.test_fraction), "test fraction must be non-negative");
  require(p.depth >= 0 && p.depth <= 5, "depth must be between 0 and 5");
  require(std::isfinite(p.expertise) && p.expertise >= 0.0 && p.expertise <= 1.0, "expertise must be in [0, 1]");
  require(std::isfinite(p.hours_per_month) && p.hours_per_month > 0.0, "hours per month must be positive");
}

EffortReport estimate_effort(const EffortParams& p) {
  check(p);
  EffortReport r;
  r.code_hours = static_cast<double>(p.chars) * p.rate_s_per_char / 3600.0;
  r.retrieve_hours = r.code_hours * p.retrieval_factor;
  r.scenario_hours = r.code_hours * p.scenario_multiplier;
  r.test_hours = (r.code_hours + r.scenario_hours) * p.test_fraction;
  return finish(r, p.hours_per_month);
}

EffortReport estimate_effort_rounded(const EffortParams& p) {
  const EffortReport exact = estimate_effort(p);
  EffortReport r;
  // Guard against 484.0000000001 rounding up to 485.
  r.code_hours = std::ceil(exact.code_hours - 1e-9);
  if (r.code_hours < 0) r.code_hours = 0;
  r.retrieve_hours = std::round(r.code_hours * p.retrieval_factor);
  r.scenario_hours = std::round(r.code_hours * p.scenario_multiplier);
  r.test_hours = std::round((r.code_hours + r.scenario_hours) * p.test_fraction);
  return finish(r, p.hours_per_month);
}

}  // namespace ddl::effort
