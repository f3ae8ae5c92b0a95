#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddl::effort {

/// Rounded seconds-per-character figure used for planning.
inline constexpr double kPlanningRate = 4.0;
/// Mean seconds-per-character observed over the coding experiment.
inline constexpr double kMeasuredMeanRate = 3.99;
inline constexpr double kMeasuredMedianRate = 4.06;
inline constexpr double kMeasuredStdRate = 0.94;
/// Correlation of the per-character rate with self-assessed expertise and with depth.
inline constexpr double kExpertiseCorrelation = -0.2867;
inline constexpr double kDepthCorrelation = -0.2871;
/// Average size of a printed page, in characters.
inline constexpr std::size_t kCharsPerPage = 1800;
/// Working hours per person-month; 2813 h maps to 23 months.
inline constexpr double kHoursPerPersonMonth = 122.3;
/// Mean fraction by which coded rules exceed the source text length.
inline constexpr double kLengthInflation = 0.19;
/// Share of scenarios marked for review in the coding experiment.
inline constexpr double kScenarioErrorRate = 0.06;

struct EffortParams {
  std::size_t chars = 0;
  double rate_s_per_char = kPlanningRate;
  /// Scenario search time as a fraction of background coding time.
  double retrieval_factor = 1.0;
  /// Scenario coding time as a multiple of background coding time.
  double scenario_multiplier = 3.0;
  /// Testing overhead on background plus scenario coding time.
  double test_fraction = 0.2;
  /// 0 (international conventions) .. 5 (technical annexes). Informational.
  int depth = 2;
  /// Self-assessed expertise in [0, 1]. Informational.
  double expertise = 0.5;
  double hours_per_month = kHoursPerPersonMonth;
};

struct EffortReport {
  double code_hours = 0;
  double retrieve_hours = 0;
  double scenario_hours = 0;
  double test_hours = 0;
  double total_hours = 0;
  double person_months = 0;
};

/// Throws std::invalid_argument when a parameter is out of range.
void check(const EffortParams& params);

/// Phase-by-phase estimate at full precision.
EffortReport estimate_effort(const EffortParams& params);

/// Staged rounding as used for published plans: background coding is rounded
/// up to whole hours, and every later phase is computed from that rounded
/// figure and rounded to the nearest hour.
EffortReport estimate_effort_rounded(const EffortParams& params);

/// One coder working on one text.
struct MeasurementRow {
  std::string subject;
  std::string text;
  std::size_t chars = 0;
  int depth = 0;
  double expertise = 0;
  double seconds = 0;

  double rate() const { return seconds / static_cast<double>(chars); }
};

using MeasurementLog = std::vector<MeasurementRow>;

/// Rows that failed to parse, identified by 1-based line number in the file.
class LogFormatError : public std::runtime_error {
 public:
  struct Problem {
    std::size_t row;
    std::string message;
  };

  explicit LogFormatError(std::vector<Problem> problems);
  const std::vector<Problem>& problems() const noexcept { return problems_; }

 private:
  std::vector<Problem> problems_;
};

/// Header `subject,text,chars,depth,expertise,seconds`, comma-separated,
/// decimal point, no thousands separators. Blank lines are skipped.
MeasurementLog parse_measurement_log(std::string_view text);

std::string write_measurement_log(const MeasurementLog& log);

struct CodingStats {
  std::size_t rows = 0;
  double mean = 0;
  double median = 0;
  /// Population standard deviation.
  double std_dev = 0;
  double min = 0;
  double max = 0;
  /// Pearson correlation of seconds-per-character against each covariate;
  /// empty when either variable has zero variance.
  std::optional<double> correlation_expertise;
  std::optional<double> correlation_depth;
};

/// Throws std::invalid_argument for fewer than two rows.
CodingStats coding_stats(const MeasurementLog& log);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

struct ExpertiseClass {
  /// Lower bound of the decile: 0.0, 0.1, ..., 0.9 (the last class includes 1.0).
  double lower = 0;
  std::size_t rows = 0;
  double mean_rate = 0;
};

/// Mean rate per non-empty expertise decile, in increasing order.
std::vector<ExpertiseClass> expertise_class_means(const MeasurementLog& log);

/// 0..9.
std::size_t expertise_class(double expertise);

}  // namespace ddl::effort
