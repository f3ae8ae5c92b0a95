#include <array>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ddl/estimator.hpp"

namespace ddl::effort {

namespace {

constexpr std::string_view kHeader[] = {"subject", "text", "chars", "depth", "expertise", "seconds"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

std::string format(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

LogFormatError::LogFormatError(std::vector<Problem> problems)
    : std::runtime_error([&] {
        std::string msg = "malformed measurement log";
        if (!problems.empty()) {
          msg += " (line " + std::to_string(problems.front().row) + ": " + problems.front().message + ")";
        }
        return msg;
      }()),
      problems_(std::move(problems)) {}

MeasurementLog parse_measurement_log(std::string_view text) {
  MeasurementLog log;
  std::vector<LogFormatError::Problem> problems;
  bool header_seen = false;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t newline = text.find('\n', start);
    const std::string_view raw =
        text.substr(start, newline == std::string_view::npos ? std::string_view::npos : newline - start);
    start = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto fields = split(line);
    if (!header_seen) {
      header_seen = true;
      if (!std::equal(fields.begin(), fields.end(), std::begin(kHeader), std::end(kHeader))) {
        problems.push_back({line_no, "expected header 'subject,text,chars,depth,expertise,seconds'"});
      }
      continue;
    }
    if (fields.size() != 6) {
      problems.push_back({line_no, "expected 6 fields, found " + std::to_string(fields.size())});
      continue;
    }

    MeasurementRow row;
    row.subject = std::string(fields[0]);
    row.text = std::string(fields[1]);
    std::string issue;
    if (!parse_number(fields[2], row.chars) || row.chars == 0) {
      issue = "chars must be a positive integer";
    } else if (!parse_number(fields[3], row.depth) || row.depth < 0 || row.depth > 5) {
      issue = "depth must be an integer between 0 and 5";
    } else if (!parse_number(fields[4], row.expertise) || !(row.expertise >= 0.0 && row.expertise <= 1.0)) {
      issue = "expertise must be a number in [0, 1]";
    } else if (!parse_number(fields[5], row.seconds) || !std::isfinite(row.seconds) || !(row.seconds > 0.0)) {
      issue = "seconds must be a positive number";
    }
    if (!issue.empty()) {
      problems.push_back({line_no, issue});
      continue;
    }
    log.push_back(std::move(row));
  }
  if (!header_seen) problems.push_back({1, "missing header"});
  if (!problems.empty()) throw LogFormatError(std::move(problems));
  return log;
}

std::string write_measurement_log(const MeasurementLog& log) {
  std::string out = "subject,text,chars,depth,expertise,seconds\n";
  for (const auto& row : log) {
    out += row.subject + "," + row.text + "," + std::to_string(row.chars) + "," + std::to_string(row.depth) + "," +
           format(row.expertise) + "," + format(row.seconds) + "\n";
  }
  return out;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*xmin == *xmax || *ymin == *ymax) return std::nullopt;

  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CodingStats coding_stats(const MeasurementLog& log) {
  if (log.size() < 2) throw std::invalid_argument("coding statistics need at least two measurements");

  std::vector<double> rates;
  std::vector<double> expertise;
  std::vector<double> depth;
  for (const auto& row : log) {
    rates.push_back(row.rate());
    expertise.push_back(row.expertise);
    depth.push_back(static_cast<double>(row.depth));
  }

  CodingStats stats;
  stats.rows = log.size();
  const double n = static_cast<double>(rates.size());
  stats.mean = std::accumulate(rates.begin(), rates.end(), 0.0) / n;

  std::vector<double> sorted = rates;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  const std::size_t mid = sorted.size() / 2;
  stats.median = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;

  if (stats.min == stats.max) {
    stats.std_dev = 0.0;
  } else {
    double ss = 0;
    for (double r : rates) ss += (r - stats.mean) * (r - stats.mean);
    stats.std_dev = std::sqrt(ss / n);
  }
  // Guard the bracketing against last-ulp summation error.
  stats.mean = std::clamp(stats.mean, stats.min, stats.max);

  stats.correlation_expertise = pearson(rates, expertise);
  stats.correlation_depth = pearson(rates, depth);
  return stats;
}

std::size_t expertise_class(double expertise) {
  const double scaled = std::floor(expertise * 10.0 + 1e-9);
  return static_cast<std::size_t>(std::clamp(scaled, 0.0, 9.0));
}

std::vector<ExpertiseClass> expertise_class_means(const MeasurementLog& log) {
  std::array<double, 10> sums{};
  std::array<std::size_t, 10> counts{};
  for (const auto& row : log) {
    const std::size_t k = expertise_class(row.expertise);
    sums[k] += row.rate();
    ++counts[k];
  }
  std::vector<ExpertiseClass> out;
  for (std::size_t k = 0; k < 10; ++k) {
    if (counts[k] == 0) continue;
    out.push_back(ExpertiseClass{static_cast<double>(k) / 10.0, counts[k], sums[k] / static_cast<double>(counts[k])});
  }
  return out;
}

}  // namespace ddl::effort
