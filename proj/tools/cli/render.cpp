#include "cli/render.hpp"

#include <algorithm>
#include <iomanip>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ddl::cli {

namespace {

std::vector<std::string> sorted_strings(const std::set<Literal>& literals) {
  std::vector<std::string> out;
  out.reserve(literals.size());
  for (const auto& literal : literals) out.push_back(to_string(literal));
  std::sort(out.begin(), out.end());
  return out;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string conclusion_key(const Verdict& v) {
  const Sign sign = v.outcome == Outcome::proved_plus ? Sign::plus : Sign::minus;
  return to_string(TaggedConclusion{sign, v.tag, v.mode, v.literal});
}

Json per_mode(const std::array<std::set<Literal>, 3>& sets) {
  Json out = Json::object();
  for (Mode mode : kAllModes) {
    out[std::string(1, mode_symbol(mode))] = sorted_strings(sets[static_cast<std::size_t>(mode)]);
  }
  return out;
}

Json optional_number(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

}  // namespace

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

Json to_json(const Derivation& derivation) {
  const Extension& ext = derivation.extension;
  Json doc = Json::object();
  doc["plus_definite"] = sorted_strings(ext.plus_definite);
  doc["minus_definite"] = sorted_strings(ext.minus_definite);
  doc["plus_defeasible"] = per_mode(ext.plus_defeasible);
  doc["minus_defeasible"] = per_mode(ext.minus_defeasible);

  std::vector<std::string> undetermined;
  for (const auto& entry : ext.undetermined) undetermined.push_back(to_string(entry));
  std::sort(undetermined.begin(), undetermined.end());
  doc["undetermined"] = undetermined;

  std::vector<std::pair<std::string, Json>> entries;
  for (const auto& v : derivation.verdicts) {
    if (v.outcome == Outcome::undetermined) continue;
    Json j = Json::object();
    const std::string key = conclusion_key(v);
    j["conclusion"] = key;
    j["reason"] = v.reason;
    if (v.witness) j["witness"] = *v.witness;
    if (!v.defeated.empty()) j["defeated"] = v.defeated;
    if (v.blocker) j["blocker"] = *v.blocker;
    entries.emplace_back(key, std::move(j));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json justifications = Json::array();
  for (auto& [key, j] : entries) justifications.push_back(std::move(j));
  doc["justifications"] = std::move(justifications);
  return doc;
}

std::string to_text(const Derivation& derivation) {
  const Extension& ext = derivation.extension;
  std::ostringstream os;
  auto row = [&os](const std::string& heading, const std::vector<std::string>& items) {
    os << heading << ":";
    if (!items.empty()) os << " " << join(items, ", ");
    os << "\n";
  };
  row("+definite C", sorted_strings(ext.plus_definite));
  row("-definite C", sorted_strings(ext.minus_definite));
  for (Mode mode : kAllModes) row(std::string("+defeasible ") + mode_symbol(mode), sorted_strings(ext.plus(mode)));
  for (Mode mode : kAllModes) row(std::string("-defeasible ") + mode_symbol(mode), sorted_strings(ext.minus(mode)));
  std::vector<std::string> undetermined;
  for (const auto& entry : ext.undetermined) undetermined.push_back(to_string(entry));
  std::sort(undetermined.begin(), undetermined.end());
  row("undetermined", undetermined);

  // Only the rule-driven verdicts; facts and exhaustion are self-explanatory.
  std::vector<std::string> lines;
  for (const auto& v : derivation.verdicts) {
    if (v.outcome == Outcome::undetermined) continue;
    if (!v.witness && !v.blocker && v.defeated.empty()) continue;
    std::string line = "  " + conclusion_key(v) + ": " + v.reason;
    if (v.witness) line += " by " + *v.witness;
    if (v.blocker) line += " by " + *v.blocker;
    if (!v.defeated.empty()) line += ", beating " + join(v.defeated, ", ");
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  if (!lines.empty()) os << "justifications:\n" << join(lines, "\n") << "\n";
  return os.str();
}

Json to_json(const SuiteReport& report) {
  Json doc = Json::object();
  doc["scenario_count"] = report.scenarios.size();
  doc["review_count"] = report.review_count();
  doc["error_rate"] = report.error_rate;
  doc["expectation_error_rate"] = report.expectation_error_rate;
  doc["length_ratio"] = optional_number(report.length_ratio);
  Json scenarios = Json::array();
  for (const auto& s : report.scenarios) {
    Json j = Json::object();
    j["name"] = s.name;
    j["verdict"] = std::string(to_string(s.verdict));
    Json expectations = Json::array();
    for (const auto& e : s.expectations) {
      expectations.push_back(Json{{"expected", to_string(e.expected)}, {"outcome", std::string(to_string(e.outcome))}});
    }
    j["expectations"] = std::move(expectations);
    Json summary = Json::object();
    for (const auto& [key, count] : s.summary) summary[key] = count;
    j["summary"] = std::move(summary);
    std::vector<std::string> diagnostics;
    for (const auto& d : s.diagnostics) diagnostics.push_back(to_string(d));
    j["diagnostics"] = diagnostics;
    scenarios.push_back(std::move(j));
  }
  doc["scenarios"] = std::move(scenarios);
  return doc;
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& s : report.scenarios) {
    os << to_string(s.verdict) << "  " << s.name << "\n";
    for (const auto& e : s.expectations) {
      os << "    " << to_string(e.outcome) << "  " << to_string(e.expected) << "\n";
    }
    for (const auto& d : s.diagnostics) os << "    " << to_string(d) << "\n";
  }
  os << report.scenarios.size() << " scenarios, " << report.review_count() << " to review, error rate "
     << fixed(report.error_rate, 4) << ", expectation error rate " << fixed(report.expectation_error_rate, 4) << "\n";
  if (report.length_ratio) os << "length ratio " << fixed(*report.length_ratio, 4) << "\n";
  return os.str();
}

Json to_json(const effort::EffortReport& r, bool rounded) {
  Json doc = Json::object();
  doc["rounding"] = rounded ? "staged" : "none";
  doc["code_hours"] = r.code_hours;
  doc["retrieve_hours"] = r.retrieve_hours;
  doc["scenario_hours"] = r.scenario_hours;
  doc["test_hours"] = r.test_hours;
  doc["total_hours"] = r.total_hours;
  doc["person_months"] = r.person_months;
  doc["person_months_rounded"] = static_cast<long long>(std::llround(r.person_months));
  return doc;
}

std::string to_text(const effort::EffortReport& r, bool rounded) {
  const int decimals = rounded ? 0 : 3;
  const auto row = [&](const char* name, double hours) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-10s %12s h\n", name, fixed(hours, decimals).c_str());
    return std::string(buf);
  };
  std::string out = row("code", r.code_hours) + row("retrieve", r.retrieve_hours) + row("scenario", r.scenario_hours) +
                    row("test", r.test_hours) + row("total", r.total_hours);
  out += "person-months " + fixed(r.person_months, 2) + " (~" + std::to_string(std::llround(r.person_months)) + ")\n";
  return out;
}

Json to_json(const effort::CodingStats& s, const std::vector<effort::ExpertiseClass>& classes) {
  Json doc = Json::object();
  doc["rows"] = s.rows;
  doc["mean"] = s.mean;
  doc["median"] = s.median;
  doc["std"] = s.std_dev;
  doc["min"] = s.min;
  doc["max"] = s.max;
  doc["correlation_expertise"] = optional_number(s.correlation_expertise);
  doc["correlation_depth"] = optional_number(s.correlation_depth);
  Json by_class = Json::array();
  for (const auto& c : classes) {
    by_class.push_back(Json{{"lower", c.lower}, {"rows", c.rows}, {"mean_rate", c.mean_rate}});
  }
  doc["expertise_classes"] = std::move(by_class);
  return doc;
}

std::string to_text(const effort::CodingStats& s, const std::vector<effort::ExpertiseClass>& classes) {
  const auto corr = [](const std::optional<double>& c) { return c ? fixed(*c, 4) : std::string("undefined"); };
  std::ostringstream os;
  os << "rows " << s.rows << "\n";
  os << "mean " << fixed(s.mean, 2) << " s/char\n";
  os << "median " << fixed(s.median, 2) << " s/char\n";
  os << "std " << fixed(s.std_dev, 2) << " s/char\n";
  os << "min " << fixed(s.min, 2) << " s/char\n";
  os << "max " << fixed(s.max, 2) << " s/char\n";
  os << "correlation with expertise " << corr(s.correlation_expertise) << "\n";
  os << "correlation with depth " << corr(s.correlation_depth) << "\n";
  os << "expertise classes:\n";
  for (const auto& c : classes) {
    os << "  " << fixed(c.lower, 1) << std::setw(5) << c.rows << " rows  mean " << fixed(c.mean_rate, 2) << "\n";
  }
  return os.str();
}

}  // namespace ddl::cli
