#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ddl/engine.hpp"
#include "ddl/estimator.hpp"
#include "ddl/harness.hpp"

namespace ddl::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Derivation& derivation);
Json to_json(const SuiteReport& report);
Json to_json(const effort::EffortReport& report, bool rounded);
Json to_json(const effort::CodingStats& stats, const std::vector<effort::ExpertiseClass>& classes);

std::string to_text(const Derivation& derivation);
std::string to_text(const SuiteReport& report);
std::string to_text(const effort::EffortReport& report, bool rounded);
std::string to_text(const effort::CodingStats& stats, const std::vector<effort::ExpertiseClass>& classes);

/// Two-space indented document with a trailing newline.
std::string dump(const Json& document);

}  // namespace ddl::cli
