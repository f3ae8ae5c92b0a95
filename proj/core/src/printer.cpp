#include "ddl/parser.hpp"

namespace ddl {

namespace {

std::string arrow_for(const Rule& rule) {
  std::string arrow;
  switch (rule.kind) {
    case RuleKind::strict: return "->";
    case RuleKind::defeasible: arrow = "=>"; break;
    case RuleKind::defeater: arrow = "~>"; break;
  }
  if (rule.mode != Mode::constitutive) arrow += mode_symbol(rule.mode);
  return arrow;
}

}  // namespace

std::string print_rule(const Rule& rule) {
  std::string out = rule.label + ":";
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += to_string(rule.body[i]);
  }
  out += ' ';
  out += arrow_for(rule);
  for (std::size_t i = 0; i < rule.head.size(); ++i) {
    out += i == 0 ? " " : " @ ";
    out += to_string(rule.head[i]);
  }
  out += '.';
  return out;
}

std::string print_theory(const Theory& theory) {
  std::string out;
  for (const auto& fact : theory.facts()) out += "fact " + to_string(fact) + ".\n";
  for (const auto& rule : theory.rules()) out += print_rule(rule) + "\n";
  for (const auto& pair : theory.superiority()) out += pair.stronger + " > " + pair.weaker + ".\n";
  return out;
}

std::string print_scenario(const Scenario& scenario) {
  std::string out;
  for (const auto& fact : scenario.facts) out += "fact " + to_string(fact) + ".\n";
  for (const auto& rule : scenario.rules) out += print_rule(rule) + "\n";
  for (const auto& expectation : scenario.expectations) out += "expect " + to_string(expectation) + ".\n";
  return out;
}

}  // namespace ddl
