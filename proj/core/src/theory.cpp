#include "ddl/theory.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ddl {

struct Theory::Data {
  std::vector<Literal> facts;
  std::vector<Rule> rules;
  std::vector<Superiority> superiority;

  std::unordered_set<Literal> fact_set;
  std::set<std::pair<std::string, std::string>, std::less<>> superiority_set;
  std::unordered_map<std::string, std::size_t> label_index;
  std::array<std::unordered_map<Literal, std::vector<RuleRef>>, 3> by_head;
};

Theory::Theory() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

Theory::Theory(std::vector<Literal> facts, std::vector<Rule> rules, std::vector<Superiority> superiority) {
  auto data = std::make_shared<Data>();
  for (auto& fact : facts) {
    if (data->fact_set.insert(fact).second) data->facts.push_back(std::move(fact));
  }
  for (auto& pair : superiority) {
    if (data->superiority_set.emplace(pair.stronger, pair.weaker).second) {
      data->superiority.push_back(std::move(pair));
    }
  }
  data->rules = std::move(rules);
  for (std::size_t i = 0; i < data->rules.size(); ++i) {
    const Rule& rule = data->rules[i];
    // First declaration wins; duplicates are reported by validate_theory.
    data->label_index.emplace(rule.label, i);
    auto& index = data->by_head[static_cast<std::size_t>(rule.mode)];
    for (std::size_t pos = 0; pos < rule.head.size(); ++pos) {
      index[rule.head[pos]].push_back(RuleRef{&rule, pos + 1});
    }
  }
  data_ = std::move(data);
}

const std::vector<Literal>& Theory::facts() const { return data_->facts; }
const std::vector<Rule>& Theory::rules() const { return data_->rules; }
const std::vector<Superiority>& Theory::superiority() const { return data_->superiority; }

bool Theory::is_fact(const Literal& literal) const { return data_->fact_set.contains(literal); }

bool Theory::is_superior(const Rule& stronger, const Rule& weaker) const {
  if (data_->superiority_set.empty()) return false;
  return data_->superiority_set.contains(std::make_pair(stronger.label, weaker.label));
}

const Rule* Theory::find_rule(std::string_view label) const {
  auto it = data_->label_index.find(std::string(label));
  return it == data_->label_index.end() ? nullptr : &data_->rules[it->second];
}

std::span<const RuleRef> Theory::rules_for(const Literal& literal, Mode mode) const {
  const auto& index = data_->by_head[static_cast<std::size_t>(mode)];
  auto it = index.find(literal);
  if (it == index.end()) return {};
  return it->second;
}

bool Theory::empty() const {
  return data_->facts.empty() && data_->rules.empty() && data_->superiority.empty();
}

bool operator==(const Theory& lhs, const Theory& rhs) {
  if (lhs.data_ == rhs.data_) return true;
  if (lhs.rules() != rhs.rules()) return false;
  if (lhs.data_->fact_set != rhs.data_->fact_set) return false;
  return lhs.data_->superiority_set == rhs.data_->superiority_set;
}

std::vector<RuleRef> rules_for(const Theory& theory, const Literal& literal, Mode mode) {
  auto refs = theory.rules_for(literal, mode);
  return {refs.begin(), refs.end()};
}

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::strict: return "strict";
    case RuleKind::defeasible: return "defeasible";
    case RuleKind::defeater: return "defeater";
  }
  return "?";
}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string msg = "theory failed validation";
        for (const auto& d : diagnostics) {
          if (d.severity == Severity::error) {
            msg += ": " + d.message;
            break;
          }
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace ddl
