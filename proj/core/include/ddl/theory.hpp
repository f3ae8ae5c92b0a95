#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddl/literal.hpp"

namespace ddl {

enum class RuleKind { strict, defeasible, defeater };

/// `label: body ~> head`. The head is a compensation chain; only obligation-mode
/// defeasible rules may carry more than one element.
struct Rule {
  std::string label;
  RuleKind kind = RuleKind::defeasible;
  Mode mode = Mode::constitutive;
  std::vector<ModalLiteral> body;
  std::vector<Literal> head;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// `stronger > weaker`.
struct Superiority {
  std::string stronger;
  std::string weaker;

  friend bool operator==(const Superiority&, const Superiority&) = default;
  friend auto operator<=>(const Superiority&, const Superiority&) = default;
};

/// A rule together with the 1-based chain position at which a literal occurs.
struct RuleRef {
  const Rule* rule = nullptr;
  std::size_t position = 1;

  friend bool operator==(const RuleRef&, const RuleRef&) = default;
};

/// The tuple (facts, rules, superiority). Immutable; copies share storage, so
/// `RuleRef` pointers stay valid for as long as any copy is alive.
class Theory {
 public:
  Theory();
  Theory(std::vector<Literal> facts, std::vector<Rule> rules, std::vector<Superiority> superiority);

  const std::vector<Literal>& facts() const;
  const std::vector<Rule>& rules() const;
  const std::vector<Superiority>& superiority() const;

  bool is_fact(const Literal& literal) const;
  bool is_superior(const Rule& stronger, const Rule& weaker) const;
  const Rule* find_rule(std::string_view label) const;

  /// Rules of `mode` whose head contains `literal`, in declaration order.
  std::span<const RuleRef> rules_for(const Literal& literal, Mode mode) const;

  bool empty() const;

  /// Facts and superiority compare as sets; rules compare in order.
  friend bool operator==(const Theory& lhs, const Theory& rhs);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

std::vector<RuleRef> rules_for(const Theory& theory, const Literal& literal, Mode mode);

std::string_view to_string(RuleKind kind);

enum class Severity { error, warning };

enum class DiagnosticKind {
  invalid_literal,
  duplicate_label,
  invalid_label,
  dangling_superiority,
  self_superiority,
  superiority_cycle,
  empty_head,
  illegal_chain,
  repeated_chain_element,
  strict_rule_mode,
  contradictory_facts,
  inert_superiority,
};

struct Diagnostic {
  Severity severity = Severity::error;
  DiagnosticKind kind = DiagnosticKind::invalid_literal;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string_view to_string(DiagnosticKind kind);
std::string to_string(const Diagnostic& diagnostic);

/// Structural checks over a theory. Errors break a type invariant; warnings
/// (contradictory facts, superiority cycles) are reported but allowed.
std::vector<Diagnostic> validate_theory(const Theory& theory);

/// Superiority pairs between rules that share no complementary conclusion in a
/// common mode family. Such pairs are legal but never consulted.
std::vector<Diagnostic> lint_superiority(const Theory& theory);

bool has_errors(std::span<const Diagnostic> diagnostics);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace ddl
