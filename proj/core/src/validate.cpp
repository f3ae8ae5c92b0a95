#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "ddl/theory.hpp"

namespace ddl {

namespace {

void add(std::vector<Diagnostic>& out, Severity severity, DiagnosticKind kind, std::string message) {
  out.push_back(Diagnostic{severity, kind, std::move(message)});
}

void check_rule(const Rule& rule, std::vector<Diagnostic>& out) {
  const std::string where = "rule '" + rule.label + "'";
  if (!is_valid_atom(rule.label)) {
    add(out, Severity::error, DiagnosticKind::invalid_label, "invalid rule label '" + rule.label + "'");
  }
  for (const auto& element : rule.body) {
    if (!is_valid_modal_literal(element)) {
      add(out, Severity::error, DiagnosticKind::invalid_literal,
          where + ": malformed body literal '" + to_string(element) + "'");
    }
  }
  if (rule.head.empty()) {
    add(out, Severity::error, DiagnosticKind::empty_head, where + " has no conclusion");
    return;
  }
  for (const auto& literal : rule.head) {
    if (!is_valid_literal(literal)) {
      add(out, Severity::error, DiagnosticKind::invalid_literal,
          where + ": malformed head literal '" + to_string(literal) + "'");
    }
  }
  if (rule.kind == RuleKind::strict && rule.mode != Mode::constitutive) {
    add(out, Severity::error, DiagnosticKind::strict_rule_mode, where + ": strict rules must be constitutive");
  }
  if (rule.head.size() > 1 && (rule.kind != RuleKind::defeasible || rule.mode != Mode::obligation)) {
    add(out, Severity::error, DiagnosticKind::illegal_chain,
        where + ": compensation chains are only allowed on defeasible obligation rules");
  }
  std::set<Literal> seen;
  for (const auto& literal : rule.head) {
    if (!seen.insert(literal).second) {
      add(out, Severity::error, DiagnosticKind::repeated_chain_element,
          where + ": '" + to_string(literal) + "' repeats in the chain");
    }
  }
}

// Reports one warning per superiority cycle (strongly connected component
// with more than one rule).
void check_cycles(const Theory& theory, std::vector<Diagnostic>& out) {
  std::map<std::string, std::vector<std::string>> graph;
  for (const auto& pair : theory.superiority()) {
    if (pair.stronger != pair.weaker) graph[pair.stronger].push_back(pair.weaker);
    graph.try_emplace(pair.weaker);
  }

  // Tarjan over a graph small enough for recursion.
  std::map<std::string, int> index;
  std::map<std::string, int> low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : graph[v]) {
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1) {
        std::sort(component.begin(), component.end());
        std::string names;
        for (const auto& name : component) names += (names.empty() ? "" : ", ") + name;
        add(out, Severity::warning, DiagnosticKind::superiority_cycle, "superiority cycle among {" + names + "}");
      }
    }
  };
  for (const auto& [node, _] : graph) {
    if (!index.contains(node)) visit(node);
  }
}

bool modes_interact(Mode stronger, Mode weaker) {
  switch (stronger) {
    case Mode::constitutive: return weaker == Mode::constitutive;
    case Mode::obligation: return weaker == Mode::obligation || weaker == Mode::permission;
    case Mode::permission: return weaker == Mode::obligation;
  }
  return false;
}

}  // namespace

std::vector<Diagnostic> validate_theory(const Theory& theory) {
  std::vector<Diagnostic> out;

  for (const auto& fact : theory.facts()) {
    if (!is_valid_literal(fact)) {
      add(out, Severity::error, DiagnosticKind::invalid_literal, "malformed fact '" + to_string(fact) + "'");
    }
  }
  for (const auto& fact : theory.facts()) {
    if (!fact.negated && theory.is_fact(complement(fact))) {
      add(out, Severity::warning, DiagnosticKind::contradictory_facts,
          "facts contain both '" + to_string(fact) + "' and '" + to_string(complement(fact)) + "'");
    }
  }

  std::unordered_set<std::string> labels;
  for (const auto& rule : theory.rules()) {
    check_rule(rule, out);
    if (!labels.insert(rule.label).second) {
      add(out, Severity::error, DiagnosticKind::duplicate_label, "duplicate rule label '" + rule.label + "'");
    }
  }

  for (const auto& pair : theory.superiority()) {
    for (const auto* name : {&pair.stronger, &pair.weaker}) {
      if (!labels.contains(*name)) {
        add(out, Severity::error, DiagnosticKind::dangling_superiority,
            "superiority '" + pair.stronger + " > " + pair.weaker + "' names unknown rule '" + *name + "'");
      }
    }
    if (pair.stronger == pair.weaker) {
      add(out, Severity::error, DiagnosticKind::self_superiority, "rule '" + pair.stronger + "' is superior to itself");
    }
  }
  check_cycles(theory, out);
  return out;
}

std::vector<Diagnostic> lint_superiority(const Theory& theory) {
  std::vector<Diagnostic> out;
  for (const auto& pair : theory.superiority()) {
    const Rule* stronger = theory.find_rule(pair.stronger);
    const Rule* weaker = theory.find_rule(pair.weaker);
    if (stronger == nullptr || weaker == nullptr) continue;
    bool interacts = false;
    if (modes_interact(stronger->mode, weaker->mode)) {
      for (const auto& literal : stronger->head) {
        const auto opposite = complement(literal);
        if (std::find(weaker->head.begin(), weaker->head.end(), opposite) != weaker->head.end()) {
          interacts = true;
          break;
        }
      }
    }
    if (!interacts) {
      add(out, Severity::warning, DiagnosticKind::inert_superiority,
          "superiority '" + pair.stronger + " > " + pair.weaker + "' relates rules without complementary conclusions");
    }
  }
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::invalid_literal: return "invalid-literal";
    case DiagnosticKind::duplicate_label: return "duplicate-label";
    case DiagnosticKind::invalid_label: return "invalid-label";
    case DiagnosticKind::dangling_superiority: return "dangling-superiority";
    case DiagnosticKind::self_superiority: return "self-superiority";
    case DiagnosticKind::superiority_cycle: return "superiority-cycle";
    case DiagnosticKind::empty_head: return "empty-head";
    case DiagnosticKind::illegal_chain: return "illegal-chain";
    case DiagnosticKind::repeated_chain_element: return "repeated-chain-element";
    case DiagnosticKind::strict_rule_mode: return "strict-rule-mode";
    case DiagnosticKind::contradictory_facts: return "contradictory-facts";
    case DiagnosticKind::inert_superiority: return "inert-superiority";
  }
  return "unknown";
}

std::string to_string(const Diagnostic& diagnostic) {
  std::string out = diagnostic.severity == Severity::error ? "error" : "warning";
  out += " [";
  out += to_string(diagnostic.kind);
  out += "]: ";
  out += diagnostic.message;
  return out;
}

}  // namespace ddl
