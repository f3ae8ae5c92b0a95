#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddl/extension.hpp"
#include "ddl/parser.hpp"
#include "ddl/theory.hpp"

namespace ddl {

/// The conclusions established so far, i.e. the prefix P(1..n) of a proof.
/// A conclusion and its opposite sign can never both be established.
class ProofState {
 public:
  enum class Status { unknown, plus, minus };

  /// Throws std::logic_error if the opposite sign is already established, or
  /// std::invalid_argument for a definite conclusion outside mode C.
  void establish(const TaggedConclusion& conclusion);

  Status status(Tag tag, Mode mode, const Literal& literal) const;
  bool holds(const TaggedConclusion& conclusion) const;

  std::size_t size() const;

 private:
  using Table = std::unordered_map<Literal, Status>;
  const Table& table(Tag tag, Mode mode) const;
  Table& table(Tag tag, Mode mode);

  Table definite_;
  std::array<Table, 3> defeasible_;
};

/// Rule `rule` is applicable at chain position `position` (1-based): every
/// body element is established, and for obligation rules every earlier chain
/// element is an obligation in force that has been violated.
/// Throws std::out_of_range for a position outside the head.
bool applicable(const Theory& theory, const ProofState& state, const Rule& rule, std::size_t position = 1);

/// Strong negation of applicable(). Both may be false on an incomplete state;
/// they are never both true.
bool discarded(const Theory& theory, const ProofState& state, const Rule& rule, std::size_t position = 1);

enum class Outcome { proved_plus, proved_minus, undetermined };

/// Why a conclusion was settled the way it was.
struct Verdict {
  Tag tag = Tag::defeasible;
  Mode mode = Mode::constitutive;
  Literal literal;
  Outcome outcome = Outcome::undetermined;
  /// For plus: "fact", "strict-closure" or "rule". For minus: "complement-fact",
  /// "no-strict-derivation", "no-applicable-rule" or "defeated".
  std::string reason;
  /// Supporting rule (plus verdicts proved by a rule).
  std::optional<std::string> witness;
  /// Opposing rules that were applicable and beaten by a superior rule.
  std::vector<std::string> defeated;
  /// Applicable opposing rule that no supporting rule beats (minus, "defeated").
  std::optional<std::string> blocker;
};

struct Derivation {
  Extension extension;
  /// Sorted by (tag, mode, literal); settled conclusions only.
  std::vector<Verdict> verdicts;
};

/// Runs the proof conditions to a fixpoint. Literals range over every literal
/// mentioned in the theory and its complement. Throws ValidationError when
/// validate_theory reports errors.
Derivation compute_extension(const Theory& theory);

/// Background facts and rules plus the scenario's. Scenario labels that clash
/// with background labels get an `sc_` prefix.
Theory merge(const Theory& background, const Scenario& scenario);

Derivation derive(const Theory& background, const Scenario& scenario);

}  // namespace ddl
