#include "ddl/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ddl {

// ---------------------------------------------------------------------------
// ProofState

const ProofState::Table& ProofState::table(Tag tag, Mode mode) const {
  return tag == Tag::definite ? definite_ : defeasible_[static_cast<std::size_t>(mode)];
}

ProofState::Table& ProofState::table(Tag tag, Mode mode) {
  return tag == Tag::definite ? definite_ : defeasible_[static_cast<std::size_t>(mode)];
}

void ProofState::establish(const TaggedConclusion& conclusion) {
  if (!is_legal(conclusion.tag, conclusion.mode)) {
    throw std::invalid_argument("definite conclusions exist for mode C only: " + to_string(conclusion));
  }
  const Status wanted = conclusion.sign == Sign::plus ? Status::plus : Status::minus;
  auto [it, inserted] = table(conclusion.tag, conclusion.mode).try_emplace(conclusion.literal, wanted);
  if (!inserted && it->second != wanted) {
    throw std::logic_error("conflicting conclusion: " + to_string(conclusion));
  }
}

ProofState::Status ProofState::status(Tag tag, Mode mode, const Literal& literal) const {
  if (!is_legal(tag, mode)) return Status::unknown;
  const Table& t = table(tag, mode);
  auto it = t.find(literal);
  return it == t.end() ? Status::unknown : it->second;
}

bool ProofState::holds(const TaggedConclusion& conclusion) const {
  const Status s = status(conclusion.tag, conclusion.mode, conclusion.literal);
  return conclusion.sign == Sign::plus ? s == Status::plus : s == Status::minus;
}

std::size_t ProofState::size() const {
  std::size_t n = definite_.size();
  for (const auto& t : defeasible_) n += t.size();
  return n;
}

// ---------------------------------------------------------------------------
// Applicability

namespace {

using Status = ProofState::Status;

Status defeasible_status(const ProofState& state, Mode mode, const Literal& literal) {
  return state.status(Tag::defeasible, mode, literal);
}

// Status a body element needs for the rule to fire; the opposite status
// refutes it. `!O(q)` fires on -O q.
Status firing_status(const ModalLiteral& element) {
  return element.modality_negated ? Status::minus : Status::plus;
}

Status opposite(Status s) { return s == Status::plus ? Status::minus : Status::plus; }

void check_position(const Rule& rule, std::size_t position) {
  if (position < 1 || position > rule.head.size()) {
    throw std::out_of_range("rule '" + rule.label + "' has no chain position " + std::to_string(position));
  }
}

}  // namespace

bool applicable(const Theory&, const ProofState& state, const Rule& rule, std::size_t position) {
  check_position(rule, position);
  for (const auto& element : rule.body) {
    if (defeasible_status(state, required_mode(element), element.literal) != firing_status(element)) return false;
  }
  if (rule.mode == Mode::obligation) {
    // Each earlier element must be in force and violated.
    for (std::size_t j = 0; j + 1 < position; ++j) {
      const Literal& earlier = rule.head[j];
      if (defeasible_status(state, Mode::obligation, earlier) != Status::plus) return false;
      if (defeasible_status(state, Mode::constitutive, complement(earlier)) != Status::plus) return false;
    }
  }
  return true;
}

bool discarded(const Theory&, const ProofState& state, const Rule& rule, std::size_t position) {
  check_position(rule, position);
  for (const auto& element : rule.body) {
    if (defeasible_status(state, required_mode(element), element.literal) == opposite(firing_status(element))) {
      return true;
    }
  }
  if (rule.mode == Mode::obligation) {
    for (std::size_t j = 0; j + 1 < position; ++j) {
      const Literal& earlier = rule.head[j];
      if (defeasible_status(state, Mode::obligation, earlier) == Status::minus) return true;
      if (defeasible_status(state, Mode::constitutive, complement(earlier)) == Status::minus) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Proof conditions

namespace {

bool can_support(const Rule& rule) { return rule.kind != RuleKind::defeater; }

/// Rule families consulted when deciding `mode` for a literal l:
///  supporters  - rules for l in `mode` (witness must not be a defeater)
///  opponents   - rules for ~l that attack it
///  defenders   - rules for l that may beat an opponent via superiority
class Conditions {
 public:
  Conditions(const Theory& theory, const ProofState& state) : theory_(theory), state_(state) {}

  std::vector<RuleRef> supporters(Mode mode, const Literal& l) const { return rules_for(theory_, l, mode); }

  std::vector<RuleRef> opponents(Mode mode, const Literal& l) const {
    const Literal opposite = complement(l);
    switch (mode) {
      case Mode::constitutive: return rules_for(theory_, opposite, Mode::constitutive);
      case Mode::obligation: {
        // Explicit opposite permissions are exceptions to obligations.
        auto out = rules_for(theory_, opposite, Mode::obligation);
        auto perms = theory_.rules_for(opposite, Mode::permission);
        out.insert(out.end(), perms.begin(), perms.end());
        return out;
      }
      case Mode::permission: return rules_for(theory_, opposite, Mode::obligation);
    }
    return {};
  }

  std::vector<RuleRef> defenders(Mode mode, const Literal& l) const {
    switch (mode) {
      case Mode::constitutive: return rules_for(theory_, l, Mode::constitutive);
      // A permission cannot reinstate an obligation.
      case Mode::obligation: return rules_for(theory_, l, Mode::obligation);
      case Mode::permission: {
        auto out = rules_for(theory_, l, Mode::permission);
        auto obls = theory_.rules_for(l, Mode::obligation);
        out.insert(out.end(), obls.begin(), obls.end());
        return out;
      }
    }
    return {};
  }

  bool is_applicable(const RuleRef& ref) const { return applicable(theory_, state_, *ref.rule, ref.position); }
  bool is_discarded(const RuleRef& ref) const { return discarded(theory_, state_, *ref.rule, ref.position); }

  bool beaten(const RuleRef& opponent, const std::vector<RuleRef>& defenders) const {
    return std::any_of(defenders.begin(), defenders.end(), [&](const RuleRef& zeta) {
      return theory_.is_superior(*zeta.rule, *opponent.rule) && is_applicable(zeta);
    });
  }

  bool unbeatable(const RuleRef& opponent, const std::vector<RuleRef>& defenders) const {
    return std::all_of(defenders.begin(), defenders.end(), [&](const RuleRef& zeta) {
      return !theory_.is_superior(*zeta.rule, *opponent.rule) || is_discarded(zeta);
    });
  }

  bool plus_defeasible(Mode mode, const Literal& l) const {
    if (mode == Mode::constitutive) {
      if (theory_.is_fact(l)) return true;
      if (theory_.is_fact(complement(l))) return false;
    }
    const auto support = supporters(mode, l);
    const bool witnessed = std::any_of(support.begin(), support.end(),
                                       [&](const RuleRef& beta) { return can_support(*beta.rule) && is_applicable(beta); });
    if (!witnessed) return false;
    const auto defend = defenders(mode, l);
    const auto attack = opponents(mode, l);
    return std::all_of(attack.begin(), attack.end(),
                       [&](const RuleRef& gamma) { return is_discarded(gamma) || beaten(gamma, defend); });
  }

  bool minus_defeasible(Mode mode, const Literal& l) const {
    if (mode == Mode::constitutive) {
      if (theory_.is_fact(l)) return false;
      if (theory_.is_fact(complement(l))) return true;
    }
    const auto support = supporters(mode, l);
    const bool unsupported = std::all_of(support.begin(), support.end(),
                                         [&](const RuleRef& beta) { return !can_support(*beta.rule) || is_discarded(beta); });
    if (unsupported) return true;
    return first_blocker(mode, l).has_value();
  }

  std::optional<RuleRef> first_blocker(Mode mode, const Literal& l) const {
    const auto defend = defenders(mode, l);
    for (const auto& gamma : opponents(mode, l)) {
      if (is_applicable(gamma) && unbeatable(gamma, defend)) return gamma;
    }
    return std::nullopt;
  }

  std::optional<std::string> definite_witness(const Literal& l) const {
    for (const auto& ref : theory_.rules_for(l, Mode::constitutive)) {
      const Rule& rule = *ref.rule;
      if (rule.kind != RuleKind::strict) continue;
      const bool fires = std::all_of(rule.body.begin(), rule.body.end(), [&](const ModalLiteral& element) {
        return element.modality == Modality::none &&
               state_.status(Tag::definite, Mode::constitutive, element.literal) == Status::plus;
      });
      if (fires) return rule.label;
    }
    return std::nullopt;
  }

  bool plus_definite(const Literal& l) const { return theory_.is_fact(l) || definite_witness(l).has_value(); }

  bool minus_definite(const Literal& l) const {
    if (theory_.is_fact(l)) return false;
    for (const auto& ref : theory_.rules_for(l, Mode::constitutive)) {
      const Rule& rule = *ref.rule;
      if (rule.kind != RuleKind::strict) continue;
      const bool blocked = std::any_of(rule.body.begin(), rule.body.end(), [&](const ModalLiteral& element) {
        return element.modality != Modality::none ||
               state_.status(Tag::definite, Mode::constitutive, element.literal) == Status::minus;
      });
      if (!blocked) return false;
    }
    return true;
  }

 private:
  const Theory& theory_;
  const ProofState& state_;
};

// A goal is one (tag, mode, literal) whose sign is still open.
struct Goal {
  Tag tag;
  Mode mode;
  std::size_t literal;
};

class Evaluator {
 public:
  explicit Evaluator(const Theory& theory) : theory_(theory) {
    collect_universe();
    index_dependencies();
  }

  Derivation run() {
    fixpoint();
    return assemble();
  }

 private:
  static constexpr std::size_t kSlots = 4;  // definite C, defeasible C/O/P

  static std::size_t slot(Tag tag, Mode mode) {
    return tag == Tag::definite ? 0 : 1 + static_cast<std::size_t>(mode);
  }

  static Goal goal_of(std::size_t slot_index, std::size_t literal) {
    if (slot_index == 0) return Goal{Tag::definite, Mode::constitutive, literal};
    return Goal{Tag::defeasible, static_cast<Mode>(slot_index - 1), literal};
  }

  std::size_t id(const Literal& l) const { return ids_.at(l); }

  void add_literal(const Literal& l) {
    pending_universe_.insert(l);
    pending_universe_.insert(complement(l));
  }

  void collect_universe() {
    for (const auto& fact : theory_.facts()) add_literal(fact);
    for (const auto& rule : theory_.rules()) {
      for (const auto& element : rule.body) add_literal(element.literal);
      for (const auto& literal : rule.head) add_literal(literal);
    }
    universe_.assign(pending_universe_.begin(), pending_universe_.end());
    pending_universe_.clear();
    for (std::size_t i = 0; i < universe_.size(); ++i) ids_.emplace(universe_[i], i);
  }

  // dependents_[slot][literal] lists goals to revisit once that conclusion settles.
  void index_dependencies() {
    for (auto& table : dependents_) table.assign(universe_.size(), {});
    for (const auto& rule : theory_.rules()) {
      std::vector<std::size_t> affected;  // encoded goals (slot * n + literal)
      const std::size_t n = universe_.size();
      for (const auto& head : rule.head) {
        const std::size_t h = id(head);
        const std::size_t opp = id(complement(head));
        affected.push_back(slot(Tag::defeasible, rule.mode) * n + h);
        switch (rule.mode) {
          case Mode::constitutive:
            affected.push_back(slot(Tag::defeasible, Mode::constitutive) * n + opp);
            if (rule.kind == RuleKind::strict) affected.push_back(slot(Tag::definite, Mode::constitutive) * n + h);
            break;
          case Mode::obligation:
            affected.push_back(slot(Tag::defeasible, Mode::obligation) * n + opp);
            affected.push_back(slot(Tag::defeasible, Mode::permission) * n + opp);
            affected.push_back(slot(Tag::defeasible, Mode::permission) * n + h);
            break;
          case Mode::permission:
            affected.push_back(slot(Tag::defeasible, Mode::obligation) * n + opp);
            break;
        }
      }
      std::vector<std::pair<std::size_t, std::size_t>> triggers;
      for (const auto& element : rule.body) {
        const std::size_t l = id(element.literal);
        triggers.emplace_back(slot(Tag::defeasible, required_mode(element)), l);
        triggers.emplace_back(slot(Tag::definite, Mode::constitutive), l);
      }
      if (rule.mode == Mode::obligation) {
        for (const auto& head : rule.head) {
          triggers.emplace_back(slot(Tag::defeasible, Mode::obligation), id(head));
          triggers.emplace_back(slot(Tag::defeasible, Mode::constitutive), id(complement(head)));
        }
      }
      for (const auto& [s, l] : triggers) {
        auto& list = dependents_[s][l];
        list.insert(list.end(), affected.begin(), affected.end());
      }
    }
    for (auto& table : dependents_) {
      for (auto& list : table) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    }
  }

  bool settled(std::size_t s, std::size_t l) const {
    const Goal g = goal_of(s, l);
    return state_.status(g.tag, g.mode, universe_[l]) != Status::unknown;
  }

  void fixpoint() {
    const std::size_t n = universe_.size();
    std::deque<std::size_t> queue;
    std::vector<char> queued(kSlots * n, 0);
    for (std::size_t s = 0; s < kSlots; ++s) {
      for (std::size_t l = 0; l < n; ++l) {
        queue.push_back(s * n + l);
        queued[s * n + l] = 1;
      }
    }
    const Conditions cond(theory_, state_);
    while (!queue.empty()) {
      const std::size_t encoded = queue.front();
      queue.pop_front();
      queued[encoded] = 0;
      const std::size_t s = encoded / n;
      const std::size_t l = encoded % n;
      if (settled(s, l)) continue;
      const Goal g = goal_of(s, l);
      const Literal& literal = universe_[l];

      std::optional<Sign> sign;
      if (g.tag == Tag::definite) {
        if (cond.plus_definite(literal)) {
          sign = Sign::plus;
        } else if (cond.minus_definite(literal)) {
          sign = Sign::minus;
        }
      } else if (cond.plus_defeasible(g.mode, literal)) {
        sign = Sign::plus;
      } else if (cond.minus_defeasible(g.mode, literal)) {
        sign = Sign::minus;
      }
      if (!sign) continue;

      state_.establish(TaggedConclusion{*sign, g.tag, g.mode, literal});
      for (std::size_t dep : dependents_[s][l]) {
        if (!queued[dep]) {
          queued[dep] = 1;
          queue.push_back(dep);
        }
      }
    }
  }

  Verdict explain(const Conditions& cond, Tag tag, Mode mode, const Literal& l, Status status) const {
    Verdict v;
    v.tag = tag;
    v.mode = mode;
    v.literal = l;
    v.outcome = status == Status::plus ? Outcome::proved_plus : Outcome::proved_minus;
    if (tag == Tag::definite) {
      if (status == Status::plus) {
        if (theory_.is_fact(l)) {
          v.reason = "fact";
        } else {
          v.reason = "strict-closure";
          v.witness = cond.definite_witness(l);
        }
      } else {
        v.reason = "no-strict-derivation";
      }
      return v;
    }

    if (status == Status::plus) {
      if (mode == Mode::constitutive && theory_.is_fact(l)) {
        v.reason = "fact";
        return v;
      }
      v.reason = "rule";
      for (const auto& beta : cond.supporters(mode, l)) {
        if (can_support(*beta.rule) && cond.is_applicable(beta)) {
          v.witness = beta.rule->label;
          break;
        }
      }
      for (const auto& gamma : cond.opponents(mode, l)) {
        if (!cond.is_discarded(gamma) &&
            std::find(v.defeated.begin(), v.defeated.end(), gamma.rule->label) == v.defeated.end()) {
          v.defeated.push_back(gamma.rule->label);
        }
      }
      return v;
    }

    if (mode == Mode::constitutive && theory_.is_fact(complement(l))) {
      v.reason = "complement-fact";
      return v;
    }
    if (auto blocker = cond.first_blocker(mode, l)) {
      v.reason = "defeated";
      v.blocker = blocker->rule->label;
    } else {
      v.reason = "no-applicable-rule";
    }
    return v;
  }

  Derivation assemble() const {
    Derivation out;
    const Conditions cond(theory_, state_);
    Extension& ext = out.extension;
    auto visit = [&](Tag tag, Mode mode) {
      for (const auto& l : universe_) {
        const Status status = state_.status(tag, mode, l);
        if (status == Status::unknown) {
          ext.undetermined.insert(Undetermined{tag, mode, l});
          continue;
        }
        if (tag == Tag::definite) {
          (status == Status::plus ? ext.plus_definite : ext.minus_definite).insert(l);
        } else {
          (status == Status::plus ? ext.plus(mode) : ext.minus(mode)).insert(l);
        }
        out.verdicts.push_back(explain(cond, tag, mode, l, status));
      }
    };
    visit(Tag::definite, Mode::constitutive);
    for (Mode mode : kAllModes) visit(Tag::defeasible, mode);
    return out;
  }

  const Theory& theory_;
  std::set<Literal> pending_universe_;
  std::vector<Literal> universe_;
  std::unordered_map<Literal, std::size_t> ids_;
  std::array<std::vector<std::vector<std::size_t>>, kSlots> dependents_;
  ProofState state_;
};

}  // namespace

Derivation compute_extension(const Theory& theory) {
  auto diagnostics = validate_theory(theory);
  if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
  return Evaluator(theory).run();
}

Theory merge(const Theory& background, const Scenario& scenario) {
  std::vector<Literal> facts = background.facts();
  facts.insert(facts.end(), scenario.facts.begin(), scenario.facts.end());

  std::vector<Rule> rules = background.rules();
  std::unordered_set<std::string> taken;
  for (const auto& rule : rules) taken.insert(rule.label);
  for (Rule rule : scenario.rules) {
    while (taken.contains(rule.label)) rule.label = "sc_" + rule.label;
    taken.insert(rule.label);
    rules.push_back(std::move(rule));
  }
  return Theory(std::move(facts), std::move(rules), background.superiority());
}

Derivation derive(const Theory& background, const Scenario& scenario) {
  return compute_extension(merge(background, scenario));
}

}  // namespace ddl
