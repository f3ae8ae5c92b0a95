#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "ddl/engine.hpp"
#include "fixtures.hpp"
#include "generator.hpp"
#include "oracle.hpp"

namespace ddl {
namespace {

Literal lit(std::string_view text) {
  return text.front() == '~' ? make_literal(text.substr(1), true) : make_literal(text);
}

TaggedConclusion plus_d(Mode mode, std::string_view l) { return {Sign::plus, Tag::defeasible, mode, lit(l)}; }
TaggedConclusion minus_d(Mode mode, std::string_view l) { return {Sign::minus, Tag::defeasible, mode, lit(l)}; }

constexpr Mode C = Mode::constitutive;
constexpr Mode O = Mode::obligation;
constexpr Mode P = Mode::permission;

Theory fixture(const std::string& name) { return parse_theory(testing::read_fixture(name)); }

Theory without_rule(const Theory& t, std::string_view label) {
  std::vector<Rule> rules;
  for (const auto& r : t.rules()) {
    if (r.label != label) rules.push_back(r);
  }
  std::vector<Superiority> sup;
  for (const auto& s : t.superiority()) {
    if (s.stronger != label && s.weaker != label) sup.push_back(s);
  }
  return Theory(t.facts(), std::move(rules), std::move(sup));
}

Theory with_superiority(const Theory& t, std::vector<Superiority> sup) {
  return Theory(t.facts(), t.rules(), std::move(sup));
}

const Rule& rule_named(const Theory& t, std::string_view label) {
  const Rule* r = t.find_rule(label);
  if (r == nullptr) throw std::runtime_error("no rule " + std::string(label));
  return *r;
}

TEST(Example1, ProvesL) {
  const Extension ext = compute_extension(fixture("example1.ddl")).extension;
  EXPECT_TRUE(ext.contains(plus_d(C, "l")));
  EXPECT_TRUE(ext.contains(minus_d(C, "~l")));
  for (const char* f : {"a", "b", "c", "d", "e"}) {
    EXPECT_TRUE(ext.contains(plus_d(C, f))) << f;
    EXPECT_TRUE(ext.plus_definite.count(lit(f))) << f;
  }
  EXPECT_TRUE(ext.contains(minus_d(C, "g")));
  EXPECT_TRUE(ext.undetermined.empty());
}

TEST(Example1, JustificationNamesTheTeam) {
  const Derivation d = compute_extension(fixture("example1.ddl"));
  const auto it = std::find_if(d.verdicts.begin(), d.verdicts.end(), [](const Verdict& v) {
    return v.tag == Tag::defeasible && v.mode == C && v.literal == lit("l");
  });
  ASSERT_NE(it, d.verdicts.end());
  EXPECT_EQ(it->outcome, Outcome::proved_plus);
  EXPECT_EQ(it->reason, "rule");
  EXPECT_EQ(it->witness, "alpha");
  EXPECT_EQ(it->defeated, (std::vector<std::string>{"phi", "psi"}));
}

TEST(Example1, GammaIsNotNeeded) {
  EXPECT_TRUE(compute_extension(without_rule(fixture("example1.ddl"), "gamma")).extension.contains(plus_d(C, "l")));
}

TEST(Example1, DefeatersNeedGamma) {
  const Theory t = fixture("example1_defeaters.ddl");
  EXPECT_TRUE(compute_extension(t).extension.contains(plus_d(C, "l")));
  const Extension without = compute_extension(without_rule(t, "gamma")).extension;
  EXPECT_FALSE(without.contains(plus_d(C, "l")));
  EXPECT_TRUE(without.contains(minus_d(C, "l")));
}

TEST(Example1, TeamDefeatNeedsBothPairs) {
  const Theory t = fixture("example1.ddl");
  const std::vector<Superiority> pairs = t.superiority();
  ASSERT_EQ(pairs.size(), 2u);
  for (unsigned mask = 0; mask < 4; ++mask) {
    std::vector<Superiority> subset;
    for (unsigned b = 0; b < 2; ++b) {
      if (mask & (1u << b)) subset.push_back(pairs[b]);
    }
    const Extension ext = compute_extension(with_superiority(t, subset)).extension;
    EXPECT_EQ(ext.contains(plus_d(C, "l")), mask == 3u) << "subset " << mask;
    EXPECT_EQ(ext.contains(minus_d(C, "l")), mask != 3u) << "subset " << mask;
  }
}

TEST(Applicability, Example1Rules) {
  const Theory t = fixture("example1.ddl");
  ProofState s;
  EXPECT_FALSE(applicable(t, s, rule_named(t, "alpha")));
  EXPECT_FALSE(discarded(t, s, rule_named(t, "alpha")));
  s.establish(plus_d(C, "a"));
  EXPECT_TRUE(applicable(t, s, rule_named(t, "alpha")));
  EXPECT_FALSE(applicable(t, s, rule_named(t, "chi")));
  EXPECT_FALSE(discarded(t, s, rule_named(t, "chi")));
  s.establish(minus_d(C, "g"));
  EXPECT_TRUE(discarded(t, s, rule_named(t, "chi")));
}

TEST(Applicability, EmptyBodyIsNeverDiscarded) {
  const Theory t = fixture("homicide.ddl");
  ProofState s;
  EXPECT_TRUE(applicable(t, s, rule_named(t, "r575"), 1));
  EXPECT_FALSE(discarded(t, s, rule_named(t, "r575"), 1));
}

TEST(Applicability, ChainIndexNeedsAViolation) {
  const Theory t = fixture("homicide.ddl");
  const Rule& agg = rule_named(t, "agg1");
  ProofState s;
  s.establish(plus_d(C, "poisonous_means"));
  EXPECT_TRUE(applicable(t, s, agg, 1));
  EXPECT_FALSE(applicable(t, s, agg, 2));
  s.establish(plus_d(O, "~death"));
  EXPECT_FALSE(applicable(t, s, agg, 2));
  s.establish(plus_d(C, "death"));
  EXPECT_TRUE(applicable(t, s, agg, 2));
  EXPECT_FALSE(discarded(t, s, agg, 2));
}

TEST(Applicability, ChainIndexDiscardedWithoutViolation) {
  const Theory t = fixture("homicide.ddl");
  const Rule& basic = rule_named(t, "r575");
  ProofState s;
  s.establish(minus_d(C, "death"));
  EXPECT_TRUE(discarded(t, s, basic, 2));
  EXPECT_FALSE(discarded(t, s, basic, 1));
  ProofState s2;
  s2.establish(minus_d(O, "~death"));
  EXPECT_TRUE(discarded(t, s2, basic, 2));
}

TEST(Applicability, ModalBodyElements) {
  const Theory t = parse_theory("r: O(a), !P(b) => c.");
  const Rule& r = t.rules()[0];
  ProofState s;
  s.establish(plus_d(O, "a"));
  EXPECT_FALSE(applicable(t, s, r));
  s.establish(minus_d(P, "b"));
  EXPECT_TRUE(applicable(t, s, r));
  ProofState s2;
  s2.establish(plus_d(P, "b"));
  EXPECT_TRUE(discarded(t, s2, r));
  ProofState s3;
  s3.establish(plus_d(C, "a"));
  EXPECT_FALSE(applicable(t, s3, r)) << "plain conclusions do not satisfy O(a)";
}

TEST(Applicability, PositionOutOfRange) {
  const Theory t = fixture("homicide.ddl");
  ProofState s;
  EXPECT_THROW(applicable(t, s, rule_named(t, "r575"), 3), std::out_of_range);
  EXPECT_THROW(discarded(t, s, rule_named(t, "r575"), 0), std::out_of_range);
}

TEST(ProofStateTest, RejectsConflictsAndDeonticDefiniteTags) {
  ProofState s;
  s.establish(plus_d(C, "a"));
  s.establish(plus_d(C, "a"));
  EXPECT_THROW(s.establish(minus_d(C, "a")), std::logic_error);
  EXPECT_THROW(s.establish({Sign::plus, Tag::definite, O, lit("a")}), std::invalid_argument);
  EXPECT_EQ(s.size(), 1u);
}

TEST(UTurn, PermissionBlocksTheProhibition) {
  const Extension ext = compute_extension(fixture("uturn.ddl")).extension;
  EXPECT_TRUE(ext.contains(minus_d(O, "~UTurn")));
  // Without superiority the unbeaten prohibition in turn blocks the permission.
  EXPECT_TRUE(ext.contains(minus_d(P, "UTurn")));
}

TEST(UTurn, WithoutTheSignTheProhibitionHolds) {
  const Theory t = fixture("uturn.ddl");
  const Theory only_light({lit("AtTrafficLight")}, t.rules(), t.superiority());
  const Extension ext = compute_extension(only_light).extension;
  EXPECT_TRUE(ext.contains(plus_d(O, "~UTurn")));
  EXPECT_TRUE(ext.contains(minus_d(P, "UTurn")));
}

TEST(UTurn, PermissionCannotReinstateAnObligation) {
  // The permission for ~UTurn is superior to nothing that matters: only an
  // obligation rule may beat the opposing permission.
  const Theory t = parse_theory(
      "fact light.\nfact sign.\n"
      "u1: light =>O ~UTurn.\nu2: sign =>P UTurn.\nu3: light =>P ~UTurn.\nu3 > u2.\n");
  EXPECT_TRUE(compute_extension(t).extension.contains(minus_d(O, "~UTurn")));
  const Theory t2 = parse_theory(
      "fact light.\nfact sign.\nu1: light =>O ~UTurn.\nu2: sign =>P UTurn.\nu1 > u2.\n");
  EXPECT_TRUE(compute_extension(t2).extension.contains(plus_d(O, "~UTurn")));
}

TEST(Homicide, LifeImprisonment) {
  const Theory background = fixture("homicide.ddl");
  const Scenario sc = parse_scenario(testing::read_fixture("scenarios/homicide/mario.case"), "mario");
  const Extension ext = derive(background, sc).extension;
  EXPECT_TRUE(ext.contains(plus_d(C, "death")));
  EXPECT_TRUE(ext.contains(plus_d(O, "~death")));
  EXPECT_TRUE(ext.contains(plus_d(O, "life_imprisonment")));
  EXPECT_TRUE(ext.contains(plus_d(O, "basic_punishment")));
  // The punishment is owed, not served: nothing makes basic_punishment hold.
  Literal imprisonment = lit("imprisonment");
  imprisonment.payload = Payload{21, "years"};
  EXPECT_TRUE(ext.minus(C).count(imprisonment));
}

TEST(Homicide, NoDeathNoPunishment) {
  const Extension ext = compute_extension(fixture("homicide.ddl")).extension;
  EXPECT_TRUE(ext.contains(plus_d(O, "~death")));
  EXPECT_TRUE(ext.contains(minus_d(O, "basic_punishment")));
  EXPECT_TRUE(ext.contains(minus_d(O, "life_imprisonment")));
}

TEST(Sale, ContractThroughStrictRule) {
  const Theory background = fixture("sale.ddl");
  const Scenario sc = parse_scenario(testing::read_fixture("scenarios/sale/celeste.case"), "celeste");
  const Derivation d = derive(background, sc);
  EXPECT_TRUE(d.extension.contains(plus_d(C, "sale")));
  EXPECT_TRUE(d.extension.contains(plus_d(C, "contract")));
  const auto it = std::find_if(d.verdicts.begin(), d.verdicts.end(), [](const Verdict& v) {
    return v.tag == Tag::defeasible && v.mode == C && v.literal == lit("contract");
  });
  ASSERT_NE(it, d.verdicts.end());
  EXPECT_EQ(it->witness, "s1470");
}

TEST(Engine, EmptyTheory) {
  const Derivation d = compute_extension(Theory());
  EXPECT_EQ(d.extension, Extension{});
  EXPECT_TRUE(d.verdicts.empty());
}

TEST(Engine, SelfSupportIsUndetermined) {
  const Extension ext = compute_extension(parse_theory("r: p => p.")).extension;
  EXPECT_TRUE(ext.is_undetermined(Tag::defeasible, C, lit("p")));
  EXPECT_FALSE(ext.plus(C).count(lit("p")));
  EXPECT_FALSE(ext.minus(C).count(lit("p")));
  EXPECT_TRUE(ext.contains(minus_d(C, "~p")));
  EXPECT_TRUE(ext.is_coherent());
}

TEST(Engine, StrictLoopIsUndeterminedForDefiniteTags) {
  const Extension ext = compute_extension(parse_theory("r: p -> q.\ns: q -> p.")).extension;
  EXPECT_TRUE(ext.is_undetermined(Tag::definite, C, lit("p")));
  EXPECT_TRUE(ext.is_undetermined(Tag::definite, C, lit("q")));
}

TEST(Engine, StrictClosureIsDefinite) {
  const Extension ext = compute_extension(parse_theory("fact a.\nr: a -> b.\ns: b -> c.\nt: c, z -> d.")).extension;
  for (const char* l : {"a", "b", "c"}) {
    EXPECT_TRUE(ext.plus_definite.count(lit(l))) << l;
    EXPECT_TRUE(ext.contains(plus_d(C, l))) << l;
  }
  EXPECT_TRUE(ext.minus_definite.count(lit("d")));
}

TEST(Engine, RejectsInvalidTheories) {
  const Theory bad({}, {Rule{"r", RuleKind::strict, O, {}, {lit("a")}}}, {});
  EXPECT_THROW(compute_extension(bad), ValidationError);
}

TEST(Engine, ChainsAdvanceOnlyOnViolation) {
  const Theory t = parse_theory("fact x.\nr: =>O a @ b @ c.\ns: x => ~a.\n");
  const Extension ext = compute_extension(t).extension;
  EXPECT_TRUE(ext.contains(plus_d(O, "a")));
  EXPECT_TRUE(ext.contains(plus_d(O, "b")));
  EXPECT_TRUE(ext.contains(minus_d(O, "c"))) << "b is not violated";
}

TEST(Merge, PrefixesCollidingLabels) {
  const Theory bg = parse_theory("c1: a => b.");
  Scenario sc = parse_scenario("fact a.\nc1: b => c.\nsc_c1: c => d.");
  const Theory merged = merge(bg, sc);
  std::vector<std::string> labels;
  for (const auto& r : merged.rules()) labels.push_back(r.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"c1", "sc_c1", "sc_sc_c1"}));
  EXPECT_TRUE(validate_theory(merged).empty());
  EXPECT_TRUE(derive(bg, sc).extension.contains(plus_d(C, "d")));
}

TEST(Merge, EmptyScenarioIsIdentity) {
  const Theory bg = fixture("example1.ddl");
  EXPECT_EQ(derive(bg, Scenario{}).extension, compute_extension(bg).extension);
  EXPECT_EQ(merge(bg, Scenario{}), bg);
}

// Properties over random theories.

struct RandomSuite : ::testing::Test {
  std::mt19937_64 rng{424242};
};

TEST_F(RandomSuite, CoherentAndConsistent) {
  testing::GenOptions options;
  options.chains = true;
  for (int i = 0; i < 1500; ++i) {
    const Theory t = testing::random_theory(rng, options);
    const Extension ext = compute_extension(t).extension;
    ASSERT_TRUE(ext.is_coherent()) << print_theory(t);
    for (const auto& l : ext.plus(C)) ASSERT_FALSE(ext.plus(C).count(complement(l))) << print_theory(t);
    for (const auto& f : t.facts()) {
      ASSERT_TRUE(ext.contains(plus_d(C, to_string(f)))) << print_theory(t);
      ASSERT_TRUE(ext.plus_definite.count(f));
    }
  }
}

TEST_F(RandomSuite, MatchesOracleOnChainFreeTheories) {
  testing::GenOptions options;
  std::size_t with_conflicts = 0;
  for (int i = 0; i < 1500; ++i) {
    const Theory t = testing::random_theory(rng, options);
    const Extension ext = compute_extension(t).extension;
    const testing::OracleResult oracle = testing::oracle_extension(t);
    ASSERT_EQ(testing::keys_of(ext), oracle.conclusions) << print_theory(t);
    if (!t.superiority().empty()) ++with_conflicts;

    // Whatever neither side settled is reported as undetermined.
    std::size_t settled = oracle.conclusions.size();
    ASSERT_EQ(settled + ext.undetermined.size(), oracle.universe.size() * 4) << print_theory(t);
  }
  EXPECT_GT(with_conflicts, 100u);
}

TEST_F(RandomSuite, ApplicableAndDiscardedNeverBothHold) {
  testing::GenOptions options;
  options.chains = true;
  for (int i = 0; i < 500; ++i) {
    const Theory t = testing::random_theory(rng, options);
    const Derivation d = compute_extension(t);
    // Replay growing prefixes of the settled conclusions.
    std::vector<TaggedConclusion> settled;
    for (const auto& v : d.verdicts) {
      settled.push_back({v.outcome == Outcome::proved_plus ? Sign::plus : Sign::minus, v.tag, v.mode, v.literal});
    }
    std::shuffle(settled.begin(), settled.end(), rng);
    ProofState s;
    for (std::size_t k = 0; k <= settled.size(); ++k) {
      if (k > 0) s.establish(settled[k - 1]);
      if (k % 7 != 0 && k != settled.size()) continue;
      for (const auto& r : t.rules()) {
        for (std::size_t pos = 1; pos <= r.head.size(); ++pos) {
          ASSERT_FALSE(applicable(t, s, r, pos) && discarded(t, s, r, pos)) << r.label;
        }
      }
    }
  }
}

TEST_F(RandomSuite, ChainGating) {
  testing::GenOptions options;
  options.chains = true;
  options.max_rules = 8;
  std::size_t deep = 0;
  for (int i = 0; i < 1500; ++i) {
    const Theory t = testing::random_theory(rng, options);
    const Derivation d = compute_extension(t);
    ProofState s;
    for (const auto& v : d.verdicts) {
      s.establish({v.outcome == Outcome::proved_plus ? Sign::plus : Sign::minus, v.tag, v.mode, v.literal});
    }
    for (const auto& c : d.extension.plus(O)) {
      bool witnessed = false;
      for (const auto& ref : t.rules_for(c, O)) {
        if (ref.rule->kind == RuleKind::defeater || !applicable(t, s, *ref.rule, ref.position)) continue;
        witnessed = true;
        if (ref.position > 1) {
          ++deep;
          const Literal& prev = ref.rule->head[ref.position - 2];
          ASSERT_TRUE(d.extension.plus(O).count(prev)) << print_theory(t);
          ASSERT_TRUE(d.extension.plus(C).count(complement(prev))) << print_theory(t);
        }
      }
      ASSERT_TRUE(witnessed) << to_string(c) << "\n" << print_theory(t);
    }
  }
  EXPECT_GT(deep, 0u);
}

TEST_F(RandomSuite, DeterministicAndOrderIndependent) {
  testing::GenOptions options;
  options.chains = true;
  for (int i = 0; i < 300; ++i) {
    const Theory t = testing::random_theory(rng, options);
    const Derivation a = compute_extension(t);
    const Derivation b = compute_extension(t);
    ASSERT_EQ(a.extension, b.extension);
    std::vector<Rule> rules = t.rules();
    std::shuffle(rules.begin(), rules.end(), rng);
    std::vector<Literal> facts = t.facts();
    std::reverse(facts.begin(), facts.end());
    ASSERT_EQ(compute_extension(Theory(facts, rules, t.superiority())).extension, a.extension) << print_theory(t);
  }
}

TEST_F(RandomSuite, JustificationsNameExistingRules) {
  testing::GenOptions options;
  options.chains = true;
  for (int i = 0; i < 300; ++i) {
    const Theory t = testing::random_theory(rng, options);
    for (const auto& v : compute_extension(t).verdicts) {
      if (v.witness) ASSERT_NE(t.find_rule(*v.witness), nullptr);
      if (v.blocker) ASSERT_NE(t.find_rule(*v.blocker), nullptr);
      for (const auto& label : v.defeated) ASSERT_NE(t.find_rule(label), nullptr);
    }
  }
}

}  // namespace
}  // namespace ddl
