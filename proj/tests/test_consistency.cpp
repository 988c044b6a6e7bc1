#include <gtest/gtest.h>

#include "credal/consistency.hpp"
#include "credal/problem_file.hpp"
#include "generators.hpp"
#include "printers.hpp"
#include "properties.hpp"

namespace credal {
namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

ProblemFile corpus_case(const std::string& id) { return load_problem(std::string(CREDAL_CORPUS_DIR) + "/" + id); }

// Replays a weak-time witness: posterior optimal at every supported x, yet
// its a priori worst case exceeds the a priori value.
void expect_weak_time_witness(const DecisionProblem& dp, const ConsistencyVerdict& v) {
  ASSERT_TRUE(v.witness.has_value());
  const PosteriorSolution post = solve_a_posteriori(dp);
  for (const auto& e : post.per_x) EXPECT_EQ(worst_case_posterior_loss(dp.credal, *v.witness, dp.loss, e.x), e.value);
  EXPECT_GT(worst_case_loss(dp.credal, *v.witness, dp.loss).value, solve_a_priori(dp).value);
}

// Replays a time witness that is a priori optimal but loses a posteriori.
void expect_time_witness(const DecisionProblem& dp, const ConsistencyVerdict& v) {
  ASSERT_TRUE(v.witness.has_value());
  if (!v.witness_x) return expect_weak_time_witness(dp, v);
  EXPECT_EQ(worst_case_loss(dp.credal, *v.witness, dp.loss).value, solve_a_priori(dp).value);
  const PosteriorSolution post = solve_a_posteriori(dp);
  const Rational m = worst_case_posterior_loss(dp.credal, *v.witness, dp.loss, *v.witness_x);
  EXPECT_EQ(m, v.witness_value);
  EXPECT_EQ(post.at(*v.witness_x)->value, v.reference_value);
  EXPECT_GT(m, v.reference_value);
}

// Replays a dynamic witness (d, d'): d is posterior-preferred at every x
// (strictly where the violated clause says so), yet not a priori preferred.
void expect_dynamic_witness(const DecisionProblem& dp, const ConsistencyVerdict& v) {
  ASSERT_TRUE(v.witness.has_value());
  ASSERT_TRUE(v.witness_other.has_value());
  const CredalSet& p = dp.credal;
  bool all_strict = true;
  for (auto x : support_x(p)) {
    const Rational a = worst_case_posterior_loss(p, *v.witness, dp.loss, x);
    const Rational b = worst_case_posterior_loss(p, *v.witness_other, dp.loss, x);
    EXPECT_LE(a, b) << "x = " << x;
    all_strict = all_strict && a < b;
  }
  const Rational prior_a = worst_case_loss(p, *v.witness, dp.loss).value;
  const Rational prior_b = worst_case_loss(p, *v.witness_other, dp.loss).value;
  if (v.violated.find("condition 1") != std::string::npos) {
    EXPECT_GT(prior_a, prior_b);
  }
  if (v.violated.find("condition 2") != std::string::npos) {
    EXPECT_TRUE(all_strict);
    EXPECT_GE(prior_a, prior_b);
  }
}

TEST(WeakTime, RectangularThreeActionExampleIsConsistent) {
  const ProblemFile f = corpus_case("example-4.5");
  EXPECT_EQ(check_weak_time_consistency(f.problem()).result, Verdict::kConsistent);
}

TEST(WeakTime, TwoPredictionSetRandomizingWitness) {
  const ProblemFile f = corpus_case("example-2.1");
  const ConsistencyVerdict v = check_weak_time_consistency(f.problem());
  EXPECT_EQ(v.kind, ConsistencyKind::kWeakTime);
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, DecisionRule::constant(2, RandomizedAction({q(1, 2), q(1, 2)})));
  EXPECT_EQ(worst_case_loss(f.credal, *v.witness, *f.loss).value, q(1, 2));
  expect_weak_time_witness(f.problem(), v);
}

TEST(WeakTime, ConservativeNonRectangularIsConsistent) {
  const ProblemFile f = corpus_case("example-4.6");
  EXPECT_EQ(check_weak_time_consistency(f.problem()).result, Verdict::kConsistent);
}

TEST(WeakTime, DoorGameIsInconsistent) {
  const ProblemFile f = corpus_case("monty-hall");
  const ConsistencyVerdict v = check_weak_time_consistency(f.problem());
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  expect_weak_time_witness(f.problem(), v);
}

TEST(Time, ThreeActionExampleWitnessAtOne) {
  const ProblemFile f = corpus_case("example-4.5");
  const ConsistencyVerdict v = check_time_consistency(f.problem());
  EXPECT_EQ(v.kind, ConsistencyKind::kTime);
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  ASSERT_TRUE(v.witness_x.has_value());
  EXPECT_EQ(*v.witness_x, 1u);
  EXPECT_EQ((*v.witness)[1], RandomizedAction::point_mass(3, 1));
  EXPECT_EQ(v.witness_value, q(3, 5));
  EXPECT_EQ(v.reference_value, q(1, 2));
  expect_time_witness(f.problem(), v);
}

TEST(Time, ExtendedSetPlaysSafeActionEverywhere) {
  const ProblemFile f = corpus_case("example-2.1-extended");
  const ConsistencyVerdict v = check_time_consistency(f.problem());
  EXPECT_EQ(v.result, Verdict::kConsistent);
  const MinimaxSolution sol = solve_a_priori(f.problem());
  EXPECT_TRUE(sol.unique());
  EXPECT_EQ(sol.rule, parse_rule("*=2", f.space()));
}

TEST(Time, ConservativeNonRectangularLosesAtZero) {
  // The rule 0->0, 1->1 loses 1/2 under both generators, so it is a priori
  // optimal; at x = 0 the posterior Y = 1 surely makes it lose 1 > 1/2.
  const ProblemFile f = corpus_case("example-4.6");
  const DecisionRule diagonal = parse_rule("0=0,1=1", f.space());
  EXPECT_EQ(worst_case_loss(f.credal, diagonal, *f.loss).value, solve_a_priori(f.problem()).value);
  EXPECT_EQ(worst_case_posterior_loss(f.credal, diagonal, *f.loss, 0), 1);
  EXPECT_EQ(solve_a_posteriori(f.problem()).per_x.at(0).value, q(1, 2));
  const ConsistencyVerdict v = check_time_consistency(f.problem());
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  expect_time_witness(f.problem(), v);
}

TEST(Dynamic, TwoPredictionSetWitnessPair) {
  const ProblemFile f = corpus_case("example-2.1");
  const ConsistencyVerdict v = falsify_dynamic_consistency(f.problem(), 0);
  EXPECT_EQ(v.kind, ConsistencyKind::kDynamic);
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  EXPECT_EQ(*v.witness, DecisionRule::constant(2, RandomizedAction({q(1, 2), q(1, 2)})));
  EXPECT_EQ(*v.witness_other, parse_rule("*=1", f.space()));
  expect_dynamic_witness(f.problem(), v);
}

TEST(Dynamic, ExtendedSetStillInconsistent) {
  const ProblemFile f = corpus_case("example-2.1-extended");
  const ConsistencyVerdict v = falsify_dynamic_consistency(f.problem(), 0);
  EXPECT_EQ(v.result, Verdict::kInconsistent);
  EXPECT_EQ(*v.witness, DecisionRule::constant(2, RandomizedAction({q(1, 2), q(1, 2), 0})));
  EXPECT_EQ(*v.witness_other, parse_rule("*=1", f.space()));
  expect_dynamic_witness(f.problem(), v);
}

TEST(Dynamic, ConservativeRectangularSetsYieldNoWitness) {
  testing::Gen gen(testing::kSeed + 9);
  for (int i = 0; i < 40; ++i) {
    const SpacePtr s = gen.space();
    const CredalSet p = gen.rectangular(s, gen.coin(), true);
    const DecisionProblem dp(p, gen.loss(s));
    ASSERT_TRUE(sufficient_conditions(dp).dynamic_guaranteed) << "instance " << i;
    const ConsistencyVerdict v = falsify_dynamic_consistency(dp, 50, static_cast<std::uint64_t>(i));
    EXPECT_EQ(v.result, Verdict::kUnknown) << "instance " << i;
    EXPECT_GT(v.candidates, 0u);
  }
}

TEST(SufficientConditions, Reports) {
  const SufficientConditions rect = sufficient_conditions(corpus_case("example-4.5").problem());
  EXPECT_TRUE(rect.rectangular);
  EXPECT_FALSE(rect.conservative);
  EXPECT_TRUE(rect.weak_time_guaranteed);
  EXPECT_FALSE(rect.time_guaranteed);
  EXPECT_EQ(rect.summary, "weak time consistency guaranteed; time consistency not guaranteed");
  const SufficientConditions cons = sufficient_conditions(corpus_case("example-4.6").problem());
  EXPECT_FALSE(cons.rectangular);
  EXPECT_TRUE(cons.conservative);
  EXPECT_EQ(cons.summary, "no guarantee either way");
  const SufficientConditions doors = sufficient_conditions(corpus_case("monty-hall").problem());
  EXPECT_FALSE(doors.rectangular);
  EXPECT_FALSE(doors.weak_time_guaranteed);
}

TEST(Walley, Examples) {
  const ProblemFile f = corpus_case("example-2.1");
  const DecisionProblem dp = f.problem();
  const DecisionRule one = parse_rule("*=1", f.space());
  const DecisionRule zero = parse_rule("*=0", f.space());
  EXPECT_EQ(walley_prefers(dp, one, one).preference, Preference::kBoth);
  // Constant predictions lose 1/3 and 2/3 under every generator.
  const WalleyComparison c = walley_prefers(dp, one, zero);
  EXPECT_EQ(c.preference, Preference::kFirst);
  EXPECT_EQ(c.max_first_minus_second, q(-1, 3));
  EXPECT_EQ(c.max_second_minus_first, q(1, 3));
  // The diagonal rule against predict-1: differences 1/3, -1/3, 2/3, 0.
  const WalleyComparison d = walley_prefers(dp, parse_rule("0=0,1=1", f.space()), one);
  EXPECT_EQ(d.preference, Preference::kIncomparable);
  EXPECT_EQ(d.max_first_minus_second, q(2, 3));
  EXPECT_EQ(d.max_second_minus_first, q(1, 3));
}

TEST(Walley, PointwiseDominance) {
  const SpacePtr s = make_space({"0", "1"}, {"0", "1"}, {"0", "1"});
  const CredalSet p(s, {JointDistribution(s, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}), JointDistribution(s, {q(1, 2), 0, 0, q(1, 2)})}, true);
  const DecisionProblem dp(p, LossFunction(s, {{0, 1}, {0, 2}}));
  EXPECT_EQ(walley_prefers(dp, DecisionRule::deterministic(2, {0, 0}), DecisionRule::deterministic(2, {1, 1})).preference,
            Preference::kFirst);
  EXPECT_EQ(walley_prefers(dp, DecisionRule::deterministic(2, {1, 1}), DecisionRule::deterministic(2, {0, 0})).preference,
            Preference::kSecond);
}

TEST(ConsistencyProperties, WalleyPreorder) {
  testing::Gen gen(testing::kSeed + 10);
  for (int i = 0; i < testing::kInstances; ++i) {
    const SpacePtr s = gen.space();
    const DecisionProblem dp(gen.credal(s, gen.coin()), gen.loss(s));
    const DecisionRule a = gen.rule(*s);
    const DecisionRule b = gen.rule(*s);
    const DecisionRule c = gen.rule(*s);
    EXPECT_EQ(walley_prefers(dp, a, a).preference, Preference::kBoth);
    const auto at_least = [&](const DecisionRule& u, const DecisionRule& v) {
      const Preference pr = walley_prefers(dp, u, v).preference;
      return pr == Preference::kFirst || pr == Preference::kBoth;
    };
    if (at_least(a, b) && at_least(b, c)) {
      EXPECT_TRUE(at_least(a, c)) << "instance " << i;
    }
    const WalleyComparison ab = walley_prefers(dp, a, b);
    if (ab.preference == Preference::kBoth) {
      EXPECT_EQ(ab.max_first_minus_second, 0) << "instance " << i;
      EXPECT_EQ(ab.max_second_minus_first, 0) << "instance " << i;
    }
    const WalleyComparison ba = walley_prefers(dp, b, a);
    EXPECT_EQ(ba.max_first_minus_second, ab.max_second_minus_first);
  }
}

TEST(ConsistencyProperties, WitnessesReplayThroughPrimitives) {
  testing::Gen gen(testing::kSeed + 11);
  for (int i = 0; i < testing::kInstances; ++i) {
    const SpacePtr s = gen.space();
    const DecisionProblem dp(gen.credal(s, gen.coin()), gen.loss(s));
    const ConsistencyVerdict weak = check_weak_time_consistency(dp);
    EXPECT_NE(weak.result, Verdict::kUnknown);
    if (weak.result == Verdict::kInconsistent) expect_weak_time_witness(dp, weak);
    const ConsistencyVerdict time = check_time_consistency(dp);
    EXPECT_NE(time.result, Verdict::kUnknown);
    if (weak.result == Verdict::kInconsistent) {
      EXPECT_EQ(time.result, Verdict::kInconsistent) << "instance " << i;
    }
    if (time.result == Verdict::kInconsistent) expect_time_witness(dp, time);
    const ConsistencyVerdict dyn = falsify_dynamic_consistency(dp, 10, static_cast<std::uint64_t>(i));
    if (dyn.result == Verdict::kInconsistent) expect_dynamic_witness(dp, dyn);
  }
}

TEST(ConsistencyProperties, NoDynamicWitnessImpliesWeakTimeConsistency) {
  testing::Gen gen(testing::kSeed + 12);
  for (int i = 0; i < testing::kInstances; ++i) {
    const SpacePtr s = gen.space();
    const DecisionProblem dp(gen.credal(s, gen.coin()), gen.loss(s));
    const ConsistencyVerdict dyn = falsify_dynamic_consistency(dp, 0);
    if (dyn.result != Verdict::kUnknown || !sufficient_conditions(dp).dynamic_guaranteed) continue;
    EXPECT_EQ(check_weak_time_consistency(dp).result, Verdict::kConsistent) << "instance " << i;
  }
}

TEST(ConsistencyProperties, WeakTimeVerdictImpliedByDynamicWitnessFamilies) {
  // A weak-time witness paired with an a priori optimal rule is always a
  // dynamic witness candidate, so weak-time inconsistency is never missed.
  testing::Gen gen(testing::kSeed + 13);
  for (int i = 0; i < testing::kInstances; ++i) {
    const SpacePtr s = gen.space();
    const DecisionProblem dp(gen.credal(s, gen.coin()), gen.loss(s));
    if (check_weak_time_consistency(dp).result == Verdict::kInconsistent) {
      EXPECT_EQ(falsify_dynamic_consistency(dp, 0).result, Verdict::kInconsistent) << "instance " << i;
    }
  }
}

TEST(ConsistencyProperties, RectangularSetsAreWeaklyTimeConsistent) {
  const auto r = testing::rectangular_time_consistency(testing::kSeed, testing::kInstances);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

}  // namespace
}  // namespace credal
