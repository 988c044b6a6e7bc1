#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/credal_set.hpp"

namespace credal {

/// Weighted generator indices with positive weights summing to 1.
using Mixture = std::vector<std::pair<std::size_t, Rational>>;

struct MinimaxSolution {
  Rational value;
  /// Canonically smallest optimal rule. Actions at x outside support_x are
  /// uniform and unconstrained.
  DecisionRule rule;
  /// Optimal bookie strategy over generator indices of the credal set.
  Mixture bookie_mixture;
  JointDistribution aggregate;
  /// Vertices of the optimal rule face in canonical order; empty when the
  /// face was too large to enumerate.
  std::vector<DecisionRule> optimal_rule_vertices;
  XSet constrained_x;

  bool unique() const { return optimal_rule_vertices.size() == 1; }
};

struct PosteriorAtX {
  std::size_t x;
  Rational value;
  /// Vertices of the optimal randomized actions, canonical order.
  std::vector<RandomizedAction> action_vertices;
  /// Generators of the Y-posterior at x; bookie_mixture indexes this list.
  std::vector<RationalVector> posteriors;
  Mixture bookie_mixture;
};

struct PosteriorSolution {
  std::vector<PosteriorAtX> per_x;  // one entry per x in support_x, ascending

  const PosteriorAtX* at(std::size_t x) const;
  /// The canonically smallest a posteriori optimal rule (uniform off X⁺).
  DecisionRule rule(const ProblemSpace& space) const;
};

/// Loss of a randomized action when the outcome is y.
Rational action_loss(const LossFunction& loss, const RandomizedAction& action, std::size_t y);

Rational expected_loss(const JointDistribution& pr, const DecisionRule& rule, const LossFunction& loss);

struct WorstCase {
  Rational value;
  std::size_t witness;  // first generator attaining the value
};
WorstCase worst_case_loss(const CredalSet& p, const DecisionRule& rule, const LossFunction& loss);

/// max over the Y-posteriors at x of the expected loss of rule[x]; 0 when
/// x is outside support_x.
Rational worst_case_posterior_loss(const CredalSet& p, const DecisionRule& rule, const LossFunction& loss,
                                   std::size_t x);

MinimaxSolution solve_a_priori(const DecisionProblem& dp);

PosteriorSolution solve_a_posteriori(const DecisionProblem& dp);

struct SaddleReport {
  Rational mixed_loss;      // E over the mixture of E_Pr[L_rule]
  Rational agent_best;      // min over rules of E_{aggregate}[L]
  Rational bookie_best;     // max over P of E_Pr[L_rule]
  bool agent_best_response = false;
  bool bookie_best_response = false;
  bool support_attains_max = false;
  /// First failing clause by name, empty when all hold.
  std::string failing_clause;

  bool holds() const { return agent_best_response && bookie_best_response && support_attains_max; }
};

/// Throws InvalidArgumentError when the mixture is not a distribution over
/// generator indices.
SaddleReport verify_saddle(const DecisionProblem& dp, const Mixture& mixture, const DecisionRule& rule);

struct IgnoringSolution {
  MinimaxSolution restricted;
  Rational unrestricted_value;
  /// max over the Y-marginal generators of the expected loss of the
  /// restricted action.
  Rational marginal_value;
  bool ignoring_optimal = false;
};

IgnoringSolution solve_ignoring(const DecisionProblem& dp);

struct IndependenceCover {
  bool holds_at_tested_points = true;
  std::size_t tested = 0;
  /// Y-marginal with no matching product distribution in the set.
  std::optional<RationalVector> counterexample;
};

/// Tests every Y-marginal vertex and `samples` random mixtures of them.
IndependenceCover check_independence_cover(const CredalSet& p, std::size_t samples, std::uint64_t seed = 0);

struct ValueBounds {
  Rational lower;
  Rational upper;
  DecisionRule best_rule;
};

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// Grid search over rules with weights in multiples of 1/grid. Throws
/// SizeLimitError when (grid+1)^(|X|(|A|-1)) exceeds kBruteForceLimit.
ValueBounds brute_force_value(const DecisionProblem& dp, std::size_t grid);

}  // namespace credal
