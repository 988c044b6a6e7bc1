#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "credal/minimax.hpp"

namespace credal {

enum class ConsistencyKind { kTime, kWeakTime, kDynamic };
enum class Verdict { kConsistent, kInconsistent, kUnknown };

const char* to_string(ConsistencyKind kind);
const char* to_string(Verdict verdict);

struct SufficientConditions {
  bool rectangular = false;
  bool conservative = false;
  bool convex = false;
  bool weak_time_guaranteed = false;
  bool time_guaranteed = false;
  /// Rectangular and conservative; convexity is not required.
  bool dynamic_guaranteed = false;
  std::string summary;
};

SufficientConditions sufficient_conditions(const DecisionProblem& dp);

struct ConsistencyVerdict {
  ConsistencyKind kind = ConsistencyKind::kTime;
  Verdict result = Verdict::kUnknown;
  /// Offending rule; for dynamic checks the rule preferred a posteriori.
  std::optional<DecisionRule> witness;
  /// Dynamic checks only: the rule it is compared against.
  std::optional<DecisionRule> witness_other;
  /// Time checks: the x where the a priori optimal witness loses a posteriori.
  std::optional<std::size_t> witness_x;
  /// Loss attained by the witness and the bound it exceeds.
  Rational witness_value;
  Rational reference_value;
  /// "condition 1", "condition 2", "posterior optimality", "a priori optimality".
  std::string violated;
  /// Dynamic checks: a pair violating the strong variant (strict somewhere
  /// instead of everywhere), reported even when the verdict is unknown.
  std::optional<std::pair<DecisionRule, DecisionRule>> strong_witness;
  std::size_t candidates = 0;
  SufficientConditions notes;
};

inline constexpr std::size_t kMaxVertexProducts = 100'000;

/// Exact. Throws SizeLimitError when the posterior-optimal vertex products
/// exceed kMaxVertexProducts.
ConsistencyVerdict check_weak_time_consistency(const DecisionProblem& dp);

/// Exact. Also throws SizeLimitError when the a priori optimal face is too
/// large to enumerate.
ConsistencyVerdict check_time_consistency(const DecisionProblem& dp);

/// Searches for a pair of rules violating dynamic consistency. Returns
/// kInconsistent with a witness pair, or kUnknown.
ConsistencyVerdict falsify_dynamic_consistency(const DecisionProblem& dp, std::size_t budget,
                                               std::uint64_t seed = 0);

/// true iff rule is a posteriori minimax optimal at every x in support_x.
bool is_a_posteriori_optimal(const DecisionProblem& dp, const PosteriorSolution& post, const DecisionRule& rule);

enum class Preference { kFirst, kSecond, kBoth, kIncomparable };
const char* to_string(Preference p);

struct WalleyComparison {
  Preference preference = Preference::kIncomparable;
  Rational max_first_minus_second;  // max over P of E[L_d1 - L_d2]
  Rational max_second_minus_first;
};

WalleyComparison walley_prefers(const DecisionProblem& dp, const DecisionRule& d1, const DecisionRule& d2);

}  // namespace credal
