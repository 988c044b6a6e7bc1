#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "credal/polytope.hpp"
#include "credal/rational.hpp"

namespace credal {

/// Label sets for the observation X, the quantity of interest Y, and the
/// actions A. All three are finite, ordered, and duplicate-free; at least
/// two actions.
class ProblemSpace {
 public:
  ProblemSpace(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
               std::vector<std::string> action_labels);

  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const std::vector<std::string>& action_labels() const { return action_labels_; }

  std::size_t num_x() const { return x_labels_.size(); }
  std::size_t num_y() const { return y_labels_.size(); }
  std::size_t num_actions() const { return action_labels_.size(); }

  std::size_t x_index(std::string_view label) const;
  std::size_t y_index(std::string_view label) const;
  std::size_t action_index(std::string_view label) const;

  bool operator==(const ProblemSpace&) const = default;

 private:
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  std::vector<std::string> action_labels_;
};

using SpacePtr = std::shared_ptr<const ProblemSpace>;

SpacePtr make_space(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
                    std::vector<std::string> action_labels);

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Sorted, duplicate-free list of X indices.
using XSet = std::vector<std::size_t>;

XSet all_x(const ProblemSpace& space);

/// Exact distribution on X x Y, stored row-major (x outer, y inner).
class JointDistribution {
 public:
  /// Throws InvalidArgumentError on negative mass or total != 1.
  JointDistribution(SpacePtr space, RationalVector mass);
  /// rows indexed by x, columns by y.
  static JointDistribution from_matrix(SpacePtr space, const RationalMatrix& by_x);

  const ProblemSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const RationalVector& mass() const { return mass_; }
  const Rational& at(std::size_t x, std::size_t y) const { return mass_[x * space_->num_y() + y]; }

  RationalVector marginal_x() const;
  RationalVector marginal_y() const;
  Rational prob_x(std::size_t x) const;
  Rational prob(const XSet& event) const;

  /// Conditional on X in event. Throws UndefinedConditionalError when the
  /// event has probability zero.
  JointDistribution conditional(const XSet& event) const;

  bool operator==(const JointDistribution& o) const { return mass_ == o.mass_; }

 private:
  SpacePtr space_;
  RationalVector mass_;
};

/// Finitely generated set of joint distributions; the convex hull of the
/// generators when `convex`, the finite list otherwise.
class CredalSet {
 public:
  /// Duplicates are dropped; every generator must share `space`.
  CredalSet(SpacePtr space, std::vector<JointDistribution> generators, bool convex);

  const ProblemSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<JointDistribution>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool convex() const { return convex_; }

  /// The set as points in the |X|*|Y| simplex.
  VPolytope polytope() const;

 private:
  SpacePtr space_;
  std::vector<JointDistribution> generators_;
  bool convex_;
};

/// Loss L(y, a); negative values are gains.
class LossFunction {
 public:
  /// rows indexed by y, columns by action.
  LossFunction(SpacePtr space, RationalMatrix by_y);

  const Rational& operator()(std::size_t y, std::size_t a) const { return loss_[y][a]; }
  const RationalMatrix& matrix() const { return loss_; }
  const SpacePtr& space_ptr() const { return space_; }

  /// 0 when y equals a (matched by label position), 1 otherwise.
  static LossFunction classification(SpacePtr space);

 private:
  SpacePtr space_;
  RationalMatrix loss_;
};

struct DecisionProblem {
  DecisionProblem(CredalSet credal_set, LossFunction loss_function);

  const ProblemSpace& space() const { return credal.space(); }

  CredalSet credal;
  LossFunction loss;
};

/// Distribution over actions.
class RandomizedAction {
 public:
  explicit RandomizedAction(RationalVector weights);
  static RandomizedAction point_mass(std::size_t num_actions, std::size_t action);
  static RandomizedAction uniform(std::size_t num_actions);

  const RationalVector& weights() const { return weights_; }
  const Rational& operator[](std::size_t a) const { return weights_[a]; }
  std::size_t size() const { return weights_.size(); }
  bool deterministic() const;
  /// Index of the action with weight 1; only meaningful when deterministic.
  std::size_t action() const;

  auto operator<=>(const RandomizedAction&) const = default;

 private:
  RationalVector weights_;
};

/// One randomized action per observation x.
class DecisionRule {
 public:
  explicit DecisionRule(std::vector<RandomizedAction> per_x);
  static DecisionRule constant(std::size_t num_x, const RandomizedAction& action);
  /// actions[x] is the action index chosen at x.
  static DecisionRule deterministic(std::size_t num_actions, const std::vector<std::size_t>& actions);

  const RandomizedAction& operator[](std::size_t x) const { return per_x_[x]; }
  const std::vector<RandomizedAction>& per_x() const { return per_x_; }
  std::size_t size() const { return per_x_.size(); }
  bool deterministic() const;
  bool ignores_information() const;

  auto operator<=>(const DecisionRule&) const = default;

 private:
  std::vector<RandomizedAction> per_x_;
};

/// Canonical order on rules: deterministic rules first, then by per-x
/// weights with earlier actions carrying more weight first. For
/// deterministic rules this is the order of the chosen action indices.
bool canonical_rule_less(const DecisionRule& a, const DecisionRule& b);
bool canonical_action_less(const RandomizedAction& a, const RandomizedAction& b);

/// Disjoint nonempty cells covering X.
class Partition {
 public:
  Partition(std::size_t num_x, std::vector<XSet> cells);
  static Partition singletons(std::size_t num_x);
  static Partition whole(std::size_t num_x);

  const std::vector<XSet>& cells() const { return cells_; }
  std::size_t num_x() const { return cell_of_.size(); }
  std::size_t cell_index(std::size_t x) const { return cell_of_[x]; }
  const XSet& cell_of(std::size_t x) const { return cells_[cell_of_[x]]; }

  /// Same cells regardless of listing order.
  bool operator==(const Partition& o) const;

 private:
  std::vector<XSet> cells_;
  std::vector<std::size_t> cell_of_;
};

/// Y-marginals of the generators, pruned; convex flag inherited.
VPolytope marginal_y(const CredalSet& p);
/// X-marginals of the generators, pruned; convex flag inherited.
VPolytope marginal_x(const CredalSet& p);

/// Regular-extension conditioning on X in event: generators with positive
/// event probability are conditioned, the rest dropped, result pruned.
CredalSet condition(const CredalSet& p, const XSet& event);

/// Y-projection of condition(p, event).
VPolytope condition_y(const CredalSet& p, const XSet& event);

/// Conditioning on the partition cell containing x.
CredalSet c_condition(const CredalSet& p, const Partition& c, std::size_t x);

/// Joints whose X-marginal is achievable in p and whose conditionals on
/// every positive-probability x are achievable in p.
CredalSet hull(const CredalSet& p);

bool is_rectangular(const CredalSet& p);

/// Every generator gives every x positive probability.
bool is_conservative(const CredalSet& p);

/// x values with positive probability under some generator.
XSet support_x(const CredalSet& p);

struct Interval {
  Rational lo;
  Rational hi;
  bool operator==(const Interval&) const = default;
};

struct DilationEntry {
  std::vector<std::size_t> y_event;
  Interval prior;
  std::vector<std::pair<std::size_t, Interval>> posteriors;  // keyed by x in support_x
  /// Posterior interval strictly wider on both ends at every supported x.
  bool strict_dilation = false;
};

/// One entry per nonempty proper event over Y, in bitmask order.
std::vector<DilationEntry> dilation_report(const CredalSet& p);

}  // namespace credal
