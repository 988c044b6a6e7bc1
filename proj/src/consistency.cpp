#include "credal/consistency.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "credal/errors.hpp"

namespace credal {

const char* to_string(ConsistencyKind kind) {
  switch (kind) {
    case ConsistencyKind::kTime:
      return "time";
    case ConsistencyKind::kWeakTime:
      return "weak-time";
    case ConsistencyKind::kDynamic:
      return "dynamic";
  }
  return "?";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConsistent:
      return "consistent";
    case Verdict::kInconsistent:
      return "inconsistent";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "?";
}

const char* to_string(Preference p) {
  switch (p) {
    case Preference::kFirst:
      return "first";
    case Preference::kSecond:
      return "second";
    case Preference::kBoth:
      return "both";
    case Preference::kIncomparable:
      return "incomparable";
  }
  return "?";
}

SufficientConditions sufficient_conditions(const DecisionProblem& dp) {
  SufficientConditions s;
  s.rectangular = is_rectangular(dp.credal);
  s.conservative = is_conservative(dp.credal);
  s.convex = dp.credal.convex();
  s.weak_time_guaranteed = s.rectangular;
  s.time_guaranteed = s.rectangular && s.conservative;
  s.dynamic_guaranteed = s.time_guaranteed;
  if (s.time_guaranteed) {
    s.summary = "weak time consistency guaranteed; time consistency guaranteed";
  } else if (s.weak_time_guaranteed) {
    s.summary = "weak time consistency guaranteed; time consistency not guaranteed";
  } else {
    s.summary = "no guarantee either way";
  }
  return s;
}

namespace {

// Rules built from one choice per x in X⁺, uniform elsewhere, in
// lexicographic order of the per-x lists.
std::vector<DecisionRule> cross_products(const ProblemSpace& s, const XSet& plus,
                                         const std::vector<std::vector<RandomizedAction>>& options,
                                         std::size_t limit) {
  std::size_t count = 1;
  for (const auto& o : options) {
    count *= o.size();
    if (count > limit) throw SizeLimitError("more than " + std::to_string(limit) + " vertex products");
  }
  std::vector<DecisionRule> out;
  std::vector<std::size_t> idx(plus.size(), 0);
  while (true) {
    std::vector<RandomizedAction> per_x(s.num_x(), RandomizedAction::uniform(s.num_actions()));
    for (std::size_t i = 0; i < plus.size(); ++i) per_x[plus[i]] = options[i][idx[i]];
    out.emplace_back(std::move(per_x));
    std::size_t i = plus.size();
    while (i > 0) {
      --i;
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (plus.empty()) return out;
  }
}

std::vector<std::vector<RandomizedAction>> posterior_options(const PosteriorSolution& post) {
  std::vector<std::vector<RandomizedAction>> out;
  for (const auto& e : post.per_x) out.push_back(e.action_vertices);
  return out;
}

}  // namespace

bool is_a_posteriori_optimal(const DecisionProblem& dp, const PosteriorSolution& post, const DecisionRule& rule) {
  for (const auto& e : post.per_x) {
    if (worst_case_posterior_loss(dp.credal, rule, dp.loss, e.x) != e.value) return false;
  }
  return true;
}

ConsistencyVerdict check_weak_time_consistency(const DecisionProblem& dp) {
  ConsistencyVerdict v;
  v.kind = ConsistencyKind::kWeakTime;
  v.notes = sufficient_conditions(dp);
  const Rational value = solve_a_priori(dp).value;
  const PosteriorSolution post = solve_a_posteriori(dp);
  const XSet plus = support_x(dp.credal);
  const auto rules = cross_products(dp.space(), plus, posterior_options(post), kMaxVertexProducts);
  v.candidates = rules.size();
  // Worst-case loss is convex in the rule, so it peaks at a vertex product.
  for (const auto& rule : rules) {
    const Rational w = worst_case_loss(dp.credal, rule, dp.loss).value;
    if (w > value) {
      v.result = Verdict::kInconsistent;
      v.witness = rule;
      v.witness_value = w;
      v.reference_value = value;
      v.violated = "a priori optimality";
      return v;
    }
  }
  v.result = Verdict::kConsistent;
  return v;
}

ConsistencyVerdict check_time_consistency(const DecisionProblem& dp) {
  ConsistencyVerdict weak = check_weak_time_consistency(dp);
  weak.kind = ConsistencyKind::kTime;
  if (weak.result == Verdict::kInconsistent) return weak;

  const MinimaxSolution prior = solve_a_priori(dp);
  if (prior.optimal_rule_vertices.empty()) throw SizeLimitError("a priori optimal face too large to enumerate");
  const PosteriorSolution post = solve_a_posteriori(dp);
  ConsistencyVerdict v = weak;
  v.candidates += prior.optimal_rule_vertices.size();
  // The posterior-optimal set is a product of polytopes, hence convex.
  for (const auto& rule : prior.optimal_rule_vertices) {
    for (const auto& e : post.per_x) {
      const Rational m = worst_case_posterior_loss(dp.credal, rule, dp.loss, e.x);
      if (m > e.value) {
        v.result = Verdict::kInconsistent;
        v.witness = rule;
        v.witness_x = e.x;
        v.witness_value = m;
        v.reference_value = e.value;
        v.violated = "posterior optimality";
        return v;
      }
    }
  }
  v.result = Verdict::kConsistent;
  return v;
}

namespace {

struct Candidate {
  DecisionRule rule;
  RationalVector posterior;  // m_rule(x) for x in X⁺
  Rational prior;
};

// Families larger than this are skipped by the falsifier.
constexpr std::size_t kMaxFamily = 4096;

class RuleList {
 public:
  void add(DecisionRule r) {
    if (seen_.insert(r).second) rules_.push_back(std::move(r));
  }
  std::vector<DecisionRule>& rules() { return rules_; }

 private:
  std::set<DecisionRule> seen_;
  std::vector<DecisionRule> rules_;
};

}  // namespace

ConsistencyVerdict falsify_dynamic_consistency(const DecisionProblem& dp, std::size_t budget, std::uint64_t seed) {
  ConsistencyVerdict v;
  v.kind = ConsistencyKind::kDynamic;
  v.notes = sufficient_conditions(dp);
  const ProblemSpace& s = dp.space();
  const std::size_t na = s.num_actions();
  const XSet plus = support_x(dp.credal);

  RuleList rules;
  try {
    for (auto& r : cross_products(s, plus, posterior_options(solve_a_posteriori(dp)), kMaxFamily)) {
      rules.add(std::move(r));
    }
  } catch (const SizeLimitError&) {
  }
  for (const auto& r : solve_a_priori(dp).optimal_rule_vertices) rules.add(r);

  // Uniform mixtures over each nonempty action subset, per x.
  std::vector<RandomizedAction> subset_actions;
  for (std::size_t mask = 1; mask < (std::size_t{1} << na); ++mask) {
    const auto k = static_cast<unsigned long>(__builtin_popcountll(mask));
    RationalVector w(na);
    for (std::size_t a = 0; a < na; ++a) {
      if (mask >> a & 1) w[a] = ratio(1, static_cast<long>(k));
    }
    subset_actions.emplace_back(std::move(w));
  }
  std::sort(subset_actions.begin(), subset_actions.end(), canonical_action_less);
  for (const auto& a : subset_actions) rules.add(DecisionRule::constant(s.num_x(), a));
  try {
    std::vector<std::vector<RandomizedAction>> options(plus.size(), subset_actions);
    for (auto& r : cross_products(s, plus, options, kMaxFamily)) rules.add(std::move(r));
  } catch (const SizeLimitError&) {
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(0, 24);
  for (std::size_t b = 0; b < budget; ++b) {
    std::vector<RandomizedAction> per_x(s.num_x(), RandomizedAction::uniform(na));
    for (auto x : plus) {
      std::vector<long> w(na);
      long total = 0;
      while (total == 0) {
        total = 0;
        for (auto& c : w) total += c = draw(rng);
      }
      RationalVector weights(na);
      for (std::size_t a = 0; a < na; ++a) weights[a] = ratio(w[a], total);
      per_x[x] = RandomizedAction(std::move(weights));
    }
    rules.add(DecisionRule(std::move(per_x)));
  }

  std::vector<Candidate> cands;
  for (auto& r : rules.rules()) {
    Candidate c{r, {}, worst_case_loss(dp.credal, r, dp.loss).value};
    for (auto x : plus) c.posterior.push_back(worst_case_posterior_loss(dp.credal, r, dp.loss, x));
    cands.push_back(std::move(c));
  }
  v.candidates = cands.size();

  // Pairs preferred strictly a posteriori at every x are tried first.
  for (const bool strict_pass : {true, false}) {
    for (const auto& d : cands) {
      for (const auto& e : cands) {
        bool all_le = true;
        bool all_lt = true;
        bool some_lt = false;
        for (std::size_t i = 0; i < plus.size(); ++i) {
          all_le = all_le && d.posterior[i] <= e.posterior[i];
          all_lt = all_lt && d.posterior[i] < e.posterior[i];
          some_lt = some_lt || d.posterior[i] < e.posterior[i];
        }
        if (!all_le || (strict_pass && !all_lt)) continue;
        if (some_lt && d.prior >= e.prior && !v.strong_witness) v.strong_witness = std::make_pair(d.rule, e.rule);
        const bool c1 = d.prior > e.prior;
        const bool c2 = all_lt && d.prior >= e.prior;
        if (!c1 && !c2) continue;
        v.result = Verdict::kInconsistent;
        v.witness = d.rule;
        v.witness_other = e.rule;
        v.witness_value = d.prior;
        v.reference_value = e.prior;
        v.violated = c1 && c2 ? "conditions 1 and 2" : c1 ? "condition 1" : "condition 2";
        return v;
      }
    }
  }
  v.result = Verdict::kUnknown;
  return v;
}

WalleyComparison walley_prefers(const DecisionProblem& dp, const DecisionRule& d1, const DecisionRule& d2) {
  WalleyComparison out;
  bool first = true;
  for (const auto& g : dp.credal.generators()) {
    const Rational diff = expected_loss(g, d1, dp.loss) - expected_loss(g, d2, dp.loss);
    if (first || diff > out.max_first_minus_second) out.max_first_minus_second = diff;
    if (first || -diff > out.max_second_minus_first) out.max_second_minus_first = -diff;
    first = false;
  }
  const bool a = out.max_first_minus_second <= 0;
  const bool b = out.max_second_minus_first <= 0;
  out.preference = a && b ? Preference::kBoth : a ? Preference::kFirst : b ? Preference::kSecond : Preference::kIncomparable;
  return out;
}

}  // namespace credal
