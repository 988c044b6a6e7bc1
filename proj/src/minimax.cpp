#include "credal/minimax.hpp"

#include <algorithm>
#include <random>

#include "credal/errors.hpp"
#include "credal/lp.hpp"

namespace credal {

namespace {

// sum_y pr(x, y) L(y, a)
Rational joint_coeff(const JointDistribution& pr, const LossFunction& loss, std::size_t x, std::size_t a) {
  Rational s = 0;
  for (std::size_t y = 0; y < pr.space().num_y(); ++y) {
    if (pr.at(x, y) != 0) s += pr.at(x, y) * loss(y, a);
  }
  return s;
}

Rational posterior_coeff(const RationalVector& r, const LossFunction& loss, std::size_t a) {
  Rational s = 0;
  for (std::size_t y = 0; y < r.size(); ++y) {
    if (r[y] != 0) s += r[y] * loss(y, a);
  }
  return s;
}

void check_rule(const ProblemSpace& s, const DecisionRule& rule) {
  if (rule.size() != s.num_x()) throw DimensionError("rule covers " + std::to_string(rule.size()) + " observations");
  if (rule[0].size() != s.num_actions()) throw DimensionError("rule uses the wrong number of actions");
}

bool lex_action_less(const RandomizedAction& a, const RandomizedAction& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Mixture mixture_from_duals(const lp::LpSolution& sol, std::size_t count) {
  Mixture out;
  for (std::size_t i = 0; i < count; ++i) {
    const Rational w = -sol.dual[i];
    if (w > 0) out.emplace_back(i, w);
  }
  return out;
}

JointDistribution aggregate_of(const CredalSet& p, const Mixture& mix) {
  const std::size_t n = p.space().num_x() * p.space().num_y();
  RationalVector mass(n);
  for (const auto& [i, w] : mix) {
    const auto& g = p.generators()[i].mass();
    for (std::size_t k = 0; k < n; ++k) mass[k] += w * g[k];
  }
  return JointDistribution(p.space_ptr(), std::move(mass));
}

// A priori LP over the action weights at X⁺, followed by a free t. With
// `tied` one action block is shared by every x.
MinimaxSolution solve_rule_lp(const DecisionProblem& dp, bool tied) {
  const ProblemSpace& s = dp.space();
  const CredalSet& p = dp.credal;
  const std::size_t na = s.num_actions();
  const XSet plus = support_x(p);
  const std::size_t blocks = tied ? 1 : plus.size();
  const std::size_t t = blocks * na;

  lp::LinearProgram prog = lp::LinearProgram::with_variables(t + 1);
  prog.objective[t] = 1;
  prog.lower_bounds[t] = std::nullopt;
  for (const auto& g : p.generators()) {
    RationalVector row(t + 1);
    for (std::size_t i = 0; i < plus.size(); ++i) {
      const std::size_t b = tied ? 0 : i;
      for (std::size_t a = 0; a < na; ++a) row[b * na + a] += joint_coeff(g, dp.loss, plus[i], a);
    }
    row[t] = -1;
    prog.add_row(std::move(row), lp::Sense::kLessEqual, 0);
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    RationalVector row(t + 1);
    for (std::size_t a = 0; a < na; ++a) row[b * na + a] = 1;
    prog.add_row(std::move(row), lp::Sense::kEqual, 1);
  }

  const lp::LpSolution sol = lp::solve(prog);
  if (sol.status != lp::Status::kOptimal) throw std::logic_error("a priori LP did not reach an optimum");

  auto to_rule = [&](const RationalVector& v) {
    std::vector<RandomizedAction> per_x(s.num_x(), RandomizedAction::uniform(na));
    if (tied) {
      per_x.assign(s.num_x(), RandomizedAction(RationalVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(na))));
    } else {
      for (std::size_t i = 0; i < plus.size(); ++i) {
        const auto first = v.begin() + static_cast<std::ptrdiff_t>(i * na);
        per_x[plus[i]] = RandomizedAction(RationalVector(first, first + static_cast<std::ptrdiff_t>(na)));
      }
    }
    return DecisionRule(std::move(per_x));
  };

  MinimaxSolution out{sol.value, to_rule(sol.primal), mixture_from_duals(sol, p.size()),
                      aggregate_of(p, mixture_from_duals(sol, p.size())), {}, plus};
  try {
    for (const auto& v : lp::optimal_face_vertices(prog, sol.value)) out.optimal_rule_vertices.push_back(to_rule(v));
  } catch (const SizeLimitError&) {
    out.optimal_rule_vertices.clear();
  }
  std::sort(out.optimal_rule_vertices.begin(), out.optimal_rule_vertices.end(), canonical_rule_less);
  if (!out.optimal_rule_vertices.empty()) out.rule = out.optimal_rule_vertices.front();
  return out;
}

}  // namespace

const PosteriorAtX* PosteriorSolution::at(std::size_t x) const {
  for (const auto& e : per_x) {
    if (e.x == x) return &e;
  }
  return nullptr;
}

DecisionRule PosteriorSolution::rule(const ProblemSpace& space) const {
  std::vector<RandomizedAction> out(space.num_x(), RandomizedAction::uniform(space.num_actions()));
  bool all_deterministic = true;
  for (const auto& e : per_x) all_deterministic = all_deterministic && e.action_vertices.front().deterministic();
  for (const auto& e : per_x) {
    if (all_deterministic) {
      out[e.x] = e.action_vertices.front();
    } else {
      out[e.x] = *std::min_element(e.action_vertices.begin(), e.action_vertices.end(), lex_action_less);
    }
  }
  return DecisionRule(std::move(out));
}

Rational action_loss(const LossFunction& loss, const RandomizedAction& action, std::size_t y) {
  Rational s = 0;
  for (std::size_t a = 0; a < action.size(); ++a) {
    if (action[a] != 0) s += action[a] * loss(y, a);
  }
  return s;
}

Rational expected_loss(const JointDistribution& pr, const DecisionRule& rule, const LossFunction& loss) {
  if (!same_space(pr.space_ptr(), loss.space_ptr())) throw InvalidArgumentError("expected_loss: mismatched spaces");
  check_rule(pr.space(), rule);
  Rational total = 0;
  for (std::size_t x = 0; x < pr.space().num_x(); ++x) {
    for (std::size_t y = 0; y < pr.space().num_y(); ++y) {
      if (pr.at(x, y) != 0) total += pr.at(x, y) * action_loss(loss, rule[x], y);
    }
  }
  return total;
}

WorstCase worst_case_loss(const CredalSet& p, const DecisionRule& rule, const LossFunction& loss) {
  WorstCase out{0, 0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational v = expected_loss(p.generators()[i], rule, loss);
    if (i == 0 || v > out.value) out = {v, i};
  }
  return out;
}

Rational worst_case_posterior_loss(const CredalSet& p, const DecisionRule& rule, const LossFunction& loss,
                                   std::size_t x) {
  check_rule(p.space(), rule);
  if (x >= p.space().num_x()) throw InvalidArgumentError("x index out of range");
  const XSet plus = support_x(p);
  if (!std::binary_search(plus.begin(), plus.end(), x)) return 0;
  Rational best;
  bool first = true;
  const VPolytope posteriors = condition_y(p, {x});
  for (const auto& r : posteriors.generators()) {
    Rational v = 0;
    for (std::size_t y = 0; y < r.size(); ++y) {
      if (r[y] != 0) v += r[y] * action_loss(loss, rule[x], y);
    }
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

MinimaxSolution solve_a_priori(const DecisionProblem& dp) { return solve_rule_lp(dp, false); }

PosteriorSolution solve_a_posteriori(const DecisionProblem& dp) {
  const std::size_t na = dp.space().num_actions();
  PosteriorSolution out;
  for (auto x : support_x(dp.credal)) {
    PosteriorAtX e;
    e.x = x;
    e.posteriors = condition_y(dp.credal, {x}).generators();
    RationalMatrix payoff(na, RationalVector(e.posteriors.size()));
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t j = 0; j < e.posteriors.size(); ++j) payoff[a][j] = posterior_coeff(e.posteriors[j], dp.loss, a);
    }
    const lp::GameSolution g = lp::zero_sum_value(payoff);
    e.value = g.value;
    for (std::size_t j = 0; j < g.col_mix.size(); ++j) {
      if (g.col_mix[j] > 0) e.bookie_mixture.emplace_back(j, g.col_mix[j]);
    }

    // Same program as the game solver; its optimal face is the set of
    // minimax actions.
    lp::LinearProgram prog = lp::LinearProgram::with_variables(na + 1);
    prog.objective[na] = 1;
    prog.lower_bounds[na] = std::nullopt;
    for (std::size_t j = 0; j < e.posteriors.size(); ++j) {
      RationalVector row(na + 1);
      for (std::size_t a = 0; a < na; ++a) row[a] = payoff[a][j];
      row[na] = -1;
      prog.add_row(std::move(row), lp::Sense::kLessEqual, 0);
    }
    RationalVector simplex(na + 1, Rational(1));
    simplex[na] = 0;
    prog.add_row(std::move(simplex), lp::Sense::kEqual, 1);
    for (const auto& v : lp::optimal_face_vertices(prog, g.value)) {
      e.action_vertices.emplace_back(RationalVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(na)));
    }
    std::sort(e.action_vertices.begin(), e.action_vertices.end(), canonical_action_less);
    out.per_x.push_back(std::move(e));
  }
  return out;
}

SaddleReport verify_saddle(const DecisionProblem& dp, const Mixture& mixture, const DecisionRule& rule) {
  const CredalSet& p = dp.credal;
  check_rule(dp.space(), rule);
  Rational total = 0;
  for (const auto& [i, w] : mixture) {
    if (i >= p.size()) throw InvalidArgumentError("mixture refers to generator " + std::to_string(i));
    if (w < 0) throw InvalidArgumentError("mixture has a negative weight");
    total += w;
  }
  if (total != 1) throw InvalidArgumentError("mixture weights sum to " + to_string(total));

  SaddleReport r;
  const JointDistribution agg = aggregate_of(p, mixture);
  for (const auto& [i, w] : mixture) r.mixed_loss += w * expected_loss(p.generators()[i], rule, dp.loss);
  for (std::size_t x = 0; x < dp.space().num_x(); ++x) {
    Rational best;
    for (std::size_t a = 0; a < dp.space().num_actions(); ++a) {
      const Rational v = joint_coeff(agg, dp.loss, x, a);
      if (a == 0 || v < best) best = v;
    }
    r.agent_best += best;
  }
  r.bookie_best = worst_case_loss(p, rule, dp.loss).value;
  r.agent_best_response = r.mixed_loss == r.agent_best;
  r.bookie_best_response = r.mixed_loss == r.bookie_best;
  r.support_attains_max = true;
  for (const auto& [i, w] : mixture) {
    if (w > 0 && expected_loss(p.generators()[i], rule, dp.loss) != r.bookie_best) r.support_attains_max = false;
  }
  if (!r.agent_best_response) {
    r.failing_clause = "agent best response";
  } else if (!r.bookie_best_response) {
    r.failing_clause = "bookie best response";
  } else if (!r.support_attains_max) {
    r.failing_clause = "support attains maximum";
  }
  return r;
}

IgnoringSolution solve_ignoring(const DecisionProblem& dp) {
  IgnoringSolution out{solve_rule_lp(dp, true), solve_a_priori(dp).value, 0, false};
  const RandomizedAction& alpha = out.restricted.rule[0];
  bool first = true;
  const VPolytope marginals = marginal_y(dp.credal);
  for (const auto& r : marginals.generators()) {
    Rational v = 0;
    for (std::size_t y = 0; y < r.size(); ++y) v += r[y] * action_loss(dp.loss, alpha, y);
    if (first || v > out.marginal_value) out.marginal_value = v;
    first = false;
  }
  out.ignoring_optimal = out.restricted.value == out.unrestricted_value;
  return out;
}

namespace {

bool product_in_set(const CredalSet& p, const RationalVector& r) {
  const std::size_t nx = p.space().num_x();
  const std::size_t ny = p.space().num_y();
  if (!p.convex()) {
    for (const auto& g : p.generators()) {
      if (g.marginal_y() != r) continue;
      bool product = true;
      for (std::size_t x = 0; x < nx && product; ++x) {
        const Rational q = g.prob_x(x);
        for (std::size_t y = 0; y < ny && product; ++y) product = g.at(x, y) == q * r[y];
      }
      if (product) return true;
    }
    return false;
  }
  // Variables: generator weights, then q over X.
  const std::size_t k = p.size();
  lp::LinearProgram prog = lp::LinearProgram::with_variables(k + nx);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      RationalVector row(k + nx);
      for (std::size_t i = 0; i < k; ++i) row[i] = p.generators()[i].at(x, y);
      row[k + x] = -r[y];
      prog.add_row(std::move(row), lp::Sense::kEqual, 0);
    }
  }
  RationalVector simplex(k + nx);
  for (std::size_t i = 0; i < k; ++i) simplex[i] = 1;
  prog.add_row(std::move(simplex), lp::Sense::kEqual, 1);
  return lp::solve(prog).status == lp::Status::kOptimal;
}

}  // namespace

IndependenceCover check_independence_cover(const CredalSet& p, std::size_t samples, std::uint64_t seed) {
  const auto vertices = marginal_y(p).generators();
  std::vector<RationalVector> points = vertices;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(0, 24);
  for (std::size_t s = 0; s < samples && vertices.size() > 1; ++s) {
    std::vector<long> w(vertices.size());
    long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& v : w) total += v = draw(rng);
    }
    RationalVector pt(vertices.front().size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Rational c(w[i], total);
      for (std::size_t y = 0; y < pt.size(); ++y) pt[y] += c * vertices[i][y];
    }
    points.push_back(std::move(pt));
  }

  IndependenceCover out;
  for (const auto& r : points) {
    ++out.tested;
    if (!product_in_set(p, r)) {
      out.holds_at_tested_points = false;
      out.counterexample = r;
      break;
    }
  }
  return out;
}

namespace {

void compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(parts, total - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ValueBounds brute_force_value(const DecisionProblem& dp, std::size_t grid) {
  if (grid == 0) throw InvalidArgumentError("grid must be at least 1");
  const ProblemSpace& s = dp.space();
  const std::size_t na = s.num_actions();
  const std::size_t exponent = s.num_x() * (na - 1);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    count *= grid + 1;
    if (count > kBruteForceLimit) throw SizeLimitError("brute force grid exceeds 10^7 rules");
  }

  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> cur;
  compositions(na, grid, cur, comps);
  std::vector<RandomizedAction> options;
  for (const auto& c : comps) {
    RationalVector w(na);
    for (std::size_t a = 0; a < na; ++a) w[a] = ratio(static_cast<long>(c[a]), static_cast<long>(grid));
    options.emplace_back(std::move(w));
  }

  const XSet plus = support_x(dp.credal);
  const auto& gens = dp.credal.generators();
  // contrib[i][o][g]: loss of option o at x = plus[i] under generator g.
  std::vector<std::vector<RationalVector>> contrib(plus.size(), std::vector<RationalVector>(options.size()));
  for (std::size_t i = 0; i < plus.size(); ++i) {
    for (std::size_t o = 0; o < options.size(); ++o) {
      for (const auto& g : gens) {
        Rational v = 0;
        for (std::size_t a = 0; a < na; ++a) {
          if (options[o][a] != 0) v += options[o][a] * joint_coeff(g, dp.loss, plus[i], a);
        }
        contrib[i][o].push_back(v);
      }
    }
  }

  std::vector<std::size_t> choice(plus.size(), 0);
  std::vector<std::size_t> best_choice;
  Rational best;
  bool have = false;
  while (true) {
    Rational worst;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Rational v = 0;
      for (std::size_t i = 0; i < plus.size(); ++i) v += contrib[i][choice[i]][g];
      if (g == 0 || v > worst) worst = v;
    }
    if (!have || worst < best) {
      best = worst;
      best_choice = choice;
      have = true;
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == options.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }

  Rational lo = dp.loss(0, 0);
  Rational hi = lo;
  for (const auto& row : dp.loss.matrix()) {
    for (const auto& v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::vector<RandomizedAction> per_x(s.num_x(), RandomizedAction::uniform(na));
  for (std::size_t i = 0; i < plus.size(); ++i) per_x[plus[i]] = options[best_choice[i]];
  const Rational slack = Rational(static_cast<long>(na)) * (hi - lo) / Rational(static_cast<long>(grid));
  return {best - slack, best, DecisionRule(std::move(per_x))};
}

}  // namespace credal
