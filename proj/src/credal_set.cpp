#include "credal/credal_set.hpp"

#include <algorithm>
#include <set>

#include "credal/errors.hpp"

namespace credal {

namespace {

void check_labels(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) throw InvalidArgumentError(std::string(what) + " labels must be nonempty");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw InvalidArgumentError(std::string("duplicate ") + what + " label '" + l + "'");
  }
}

std::size_t index_of(const std::vector<std::string>& labels, std::string_view label, const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw InvalidArgumentError(std::string("unknown ") + what + " label '" + std::string(label) + "'");
}

void check_distribution(const RationalVector& w, const char* what) {
  for (const auto& v : w) {
    if (v < 0) throw InvalidArgumentError(std::string(what) + " has a negative entry " + to_string(v));
  }
  if (sum(w) != 1) throw InvalidArgumentError(std::string(what) + " sums to " + to_string(sum(w)) + ", not 1");
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!same_space(a, b)) throw InvalidArgumentError(std::string(what) + ": components use different problem spaces");
}

}  // namespace

ProblemSpace::ProblemSpace(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
                           std::vector<std::string> action_labels)
    : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)), action_labels_(std::move(action_labels)) {
  check_labels(x_labels_, "X");
  check_labels(y_labels_, "Y");
  check_labels(action_labels_, "action");
  if (action_labels_.size() < 2) throw InvalidArgumentError("at least two actions are required");
}

std::size_t ProblemSpace::x_index(std::string_view label) const { return index_of(x_labels_, label, "X"); }
std::size_t ProblemSpace::y_index(std::string_view label) const { return index_of(y_labels_, label, "Y"); }
std::size_t ProblemSpace::action_index(std::string_view label) const {
  return index_of(action_labels_, label, "action");
}

SpacePtr make_space(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
                    std::vector<std::string> action_labels) {
  return std::make_shared<const ProblemSpace>(std::move(x_labels), std::move(y_labels), std::move(action_labels));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

XSet all_x(const ProblemSpace& space) {
  XSet out(space.num_x());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

JointDistribution::JointDistribution(SpacePtr space, RationalVector mass) : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw InvalidArgumentError("joint distribution without a problem space");
  const std::size_t n = space_->num_x() * space_->num_y();
  if (mass_.size() != n) {
    throw DimensionError("joint distribution has " + std::to_string(mass_.size()) + " entries, expected " +
                         std::to_string(n));
  }
  check_distribution(mass_, "joint distribution");
}

JointDistribution JointDistribution::from_matrix(SpacePtr space, const RationalMatrix& by_x) {
  if (!space) throw InvalidArgumentError("joint distribution without a problem space");
  if (by_x.size() != space->num_x()) throw DimensionError("joint matrix needs one row per x");
  RationalVector mass;
  for (const auto& row : by_x) {
    if (row.size() != space->num_y()) throw DimensionError("joint matrix needs one column per y");
    mass.insert(mass.end(), row.begin(), row.end());
  }
  return JointDistribution(std::move(space), std::move(mass));
}

RationalVector JointDistribution::marginal_x() const {
  RationalVector out(space_->num_x());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = prob_x(x);
  return out;
}

RationalVector JointDistribution::marginal_y() const {
  RationalVector out(space_->num_y());
  for (std::size_t x = 0; x < space_->num_x(); ++x) {
    for (std::size_t y = 0; y < out.size(); ++y) out[y] += at(x, y);
  }
  return out;
}

Rational JointDistribution::prob_x(std::size_t x) const {
  Rational s = 0;
  for (std::size_t y = 0; y < space_->num_y(); ++y) s += at(x, y);
  return s;
}

Rational JointDistribution::prob(const XSet& event) const {
  Rational s = 0;
  for (auto x : event) s += prob_x(x);
  return s;
}

JointDistribution JointDistribution::conditional(const XSet& event) const {
  const Rational p = prob(event);
  if (p == 0) throw UndefinedConditionalError("conditioning on an event of probability zero");
  RationalVector out(mass_.size());
  const std::size_t ny = space_->num_y();
  for (auto x : event) {
    for (std::size_t y = 0; y < ny; ++y) out[x * ny + y] = at(x, y) / p;
  }
  return JointDistribution(space_, std::move(out));
}

CredalSet::CredalSet(SpacePtr space, std::vector<JointDistribution> generators, bool convex)
    : space_(std::move(space)), convex_(convex) {
  if (!space_) throw InvalidArgumentError("credal set without a problem space");
  if (generators.empty()) throw InvalidArgumentError("credal set needs at least one generator");
  for (auto& g : generators) {
    require_same_space(space_, g.space_ptr(), "credal set");
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) generators_.push_back(std::move(g));
  }
}

VPolytope CredalSet::polytope() const {
  std::vector<RationalVector> pts;
  pts.reserve(generators_.size());
  for (const auto& g : generators_) pts.push_back(g.mass());
  return VPolytope(space_->num_x() * space_->num_y(), std::move(pts), convex_);
}

LossFunction::LossFunction(SpacePtr space, RationalMatrix by_y) : space_(std::move(space)), loss_(std::move(by_y)) {
  if (!space_) throw InvalidArgumentError("loss function without a problem space");
  if (loss_.size() != space_->num_y()) throw DimensionError("loss table needs one row per y");
  for (const auto& row : loss_) {
    if (row.size() != space_->num_actions()) throw DimensionError("loss table needs one column per action");
  }
}

LossFunction LossFunction::classification(SpacePtr space) {
  RationalMatrix m(space->num_y(), RationalVector(space->num_actions(), Rational(1)));
  for (std::size_t y = 0; y < space->num_y() && y < space->num_actions(); ++y) m[y][y] = 0;
  return LossFunction(std::move(space), std::move(m));
}

DecisionProblem::DecisionProblem(CredalSet credal_set, LossFunction loss_function)
    : credal(std::move(credal_set)), loss(std::move(loss_function)) {
  require_same_space(credal.space_ptr(), loss.space_ptr(), "decision problem");
}

RandomizedAction::RandomizedAction(RationalVector weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgumentError("randomized action over no actions");
  check_distribution(weights_, "randomized action");
}

RandomizedAction RandomizedAction::point_mass(std::size_t num_actions, std::size_t action) {
  if (action >= num_actions) throw InvalidArgumentError("action index out of range");
  RationalVector w(num_actions);
  w[action] = 1;
  return RandomizedAction(std::move(w));
}

RandomizedAction RandomizedAction::uniform(std::size_t num_actions) {
  return RandomizedAction(RationalVector(num_actions, ratio(1, static_cast<long>(num_actions))));
}

bool RandomizedAction::deterministic() const {
  return std::any_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w == 1; });
}

std::size_t RandomizedAction::action() const {
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    if (weights_[a] == 1) return a;
  }
  return weights_.size();
}

DecisionRule::DecisionRule(std::vector<RandomizedAction> per_x) : per_x_(std::move(per_x)) {
  if (per_x_.empty()) throw InvalidArgumentError("decision rule over no observations");
  for (const auto& a : per_x_) {
    if (a.size() != per_x_.front().size()) throw DimensionError("decision rule mixes action counts");
  }
}

DecisionRule DecisionRule::constant(std::size_t num_x, const RandomizedAction& action) {
  return DecisionRule(std::vector<RandomizedAction>(num_x, action));
}

DecisionRule DecisionRule::deterministic(std::size_t num_actions, const std::vector<std::size_t>& actions) {
  std::vector<RandomizedAction> per_x;
  per_x.reserve(actions.size());
  for (auto a : actions) per_x.push_back(RandomizedAction::point_mass(num_actions, a));
  return DecisionRule(std::move(per_x));
}

bool DecisionRule::deterministic() const {
  return std::all_of(per_x_.begin(), per_x_.end(), [](const RandomizedAction& a) { return a.deterministic(); });
}

bool DecisionRule::ignores_information() const {
  return std::all_of(per_x_.begin(), per_x_.end(), [&](const RandomizedAction& a) { return a == per_x_.front(); });
}

bool canonical_action_less(const RandomizedAction& a, const RandomizedAction& b) {
  const bool da = a.deterministic();
  const bool db = b.deterministic();
  if (da != db) return da;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

bool canonical_rule_less(const DecisionRule& a, const DecisionRule& b) {
  const bool da = a.deterministic();
  const bool db = b.deterministic();
  if (da != db) return da;
  for (std::size_t x = 0; x < a.size() && x < b.size(); ++x) {
    const auto& wa = a[x].weights();
    const auto& wb = b[x].weights();
    for (std::size_t i = 0; i < wa.size() && i < wb.size(); ++i) {
      if (wa[i] != wb[i]) return wa[i] > wb[i];
    }
  }
  return false;
}

Partition::Partition(std::size_t num_x, std::vector<XSet> cells) : cell_of_(num_x, num_x) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& cell = cells[c];
    if (cell.empty()) throw InvalidArgumentError("partition has an empty cell");
    std::sort(cell.begin(), cell.end());
    for (auto x : cell) {
      if (x >= num_x) throw InvalidArgumentError("partition cell mentions an unknown x");
      if (cell_of_[x] != num_x) throw InvalidArgumentError("partition cells overlap");
      cell_of_[x] = c;
    }
  }
  for (auto c : cell_of_) {
    if (c == num_x) throw InvalidArgumentError("partition cells do not cover X");
  }
  cells_ = std::move(cells);
}

Partition Partition::singletons(std::size_t num_x) {
  std::vector<XSet> cells;
  for (std::size_t x = 0; x < num_x; ++x) cells.push_back({x});
  return Partition(num_x, std::move(cells));
}

Partition Partition::whole(std::size_t num_x) {
  XSet all(num_x);
  for (std::size_t x = 0; x < num_x; ++x) all[x] = x;
  return Partition(num_x, {all});
}

bool Partition::operator==(const Partition& o) const {
  if (num_x() != o.num_x() || cells_.size() != o.cells_.size()) return false;
  for (std::size_t x = 0; x < num_x(); ++x) {
    if (cell_of(x) != o.cell_of(x)) return false;
  }
  return true;
}

VPolytope marginal_y(const CredalSet& p) {
  std::vector<RationalVector> pts;
  for (const auto& g : p.generators()) pts.push_back(g.marginal_y());
  return prune(VPolytope(p.space().num_y(), std::move(pts), p.convex()));
}

VPolytope marginal_x(const CredalSet& p) {
  std::vector<RationalVector> pts;
  for (const auto& g : p.generators()) pts.push_back(g.marginal_x());
  return prune(VPolytope(p.space().num_x(), std::move(pts), p.convex()));
}

namespace {

CredalSet pruned(const CredalSet& p) {
  if (!p.convex()) return p;
  const VPolytope poly = prune(p.polytope());
  std::vector<JointDistribution> gens;
  for (const auto& g : poly.generators()) gens.emplace_back(p.space_ptr(), g);
  return CredalSet(p.space_ptr(), std::move(gens), true);
}

RationalVector y_projection(const JointDistribution& d) { return d.marginal_y(); }

}  // namespace

CredalSet condition(const CredalSet& p, const XSet& event) {
  if (event.empty()) throw InvalidArgumentError("conditioning on an empty event");
  for (auto x : event) {
    if (x >= p.space().num_x()) throw InvalidArgumentError("conditioning event mentions an unknown x");
  }
  std::vector<JointDistribution> out;
  for (const auto& g : p.generators()) {
    if (g.prob(event) > 0) out.push_back(g.conditional(event));
  }
  if (out.empty()) throw UndefinedConditionalError("every generator gives the conditioning event probability zero");
  return pruned(CredalSet(p.space_ptr(), std::move(out), p.convex()));
}

VPolytope condition_y(const CredalSet& p, const XSet& event) {
  const CredalSet c = condition(p, event);
  std::vector<RationalVector> pts;
  for (const auto& g : c.generators()) pts.push_back(y_projection(g));
  return prune(VPolytope(p.space().num_y(), std::move(pts), p.convex()));
}

CredalSet c_condition(const CredalSet& p, const Partition& c, std::size_t x) {
  if (c.num_x() != p.space().num_x()) throw DimensionError("partition and credal set disagree on |X|");
  if (x >= c.num_x()) throw InvalidArgumentError("x index out of range");
  return condition(p, c.cell_of(x));
}

CredalSet hull(const CredalSet& p) {
  const ProblemSpace& s = p.space();
  const std::size_t nx = s.num_x();
  const std::size_t ny = s.num_y();
  const VPolytope marg = marginal_x(p);

  // Per-x conditional Y-distributions, empty where undefined.
  std::vector<std::vector<RationalVector>> cond(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    bool defined = false;
    for (const auto& g : p.generators()) defined = defined || g.prob_x(x) > 0;
    if (defined) cond[x] = condition_y(p, {x}).generators();
  }

  std::vector<JointDistribution> out;
  for (const auto& q : marg.generators()) {
    std::vector<std::size_t> live;
    for (std::size_t x = 0; x < nx; ++x) {
      if (q[x] > 0) live.push_back(x);
    }
    std::vector<std::size_t> choice(live.size(), 0);
    while (true) {
      RationalVector mass(nx * ny);
      for (std::size_t i = 0; i < live.size(); ++i) {
        const std::size_t x = live[i];
        const RationalVector& r = cond[x][choice[i]];
        for (std::size_t y = 0; y < ny; ++y) mass[x * ny + y] = q[x] * r[y];
      }
      out.emplace_back(p.space_ptr(), std::move(mass));
      std::size_t i = 0;
      while (i < live.size() && ++choice[i] == cond[live[i]].size()) choice[i++] = 0;
      if (i == live.size()) break;
    }
  }
  // Products of a vertex marginal with vertex conditionals are extreme, so
  // the list is already pruned.
  return CredalSet(p.space_ptr(), std::move(out), p.convex());
}

bool is_rectangular(const CredalSet& p) {
  const CredalSet h = hull(p);
  if (!p.convex()) return set_equal(p.polytope(), h.polytope());
  return subset(h.polytope(), p.polytope());
}

bool is_conservative(const CredalSet& p) {
  for (const auto& g : p.generators()) {
    for (std::size_t x = 0; x < p.space().num_x(); ++x) {
      if (g.prob_x(x) == 0) return false;
    }
  }
  return true;
}

XSet support_x(const CredalSet& p) {
  XSet out;
  for (std::size_t x = 0; x < p.space().num_x(); ++x) {
    for (const auto& g : p.generators()) {
      if (g.prob_x(x) > 0) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

namespace {

Interval event_range(const std::vector<RationalVector>& points, const std::vector<std::size_t>& ys) {
  Interval iv;
  bool first = true;
  for (const auto& pt : points) {
    Rational v = 0;
    for (auto y : ys) v += pt[y];
    if (first || v < iv.lo) iv.lo = v;
    if (first || v > iv.hi) iv.hi = v;
    first = false;
  }
  return iv;
}

}  // namespace

std::vector<DilationEntry> dilation_report(const CredalSet& p) {
  const std::size_t ny = p.space().num_y();
  if (ny >= 20) throw SizeLimitError("dilation report enumerates 2^|Y| events; |Y| is too large");
  const XSet plus = support_x(p);
  const auto prior = marginal_y(p).generators();
  std::vector<std::vector<RationalVector>> post;
  for (auto x : plus) post.push_back(condition_y(p, {x}).generators());

  // Extremes of a linear functional over a polytope are attained at generators.
  std::vector<DilationEntry> out;
  const std::size_t full = (std::size_t{1} << ny) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    DilationEntry e;
    for (std::size_t y = 0; y < ny; ++y) {
      if (mask >> y & 1) e.y_event.push_back(y);
    }
    e.prior = event_range(prior, e.y_event);
    e.strict_dilation = !plus.empty();
    for (std::size_t i = 0; i < plus.size(); ++i) {
      const Interval iv = event_range(post[i], e.y_event);
      e.posteriors.emplace_back(plus[i], iv);
      e.strict_dilation = e.strict_dilation && iv.lo < e.prior.lo && iv.hi > e.prior.hi;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace credal
