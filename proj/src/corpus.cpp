#include "credal/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "credal/calibration.hpp"
#include "credal/consistency.hpp"
#include "credal/errors.hpp"

#ifndef CREDAL_CORPUS_DIR
#define CREDAL_CORPUS_DIR "corpus"
#endif

namespace credal {

using nlohmann::json;

std::filesystem::path default_corpus_dir() { return CREDAL_CORPUS_DIR; }

CorpusCase load_case(const std::filesystem::path& file) {
  const std::string name = file.stem().string();
  try {
    const json doc = load_json(file);
    CorpusCase c{"", problem_from_json(doc), {}, file};
    c.id = c.problem.id.empty() ? name : c.problem.id;
    if (!doc.contains("expectations") || !doc.at("expectations").is_array()) {
      throw ParseError("expectations", "expected an array");
    }
    const json& list = doc.at("expectations");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const json& e = list[i];
      const std::string field = "expectations[" + std::to_string(i) + "]";
      if (!e.is_object() || !e.contains("op") || !e.at("op").is_string() || !e.contains("expected")) {
        throw ParseError(field, "needs string 'op' and 'expected'");
      }
      Expectation x{e.at("op").get<std::string>(), e.value("args", json::object()), e.at("expected"),
                    e.value("provenance", std::string()), e.value("oracle", std::string())};
      if (x.provenance != "published" && x.provenance != "derived") {
        throw ParseError(field + ".provenance", "must be \"published\" or \"derived\"");
      }
      if (x.provenance == "derived" && x.oracle.empty()) throw ParseError(field + ".oracle", "derived values must name their oracle");
      c.expectations.push_back(std::move(x));
    }
    return c;
  } catch (const ParseError& e) {
    throw ParseError("corpus case " + name, e.what());
  }
}

std::vector<CorpusCase> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir.string(), "corpus directory not found");
  std::vector<CorpusCase> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") out.push_back(load_case(entry.path()));
  }
  std::sort(out.begin(), out.end(), [](const CorpusCase& a, const CorpusCase& b) { return a.id < b.id; });
  return out;
}

const CorpusCase& find_case(const std::vector<CorpusCase>& corpus, const std::string& id) {
  for (const auto& c : corpus) {
    if (c.id == id) return c;
  }
  throw InvalidArgumentError("no corpus case '" + id + "'");
}

namespace {

json sorted_strings(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  return items;
}

json generator_strings(const VPolytope& set) {
  std::vector<std::string> out;
  for (const auto& g : set.generators()) out.push_back(to_string(g));
  return sorted_strings(std::move(out));
}

json interval_json(const Interval& i) { return json::array({to_string(i.lo), to_string(i.hi)}); }

RationalVector point_from(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array");
  RationalVector out;
  for (const auto& item : v) {
    if (item.is_array()) {
      for (const auto& inner : item) out.push_back(parse_rational(inner.get<std::string>()));
    } else {
      out.push_back(parse_rational(item.get<std::string>()));
    }
  }
  return out;
}

XSet x_event(const json& labels, const ProblemSpace& s) {
  XSet out;
  for (const auto& l : labels) out.push_back(s.x_index(l.get<std::string>()));
  std::sort(out.begin(), out.end());
  return out;
}

class Evaluator {
 public:
  Evaluator(const CorpusCase& c, const Expectation& e, std::uint64_t seed)
      : file_(c.problem), p_(c.problem.credal), s_(c.problem.space()), args_(e.args), seed_(seed) {}

  json run(const std::string& op) const {
    static const std::map<std::string, json (Evaluator::*)() const> table = {
        {"generators", &Evaluator::generators},
        {"marginal_y", &Evaluator::marginal_y_op},
        {"marginal_x", &Evaluator::marginal_x_op},
        {"marginal_y_contains", &Evaluator::marginal_y_contains},
        {"condition_y", &Evaluator::condition_y_op},
        {"hull_generators", &Evaluator::hull_generators},
        {"hull_equal", &Evaluator::hull_equal},
        {"member", &Evaluator::member_op},
        {"is_rectangular", &Evaluator::rectangular},
        {"is_conservative", &Evaluator::conservative},
        {"support_x", &Evaluator::support},
        {"dilation", &Evaluator::dilation},
        {"a_priori_value", &Evaluator::a_priori_value},
        {"a_priori_rule", &Evaluator::a_priori_rule},
        {"a_priori_unique", &Evaluator::a_priori_unique},
        {"is_a_priori_optimal", &Evaluator::is_a_priori_optimal},
        {"posterior_value", &Evaluator::posterior_value},
        {"posterior_actions", &Evaluator::posterior_actions},
        {"expected_loss", &Evaluator::expected_loss_op},
        {"worst_case_loss", &Evaluator::worst_case_loss_op},
        {"worst_case_posterior_loss", &Evaluator::worst_case_posterior_loss_op},
        {"verify_saddle_solver", &Evaluator::verify_saddle_solver},
        {"verify_saddle", &Evaluator::verify_saddle_op},
        {"ignoring_value", &Evaluator::ignoring_value},
        {"ignoring_optimal", &Evaluator::ignoring_optimal},
        {"independence_cover", &Evaluator::independence_cover},
        {"brute_force_upper", &Evaluator::brute_force_upper},
        {"weak_time", &Evaluator::weak_time},
        {"weak_time_witness", &Evaluator::weak_time_witness},
        {"time", &Evaluator::time},
        {"time_witness", &Evaluator::time_witness},
        {"dynamic", &Evaluator::dynamic},
        {"dynamic_witness", &Evaluator::dynamic_witness},
        {"sufficient_conditions", &Evaluator::sufficient},
        {"walley", &Evaluator::walley},
        {"equivalence_classes", &Evaluator::classes},
        {"calibrated", &Evaluator::calibrated},
        {"failing_classes", &Evaluator::failing_classes},
        {"sharply_calibrated", &Evaluator::sharply_calibrated},
        {"sharpness_witness", &Evaluator::sharpness_witness},
        {"sharp_partition", &Evaluator::sharp_partition_op},
        {"refine_partition", &Evaluator::refine_partition_op},
        {"narrower", &Evaluator::narrower_op},
    };
    const auto it = table.find(op);
    if (it == table.end()) throw InvalidArgumentError("unknown corpus operation '" + op + "'");
    return (this->*(it->second))();
  }

 private:
  std::string arg(const char* key) const {
    if (!args_.contains(key) || !args_.at(key).is_string()) throw ParseError(std::string("args.") + key, "missing");
    return args_.at(key).get<std::string>();
  }
  std::size_t arg_size(const char* key) const {
    if (!args_.contains(key) || !args_.at(key).is_number_unsigned()) throw ParseError(std::string("args.") + key, "missing");
    return args_.at(key).get<std::size_t>();
  }
  DecisionRule rule_arg(const char* key = "rule") const { return parse_rule(arg(key), s_); }
  UpdateRule update_arg(const char* key = "rule") const { return parse_update_rule(arg(key), s_); }
  std::size_t x_arg() const { return s_.x_index(arg("x")); }
  DecisionProblem dp() const { return file_.problem(); }
  std::string rule_text(const DecisionRule& r) const { return format_rule(r, s_); }

  json generators() const { return generator_strings(p_.polytope()); }
  json marginal_y_op() const { return generator_strings(marginal_y(p_)); }
  json marginal_x_op() const { return generator_strings(marginal_x(p_)); }
  json marginal_y_contains() const { return member(point_from(args_.at("point"), "args.point"), marginal_y(p_)); }
  json condition_y_op() const { return generator_strings(condition_y(p_, x_event(args_.at("event"), s_))); }
  json hull_generators() const { return generator_strings(hull(p_).polytope()); }
  json hull_equal() const { return set_equal(hull(p_).polytope(), p_.polytope()); }
  json member_op() const {
    const RationalVector point = point_from(args_.at("point"), "args.point");
    return arg("set") == "hull" ? member(point, hull(p_).polytope()) : member(point, p_.polytope());
  }
  json rectangular() const { return is_rectangular(p_); }
  json conservative() const { return is_conservative(p_); }
  json support() const {
    json out = json::array();
    for (auto x : support_x(p_)) out.push_back(s_.x_labels()[x]);
    return out;
  }
  json dilation() const {
    std::vector<std::size_t> ys;
    for (const auto& l : args_.at("y_event")) ys.push_back(s_.y_index(l.get<std::string>()));
    std::sort(ys.begin(), ys.end());
    for (const auto& e : dilation_report(p_)) {
      if (e.y_event != ys) continue;
      json post = json::object();
      for (const auto& [x, i] : e.posteriors) post[s_.x_labels()[x]] = interval_json(i);
      return {{"prior", interval_json(e.prior)}, {"posteriors", post}, {"strict_dilation", e.strict_dilation}};
    }
    throw InvalidArgumentError("y_event must be a nonempty proper subset of Y");
  }

  json a_priori_value() const { return to_string(solve_a_priori(dp()).value); }
  json a_priori_rule() const { return rule_text(solve_a_priori(dp()).rule); }
  json a_priori_unique() const { return solve_a_priori(dp()).unique(); }
  json is_a_priori_optimal() const {
    const DecisionProblem d = dp();
    return worst_case_loss(d.credal, rule_arg(), d.loss).value == solve_a_priori(d).value;
  }
  json posterior_value() const {
    const PosteriorSolution post = solve_a_posteriori(dp());
    const PosteriorAtX* at = post.at(x_arg());
    if (!at) throw UndefinedConditionalError("x outside support");
    return to_string(at->value);
  }
  json posterior_actions() const {
    const PosteriorSolution post = solve_a_posteriori(dp());
    const PosteriorAtX* at = post.at(x_arg());
    if (!at) throw UndefinedConditionalError("x outside support");
    std::vector<std::string> out;
    for (const auto& a : at->action_vertices) out.push_back(format_action(a));
    return sorted_strings(std::move(out));
  }
  json expected_loss_op() const {
    const std::size_t g = arg_size("generator");
    if (g >= p_.size()) throw InvalidArgumentError("generator index out of range");
    return to_string(expected_loss(p_.generators()[g], rule_arg(), dp().loss));
  }
  json worst_case_loss_op() const {
    const DecisionProblem d = dp();
    return to_string(worst_case_loss(d.credal, rule_arg(), d.loss).value);
  }
  json worst_case_posterior_loss_op() const {
    const DecisionProblem d = dp();
    return to_string(worst_case_posterior_loss(d.credal, rule_arg(), d.loss, x_arg()));
  }
  json verify_saddle_solver() const {
    const DecisionProblem d = dp();
    const MinimaxSolution sol = solve_a_priori(d);
    return verify_saddle(d, sol.bookie_mixture, sol.rule).holds();
  }
  json verify_saddle_op() const {
    const SaddleReport r = verify_saddle(dp(), parse_mixture(arg("mixture"), p_.size()), rule_arg());
    return r.holds() ? std::string("holds") : r.failing_clause;
  }
  json ignoring_value() const { return to_string(solve_ignoring(dp()).restricted.value); }
  json ignoring_optimal() const { return solve_ignoring(dp()).ignoring_optimal; }
  json independence_cover() const { return check_independence_cover(p_, 20, seed_).holds_at_tested_points; }
  json brute_force_upper() const { return to_string(brute_force_value(dp(), arg_size("grid")).upper); }

  json weak_time() const { return to_string(check_weak_time_consistency(dp()).result); }
  json weak_time_witness() const {
    const ConsistencyVerdict v = check_weak_time_consistency(dp());
    return v.witness ? json(rule_text(*v.witness)) : json(nullptr);
  }
  json time() const { return to_string(check_time_consistency(dp()).result); }
  json time_witness() const {
    const ConsistencyVerdict v = check_time_consistency(dp());
    if (!v.witness || !v.witness_x) return nullptr;
    const RandomizedAction& a = (*v.witness)[*v.witness_x];
    return {{"x", s_.x_labels()[*v.witness_x]},
            {"action", a.deterministic() ? s_.action_labels()[a.action()] : format_action(a)},
            {"posterior_loss", to_string(v.witness_value)},
            {"reference", to_string(v.reference_value)}};
  }
  json dynamic() const { return to_string(falsify_dynamic_consistency(dp(), arg_size("budget"), seed_).result); }
  json dynamic_witness() const {
    const ConsistencyVerdict v = falsify_dynamic_consistency(dp(), arg_size("budget"), seed_);
    if (!v.witness || !v.witness_other) return nullptr;
    return {{"preferred_after", rule_text(*v.witness)}, {"other", rule_text(*v.witness_other)}, {"violated", v.violated}};
  }
  json sufficient() const { return sufficient_conditions(dp()).summary; }
  json walley() const { return to_string(walley_prefers(dp(), rule_arg("d1"), rule_arg("d2")).preference); }

  json classes() const { return format_partition(equivalence_classes(update_arg(), p_).classes, s_); }
  json calibrated() const { return check_calibration(update_arg(), p_).calibrated; }
  json failing_classes() const {
    std::vector<std::string> out;
    for (const auto& c : check_calibration(update_arg(), p_).per_class) {
      if (c.tested && !(c.forward && c.backward)) out.push_back(format_cell(c.cell, s_));
    }
    return sorted_strings(std::move(out));
  }
  json sharply_calibrated() const { return is_sharply_calibrated(update_arg(), p_).sharp; }
  json sharpness_witness() const {
    const Sharpness sh = is_sharply_calibrated(update_arg(), p_);
    return sh.witness ? json(format_partition(*sh.witness, s_)) : json(nullptr);
  }
  json sharp_partition_op() const { return format_partition(sharp_partition(p_).partition, s_); }
  json refine_partition_op() const { return format_partition(refine_partition(parse_partition(arg("partition"), s_), p_), s_); }
  json narrower_op() const { return to_string(narrower(update_arg("r1"), update_arg("r2"), p_)); }

  const ProblemFile& file_;
  const CredalSet& p_;
  const ProblemSpace& s_;
  const json& args_;
  std::uint64_t seed_;
};

}  // namespace

json evaluate(const CorpusCase& c, const Expectation& e, std::uint64_t seed) { return Evaluator(c, e, seed).run(e.op); }

bool matches(const json& expected, const json& actual) {
  auto all_strings = [](const json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_string(); });
  };
  if (all_strings(expected) && all_strings(actual)) {
    auto a = expected.get<std::vector<std::string>>();
    auto b = actual.get<std::vector<std::string>>();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }
  return expected == actual;
}

std::vector<ExpectationResult> run_corpus(const std::vector<CorpusCase>& corpus, std::uint64_t seed) {
  std::vector<ExpectationResult> out;
  for (const auto& c : corpus) {
    for (std::size_t i = 0; i < c.expectations.size(); ++i) {
      const Expectation& e = c.expectations[i];
      ExpectationResult r{c.id, i, e.op, e.expected, nullptr, "", false};
      try {
        r.actual = evaluate(c, e, seed);
        r.passed = matches(e.expected, r.actual);
      } catch (const std::exception& ex) {
        r.error = ex.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace credal
