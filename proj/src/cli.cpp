#include "credal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "credal/calibration.hpp"
#include "credal/consistency.hpp"
#include "credal/corpus.hpp"
#include "credal/errors.hpp"
#include "credal/problem_file.hpp"

namespace credal::cli {

namespace {

using nlohmann::json;

struct Outcome {
  json report;
  std::vector<std::string> lines;
  /// Analysis verdict that --strict turns into exit code 1.
  bool negative = false;
};

std::uint64_t seed_from_env() {
  const char* text = std::getenv("CREDAL_SEED");
  if (text == nullptr || *text == '\0') return 0;
  const std::string_view s(text);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError("CREDAL_SEED", "expected a nonnegative integer");
  return seed;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i > 0 ? sep : "") + items[i];
  return out;
}

std::string interval_text(const Interval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

json interval_json(const Interval& i) { return json::array({to_string(i.lo), to_string(i.hi)}); }

std::vector<std::string> generator_texts(const VPolytope& set) {
  std::vector<std::string> out;
  for (const auto& g : set.generators()) out.push_back(to_string(g));
  return out;
}

Outcome solve(const ProblemFile& f) {
  const DecisionProblem dp = f.problem();
  const MinimaxSolution sol = solve_a_priori(dp);
  const ProblemSpace& s = f.space();
  const std::size_t face = sol.optimal_rule_vertices.size();
  Outcome o;
  o.report = {{"command", "solve"},
              {"value", to_string(sol.value)},
              {"rule", format_rule(sol.rule, s)},
              {"bookie_mixture", format_mixture(sol.bookie_mixture)},
              {"aggregate", to_string(sol.aggregate.mass())},
              {"optimal_face_vertices", face == 0 ? json(nullptr) : json(face)},
              {"unique", face == 0 ? json(nullptr) : json(sol.unique())}};
  o.lines.push_back("a priori minimax value: " + to_string(sol.value));
  o.lines.push_back("optimal rule: " + format_rule(sol.rule, s));
  if (face == 0) {
    o.lines.push_back("optimal face: too large to enumerate");
  } else {
    o.lines.push_back("optimal face vertices: " + std::to_string(face) + (sol.unique() ? " (unique)" : " (not unique)"));
  }
  o.lines.push_back("bookie mixture: " + format_mixture(sol.bookie_mixture));
  o.lines.push_back("aggregate distribution: " + to_string(sol.aggregate.mass()));
  return o;
}

Outcome posterior(const ProblemFile& f) {
  const DecisionProblem dp = f.problem();
  const PosteriorSolution post = solve_a_posteriori(dp);
  const ProblemSpace& s = f.space();
  Outcome o;
  json per_x = json::array();
  for (std::size_t x = 0; x < s.num_x(); ++x) {
    const PosteriorAtX* at = post.at(x);
    const std::string label = s.x_labels()[x];
    if (at == nullptr) {
      per_x.push_back({{"x", label}, {"observable", false}});
      o.lines.push_back("x=" + label + ": probability zero under every generator");
      continue;
    }
    std::vector<std::string> actions;
    for (const auto& a : at->action_vertices) actions.push_back(format_action(a));
    per_x.push_back({{"x", label}, {"observable", true}, {"value", to_string(at->value)}, {"action_vertices", actions}});
    o.lines.push_back("x=" + label + ": MM = " + to_string(at->value) + "; optimal action vertices: " + join(actions, " | "));
  }
  const std::string rule = format_rule(post.rule(s), s);
  o.report = {{"command", "posterior"}, {"per_x", per_x}, {"rule", rule}};
  o.lines.push_back("a posteriori rule: " + rule);
  return o;
}

Outcome saddle(const ProblemFile& f, const std::string& mixture_text, const std::string& rule_text) {
  const DecisionProblem dp = f.problem();
  const ProblemSpace& s = f.space();
  if (mixture_text.empty() != rule_text.empty()) throw ParseError("saddle", "--mixture and --rule go together");
  Mixture mixture;
  std::optional<DecisionRule> rule;
  if (mixture_text.empty()) {
    MinimaxSolution sol = solve_a_priori(dp);
    mixture = std::move(sol.bookie_mixture);
    rule = std::move(sol.rule);
  } else {
    mixture = parse_mixture(mixture_text, dp.credal.size());
    rule = parse_rule(rule_text, s);
  }
  const SaddleReport r = verify_saddle(dp, mixture, *rule);
  Outcome o;
  o.negative = !r.holds();
  o.report = {{"command", "saddle"},
              {"mixture", format_mixture(mixture)},
              {"rule", format_rule(*rule, s)},
              {"mixed_loss", to_string(r.mixed_loss)},
              {"agent_best", to_string(r.agent_best)},
              {"bookie_best", to_string(r.bookie_best)},
              {"agent_best_response", r.agent_best_response},
              {"bookie_best_response", r.bookie_best_response},
              {"support_attains_max", r.support_attains_max},
              {"holds", r.holds()}};
  o.lines.push_back("mixture: " + format_mixture(mixture));
  o.lines.push_back("rule: " + format_rule(*rule, s));
  o.lines.push_back("mixed loss: " + to_string(r.mixed_loss));
  o.lines.push_back(std::string("agent best response: ") + yes_no(r.agent_best_response) + " (best loss " +
                    to_string(r.agent_best) + ")");
  o.lines.push_back(std::string("bookie best response: ") + yes_no(r.bookie_best_response) + " (worst case " +
                    to_string(r.bookie_best) + ")");
  o.lines.push_back(std::string("support attains maximum: ") + yes_no(r.support_attains_max));
  o.lines.push_back(r.holds() ? "saddle point: holds" : "saddle point: fails (" + r.failing_clause + ")");
  return o;
}

Outcome hull_cmd(const ProblemFile& f) {
  const CredalSet h = hull(f.credal);
  const bool rect = is_rectangular(f.credal);
  const auto gens = generator_texts(h.polytope());
  Outcome o;
  o.report = {{"command", "hull"}, {"generators", gens}, {"rectangular", rect}};
  o.lines.push_back("hull generators: " + std::to_string(gens.size()));
  for (const auto& g : gens) o.lines.push_back("  " + g);
  o.lines.push_back(rect ? "rectangular" : "not rectangular");
  return o;
}

Outcome check(const ProblemFile& f, const std::string& what) {
  Outcome o;
  if (what == "rect") {
    const bool rect = is_rectangular(f.credal);
    o.negative = !rect;
    o.report = {{"command", "check rect"}, {"rectangular", rect}};
    o.lines.push_back(rect ? "rectangular" : "not rectangular");
  } else if (what == "conservative") {
    const bool cons = is_conservative(f.credal);
    o.negative = !cons;
    o.report = {{"command", "check conservative"}, {"conservative", cons}};
    o.lines.push_back(cons ? "conservative" : "not conservative");
  } else {
    const ProblemSpace& s = f.space();
    json entries = json::array();
    for (const auto& e : dilation_report(f.credal)) {
      std::vector<std::string> ys;
      for (auto y : e.y_event) ys.push_back(s.y_labels()[y]);
      json post = json::object();
      std::vector<std::string> post_text;
      for (const auto& [x, i] : e.posteriors) {
        post[s.x_labels()[x]] = interval_json(i);
        post_text.push_back("x=" + s.x_labels()[x] + " " + interval_text(i));
      }
      entries.push_back(
          {{"y_event", ys}, {"prior", interval_json(e.prior)}, {"posteriors", post}, {"strict_dilation", e.strict_dilation}});
      o.lines.push_back("Y in {" + join(ys, ",") + "}: prior " + interval_text(e.prior) + "; posterior " +
                        join(post_text, ", ") + (e.strict_dilation ? "; strict dilation" : ""));
    }
    o.report = {{"command", "check dilation"}, {"events", entries}};
  }
  return o;
}

std::string posterior_losses(const DecisionProblem& dp, const DecisionRule& rule) {
  std::vector<std::string> parts;
  for (auto x : support_x(dp.credal)) {
    parts.push_back("x=" + dp.space().x_labels()[x] + " " +
                    to_string(worst_case_posterior_loss(dp.credal, rule, dp.loss, x)));
  }
  return join(parts, ", ");
}

Outcome consistency(const ProblemFile& f, const std::string& kind, std::size_t budget, std::uint64_t seed) {
  const DecisionProblem dp = f.problem();
  const ProblemSpace& s = f.space();
  ConsistencyVerdict v = kind == "time"   ? check_time_consistency(dp)
                         : kind == "weak" ? check_weak_time_consistency(dp)
                                          : falsify_dynamic_consistency(dp, budget, seed);
  Outcome o;
  o.negative = v.result == Verdict::kInconsistent;
  o.report = {{"command", std::string("consistency ") + kind},
              {"kind", to_string(v.kind)},
              {"verdict", to_string(v.result)},
              {"candidates", v.candidates},
              {"sufficient_conditions", v.notes.summary}};
  const std::string name = std::string(to_string(v.kind)) + " consistency";
  if (v.result == Verdict::kUnknown) {
    o.lines.push_back(name + ": no violation found among " + std::to_string(v.candidates) + " candidate rules");
  } else {
    o.lines.push_back(name + ": " + to_string(v.result));
  }
  if (v.witness) {
    o.report["witness"] = format_rule(*v.witness, s);
    o.report["violated"] = v.violated;
    o.report["witness_value"] = to_string(v.witness_value);
    o.report["reference_value"] = to_string(v.reference_value);
    o.lines.push_back("witness rule: " + format_rule(*v.witness, s));
  }
  if (v.kind == ConsistencyKind::kDynamic && v.witness && v.witness_other) {
    o.report["witness_other"] = format_rule(*v.witness_other, s);
    o.lines.push_back("compared with: " + format_rule(*v.witness_other, s));
    o.lines.push_back("violated: " + v.violated);
    o.lines.push_back("posterior worst-case losses: " + posterior_losses(dp, *v.witness) + " vs " +
                      posterior_losses(dp, *v.witness_other));
    o.lines.push_back("a priori worst-case losses: " + to_string(v.witness_value) + " vs " + to_string(v.reference_value));
  } else if (v.witness && v.witness_x) {
    const std::string x = s.x_labels()[*v.witness_x];
    o.report["witness_x"] = x;
    o.lines.push_back("a priori optimal, but at x=" + x + " its posterior worst-case loss " + to_string(v.witness_value) +
                      " exceeds MM(" + x + ") = " + to_string(v.reference_value));
  } else if (v.witness) {
    o.lines.push_back("a posteriori optimal, but its worst-case loss " + to_string(v.witness_value) +
                      " exceeds the a priori value " + to_string(v.reference_value));
  }
  if (v.kind == ConsistencyKind::kDynamic && v.strong_witness) {
    o.report["strong_witness"] = {format_rule(v.strong_witness->first, s), format_rule(v.strong_witness->second, s)};
  }
  o.lines.push_back("sufficient conditions: " + v.notes.summary);
  return o;
}

Outcome calibrate(const ProblemFile& f, const std::string& rule_text, bool sharp) {
  const ProblemSpace& s = f.space();
  const UpdateRule rule = parse_update_rule(rule_text, s);
  const CalibrationReport r = check_calibration(rule, f.credal);
  Outcome o;
  o.negative = !r.calibrated;
  json classes = json::array();
  std::vector<std::string> failing;
  o.lines.push_back("update rule: " + rule.describe(s));
  o.lines.push_back("equivalence classes: " + format_partition(r.classes.classes, s));
  for (const auto& c : r.per_class) {
    const std::string cell = format_cell(c.cell, s);
    classes.push_back({{"class", cell}, {"tested", c.tested}, {"forward", c.forward}, {"backward", c.backward}});
    if (!c.tested) {
      o.lines.push_back("class " + cell + ": probability zero, not tested");
      continue;
    }
    if (!(c.forward && c.backward)) failing.push_back(cell);
    o.lines.push_back("class " + cell + ": posterior within image " + yes_no(c.forward) + ", image within posterior " +
                      yes_no(c.backward));
  }
  o.report = {{"command", "calibrate"},
              {"rule", rule.describe(s)},
              {"classes", classes},
              {"calibrated", r.calibrated},
              {"semi_calibrated", r.semi_calibrated},
              {"failing_classes", failing}};
  o.lines.push_back(r.calibrated ? "calibrated" : "not calibrated");
  for (const auto& c : failing) o.lines.push_back("failing class: " + c);
  if (sharp) {
    const Sharpness sh = is_sharply_calibrated(rule, f.credal);
    const SharpPartition sp = sharp_partition(f.credal);
    o.negative = o.negative || !sh.sharp;
    o.report["sharply_calibrated"] = sh.sharp;
    o.report["sharpness_witness"] = sh.witness ? json(format_partition(*sh.witness, s)) : json(nullptr);
    o.report["sharp_partition"] = format_partition(sp.partition, s);
    if (sh.sharp) {
      o.lines.push_back("sharply calibrated");
    } else if (sh.witness) {
      o.lines.push_back("not sharply calibrated: conditioning on " + format_partition(*sh.witness, s) +
                        " is calibrated and strictly narrower");
    } else {
      o.lines.push_back("not sharply calibrated");
    }
    o.lines.push_back("sharp partition: " + format_partition(sp.partition, s));
  }
  return o;
}

Outcome oracle(const ProblemFile& f, std::size_t grid) {
  const DecisionProblem dp = f.problem();
  const ValueBounds b = brute_force_value(dp, grid);
  const Rational value = solve_a_priori(dp).value;
  const bool inside = b.lower <= value && value <= b.upper;
  Outcome o;
  o.negative = !inside;
  o.report = {{"command", "oracle"},
              {"grid", grid},
              {"lower", to_string(b.lower)},
              {"upper", to_string(b.upper)},
              {"best_grid_rule", format_rule(b.best_rule, f.space())},
              {"lp_value", to_string(value)},
              {"within_bounds", inside}};
  o.lines.push_back("grid 1/" + std::to_string(grid) + ": value in [" + to_string(b.lower) + ", " + to_string(b.upper) + "]");
  o.lines.push_back("best grid rule: " + format_rule(b.best_rule, f.space()));
  o.lines.push_back("LP value: " + to_string(value) + (inside ? " (within bounds)" : " (OUTSIDE bounds)"));
  return o;
}

Outcome corpus_run(const std::string& dir, std::uint64_t seed) {
  const auto results = run_corpus(load_corpus(dir), seed);
  Outcome o;
  std::size_t passed = 0;
  json failures = json::array();
  for (const auto& r : results) {
    if (r.passed) {
      ++passed;
      continue;
    }
    const std::string where = r.case_id + " #" + std::to_string(r.index) + " " + r.op;
    const std::string got = r.error.empty() ? r.actual.dump() : "error: " + r.error;
    failures.push_back({{"case", r.case_id}, {"index", r.index}, {"op", r.op}, {"expected", r.expected}, {"actual", got}});
    o.lines.push_back("FAIL " + where + ": expected " + r.expected.dump() + ", got " + got);
  }
  o.negative = passed != results.size();
  o.report = {{"command", "corpus run"}, {"passed", passed}, {"total", results.size()}, {"failures", failures}};
  o.lines.push_back("corpus: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " expectations passed");
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact minimax decisions over finitely generated credal sets", "credal"};
  app.require_subcommand(1);
  app.fallthrough();
  bool strict = false;
  bool as_json = false;
  app.add_flag("--strict", strict, "Exit 1 on a negative analysis verdict");
  app.add_flag("--json", as_json, "Print a JSON report");

  std::string file;
  auto* solve_cmd = app.add_subcommand("solve", "A priori minimax value, rule and equilibrium");
  solve_cmd->add_option("file", file, "Problem file")->required();

  auto* posterior_cmd = app.add_subcommand("posterior", "A posteriori minimax value and actions per observation");
  posterior_cmd->add_option("file", file, "Problem file")->required();

  std::string mixture;
  std::string rule;
  auto* saddle_cmd = app.add_subcommand("saddle", "Verify a bookie mixture and rule form an equilibrium");
  saddle_cmd->add_option("file", file, "Problem file")->required();
  saddle_cmd->add_option("--mixture", mixture, "Generator weights, e.g. 0:1/2,1:1/2");
  saddle_cmd->add_option("--rule", rule, "Rule, e.g. G2=3,G3=2");

  auto* hull_cmd_ = app.add_subcommand("hull", "Generators of the rectangular hull");
  hull_cmd_->add_option("file", file, "Problem file")->required();

  std::string property;
  auto* check_cmd = app.add_subcommand("check", "Structural checks: rect, conservative, dilation");
  check_cmd->add_option("property", property)->required()->check(CLI::IsMember({"rect", "conservative", "dilation"}));
  check_cmd->add_option("file", file, "Problem file")->required();

  std::string kind;
  std::size_t budget = 1000;
  auto* consistency_cmd = app.add_subcommand("consistency", "Time, weak time or dynamic consistency");
  consistency_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"time", "weak", "dynamic"}));
  consistency_cmd->add_option("file", file, "Problem file")->required();
  consistency_cmd->add_option("--budget", budget, "Random rules tried by the dynamic falsifier")->capture_default_str();

  std::string update = "standard";
  bool sharp = false;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Calibration of an update rule");
  calibrate_cmd->add_option("file", file, "Problem file")->required();
  calibrate_cmd->add_option("--rule", update, "standard, ignore or partition:a,b|c")->capture_default_str();
  calibrate_cmd->add_flag("--sharp", sharp, "Also test sharp calibration");

  std::size_t grid = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force value bounds on a grid of rules");
  oracle_cmd->add_option("file", file, "Problem file")->required();
  oracle_cmd->add_option("--grid", grid, "Grid resolution")->required()->check(CLI::Range(1, 1000));

  std::string action;
  std::string dir = default_corpus_dir().string();
  auto* corpus_cmd = app.add_subcommand("corpus", "Replay the golden corpus");
  corpus_cmd->add_option("action", action)->required()->check(CLI::IsMember({"run"}));
  corpus_cmd->add_option("--dir", dir, "Corpus directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const std::uint64_t seed = seed_from_env();
    Outcome o;
    if (*corpus_cmd) {
      o = corpus_run(dir, seed);
    } else {
      const ProblemFile f = load_problem(file);
      if (*solve_cmd) o = solve(f);
      if (*posterior_cmd) o = posterior(f);
      if (*saddle_cmd) o = saddle(f, mixture, rule);
      if (*hull_cmd_) o = hull_cmd(f);
      if (*check_cmd) o = check(f, property);
      if (*consistency_cmd) o = consistency(f, kind, budget, seed);
      if (*calibrate_cmd) o = calibrate(f, update, sharp);
      if (*oracle_cmd) o = oracle(f, grid);
    }
    if (as_json) {
      out << o.report.dump(2) << "\n";
    } else {
      for (const auto& line : o.lines) out << line << "\n";
    }
    if (*corpus_cmd) return o.negative ? kExitNegative : kExitOk;
    return strict && o.negative ? kExitNegative : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace credal::cli
