#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "credal/cli.hpp"
#include "credal/corpus.hpp"
#include "credal/errors.hpp"
#include "credal/minimax.hpp"
#include "credal/problem_file.hpp"
#include "generators.hpp"
#include "printers.hpp"
#include "properties.hpp"

namespace credal {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string corpus_path(const std::string& id) { return std::string(CREDAL_CORPUS_DIR) + "/" + id; }

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

fs::path scratch_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "credal-cli-test";
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream(file) << text;
  return file;
}

TEST(Cli, SolveDoorGame) {
  const Outcome r = run({"solve", corpus_path("monty-hall")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "a priori minimax value: 1/3\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "optimal rule: G2→3, G3→2\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "optimal face vertices: 1 (unique)\n")) << r.out;
}

TEST(Cli, CalibrateStandardOnFullSimplexPosteriors) {
  const Outcome r = run({"calibrate", corpus_path("example-6.6"), "--rule", "standard"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "not calibrated\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "failing class: {0,1}\n")) << r.out;
  EXPECT_EQ(run({"calibrate", corpus_path("example-6.6"), "--rule", "standard", "--strict"}).code, cli::kExitNegative);
}

TEST(Cli, WeakTimeWitnessReplays) {
  const Outcome r = run({"consistency", "weak", corpus_path("example-2.1"), "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("verdict"), "inconsistent");
  // Oracle: the printed witness, reparsed and scored by worst_case_loss,
  // reproduces the printed value and exceeds the a priori value.
  const ProblemFile f = load_problem(corpus_path("example-2.1"));
  // Unlisted x default to uniform, so the empty rule text is (1/2, 1/2) everywhere.
  const DecisionRule w = parse_rule("", f.space());
  ASSERT_EQ(format_rule(w, f.space()), doc.at("witness").get<std::string>());
  const Rational value = worst_case_loss(f.credal, w, *f.loss).value;
  EXPECT_EQ(to_string(value), doc.at("witness_value").get<std::string>());
  EXPECT_GT(value, parse_rational(doc.at("reference_value").get<std::string>()));
}

TEST(Cli, PartitionRuleSyntax) {
  const Outcome r = run({"calibrate", corpus_path("example-6.7"), "--rule", "partition:0|1", "--sharp"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "calibrated")) << r.out;
  EXPECT_EQ(run({"calibrate", corpus_path("example-6.7"), "--rule", "partition:0|7"}).code, cli::kExitInputError);
}

TEST(Cli, EverySubcommandRunsOnTheCorpus) {
  const std::string two = corpus_path("example-2.1");
  const std::vector<std::vector<std::string>> commands = {
      {"solve", two},
      {"posterior", two},
      {"saddle", two, "--mixture", "0:1/2,1:1/2", "--rule", "*=1"},
      {"hull", two},
      {"check", "rect", two},
      {"check", "conservative", two},
      {"check", "dilation", corpus_path("walley-two-coins")},
      {"consistency", "time", corpus_path("example-4.5")},
      {"consistency", "dynamic", corpus_path("example-2.1-extended"), "--budget", "10"},
      {"calibrate", corpus_path("example-6.7"), "--rule", "ignore"},
      {"oracle", two, "--grid", "4"},
      {"corpus", "run", "--dir", CREDAL_CORPUS_DIR},
  };
  for (const auto& args : commands) {
    const Outcome text = run(args);
    EXPECT_EQ(text.code, cli::kExitOk) << args[0] << ": " << text.err;
    EXPECT_FALSE(text.out.empty()) << args[0];
    auto json_args = args;
    json_args.push_back("--json");
    const Outcome json = run(json_args);
    EXPECT_EQ(json.code, cli::kExitOk) << args[0] << ": " << json.err;
    EXPECT_TRUE(nlohmann::json::accept(json.out)) << args[0] << ": " << json.out;
  }
}

TEST(Cli, StrictTurnsNegativeVerdictsIntoExitOne) {
  const std::string two = corpus_path("example-2.1");
  EXPECT_EQ(run({"consistency", "weak", two}).code, cli::kExitOk);
  EXPECT_EQ(run({"consistency", "weak", two, "--strict"}).code, cli::kExitNegative);
  EXPECT_EQ(run({"consistency", "weak", corpus_path("example-4.5"), "--strict"}).code, cli::kExitOk);
  EXPECT_EQ(run({"check", "rect", two, "--strict"}).code, cli::kExitNegative);
  EXPECT_EQ(run({"check", "rect", corpus_path("example-4.5"), "--strict"}).code, cli::kExitOk);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitInputError);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"solve"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"solve", corpus_path("monty-hall"), "--frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"check", "square", corpus_path("monty-hall")}).code, cli::kExitInputError);
  const Outcome missing = run({"solve", corpus_path("no-such-case")});
  EXPECT_EQ(missing.code, cli::kExitInputError);
  EXPECT_TRUE(contains(missing.err, "no-such-case")) << missing.err;
}

TEST(Cli, FileErrorsNameTheField) {
  const fs::path bad_sum = scratch_file("bad-sum.json", R"({
    "x_labels": ["0"], "y_labels": ["0", "1"], "actions": ["0", "1"], "convex": true,
    "generators": [[["1/2", "1/3"]]], "loss": [["0", "1"], ["1", "0"]]})");
  const Outcome r = run({"solve", bad_sum.string()});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_TRUE(contains(r.err, "generators")) << r.err;
  const fs::path bad_rational = scratch_file("bad-rational.json", R"({
    "x_labels": ["0"], "y_labels": ["0", "1"], "actions": ["0", "1"], "convex": true,
    "generators": [[["1/2", "1/2"]]], "loss": [["0", "1/0"], ["1", "0"]]})");
  const Outcome s = run({"solve", bad_rational.string()});
  EXPECT_EQ(s.code, cli::kExitInputError);
  EXPECT_TRUE(contains(s.err, "loss")) << s.err;
  const fs::path no_loss = scratch_file("no-loss.json", R"({
    "x_labels": ["0"], "y_labels": ["0", "1"], "actions": ["0", "1"], "convex": true,
    "generators": [[["1/2", "1/2"]]]})");
  const Outcome t = run({"solve", no_loss.string()});
  EXPECT_EQ(t.code, cli::kExitInputError);
  EXPECT_TRUE(contains(t.err, "loss")) << t.err;
  EXPECT_EQ(run({"check", "rect", no_loss.string()}).code, cli::kExitOk);
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args = {"consistency", "dynamic", corpus_path("example-2.1-extended"), "--budget", "5"};
  ASSERT_EQ(setenv("CREDAL_SEED", "17", 1), 0);
  const Outcome seeded = run(args);
  ASSERT_EQ(setenv("CREDAL_SEED", "seventeen", 1), 0);
  const Outcome bad = run(args);
  ASSERT_EQ(unsetenv("CREDAL_SEED"), 0);
  EXPECT_EQ(seeded.code, cli::kExitOk) << seeded.err;
  EXPECT_EQ(bad.code, cli::kExitInputError);
  EXPECT_TRUE(contains(bad.err, "CREDAL_SEED")) << bad.err;
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& c : load_corpus(CREDAL_CORPUS_DIR)) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"hull", c.file.string(), "--json"},
          std::vector<std::string>{"consistency", "dynamic", c.file.string(), "--budget", "20"}}) {
      const Outcome a = run(args);
      const Outcome b = run(args);
      EXPECT_EQ(a.code, b.code) << c.id;
      EXPECT_EQ(a.out, b.out) << c.id << " " << args[0];
    }
  }
}

TEST(ProblemFileRoundTrip, CorpusFiles) {
  for (const auto& c : load_corpus(CREDAL_CORPUS_DIR)) {
    const std::string text = serialize_problem(c.problem);
    const ProblemFile back = parse_problem(text);
    EXPECT_EQ(back, c.problem) << c.id;
    EXPECT_EQ(serialize_problem(back), text) << c.id;
  }
}

TEST(ProblemFileRoundTrip, RandomFiles) {
  testing::Gen gen(testing::kSeed + 40);
  for (int i = 0; i < testing::kInstances; ++i) {
    const SpacePtr s = gen.space();
    ProblemFile f{"random-" + std::to_string(i), gen.credal(s, gen.coin()), std::nullopt, gen.coin() ? "drawn" : ""};
    if (gen.coin()) f.loss = gen.loss(s);
    const std::string text = serialize_problem(f);
    const ProblemFile back = parse_problem(text);
    EXPECT_EQ(back, f) << "instance " << i << "\n" << text;
    EXPECT_EQ(serialize_problem(back), text) << "instance " << i;
  }
}

TEST(ParseHelpers, Syntax) {
  const ProblemFile f = load_problem(corpus_path("monty-hall"));
  EXPECT_EQ(format_rule(parse_rule("G2=3,G3=2", f.space()), f.space()), "G2→3, G3→2");
  EXPECT_EQ(format_rule(parse_rule("*=1", f.space()), f.space()), "G2→1, G3→1");
  EXPECT_EQ(format_rule(parse_rule("G2=1:1/3+2:2/3,*=3", f.space()), f.space()), "G2→(1/3, 2/3, 0), G3→3");
  EXPECT_THROW(parse_rule("G4=1", f.space()), ParseError);
  EXPECT_THROW(parse_rule("G2=1:1/3", f.space()), ParseError);
  EXPECT_EQ(format_partition(parse_partition("G2|G3", f.space()), f.space()), "{G2}|{G3}");
  EXPECT_THROW(parse_partition("G2", f.space()), ParseError);
  EXPECT_EQ(format_mixture(parse_mixture("0:3/4,1:1/4", 2)), "0:3/4, 1:1/4");
  EXPECT_THROW(parse_mixture("0:1/2", 2), ParseError);
  EXPECT_THROW(parse_update_rule("bayes", f.space()), ParseError);
}

}  // namespace
}  // namespace credal
