#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "credal/problem_file.hpp"

namespace credal {

/// One recorded output. `provenance` is "published" for values stated with
/// the worked example and "derived" for values computed by `oracle`.
struct Expectation {
  std::string op;
  nlohmann::json args;
  nlohmann::json expected;
  std::string provenance;
  std::string oracle;
};

struct CorpusCase {
  std::string id;
  ProblemFile problem;
  std::vector<Expectation> expectations;
  std::filesystem::path file;
};

/// Directory of the bundled corpus.
std::filesystem::path default_corpus_dir();

/// Throws ParseError naming the file when it is missing or malformed, or
/// when an expectation lacks a valid provenance.
CorpusCase load_case(const std::filesystem::path& file);

/// Every *.json file in `dir`, ordered by id.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& dir = default_corpus_dir());

const CorpusCase& find_case(const std::vector<CorpusCase>& corpus, const std::string& id);

/// Runs the operation named by `e.op` and returns its result in the same
/// JSON shape as `e.expected`. Throws InvalidArgumentError on unknown ops.
nlohmann::json evaluate(const CorpusCase& c, const Expectation& e, std::uint64_t seed = 0);

/// Equality with string arrays compared as multisets.
bool matches(const nlohmann::json& expected, const nlohmann::json& actual);

struct ExpectationResult {
  std::string case_id;
  std::size_t index = 0;
  std::string op;
  nlohmann::json expected;
  nlohmann::json actual;
  /// Message of the exception raised by the operation, if any.
  std::string error;
  bool passed = false;
};

std::vector<ExpectationResult> run_corpus(const std::vector<CorpusCase>& corpus, std::uint64_t seed = 0);

}  // namespace credal
