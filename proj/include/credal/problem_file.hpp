#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "credal/calibration.hpp"
#include "credal/minimax.hpp"

namespace credal {

/// In-memory form of a problem file. Rationals travel as "p/q" strings.
struct ProblemFile {
  std::string id;
  CredalSet credal;
  std::optional<LossFunction> loss;
  std::string derivation;

  const ProblemSpace& space() const { return credal.space(); }
  /// Throws ParseError on field "loss" when the file has no loss table.
  DecisionProblem problem() const;

  bool operator==(const ProblemFile& o) const;
};

/// Throws ParseError naming the offending field.
ProblemFile problem_from_json(const nlohmann::json& doc);
nlohmann::json problem_to_json(const ProblemFile& file);

ProblemFile parse_problem(std::string_view text);
std::string serialize_problem(const ProblemFile& file);

/// Reads `path`, falling back to `path` + ".json".
ProblemFile load_problem(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

/// "x=a,x2=b" for deterministic choices, "x=a:1/3+b:2/3" for mixtures,
/// "*=a" for every x not listed. Unlisted x default to uniform.
DecisionRule parse_rule(std::string_view text, const ProblemSpace& space);

/// "a,b|c": cells separated by '|', members by ','.
Partition parse_partition(std::string_view text, const ProblemSpace& space);

/// "standard", "ignore" or "partition:a,b|c".
UpdateRule parse_update_rule(std::string_view text, const ProblemSpace& space);

/// "0:1/2,1:1/2": generator index and weight.
Mixture parse_mixture(std::string_view text, std::size_t num_generators);

/// "(1/2, 1/2)"
std::string format_action(const RandomizedAction& action);
/// "G2→3, G3→2"; randomized entries print as "x→(w0, w1, ...)".
std::string format_rule(const DecisionRule& rule, const ProblemSpace& space);
/// "{a,b}|{c}"
std::string format_partition(const Partition& partition, const ProblemSpace& space);
std::string format_cell(const XSet& cell, const ProblemSpace& space);
std::string format_mixture(const Mixture& mixture);

}  // namespace credal
