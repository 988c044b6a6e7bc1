#include "credal/problem_file.hpp"

#include <fstream>
#include <sstream>

#include "credal/errors.hpp"

namespace credal {

using nlohmann::json;

DecisionProblem ProblemFile::problem() const {
  if (!loss) throw ParseError("loss", "this command needs a loss table");
  return DecisionProblem(credal, *loss);
}

bool ProblemFile::operator==(const ProblemFile& o) const {
  if (id != o.id || derivation != o.derivation || !(space() == o.space())) return false;
  if (credal.convex() != o.credal.convex() || credal.generators() != o.credal.generators()) return false;
  if (loss.has_value() != o.loss.has_value()) return false;
  return !loss || loss->matrix() == o.loss->matrix();
}

namespace {

std::string field_at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Rational rational_from(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(field, e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(field, "expected a rational string such as \"1/3\"");
}

std::vector<std::string> labels_from(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(key, "missing");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(key, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].is_string()) {
      out.push_back(arr[i].get<std::string>());
    } else if (arr[i].is_number_integer()) {
      out.push_back(std::to_string(arr[i].get<long>()));
    } else {
      throw ParseError(field_at(key, i), "labels must be strings");
    }
  }
  return out;
}

RationalMatrix matrix_from(const json& m, std::size_t rows, std::size_t cols, const std::string& field) {
  if (!m.is_array() || m.size() != rows) {
    throw ParseError(field, "expected " + std::to_string(rows) + " rows");
  }
  RationalMatrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = field_at(field, r);
    if (!m[r].is_array() || m[r].size() != cols) throw ParseError(rf, "expected " + std::to_string(cols) + " entries");
    RationalVector row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(rational_from(m[r][c], field_at(rf, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix_to_json(const RationalMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

template <typename F>
std::size_t label_index(F&& lookup, std::string_view label, const std::string& field) {
  try {
    return lookup(label);
  } catch (const InvalidArgumentError& e) {
    throw ParseError(field, e.what());
  }
}

}  // namespace

ProblemFile problem_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "problem file must be a JSON object");
  SpacePtr space;
  try {
    space = make_space(labels_from(doc, "x_labels"), labels_from(doc, "y_labels"), labels_from(doc, "actions"));
  } catch (const InvalidArgumentError& e) {
    throw ParseError("labels", e.what());
  }

  bool convex = true;
  if (doc.contains("convex")) {
    if (!doc.at("convex").is_boolean()) throw ParseError("convex", "expected true or false");
    convex = doc.at("convex").get<bool>();
  }

  if (!doc.contains("generators")) throw ParseError("generators", "missing");
  const json& gens = doc.at("generators");
  if (!gens.is_array() || gens.empty()) throw ParseError("generators", "expected a nonempty array of matrices");
  std::vector<JointDistribution> dists;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string f = field_at("generators", i);
    const RationalMatrix m = matrix_from(gens[i], space->num_x(), space->num_y(), f);
    try {
      dists.push_back(JointDistribution::from_matrix(space, m));
    } catch (const Error& e) {
      throw ParseError(f, e.what());
    }
  }

  std::optional<LossFunction> loss;
  if (doc.contains("loss") && !doc.at("loss").is_null()) {
    loss.emplace(space, matrix_from(doc.at("loss"), space->num_y(), space->num_actions(), "loss"));
  }

  std::string id;
  if (doc.contains("id")) {
    if (!doc.at("id").is_string()) throw ParseError("id", "expected a string");
    id = doc.at("id").get<std::string>();
  }
  std::string derivation;
  if (doc.contains("derivation") && doc.at("derivation").is_string()) derivation = doc.at("derivation").get<std::string>();

  return ProblemFile{std::move(id), CredalSet(space, std::move(dists), convex), std::move(loss), std::move(derivation)};
}

json problem_to_json(const ProblemFile& file) {
  json out;
  if (!file.id.empty()) out["id"] = file.id;
  out["x_labels"] = file.space().x_labels();
  out["y_labels"] = file.space().y_labels();
  out["actions"] = file.space().action_labels();
  out["convex"] = file.credal.convex();
  json gens = json::array();
  const std::size_t ny = file.space().num_y();
  for (const auto& g : file.credal.generators()) {
    RationalMatrix m(file.space().num_x(), RationalVector(ny));
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (std::size_t y = 0; y < ny; ++y) m[x][y] = g.at(x, y);
    }
    gens.push_back(matrix_to_json(m));
  }
  out["generators"] = std::move(gens);
  if (file.loss) out["loss"] = matrix_to_json(file.loss->matrix());
  if (!file.derivation.empty()) out["derivation"] = file.derivation;
  return out;
}

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(doc);
}

std::string serialize_problem(const ProblemFile& file) { return problem_to_json(file).dump(2) + "\n"; }

json load_json(const std::filesystem::path& path) {
  std::filesystem::path actual = path;
  if (!std::filesystem::exists(actual)) {
    std::filesystem::path with_ext = path;
    with_ext += ".json";
    if (!std::filesystem::exists(with_ext)) throw ParseError(path.string(), "no such file");
    actual = with_ext;
  }
  std::ifstream in(actual);
  if (!in) throw ParseError(actual.string(), "cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(actual.string(), std::string("malformed JSON: ") + e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) { return problem_from_json(load_json(path)); }

DecisionRule parse_rule(std::string_view text, const ProblemSpace& space) {
  const std::size_t na = space.num_actions();
  std::vector<std::optional<RandomizedAction>> per_x(space.num_x());
  std::optional<RandomizedAction> fallback;
  auto x_of = [&](std::string_view l) { return space.x_index(l); };
  auto a_of = [&](std::string_view l) { return space.action_index(l); };

  for (auto entry : split(text, ',')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string_view::npos) throw ParseError("rule", "entry '" + std::string(entry) + "' lacks '='");
    const std::string_view lhs = trim(entry.substr(0, eq));
    const std::string_view rhs = trim(entry.substr(eq + 1));

    RationalVector w(na);
    if (rhs.find(':') == std::string_view::npos) {
      w[label_index(a_of, rhs, "rule")] = 1;
    } else {
      for (auto part : split(rhs, '+')) {
        part = trim(part);
        const std::size_t colon = part.find(':');
        if (colon == std::string_view::npos) throw ParseError("rule", "mixture term '" + std::string(part) + "' lacks ':'");
        const std::size_t a = label_index(a_of, trim(part.substr(0, colon)), "rule");
        try {
          w[a] += parse_rational(trim(part.substr(colon + 1)));
        } catch (const ParseError& e) {
          throw ParseError("rule", e.what());
        }
      }
    }
    std::optional<RandomizedAction> action;
    try {
      action.emplace(std::move(w));
    } catch (const InvalidArgumentError& e) {
      throw ParseError("rule", e.what());
    }
    if (lhs == "*") {
      fallback = std::move(action);
    } else {
      const std::size_t x = label_index(x_of, lhs, "rule");
      if (per_x[x]) throw ParseError("rule", "x '" + std::string(lhs) + "' listed twice");
      per_x[x] = std::move(action);
    }
  }

  std::vector<RandomizedAction> out;
  for (auto& a : per_x) out.push_back(a ? *a : fallback ? *fallback : RandomizedAction::uniform(na));
  return DecisionRule(std::move(out));
}

Partition parse_partition(std::string_view text, const ProblemSpace& space) {
  std::vector<XSet> cells;
  auto x_of = [&](std::string_view l) { return space.x_index(l); };
  for (auto cell_text : split(text, '|')) {
    XSet cell;
    for (auto member : split(cell_text, ',')) {
      member = trim(member);
      if (member.empty()) continue;
      cell.push_back(label_index(x_of, member, "partition"));
    }
    cells.push_back(std::move(cell));
  }
  try {
    return Partition(space.num_x(), std::move(cells));
  } catch (const InvalidArgumentError& e) {
    throw ParseError("partition", e.what());
  }
}

UpdateRule parse_update_rule(std::string_view text, const ProblemSpace& space) {
  text = trim(text);
  if (text == "standard") return UpdateRule::standard();
  if (text == "ignore") return UpdateRule::ignore();
  constexpr std::string_view prefix = "partition:";
  if (text.substr(0, prefix.size()) == prefix) return UpdateRule::partition(parse_partition(text.substr(prefix.size()), space));
  throw ParseError("rule", "expected standard, ignore or partition:<cells>, got '" + std::string(text) + "'");
}

Mixture parse_mixture(std::string_view text, std::size_t num_generators) {
  Mixture out;
  for (auto entry : split(text, ',')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const std::size_t colon = entry.find(':');
    if (colon == std::string_view::npos) throw ParseError("mixture", "entry '" + std::string(entry) + "' lacks ':'");
    const std::string idx(trim(entry.substr(0, colon)));
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(idx, &used);
      if (used != idx.size()) throw std::invalid_argument(idx);
    } catch (const std::exception&) {
      throw ParseError("mixture", "generator index '" + idx + "' is not a number");
    }
    if (i >= num_generators) throw ParseError("mixture", "generator index " + idx + " out of range");
    try {
      out.emplace_back(i, parse_rational(trim(entry.substr(colon + 1))));
    } catch (const ParseError& e) {
      throw ParseError("mixture", e.what());
    }
  }
  if (out.empty()) throw ParseError("mixture", "empty");
  Rational total = 0;
  for (const auto& [i, w] : out) {
    if (w < 0) throw ParseError("mixture", "negative weight for generator " + std::to_string(i));
    total += w;
  }
  if (total != 1) throw ParseError("mixture", "weights sum to " + to_string(total) + ", not 1");
  return out;
}

std::string format_action(const RandomizedAction& action) { return to_string(action.weights()); }

std::string format_rule(const DecisionRule& rule, const ProblemSpace& space) {
  std::string out;
  for (std::size_t x = 0; x < rule.size(); ++x) {
    if (x > 0) out += ", ";
    out += space.x_labels()[x] + "→";
    out += rule[x].deterministic() ? space.action_labels()[rule[x].action()] : format_action(rule[x]);
  }
  return out;
}

std::string format_cell(const XSet& cell, const ProblemSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i > 0) out += ",";
    out += space.x_labels()[cell[i]];
  }
  return out + "}";
}

std::string format_partition(const Partition& partition, const ProblemSpace& space) {
  std::string out;
  for (std::size_t c = 0; c < partition.cells().size(); ++c) {
    if (c > 0) out += "|";
    out += format_cell(partition.cells()[c], space);
  }
  return out;
}

std::string format_mixture(const Mixture& mixture) {
  std::string out;
  for (std::size_t i = 0; i < mixture.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(mixture[i].first) + ":" + to_string(mixture[i].second);
  }
  return out;
}

}  // namespace credal
