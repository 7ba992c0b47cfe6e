#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ghostcheck/curves.hpp"
#include "ghostcheck/factory.hpp"
#include "ghostcheck/laurent.hpp"
#include "ghostcheck/localmodel.hpp"
#include "ghostcheck/obstruction.hpp"

namespace ghostcheck {

using Json = nlohmann::ordered_json;

// Every from_json_* function throws Error{InvalidInput} whose message starts
// with the JSON path of the offending field, e.g. "$.points[2].delta[0]".

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& path);

Json to_json(const QVector& v);
QVector qvector_from_json(const Json& j, const std::string& path);

/// List of {"exps": [...], "coeff": "a/b"} in graded-lex order.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& path);

Json to_json(const CurveModel& model);
CurveModel curve_model_from_json(const Json& j, const std::string& path);

Json to_json(const AttachmentPoint& p);
AttachmentPoint attachment_from_json(const Json& j, const std::string& path);

/// {"genus": g, "ambient_dim": N, "points": [{"delta": [...], "deriv": [...]}]}
Json to_json(const ObstructionProblem& prob);
ObstructionProblem problem_from_json(const Json& j, const std::string& path = "$");

/// {"curve_model": {...}, "attachments": [...], "derivs": [[...]]}
Json to_json(const CurveInstance& inst);
CurveInstance curve_instance_from_json(const Json& j, const std::string& path = "$");

struct LocalModelInput {
  int m = 0;
  std::vector<LaurentPoly> G;
};

Json to_json(const LocalModelInput& lm);
LocalModelInput local_model_from_json(const Json& j, const std::string& path);

inline constexpr int kProblemFileVersion = 1;

struct ProblemComponent {
  std::optional<std::string> name;
  std::variant<ObstructionProblem, CurveInstance> source;

  ObstructionProblem resolve() const;
};

struct ProblemFile {
  int version = kProblemFileVersion;
  std::vector<ProblemComponent> components;
  std::optional<LocalModelInput> local_model;
};

/// Accepts a single raw problem, a single curve-model problem, or
/// {"components": [...]}, each with an optional "local_model" section.
/// A file holding only a local-model section ({"m", "G"} or {"local_model"})
/// yields no components.
ProblemFile problem_file_from_json(const Json& j);
Json to_json(const ProblemFile& file);

/// Parses JSON text; syntax errors report line and column.
Json parse_json_text(std::string_view text, const std::string& source_name);

/// Reads and parses a file. Throws Error{InvalidInput} if unreadable.
Json read_json_file(const std::string& path);

Json to_json(const TheoremVerdict& v);
Json to_json(const CorollaryVerdict& v);
Json to_json(const StratumSpec& spec);
StratumSpec stratum_from_json(const Json& j, const std::string& path = "$");

}  // namespace ghostcheck
