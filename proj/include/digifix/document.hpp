#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "digifix/contraction.hpp"

namespace digifix {

/// Malformed document text or schema. `location` is "byte N" for syntax errors and a
/// JSON pointer such as "/map/pairs/2" for schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// A space description: image, metric, and optionally a map and a condition.
///
///   {
///     "dimension": 1,
///     "points": [[0], [1]],
///     "adjacency": {"kind": "c_u", "u": 1},
///     "metric": {"kind": "lp", "p": 1},
///     "map": {"kind": "table", "pairs": [[0, 1], [[1], [0]]]},
///     "condition": {"variant": "quasi", "coefficients": {"c": 0.3}}
///   }
///
/// Map pairs give (source, target), each either a point index or a point tuple.
/// Metric kinds are "lp" (with "p"), "shortest_path", and "table" (with "rows").
struct SpaceDocument {
  DigitalImage image;
  MetricSpec metric;
  std::optional<SelfMap> map;
  std::optional<ConditionSpec> condition;

  DigitalMetricSpace space() const { return build_space(image, metric); }
};

bool operator==(const SpaceDocument& a, const SpaceDocument& b);

/// Throws ParseError for syntax and schema problems, DomainError or PreconditionError
/// for well-formed documents that describe invalid objects.
SpaceDocument parse_document(std::string_view text);
SpaceDocument load_document(const std::filesystem::path& path);

/// Canonical text form; parse_document(serialize_document(doc)) == doc.
std::string serialize_document(const SpaceDocument& doc);

}  // namespace digifix
