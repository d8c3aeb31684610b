#include "digifix/document.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "digifix/error.hpp"

namespace digifix {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "/" + key, "missing required field");
  return *it;
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where, "expected an integer");
  return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  return v.get<double>();
}

const std::string& as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where, "expected a string");
  return v.get_ref<const std::string&>();
}

LatticePoint as_point(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected a bracketed integer list");
  std::vector<Coord> coords;
  for (std::size_t i = 0; i < v.size(); ++i) {
    coords.push_back(as_integer(v[i], where + "/" + std::to_string(i)));
  }
  return LatticePoint(std::move(coords));
}

MetricSpec parse_metric(const json& m) {
  const std::string kind = as_string(require(m, "kind", "/metric"), "/metric/kind");
  if (kind == "lp") return LpMetric{as_number(require(m, "p", "/metric"), "/metric/p")};
  if (kind == "shortest_path") return ShortestPathMetric{};
  if (kind == "table") {
    const auto& rows = require(m, "rows", "/metric");
    if (!rows.is_array()) throw ParseError("/metric/rows", "expected an array of rows");
    TableMetric table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string where = "/metric/rows/" + std::to_string(i);
      if (!rows[i].is_array()) throw ParseError(where, "expected an array");
      std::vector<double> row;
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        row.push_back(as_number(rows[i][j], where + "/" + std::to_string(j)));
      }
      table.rows.push_back(std::move(row));
    }
    return table;
  }
  throw ParseError("/metric/kind", "unknown metric kind '" + kind + "'");
}

PointIndex resolve(const DigitalImage& img, const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const auto idx = v.get<std::int64_t>();
    if (idx < 0 || static_cast<std::size_t>(idx) >= img.size()) {
      throw DomainError(where + ": point index " + std::to_string(idx) + " out of range");
    }
    return static_cast<PointIndex>(idx);
  }
  const auto p = as_point(v, where);
  auto idx = img.index_of(p);
  if (!idx) throw DomainError(where + ": point " + p.to_string() + " is not in the image");
  return *idx;
}

SelfMap parse_map(const json& m, const DigitalImage& img) {
  const std::string kind = as_string(require(m, "kind", "/map"), "/map/kind");
  if (kind != "table") throw ParseError("/map/kind", "unknown map kind '" + kind + "'");
  const auto& pairs = require(m, "pairs", "/map");
  if (!pairs.is_array()) throw ParseError("/map/pairs", "expected an array of pairs");
  std::vector<std::optional<PointIndex>> table(img.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "/map/pairs/" + std::to_string(k);
    if (!pairs[k].is_array() || pairs[k].size() != 2) {
      throw ParseError(where, "expected [source, target]");
    }
    const auto src = resolve(img, pairs[k][0], where + "/0");
    const auto dst = resolve(img, pairs[k][1], where + "/1");
    if (table[src]) throw DomainError(where + ": source " + std::to_string(src) + " mapped twice");
    table[src] = dst;
  }
  std::vector<PointIndex> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i]) {
      throw DomainError("/map/pairs: point " + img.point(i).to_string() + " has no image");
    }
    out.push_back(*table[i]);
  }
  return SelfMap(std::move(out));
}

ConditionSpec parse_condition(const json& c) {
  const std::string variant = as_string(require(c, "variant", "/condition"), "/condition/variant");
  const auto kind = parse_condition_kind(variant);
  if (!kind) throw ParseError("/condition/variant", "unknown variant '" + variant + "'");
  const auto& coeffs = require(c, "coefficients", "/condition");
  if (!coeffs.is_object()) throw ParseError("/condition/coefficients", "expected an object");
  std::vector<std::pair<std::string, double>> named;
  for (const auto& [key, value] : coeffs.items()) {
    named.emplace_back(key, as_number(value, "/condition/coefficients/" + key));
  }
  return ConditionSpec::from_coefficients(*kind, named);
}

}  // namespace

bool operator==(const SpaceDocument& a, const SpaceDocument& b) {
  return a.image.points() == b.image.points() && a.image.u() == b.image.u() &&
         a.metric == b.metric && a.map == b.map && a.condition == b.condition;
}

SpaceDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError("/", "document must be an object");

  const auto q = as_integer(require(doc, "dimension", ""), "/dimension");
  const auto& pts = require(doc, "points", "");
  if (!pts.is_array()) throw ParseError("/points", "expected an array of points");
  std::vector<LatticePoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i);
    auto p = as_point(pts[i], where);
    if (static_cast<std::int64_t>(p.dimension()) != q) {
      throw DomainError(where + ": point has dimension " + std::to_string(p.dimension()) +
                        ", document declares " + std::to_string(q));
    }
    points.push_back(std::move(p));
  }

  const auto& adj = require(doc, "adjacency", "");
  const std::string adj_kind = as_string(require(adj, "kind", "/adjacency"), "/adjacency/kind");
  if (adj_kind != "c_u") throw ParseError("/adjacency/kind", "only c_u adjacency is supported");
  const auto u = as_integer(require(adj, "u", "/adjacency"), "/adjacency/u");

  SpaceDocument out{DigitalImage(std::move(points), static_cast<int>(u)),
                    parse_metric(require(doc, "metric", "")), std::nullopt, std::nullopt};
  (void)out.space();  // validates the metric against the image

  if (auto it = doc.find("map"); it != doc.end()) out.map = parse_map(*it, out.image);
  if (auto it = doc.find("condition"); it != doc.end()) out.condition = parse_condition(*it);
  return out;
}

SpaceDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string serialize_document(const SpaceDocument& doc) {
  json out;
  out["dimension"] = doc.image.dimension();
  out["points"] = json::array();
  for (const auto& p : doc.image.points()) out["points"].push_back(p.coords());
  out["adjacency"] = {{"kind", "c_u"}, {"u", doc.image.u()}};
  std::visit(
      [&out](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LpMetric>) {
          out["metric"] = {{"kind", "lp"}, {"p", m.p}};
        } else if constexpr (std::is_same_v<T, ShortestPathMetric>) {
          out["metric"] = {{"kind", "shortest_path"}};
        } else {
          out["metric"] = {{"kind", "table"}, {"rows", m.rows}};
        }
      },
      doc.metric);
  if (doc.map) {
    json pairs = json::array();
    for (std::size_t i = 0; i < doc.map->size(); ++i) pairs.push_back({i, (*doc.map)(i)});
    out["map"] = {{"kind", "table"}, {"pairs", pairs}};
  }
  if (doc.condition) {
    json coeffs = json::object();
    for (const auto& [k, v] : doc.condition->coefficients()) coeffs[k] = v;
    out["condition"] = {{"variant", std::string(to_string(doc.condition->kind()))},
                        {"coefficients", coeffs}};
  }
  return out.dump(2) + "\n";
}

}  // namespace digifix
