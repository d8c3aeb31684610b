#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace digifix {

using Coord = std::int64_t;
using PointIndex = std::size_t;

/// A point of Z^q. Coordinates are exact integers.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords);
  LatticePoint(std::initializer_list<Coord> coords);

  std::size_t dimension() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coord>& coords() const { return coords_; }

  std::string to_string() const;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Coord> coords_;
};

/// c_u adjacency: x != y, at most u coordinates differ by exactly 1, the rest are equal.
bool cu_adjacent(const LatticePoint& x, const LatticePoint& y, int u);

/// Symmetric, irreflexive relation on points; used for non-c_u images.
using AdjacencyRelation = std::function<bool(const LatticePoint&, const LatticePoint&)>;

/// A self-map of an image, stored as an index table: point i maps to table[i].
class SelfMap {
 public:
  SelfMap() = default;
  explicit SelfMap(std::vector<PointIndex> table);

  static SelfMap identity(std::size_t n);
  static SelfMap constant(std::size_t n, PointIndex value);
  /// Map whose table is the base-n numeral `rank`, table[0] being the most significant digit.
  static SelfMap from_numeral(std::uint64_t rank, std::size_t n);

  std::size_t size() const { return table_.size(); }
  PointIndex operator()(PointIndex i) const { return table_[i]; }
  std::span<const PointIndex> table() const { return table_; }

  /// Number of distinct output values.
  std::size_t image_size() const;
  std::optional<PointIndex> constant_value() const;

  friend bool operator==(const SelfMap&, const SelfMap&) = default;

 private:
  std::vector<PointIndex> table_;
};

/// (g ∘ f)(x) = g(f(x)).
SelfMap compose(const SelfMap& g, const SelfMap& f);

/// True iff f(g(x)) == g(f(x)) for every x.
bool commute(const SelfMap& f, const SelfMap& g);

struct DigitalPath {
  std::vector<PointIndex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct ContinuityReport {
  bool continuous = true;
  /// First adjacent pair (x, y), x < y, whose images are neither equal nor adjacent.
  std::optional<std::pair<PointIndex, PointIndex>> witness;
  std::size_t edges_checked = 0;
};

/// A finite, non-empty set of distinct points of Z^q with an adjacency relation.
/// Points are interned in construction order: point(i) has index i.
class DigitalImage {
 public:
  DigitalImage(std::vector<LatticePoint> points, int u);
  DigitalImage(std::vector<LatticePoint> points, AdjacencyRelation relation);

  /// The digital interval [lo, hi]_Z with c_1 adjacency.
  static DigitalImage interval(Coord lo, Coord hi);

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return dimension_; }
  /// Adjacency parameter; 0 for an image built from a custom relation.
  int u() const { return u_; }

  const LatticePoint& point(PointIndex i) const { return points_.at(i); }
  const std::vector<LatticePoint>& points() const { return points_; }
  std::optional<PointIndex> index_of(const LatticePoint& p) const;
  PointIndex require_index(const LatticePoint& p) const;

  bool adjacent(PointIndex i, PointIndex j) const;
  /// Neighbor indices, ascending.
  std::span<const PointIndex> neighbor_indices(PointIndex i) const { return adjacency_.at(i); }

 private:
  void build_adjacency(const AdjacencyRelation& rel);

  std::vector<LatticePoint> points_;
  std::size_t dimension_ = 0;
  int u_ = 0;
  std::map<LatticePoint, PointIndex> index_;
  std::vector<std::vector<PointIndex>> adjacency_;
};

std::vector<LatticePoint> neighbors(const DigitalImage& img, const LatticePoint& x);

/// Maximal connected subsets, each sorted ascending, ordered by smallest member.
std::vector<std::vector<PointIndex>> components(const DigitalImage& img);
bool is_connected(const DigitalImage& img);

/// BFS hop distances from `source`; unreachable points get std::nullopt.
std::vector<std::optional<std::size_t>> bfs_distances(const DigitalImage& img, PointIndex source);

/// Shortest path from x to y; among shortest paths the lexicographically smallest
/// index sequence. Absent when x and y lie in different components.
std::optional<DigitalPath> find_path(const DigitalImage& img, PointIndex x, PointIndex y);
std::optional<DigitalPath> find_path(const DigitalImage& img, const LatticePoint& x,
                                     const LatticePoint& y);

/// Adjacent points must map to equal or adjacent points.
ContinuityReport is_digitally_continuous(const DigitalImage& img, const SelfMap& f);

}  // namespace digifix
