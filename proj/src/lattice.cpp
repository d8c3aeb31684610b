#include "digifix/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "digifix/error.hpp"

namespace digifix {

LatticePoint::LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}

LatticePoint::LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ']';
  return os.str();
}

bool cu_adjacent(const LatticePoint& x, const LatticePoint& y, int u) {
  if (x.dimension() != y.dimension()) {
    throw DomainError("cu_adjacent: dimension mismatch (" + std::to_string(x.dimension()) +
                      " vs " + std::to_string(y.dimension()) + ")");
  }
  if (u < 1 || static_cast<std::size_t>(u) > x.dimension()) {
    throw DomainError("cu_adjacent: u must satisfy 1 <= u <= " + std::to_string(x.dimension()));
  }
  int unit_diffs = 0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    const Coord delta = x[i] - y[i];
    if (delta == 0) continue;
    if (delta != 1 && delta != -1) return false;
    ++unit_diffs;
  }
  return unit_diffs >= 1 && unit_diffs <= u;
}

// ---------------------------------------------------------------------------
// SelfMap

SelfMap::SelfMap(std::vector<PointIndex> table) : table_(std::move(table)) {
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= table_.size()) {
      throw DomainError("SelfMap: entry " + std::to_string(i) + " maps to " +
                        std::to_string(table_[i]) + ", outside [0, " +
                        std::to_string(table_.size()) + ")");
    }
  }
}

SelfMap SelfMap::identity(std::size_t n) {
  std::vector<PointIndex> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return SelfMap(std::move(t));
}

SelfMap SelfMap::constant(std::size_t n, PointIndex value) {
  return SelfMap(std::vector<PointIndex>(n, value));
}

SelfMap SelfMap::from_numeral(std::uint64_t rank, std::size_t n) {
  std::vector<PointIndex> t(n);
  for (std::size_t i = n; i-- > 0;) {
    t[i] = static_cast<PointIndex>(rank % n);
    rank /= n;
  }
  return SelfMap(std::move(t));
}

std::size_t SelfMap::image_size() const {
  std::vector<bool> hit(table_.size(), false);
  std::size_t count = 0;
  for (auto v : table_) {
    if (!hit[v]) {
      hit[v] = true;
      ++count;
    }
  }
  return count;
}

std::optional<PointIndex> SelfMap::constant_value() const {
  if (table_.empty() || image_size() != 1) return std::nullopt;
  return table_.front();
}

SelfMap compose(const SelfMap& g, const SelfMap& f) {
  if (g.size() != f.size()) throw DomainError("compose: maps on different images");
  std::vector<PointIndex> t(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) t[i] = g(f(i));
  return SelfMap(std::move(t));
}

bool commute(const SelfMap& f, const SelfMap& g) {
  if (g.size() != f.size()) throw DomainError("commute: maps on different images");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f(g(i)) != g(f(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DigitalImage

namespace {

std::size_t check_points(const std::vector<LatticePoint>& points) {
  if (points.empty()) throw DomainError("DigitalImage: point set is empty");
  const std::size_t q = points.front().dimension();
  if (q == 0) throw DomainError("DigitalImage: dimension must be >= 1");
  for (const auto& p : points) {
    if (p.dimension() != q) {
      throw DomainError("DigitalImage: point " + p.to_string() + " has dimension " +
                        std::to_string(p.dimension()) + ", expected " + std::to_string(q));
    }
  }
  return q;
}

}  // namespace

DigitalImage::DigitalImage(std::vector<LatticePoint> points, int u)
    : points_(std::move(points)), dimension_(check_points(points_)), u_(u) {
  if (u < 1 || static_cast<std::size_t>(u) > dimension_) {
    throw DomainError("DigitalImage: u = " + std::to_string(u) + " outside [1, " +
                      std::to_string(dimension_) + "]");
  }
  build_adjacency([u](const LatticePoint& a, const LatticePoint& b) { return cu_adjacent(a, b, u); });
}

DigitalImage::DigitalImage(std::vector<LatticePoint> points, AdjacencyRelation relation)
    : points_(std::move(points)), dimension_(check_points(points_)), u_(0) {
  build_adjacency(relation);
}

DigitalImage DigitalImage::interval(Coord lo, Coord hi) {
  if (hi < lo) throw DomainError("interval: hi < lo");
  std::vector<LatticePoint> pts;
  for (Coord v = lo; v <= hi; ++v) pts.push_back(LatticePoint{v});
  return DigitalImage(std::move(pts), 1);
}

void DigitalImage::build_adjacency(const AdjacencyRelation& rel) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto [it, inserted] = index_.emplace(points_[i], i);
    if (!inserted) {
      throw DomainError("DigitalImage: duplicate point " + points_[i].to_string());
    }
  }
  adjacency_.assign(points_.size(), {});
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (rel(points_[i], points_[j])) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::optional<PointIndex> DigitalImage::index_of(const LatticePoint& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointIndex DigitalImage::require_index(const LatticePoint& p) const {
  auto idx = index_of(p);
  if (!idx) throw PreconditionError("point " + p.to_string() + " is not in the image");
  return *idx;
}

bool DigitalImage::adjacent(PointIndex i, PointIndex j) const {
  const auto& list = adjacency_.at(i);
  return std::binary_search(list.begin(), list.end(), j);
}

std::vector<LatticePoint> neighbors(const DigitalImage& img, const LatticePoint& x) {
  std::vector<LatticePoint> out;
  for (auto j : img.neighbor_indices(img.require_index(x))) out.push_back(img.point(j));
  return out;
}

std::vector<std::optional<std::size_t>> bfs_distances(const DigitalImage& img,
                                                      PointIndex source) {
  std::vector<std::optional<std::size_t>> dist(img.size());
  std::deque<PointIndex> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : img.neighbor_indices(v)) {
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<PointIndex>> components(const DigitalImage& img) {
  std::vector<bool> seen(img.size(), false);
  std::vector<std::vector<PointIndex>> parts;
  for (PointIndex s = 0; s < img.size(); ++s) {
    if (seen[s]) continue;
    std::vector<PointIndex> part;
    const auto dist = bfs_distances(img, s);
    for (PointIndex v = 0; v < img.size(); ++v) {
      if (dist[v]) {
        seen[v] = true;
        part.push_back(v);
      }
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_connected(const DigitalImage& img) {
  const auto dist = bfs_distances(img, 0);
  return std::all_of(dist.begin(), dist.end(), [](const auto& d) { return d.has_value(); });
}

std::optional<DigitalPath> find_path(const DigitalImage& img, PointIndex x, PointIndex y) {
  if (x >= img.size() || y >= img.size()) {
    throw PreconditionError("find_path: point index out of range");
  }
  // Distances to y; then walk greedily from x through the smallest-index neighbor
  // that is one step closer. This yields the lexicographically smallest shortest path.
  const auto to_target = bfs_distances(img, y);
  if (!to_target[x]) return std::nullopt;
  DigitalPath path{{x}};
  PointIndex cur = x;
  while (cur != y) {
    for (auto w : img.neighbor_indices(cur)) {
      if (to_target[w] && *to_target[w] + 1 == *to_target[cur]) {
        cur = w;
        break;
      }
    }
    path.vertices.push_back(cur);
  }
  return path;
}

std::optional<DigitalPath> find_path(const DigitalImage& img, const LatticePoint& x,
                                     const LatticePoint& y) {
  return find_path(img, img.require_index(x), img.require_index(y));
}

ContinuityReport is_digitally_continuous(const DigitalImage& img, const SelfMap& f) {
  if (f.size() != img.size()) {
    throw PreconditionError("is_digitally_continuous: map size " + std::to_string(f.size()) +
                            " != image size " + std::to_string(img.size()));
  }
  ContinuityReport report;
  for (PointIndex x = 0; x < img.size(); ++x) {
    for (auto y : img.neighbor_indices(x)) {
      if (y < x) continue;
      ++report.edges_checked;
      const auto fx = f(x);
      const auto fy = f(y);
      if (fx != fy && !img.adjacent(fx, fy)) {
        report.continuous = false;
        report.witness = {x, y};
        return report;
      }
    }
  }
  return report;
}

}  // namespace digifix
