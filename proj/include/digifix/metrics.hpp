#pragma once

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "digifix/lattice.hpp"

namespace digifix {

/// Absolute tolerance applied to every inequality verdict.
inline constexpr double kDefaultTolerance = 1e-9;

/// Minimum separation of a space with no distinct pair.
inline constexpr double kNoSeparation = std::numeric_limits<double>::infinity();

struct LpMetric {
  double p = 2.0;
  friend bool operator==(const LpMetric&, const LpMetric&) = default;
};

struct ShortestPathMetric {
  friend bool operator==(const ShortestPathMetric&, const ShortestPathMetric&) = default;
};

/// Explicit distance matrix indexed by point index.
struct TableMetric {
  std::vector<std::vector<double>> rows;
  friend bool operator==(const TableMetric&, const TableMetric&) = default;
};

using MetricSpec = std::variant<LpMetric, ShortestPathMetric, TableMetric>;

/// (sum |x_i - y_i|^p)^(1/p). Integer arithmetic for p = 1; correctly rounded sqrt for p = 2.
double lp_distance(const LatticePoint& x, const LatticePoint& y, double p);

/// Hop count of a shortest path. Throws PreconditionError when the image is disconnected.
std::int64_t shortest_path_distance(const DigitalImage& img, PointIndex x, PointIndex y);
std::int64_t shortest_path_distance(const DigitalImage& img, const LatticePoint& x,
                                    const LatticePoint& y);

/// A digital image with a validated metric. The full distance matrix is precomputed,
/// so d(i, j) is a table lookup.
class DigitalMetricSpace {
 public:
  DigitalMetricSpace(DigitalImage image, MetricSpec spec);

  const DigitalImage& image() const { return image_; }
  const MetricSpec& spec() const { return spec_; }
  std::size_t size() const { return image_.size(); }

  double d(PointIndex i, PointIndex j) const { return dist_[i * n_ + j]; }

  /// kNoSeparation for a singleton.
  double min_separation() const { return min_sep_; }
  double diameter() const { return diameter_; }

  /// The distance matrix as a table metric; useful for rescaling experiments.
  TableMetric distance_table() const;

 private:
  DigitalImage image_;
  MetricSpec spec_;
  std::size_t n_ = 0;
  std::vector<double> dist_;
  double min_sep_ = kNoSeparation;
  double diameter_ = 0.0;
};

DigitalMetricSpace build_space(DigitalImage img, MetricSpec spec);

inline double min_separation(const DigitalMetricSpace& space) { return space.min_separation(); }
inline double diameter(const DigitalMetricSpace& space) { return space.diameter(); }

struct MetricContinuity {
  bool continuous = true;
  double delta = kNoSeparation;
};

/// Every map on a uniformly discrete space is epsilon-delta continuous, with
/// delta = min_separation as the witness for every epsilon.
MetricContinuity is_metrically_continuous(const DigitalMetricSpace& space, const SelfMap& f);

}  // namespace digifix
