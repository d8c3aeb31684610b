#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "digifix/fixedpoint.hpp"

namespace digifix {

/// A finite window onto an infinite subset of Z with a map rule that may leave the
/// window. Only in-window points are ever fed through the rule.
struct WindowedFamily {
  std::string name;
  /// In-window points, ascending.
  std::vector<std::int64_t> points;
  std::function<std::int64_t(std::int64_t)> map_rule;

  /// {2^n | 1 <= n <= K} with x -> 2x. K must lie in [2, 61].
  static WindowedFamily doubling(int window);

  struct Materialized {
    /// The window plus its images under the rule, usual metric, c_1 adjacency.
    DigitalMetricSpace space;
    /// Indices of the in-window points.
    std::vector<PointIndex> domain;
    /// image_of[x] for x in domain; other entries are unused.
    std::vector<PointIndex> image_of;
  };
  Materialized materialize() const;
};

struct DoublingReport {
  int window = 0;
  std::size_t pairs = 0;
  /// d(f(2^i), f(2^j)) == 2 d(2^i, 2^j) in exact integers for every i < j.
  bool ratio_exact = true;
  /// Smallest observed ratio d(fx,fy)/d(x,y).
  double ratio = 0.0;
  /// d(fx,fy) >= 1.5 d(x,y) checked in exact integers.
  bool relation_holds = true;
  std::vector<std::int64_t> fixed_points;
  /// The same relation through the generic condition checker.
  CheckReport generic;

  bool certified() const { return ratio_exact && relation_holds && fixed_points.empty() && generic.holds; }
};

DoublingReport builtin_doubling_counterexample(int window);

struct InvolutionReport {
  ConditionSpec condition = ConditionSpec::saljah_squared(0.0, 0.9, 0.09);
  double coefficient_sum = 0.0;
  CheckReport check;
  /// Terms at the distinct pair (0, 1).
  PairTerms distinct_pair{};
  std::vector<PointIndex> fixed_points;

  bool certified() const { return coefficient_sum < 1.0 && check.holds && fixed_points.empty(); }
};

/// T(x) = 1 - x on [0,1]_Z, k1 = 0, k2^2 = 0.9, k3^2 = 0.09.
InvolutionReport builtin_involution_counterexample();

struct RandomSpaceParams {
  std::size_t min_points = 1;
  std::size_t max_points = 12;
  std::size_t max_dimension = 3;
  Coord box = 4;  // coordinates drawn from [0, box)
  bool allow_lp1 = true;
  bool allow_lp2 = true;
  bool allow_shortest_path = true;
};

/// A random image inside [0, box)^q with a random c_u adjacency and one of the allowed
/// metrics. Shortest-path spaces are always grown connected.
DigitalMetricSpace random_space(std::mt19937_64& rng, const RandomSpaceParams& params = {});

struct GeneratedMap {
  SelfMap map;
  ConditionSpec condition;
  std::size_t draws = 0;
  std::size_t rejections = 0;
};

/// Rejection sampling: proposes maps (uniform tables, maps with a small image, maps
/// retracting toward a random center) and accepts the first one for which
/// fit_coefficients finds valid coefficients. Throws BudgetExceeded after max_draws.
GeneratedMap generate_contraction(const DigitalMetricSpace& space, ConditionKind family,
                                  std::uint64_t seed, std::size_t max_draws = 10'000);

/// Subsets of `universe` (ascending size, then lexicographic) paired with every listed
/// adjacency parameter and metric.
struct ImagePool {
  std::vector<LatticePoint> universe;
  std::vector<int> u_values{1};
  std::size_t min_points = 1;
  std::size_t max_points = 4;
  /// Table metrics must be sized to `universe`; subsets take the restricted table.
  std::vector<MetricSpec> metrics{LpMetric{1.0}};

  /// All points of [lo, hi]^q.
  static ImagePool box(std::size_t dimension, Coord lo, Coord hi);
};

struct PoolImage {
  DigitalImage image;
  /// Universe indices of the image's points, in image order.
  std::vector<std::size_t> subset;
};

/// The pool's images in canonical order: ascending size, lexicographic point sets,
/// then u in listed order. Values of u above the dimension are skipped.
std::vector<PoolImage> enumerate_images(const ImagePool& pool, bool connected_only = false);

struct SearchBudget {
  /// Spaces with at most this many self-maps are enumerated exhaustively; larger ones
  /// get this many seeded random samples.
  std::uint64_t maps_per_space = 4096;
  std::uint64_t seed = 0;
};

struct Counterexample {
  DigitalMetricSpace space;
  SelfMap map;
  CheckReport report;
};

struct SearchOutcome {
  std::optional<Counterexample> found;
  std::size_t spaces_scanned = 0;
  std::uint64_t maps_scanned = 0;
  std::uint64_t seed = 0;
};

/// First (space, map) in canonical order where `cond` holds but the map has no fixed point.
SearchOutcome search_counterexample(const ConditionSpec& cond, const ImagePool& pool,
                                    const SearchBudget& budget = {},
                                    double tolerance = kDefaultTolerance);

struct WindowCounterexample {
  WindowedFamily family;
  CheckReport report;
};

/// First family whose in-window pairs satisfy `cond` while no in-window point is fixed.
std::optional<WindowCounterexample> search_counterexample(
    const ConditionSpec& cond, std::span<const WindowedFamily> pool,
    double tolerance = kDefaultTolerance);

}  // namespace digifix
