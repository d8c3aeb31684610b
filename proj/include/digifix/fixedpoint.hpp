#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "digifix/contraction.hpp"

namespace digifix {

/// Default cap on |X|^|X| for exhaustive map enumeration (8^8).
inline constexpr std::uint64_t kDefaultMapBudget = 16'777'216;

struct OrbitResult {
  /// x_0, x_1 = f(x_0), ...
  std::vector<PointIndex> orbit;
  /// Smallest N with x_{N+1} = x_N, when observed.
  std::optional<std::size_t> constancy_index;
  std::optional<PointIndex> fixed_point;
  std::size_t iterations = 0;
};

struct FppReport {
  bool has_fpp = true;
  /// A digitally continuous map without fixed points, when the FPP fails.
  std::optional<SelfMap> witness;
  std::uint64_t maps_enumerated = 0;
};

struct UniqueFixedPoint {
  PointIndex point;
  OrbitResult orbit;
};

std::vector<PointIndex> fixed_points(const DigitalMetricSpace& space, const SelfMap& f);
std::vector<PointIndex> fixed_points(const SelfMap& f);

/// Iterates f from x0 until two consecutive terms coincide or max_iter steps are taken.
/// A max_iter of 0 selects the default 4|X|.
OrbitResult picard_orbit(const DigitalMetricSpace& space, const SelfMap& f, PointIndex x0,
                         std::size_t max_iter = 0);

/// For banach, quasi, sum_type and rational conditions: verifies the condition, runs the
/// Picard orbit from index 0, and certifies uniqueness with an exhaustive scan.
/// Throws PreconditionError if the condition fails or the kind is unsupported, and
/// InternalInconsistency if the certificate does not match the orbit limit.
UniqueFixedPoint solve_unique_fixed_point(const DigitalMetricSpace& space, const SelfMap& f,
                                          const ConditionSpec& cond,
                                          double tolerance = kDefaultTolerance);

/// |X|^|X|, saturating at UINT64_MAX.
std::uint64_t map_count(std::size_t n);

/// Enumerates every self-map in numeral order and reports whether all digitally
/// continuous ones have a fixed point. Stops at the first counterexample.
FppReport has_fpp(const DigitalImage& img, std::uint64_t budget = kDefaultMapBudget);

/// True iff f is constant. Requires that f satisfy (G1) with coefficient a and that
/// a < constant_collapse_bound(space); otherwise PreconditionError.
bool check_constant_collapse(const DigitalMetricSpace& space, const SelfMap& f, double a,
                             double tolerance = kDefaultTolerance);

}  // namespace digifix
