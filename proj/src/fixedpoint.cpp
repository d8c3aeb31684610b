#include "digifix/fixedpoint.hpp"

#include <limits>
#include <string>

#include "digifix/error.hpp"

namespace digifix {

std::vector<PointIndex> fixed_points(const SelfMap& f) {
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f(x) == x) out.push_back(x);
  }
  return out;
}

std::vector<PointIndex> fixed_points(const DigitalMetricSpace& space, const SelfMap& f) {
  if (f.size() != space.size()) throw PreconditionError("fixed_points: map size does not match space");
  return fixed_points(f);
}

OrbitResult picard_orbit(const DigitalMetricSpace& space, const SelfMap& f, PointIndex x0,
                         std::size_t max_iter) {
  if (f.size() != space.size()) throw PreconditionError("picard_orbit: map size does not match space");
  if (x0 >= space.size()) throw PreconditionError("picard_orbit: start point out of range");
  if (max_iter == 0) max_iter = 4 * space.size();

  OrbitResult result;
  result.orbit.push_back(x0);
  PointIndex cur = x0;
  for (std::size_t i = 0; i < max_iter; ++i) {
    const PointIndex next = f(cur);
    result.orbit.push_back(next);
    ++result.iterations;
    if (next == cur) {
      result.constancy_index = i;
      result.fixed_point = cur;
      break;
    }
    cur = next;
  }
  return result;
}

UniqueFixedPoint solve_unique_fixed_point(const DigitalMetricSpace& space, const SelfMap& f,
                                          const ConditionSpec& cond, double tolerance) {
  switch (cond.kind()) {
    case ConditionKind::banach:
    case ConditionKind::quasi:
    case ConditionKind::sum_type:
    case ConditionKind::rational:
      break;
    default:
      throw PreconditionError("solve_unique_fixed_point: " + std::string(to_string(cond.kind())) +
                              " carries no fixed-point guarantee");
  }
  const auto report = check_condition(space, f, cond, tolerance);
  if (!report.holds) {
    throw PreconditionError("solve_unique_fixed_point: map violates " + cond.describe() +
                            " at pair (" + std::to_string(report.witness->first) + ", " +
                            std::to_string(report.witness->second) + ")");
  }
  auto orbit = picard_orbit(space, f, 0);
  const auto fps = fixed_points(space, f);
  if (!orbit.fixed_point) {
    throw InternalInconsistency("solve_unique_fixed_point: orbit from 0 did not become constant");
  }
  if (fps.size() != 1 || fps.front() != *orbit.fixed_point) {
    throw InternalInconsistency("solve_unique_fixed_point: " + std::to_string(fps.size()) +
                                " fixed points found under " + cond.describe());
  }
  return {*orbit.fixed_point, std::move(orbit)};
}

std::uint64_t map_count(std::size_t n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > kMax / n) return kMax;
    total *= n;
  }
  return total;
}

FppReport has_fpp(const DigitalImage& img, std::uint64_t budget) {
  const std::size_t n = img.size();
  const std::uint64_t total = map_count(n);
  if (total > budget) {
    throw BudgetExceeded("has_fpp: " + std::to_string(n) + "^" + std::to_string(n) +
                         " maps exceed the enumeration budget of " + std::to_string(budget));
  }
  FppReport report;
  // Odometer over tables in numeral order (table[0] most significant).
  std::vector<PointIndex> table(n, 0);
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    ++report.maps_enumerated;
    SelfMap f(table);
    if (is_digitally_continuous(img, f).continuous && fixed_points(f).empty()) {
      report.has_fpp = false;
      report.witness = std::move(f);
      return report;
    }
    for (std::size_t pos = n; pos-- > 0;) {
      if (++table[pos] < n) break;
      table[pos] = 0;
    }
  }
  return report;
}

bool check_constant_collapse(const DigitalMetricSpace& space, const SelfMap& f, double a,
                             double tolerance) {
  if (space.size() < 2) return f.image_size() == 1;
  const double bound = constant_collapse_bound(space);
  if (!(a >= 0.0 && a < bound)) {
    throw PreconditionError("check_constant_collapse: a = " + std::to_string(a) +
                            " is not below min_separation/diameter = " + std::to_string(bound));
  }
  if (!check_lipschitz(space, f, a, tolerance).holds) {
    throw PreconditionError("check_constant_collapse: map does not satisfy (G1) with a = " +
                            std::to_string(a));
  }
  return f.image_size() == 1;
}

}  // namespace digifix
