#include "digifix/falsify.hpp"

#include <algorithm>
#include <set>

#include "digifix/error.hpp"

namespace digifix {

using Wide = __int128;

// ---------------------------------------------------------------------------
// Windowed families

WindowedFamily WindowedFamily::doubling(int window) {
  if (window < 2 || window > 61) {
    throw DomainError("doubling window must lie in [2, 61], got " + std::to_string(window));
  }
  WindowedFamily fam;
  fam.name = "doubling(K=" + std::to_string(window) + ")";
  for (int n = 1; n <= window; ++n) fam.points.push_back(std::int64_t{1} << n);
  fam.map_rule = [](std::int64_t x) { return 2 * x; };
  return fam;
}

WindowedFamily::Materialized WindowedFamily::materialize() const {
  std::set<std::int64_t> all(points.begin(), points.end());
  std::vector<std::int64_t> images;
  images.reserve(points.size());
  for (auto x : points) {
    images.push_back(map_rule(x));
    all.insert(images.back());
  }
  std::vector<std::int64_t> sorted(all.begin(), all.end());
  std::vector<LatticePoint> lattice;
  lattice.reserve(sorted.size());
  for (auto v : sorted) lattice.push_back(LatticePoint{v});

  auto index = [&sorted](std::int64_t v) {
    return static_cast<PointIndex>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
  };
  std::vector<PointIndex> domain;
  std::vector<PointIndex> image_of(sorted.size(), 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto x = index(points[k]);
    domain.push_back(x);
    image_of[x] = index(images[k]);
  }
  return {build_space(DigitalImage(std::move(lattice), 1), LpMetric{1.0}), std::move(domain),
          std::move(image_of)};
}

DoublingReport builtin_doubling_counterexample(int window) {
  const auto fam = WindowedFamily::doubling(window);
  DoublingReport report;
  report.window = window;
  report.ratio = std::numeric_limits<double>::infinity();
  const auto& pts = fam.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++report.pairs;
      const Wide dxy = static_cast<Wide>(pts[j]) - pts[i];
      const Wide dfxfy = static_cast<Wide>(fam.map_rule(pts[j])) - fam.map_rule(pts[i]);
      if (dfxfy != 2 * dxy) report.ratio_exact = false;
      if (2 * dfxfy < 3 * dxy) report.relation_holds = false;
      report.ratio = std::min(report.ratio, static_cast<double>(dfxfy) / static_cast<double>(dxy));
    }
  }
  for (auto x : pts) {
    if (fam.map_rule(x) == x) report.fixed_points.push_back(x);
  }
  const auto m = fam.materialize();
  report.generic = check_condition_on(m.space, m.image_of, m.domain, ConditionSpec::expansive(1.5));
  return report;
}

InvolutionReport builtin_involution_counterexample() {
  InvolutionReport report;
  const auto space = build_space(DigitalImage::interval(0, 1), LpMetric{1.0});
  const SelfMap involution({1, 0});
  const auto& k = std::get<cond::SalJah>(report.condition.params());
  report.coefficient_sum = k.k1_sq + k.k2_sq + k.k3_sq;
  report.check = check_condition(space, involution, report.condition);
  report.distinct_pair = *evaluate_pair(space, involution, report.condition, 0, 1);
  report.fixed_points = fixed_points(space, involution);
  return report;
}

// ---------------------------------------------------------------------------
// Random generators

namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

LatticePoint random_point(std::mt19937_64& rng, std::size_t q, Coord box) {
  std::uniform_int_distribution<Coord> coord(0, box - 1);
  std::vector<Coord> c(q);
  for (auto& v : c) v = coord(rng);
  return LatticePoint(std::move(c));
}

/// Grows a connected c_u set by repeatedly attaching a random neighbor of a member.
std::vector<LatticePoint> grow_connected(std::mt19937_64& rng, std::size_t q, int u, Coord box,
                                         std::size_t target) {
  std::vector<LatticePoint> pts{random_point(rng, q, box)};
  std::set<LatticePoint> present(pts.begin(), pts.end());
  for (int attempt = 0; pts.size() < target && attempt < 2000; ++attempt) {
    auto c = pts[uniform_index(rng, 0, pts.size() - 1)].coords();
    std::vector<std::size_t> axes(q);
    for (std::size_t i = 0; i < q; ++i) axes[i] = i;
    std::shuffle(axes.begin(), axes.end(), rng);
    const auto moves = uniform_index(rng, 1, static_cast<std::size_t>(u));
    bool inside = true;
    for (std::size_t m = 0; m < moves; ++m) {
      c[axes[m]] += (rng() & 1) ? 1 : -1;
      inside = inside && c[axes[m]] >= 0 && c[axes[m]] < box;
    }
    LatticePoint p(std::move(c));
    if (inside && present.insert(p).second) pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<LatticePoint> scatter(std::mt19937_64& rng, std::size_t q, Coord box,
                                  std::size_t target) {
  std::vector<LatticePoint> pts;
  std::set<LatticePoint> present;
  for (int attempt = 0; pts.size() < target && attempt < 2000; ++attempt) {
    auto p = random_point(rng, q, box);
    if (present.insert(p).second) pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

DigitalMetricSpace random_space(std::mt19937_64& rng, const RandomSpaceParams& params) {
  if (params.min_points < 1 || params.max_points < params.min_points || params.max_dimension < 1 ||
      params.box < 1) {
    throw DomainError("random_space: invalid parameters");
  }
  std::vector<int> kinds;
  if (params.allow_lp1) kinds.push_back(0);
  if (params.allow_lp2) kinds.push_back(1);
  if (params.allow_shortest_path) kinds.push_back(2);
  if (kinds.empty()) throw DomainError("random_space: no metric allowed");

  const std::size_t q = uniform_index(rng, 1, params.max_dimension);
  const int u = static_cast<int>(uniform_index(rng, 1, q));
  const std::size_t target = uniform_index(rng, params.min_points, params.max_points);
  const int kind = kinds[uniform_index(rng, 0, kinds.size() - 1)];
  const bool connected = kind == 2 || (rng() & 1);

  auto pts = connected ? grow_connected(rng, q, u, params.box, target)
                       : scatter(rng, q, params.box, target);
  DigitalImage img(std::move(pts), u);
  switch (kind) {
    case 0:
      return build_space(std::move(img), LpMetric{1.0});
    case 1:
      return build_space(std::move(img), LpMetric{2.0});
    default:
      return build_space(std::move(img), ShortestPathMetric{});
  }
}

namespace {

SelfMap propose_map(std::mt19937_64& rng, const DigitalMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<PointIndex> table(n);
  switch (rng() % 3) {
    case 0:  // uniform table
      for (auto& v : table) v = uniform_index(rng, 0, n - 1);
      break;
    case 1: {  // image confined to a few points
      const auto k = uniform_index(rng, 1, std::min<std::size_t>(3, n));
      std::vector<PointIndex> targets;
      for (std::size_t i = 0; i < k; ++i) targets.push_back(uniform_index(rng, 0, n - 1));
      for (auto& v : table) v = targets[uniform_index(rng, 0, k - 1)];
      break;
    }
    default: {  // retraction toward a center
      const auto center = uniform_index(rng, 0, n - 1);
      for (PointIndex x = 0; x < n; ++x) {
        std::vector<PointIndex> closer;
        for (PointIndex y = 0; y < n; ++y) {
          if (y != center && space.d(y, center) <= space.d(x, center) / 2.0) closer.push_back(y);
        }
        table[x] = (closer.empty() || (rng() & 1)) ? center
                                                    : closer[uniform_index(rng, 0, closer.size() - 1)];
      }
      break;
    }
  }
  return SelfMap(std::move(table));
}

}  // namespace

GeneratedMap generate_contraction(const DigitalMetricSpace& space, ConditionKind family,
                                  std::uint64_t seed, std::size_t max_draws) {
  switch (family) {
    case ConditionKind::banach:
    case ConditionKind::quasi:
    case ConditionKind::sum_type:
    case ConditionKind::rational:
    case ConditionKind::oaa_g:
      break;
    default:
      throw DomainError("generate_contraction: unsupported family " + std::string(to_string(family)));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t draw = 1; draw <= max_draws; ++draw) {
    auto f = propose_map(rng, space);
    // Zero tolerance: a fit sitting within rounding of the coefficient bound is not a contraction.
    auto cond = fit_coefficients(space, f, family);
    if (cond && check_condition(space, f, *cond, 0.0).holds) {
      return {std::move(f), std::move(*cond), draw, draw - 1};
    }
  }
  throw BudgetExceeded("generate_contraction: no " + std::string(to_string(family)) +
                       " map accepted in " + std::to_string(max_draws) + " draws");
}

// ---------------------------------------------------------------------------
// Counterexample search

ImagePool ImagePool::box(std::size_t dimension, Coord lo, Coord hi) {
  if (dimension < 1 || hi < lo) throw DomainError("ImagePool::box: invalid box");
  ImagePool pool;
  std::vector<Coord> c(dimension, lo);
  while (true) {
    pool.universe.emplace_back(c);
    std::size_t pos = dimension;
    while (pos-- > 0) {
      if (++c[pos] <= hi) break;
      c[pos] = lo;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return pool;
}

namespace {

std::optional<MetricSpec> restrict_metric(const MetricSpec& spec,
                                          const std::vector<std::size_t>& subset,
                                          std::size_t universe_size) {
  if (const auto* table = std::get_if<TableMetric>(&spec)) {
    if (table->rows.size() != universe_size) {
      throw DomainError("ImagePool: table metric must be sized to the universe");
    }
    TableMetric sub;
    for (auto i : subset) {
      std::vector<double> row;
      for (auto j : subset) row.push_back(table->rows[i].at(j));
      sub.rows.push_back(std::move(row));
    }
    return sub;
  }
  return spec;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<PoolImage> enumerate_images(const ImagePool& pool, bool connected_only) {
  const auto& universe = pool.universe;
  std::vector<std::size_t> order(universe.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return universe[a] < universe[b]; });

  std::vector<PoolImage> out;
  const std::size_t top = std::min(pool.max_points, universe.size());
  for (std::size_t k = std::max<std::size_t>(pool.min_points, 1); k <= top; ++k) {
    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    do {
      std::vector<std::size_t> subset;
      std::vector<LatticePoint> pts;
      for (auto c : combo) {
        subset.push_back(order[c]);
        pts.push_back(universe[order[c]]);
      }
      for (int u : pool.u_values) {
        if (u < 1 || static_cast<std::size_t>(u) > pts.front().dimension()) continue;
        DigitalImage img(pts, u);
        if (connected_only && !is_connected(img)) continue;
        out.push_back({std::move(img), subset});
      }
    } while (next_combination(combo, universe.size()));
  }
  return out;
}

SearchOutcome search_counterexample(const ConditionSpec& cond, const ImagePool& pool,
                                    const SearchBudget& budget, double tolerance) {
  SearchOutcome outcome;
  outcome.seed = budget.seed;
  std::mt19937_64 rng(budget.seed);
  for (const auto& [img, subset] : enumerate_images(pool)) {
    const std::size_t k = img.size();
    const bool connected = is_connected(img);
    for (const auto& metric : pool.metrics) {
      if (std::holds_alternative<ShortestPathMetric>(metric) && !connected) continue;
      const auto space = build_space(img, *restrict_metric(metric, subset, pool.universe.size()));
      ++outcome.spaces_scanned;

      auto try_map = [&](SelfMap f) -> bool {
        ++outcome.maps_scanned;
        if (!fixed_points(f).empty()) return false;
        auto report = check_condition(space, f, cond, tolerance);
        if (!report.holds) return false;
        outcome.found = Counterexample{space, std::move(f), std::move(report)};
        return true;
      };

      const std::uint64_t total = map_count(k);
      if (total <= budget.maps_per_space) {
        for (std::uint64_t rank = 0; rank < total; ++rank) {
          if (try_map(SelfMap::from_numeral(rank, k))) return outcome;
        }
      } else {
        std::uniform_int_distribution<PointIndex> pick(0, k - 1);
        for (std::uint64_t s = 0; s < budget.maps_per_space; ++s) {
          std::vector<PointIndex> table(k);
          for (auto& v : table) v = pick(rng);
          if (try_map(SelfMap(std::move(table)))) return outcome;
        }
      }
    }
  }
  return outcome;
}

std::optional<WindowCounterexample> search_counterexample(const ConditionSpec& cond,
                                                          std::span<const WindowedFamily> pool,
                                                          double tolerance) {
  for (const auto& fam : pool) {
    const bool has_fixed = std::any_of(fam.points.begin(), fam.points.end(),
                                       [&fam](std::int64_t x) { return fam.map_rule(x) == x; });
    if (has_fixed) continue;
    const auto m = fam.materialize();
    auto report = check_condition_on(m.space, m.image_of, m.domain, cond, tolerance);
    if (report.holds) return WindowCounterexample{fam, std::move(report)};
  }
  return std::nullopt;
}

}  // namespace digifix
