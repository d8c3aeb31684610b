#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "digifix/commands.hpp"
#include "digifix/falsify.hpp"

namespace digifix {

namespace {

std::string join(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
  return s;
}

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

DemoItem ratio_l_grid() {
  bool ok = true;
  for (int i = 0; i <= 9; ++i) {
    const double c = i / 10.0;
    ok = ok && (ratio_L(c).value < 1.0) == (c < 0.5);
  }
  return {"c/(1-c) < 1 exactly when c < 1/2 on c = 0, 0.1, ..., 0.9", true, ok, ""};
}

/// Connected images of 1..5 points in a 3x3 box, u in {1, 2}.
DemoItem fpp_sweep() {
  auto pool = ImagePool::box(2, 0, 2);
  pool.u_values = {1, 2};
  pool.max_points = 5;
  std::size_t images = 0;
  bool ok = true;
  for (const auto& [img, subset] : enumerate_images(pool, true)) {
    ++images;
    const auto report = has_fpp(img);
    ok = ok && report.has_fpp == (img.size() == 1);
    if (report.witness) {
      ok = ok && is_digitally_continuous(img, *report.witness).continuous &&
           fixed_points(*report.witness).empty();
    }
  }
  return {"FPP holds iff #X = 1 (connected images in a 3x3 box)", true, ok && images >= 50,
          str(images) + " images"};
}

/// Seeded sweep: generated contractions have one fixed point, reached from every start.
DemoItem theorem_sweep(ConditionKind family, std::size_t trials, std::uint64_t seed) {
  std::size_t nonconstant = 0;
  bool ok = true;
  for (std::size_t t = 0; t < trials && ok; ++t) {
    std::mt19937_64 rng(seed * 1'000'003 + t);
    const auto space = random_space(rng);
    const auto gen = generate_contraction(space, family, rng());
    if (!check_condition(space, gen.map, gen.condition).holds) {
      ok = false;
      break;
    }
    nonconstant += gen.map.image_size() > 1;
    const auto fps = fixed_points(space, gen.map);
    ok = fps.size() == 1;
    for (PointIndex x = 0; ok && x < space.size(); ++x) {
      const auto orbit = picard_orbit(space, gen.map, x);
      ok = orbit.constancy_index && *orbit.constancy_index <= space.size() &&
           orbit.fixed_point == fps.front();
    }
  }
  return {"generated " + std::string(to_string(family)) +
              " maps have a unique fixed point reached by every orbit",
          true, ok, join({str(trials) + " trials", str(nonconstant) + " non-constant"})};
}

DemoItem collapse_sweep(std::size_t trials, std::uint64_t seed) {
  bool ok = true;
  std::size_t eligible = 0;
  std::size_t commuting = 0;
  RandomSpaceParams params;
  params.min_points = 2;
  for (std::size_t t = 0; t < trials && ok; ++t) {
    std::mt19937_64 rng(seed * 7919 + t);
    const auto space = random_space(rng, params);
    const double bound = constant_collapse_bound(space);
    std::array<std::optional<SelfMap>, 2> collapsed;
    for (auto& slot : collapsed) {
      const auto gen = generate_contraction(space, ConditionKind::oaa_g, rng());
      const double a = tightest_coefficient(space, gen.map, ConditionKind::banach);
      if (a < bound) {
        ++eligible;
        ok = ok && check_constant_collapse(space, gen.map, a);
        slot = gen.map;
      }
    }
    if (collapsed[0] && collapsed[1] && commute(*collapsed[0], *collapsed[1])) {
      ++commuting;
      ok = ok && collapsed[0]->constant_value() == collapsed[1]->constant_value();
    }
  }
  return {"(G1) with a < min_separation/diameter forces a constant map; commuting ones agree",
          true, ok, join({str(eligible) + " eligible maps", str(commuting) + " commuting pairs"})};
}

DemoItem negative_search(const ConditionSpec& cond) {
  auto pool = ImagePool::box(2, 0, 2);
  pool.u_values = {1, 2};
  pool.max_points = 4;
  pool.metrics = {LpMetric{1.0}, LpMetric{2.0}, ShortestPathMetric{}};
  const auto outcome = search_counterexample(cond, pool);
  return {"a fixed-point-free map satisfying " + cond.describe() + " exists in the 3x3 pool", false,
          outcome.found.has_value(),
          join({str(outcome.spaces_scanned) + " spaces", str(outcome.maps_scanned) + " maps"})};
}

}  // namespace

std::vector<DemoItem> run_demo(const CliOptions& opts) {
  std::vector<DemoItem> items;

  // Coefficient fallacies.
  items.push_back({"ratio_L(0.25) = 1/3 < 1", true,
                   std::abs(ratio_L(0.25).value - 1.0 / 3.0) < opts.tolerance && ratio_L(0.25).is_contractive,
                   ""});
  items.push_back({"ratio_L(0.5) < 1", false, ratio_L(0.5).is_contractive,
                   "value " + str(ratio_L(0.5).value)});
  items.push_back(ratio_l_grid());
  const auto r = ratio_r(0.3, 0.0, 0.2, 0.4, 0.0);
  items.push_back({"e+f+g+h+i = 0.9 < 1 for (0.3, 0, 0.2, 0.4, 0)", true, r.sum_ok,
                   "sum " + str(r.coefficient_sum)});
  items.push_back({"r = (e+f+h)/(1-g-h) < 1 for (0.3, 0, 0.2, 0.4, 0)", false, r.r_lt_1,
                   "r " + str(r.value)});

  // Doubling counterexample.
  for (int k : {4, 10, 30}) {
    const auto rep = builtin_doubling_counterexample(k);
    items.push_back({"doubling window K=" + str(k) + ": d(fx,fy) = 2 d(x,y) >= 1.5 d(x,y), no fixed point",
                     true, rep.certified() && rep.ratio == 2.0,
                     str(rep.pairs) + " pairs"});
  }
  {
    const std::array<WindowedFamily, 3> windows{WindowedFamily::doubling(2), WindowedFamily::doubling(3),
                                                WindowedFamily::doubling(opts.window)};
    const auto found = search_counterexample(ConditionSpec::expansive(1.5), windows);
    items.push_back({"window search finds a fixed-point-free map with d(fx,fy) >= 1.5 d(x,y)", true,
                     found.has_value(), found ? found->family.name : ""});
  }

  // Involution counterexample.
  const auto inv = builtin_involution_counterexample();
  items.push_back({"k1^2 + k2^2 + k3^2 = 0 + 0.9 + 0.09 = 0.99 < 1", true,
                   inv.coefficient_sum == 0.99 && inv.coefficient_sum < 1.0, str(inv.coefficient_sum)});
  items.push_back({"T(x) = 1 - x at (0,1): 1 <= 1.89", true,
                   inv.distinct_pair.lhs == 1.0 &&
                       std::abs(inv.distinct_pair.rhs - 1.89) <= opts.tolerance,
                   "rhs " + str(inv.distinct_pair.rhs)});
  items.push_back({"T(x) = 1 - x satisfies the saljah inequality at every pair", true, inv.check.holds, ""});
  items.push_back({"T(x) = 1 - x has a fixed point", false, !inv.fixed_points.empty(), ""});
  {
    auto pool = ImagePool::box(1, 0, 1);
    pool.max_points = 2;
    const auto found = search_counterexample(inv.condition, pool);
    const bool is_swap = found.found && found.found->map == SelfMap({1, 0});
    items.push_back({"search over [0,1]_Z rediscovers T(x) = 1 - x", true, is_swap, ""});
  }

  // Continuity notions.
  {
    const auto space = build_space(DigitalImage::interval(0, 2), LpMetric{1.0});
    const SelfMap f({0, 2, 2});
    items.push_back({"metric continuity implies digital continuity (f = 0,2,2 on [0,2]_Z)", false,
                     is_metrically_continuous(space, f).continuous &&
                         is_digitally_continuous(space.image(), f).continuous,
                     ""});
  }

  // FPP dichotomy.
  items.push_back(fpp_sweep());

  // Corrected theorems.
  for (auto family : {ConditionKind::banach, ConditionKind::quasi, ConditionKind::sum_type,
                      ConditionKind::rational}) {
    items.push_back(theorem_sweep(family, 250, opts.seed));
  }
  for (const auto& cond : {ConditionSpec::banach(0.9), ConditionSpec::quasi(0.45),
                           ConditionSpec::sum_type(0.2, 0.25), ConditionSpec::rational(0.5, 0.45, 0.5)}) {
    items.push_back(negative_search(cond));
  }
  items.push_back(collapse_sweep(200, opts.seed));
  return items;
}

}  // namespace digifix
