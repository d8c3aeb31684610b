// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "digifix/commands.hpp"
#include "digifix/falsify.hpp"

using namespace digifix;

namespace {

constexpr double kMarginTol = 1e-9;     // criterion 3
constexpr double kArithTol = 1e-12;     // criterion 5, ratio_r value
constexpr double kTriangleTol = 1e-9;   // criterion 7, lp_p triangle inequality
constexpr double kSweepSeconds = 60.0;  // criteria 1, 2
constexpr double kDemoSeconds = 180.0;  // criterion 8

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool continuous_oracle(const DigitalImage& img, const SelfMap& f) {
  for (PointIndex x = 0; x < img.size(); ++x)
    for (PointIndex y = 0; y < img.size(); ++y)
      if (cu_adjacent(img.point(x), img.point(y), img.u()) && f(x) != f(y) &&
          !cu_adjacent(img.point(f(x)), img.point(f(y)), img.u()))
        return false;
  return true;
}

Outcome fpp_dichotomy() {
  auto pool = ImagePool::box(2, 0, 2);
  pool.u_values = {1, 2};
  pool.max_points = 5;
  Outcome o;
  std::size_t images = 0, singletons = 0, witnesses = 0;
  for (const auto& [img, subset] : enumerate_images(pool, true)) {
    ++images;
    singletons += img.size() == 1;
    const auto r = has_fpp(img);
    if (r.has_fpp != (img.size() == 1)) o.pass = false;
    if (!r.has_fpp) {
      const bool sound = r.witness && continuous_oracle(img, *r.witness) && fixed_points(*r.witness).empty();
      witnesses += sound;
      if (!sound) o.pass = false;
    }
  }
  if (images < 50) o.pass = false;
  o.detail = std::to_string(images) + " images, " + std::to_string(singletons) + " singletons, " +
             std::to_string(witnesses) + " sound witnesses";
  return o;
}

bool coefficients_valid(const ConditionSpec& c) {
  if (const auto* q = std::get_if<cond::Quasi>(&c.params())) return q->c >= 0 && q->c < 0.5;
  if (const auto* s = std::get_if<cond::SumType>(&c.params())) return s->a >= 0 && s->b >= 0 && s->a + s->b < 0.5;
  if (const auto* r = std::get_if<cond::Rational>(&c.params()))
    return r->a >= 0 && r->b >= 0 && r->c >= 0 && r->b + r->c < 1.0;
  return false;
}

Outcome corrected_theorems() {
  constexpr std::size_t kTrials = 1000;
  Outcome o;
  std::size_t failures = 0, checked = 0, nonconstant = 0;
  for (auto family : {ConditionKind::quasi, ConditionKind::sum_type, ConditionKind::rational}) {
    for (std::size_t t = 0; t < kTrials; ++t) {
      std::mt19937_64 rng(0xC0FFEE + 7919 * t + static_cast<int>(family));
      const auto space = random_space(rng);
      const auto gen = generate_contraction(space, family, rng());
      if (!coefficients_valid(gen.condition) || !check_condition(space, gen.map, gen.condition).holds) {
        ++failures;
        continue;
      }
      ++checked;
      nonconstant += gen.map.image_size() > 1;
      const auto fps = fixed_points(space, gen.map);
      bool ok = fps.size() == 1;
      for (PointIndex x = 0; ok && x < space.size(); ++x) {
        const auto orbit = picard_orbit(space, gen.map, x);
        ok = orbit.constancy_index && *orbit.constancy_index <= space.size() &&
             orbit.fixed_point == fps.front();
      }
      failures += !ok;
    }
  }
  o.pass = failures == 0;
  o.detail = std::to_string(checked) + " trials over quasi/sum_type/rational, " + std::to_string(nonconstant) +
             " non-constant, " + std::to_string(failures) + " failures";
  return o;
}

Outcome saljah() {
  const auto r = builtin_involution_counterexample();
  const double margin = r.distinct_pair.rhs - r.distinct_pair.lhs;
  Outcome o;
  o.pass = r.coefficient_sum == 0.99 && r.coefficient_sum < 1.0 && r.distinct_pair.lhs == 1.0 &&
           std::abs(margin - 0.89) <= kMarginTol && r.check.holds && r.fixed_points.empty();
  std::ostringstream os;
  os.precision(17);
  os << "sum " << r.coefficient_sum << ", margin at (0,1) " << margin << ", fixed points "
     << r.fixed_points.size();
  o.detail = os.str();
  return o;
}

Outcome doubling() {
  Outcome o;
  for (int k : {4, 10, 30}) {
    const auto r = builtin_doubling_counterexample(k);
    const bool ok = r.pairs == static_cast<std::size_t>(k * (k - 1) / 2) && r.ratio_exact && r.ratio == 2.0 &&
                    r.relation_holds && r.fixed_points.empty();
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + ("K=" + std::to_string(k) + ": " + std::to_string(r.pairs) +
                                                  " pairs" + (ok ? "" : " FAILED"));
  }
  return o;
}

Outcome fallacies() {
  Outcome o;
  for (int k = 0; k <= 9; ++k) {
    const double c = k / 10.0;
    const auto r = ratio_L(c);
    if ((r.value < 1.0) != (c < 0.5) || r.is_contractive != (c < 0.5)) o.pass = false;
  }
  if (ratio_L(0.5).value != 1.0) o.pass = false;
  const auto r = ratio_r(0.3, 0.0, 0.2, 0.4, 0.0);
  if (std::abs(r.value - 1.75) > kArithTol || !r.sum_ok || r.r_lt_1 || std::abs(r.coefficient_sum - 0.9) > kArithTol)
    o.pass = false;
  std::ostringstream os;
  os << "ratio_L(0.5) = " << ratio_L(0.5).value << ", r = " << r.value << " with sum " << r.coefficient_sum;
  o.detail = os.str();
  return o;
}

Outcome collapse() {
  constexpr std::size_t kTrials = 200;
  Outcome o;
  std::size_t eligible = 0, commuting = 0, failures = 0;
  RandomSpaceParams params;
  params.min_points = 2;
  for (std::size_t t = 0; t < kTrials; ++t) {
    std::mt19937_64 rng(0xBEEF + t);
    const auto space = random_space(rng, params);
    const double bound = constant_collapse_bound(space);
    std::vector<SelfMap> collapsed;
    for (int m = 0; m < 2; ++m) {
      const auto gen = generate_contraction(space, ConditionKind::oaa_g, rng());
      // smallest a for which (G1) holds
      double a = 0.0;
      for (PointIndex x = 0; x < space.size(); ++x)
        for (PointIndex y = 0; y < space.size(); ++y)
          if (x != y) a = std::max(a, space.d(gen.map(x), gen.map(y)) / space.d(x, y));
      if (!(a < bound)) continue;
      ++eligible;
      if (!check_lipschitz(space, gen.map, a).holds || gen.map.image_size() != 1) ++failures;
      collapsed.push_back(gen.map);
    }
    if (collapsed.size() == 2 && commute(collapsed[0], collapsed[1])) {
      ++commuting;
      if (collapsed[0].constant_value() != collapsed[1].constant_value()) ++failures;
    }
  }
  o.pass = failures == 0 && eligible > 0 && commuting > 0;
  o.detail = std::to_string(eligible) + " eligible maps, " + std::to_string(commuting) + " commuting pairs, " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome metric_oracles() {
  Outcome o;
  std::size_t spaces = 0, violations = 0;
  auto audit = [&](const DigitalMetricSpace& s) {
    ++spaces;
    const std::size_t n = s.size();
    const bool lp = std::holds_alternative<LpMetric>(s.spec());
    const bool sp = std::holds_alternative<ShortestPathMetric>(s.spec());
    const double slack = lp && std::get<LpMetric>(s.spec()).p != 1.0 ? kTriangleTol : 0.0;
    for (PointIndex x = 0; x < n; ++x) {
      for (PointIndex y = 0; y < n; ++y) {
        if (s.d(x, y) != s.d(y, x) || (s.d(x, y) == 0.0) != (x == y)) ++violations;
        if (lp && x != y && s.d(x, y) < 1.0) ++violations;
        if (sp && s.d(x, y) != static_cast<double>(find_path(s.image(), x, y)->length())) ++violations;
        for (PointIndex z = 0; z < n; ++z)
          if (s.d(x, z) > s.d(x, y) + s.d(y, z) + slack) ++violations;
      }
    }
    if (lp && n >= 2 && s.min_separation() < 1.0) ++violations;
  };
  std::mt19937_64 rng(0x5EED);
  RandomSpaceParams params;
  params.max_points = 15;
  for (int t = 0; t < 300; ++t) audit(random_space(rng, params));
  auto pool = ImagePool::box(2, 0, 2);
  pool.u_values = {1, 2};
  pool.max_points = 4;
  for (const auto& [img, subset] : enumerate_images(pool)) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) audit(build_space(img, LpMetric{p}));
    if (is_connected(img)) audit(build_space(img, ShortestPathMetric{}));
  }
  o.pass = violations == 0;
  o.detail = std::to_string(spaces) + " spaces, " + std::to_string(violations) + " violations";
  return o;
}

Outcome demo() {
  std::ostringstream out, err;
  const int code = cmd_demo({}, out, err);
  const std::string text = out.str();
  Outcome o;
  o.pass = code == 0 && text.find("[FAIL]") == std::string::npos && text.find("[PASS]") != std::string::npos;
  const auto at = text.rfind("record ");
  o.detail = "exit " + std::to_string(code) + ", " +
             (at == std::string::npos ? std::string("no record") : text.substr(at, text.size() - at - 1));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {"FPP holds exactly for singletons", fpp_dichotomy, kSweepSeconds},
      {"contractions have a unique, reachable fixed point", corrected_theorems, kSweepSeconds},
      {"involution satisfies the saljah inequality without a fixed point", saljah, 0},
      {"doubling map is expansive and fixed-point-free", doubling, 0},
      {"coefficient fallacies", fallacies, 0},
      {"(G1) below min_separation/diameter forces constant maps", collapse, 0},
      {"metric axioms and path oracles", metric_oracles, 0},
      {"demo checklist", demo, kDemoSeconds},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += ", over time limit";
    }
    failed += !o.pass;
    std::printf("[%s] %d. %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
