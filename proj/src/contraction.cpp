#include "digifix/contraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "digifix/error.hpp"

namespace digifix {

namespace {

constexpr std::array<std::pair<ConditionKind, std::string_view>, 8> kKindNames{{
    {ConditionKind::banach, "banach"},
    {ConditionKind::quasi, "quasi"},
    {ConditionKind::sum_type, "sum_type"},
    {ConditionKind::rational, "rational"},
    {ConditionKind::expansive, "expansive"},
    {ConditionKind::oaa_g, "oaa_g"},
    {ConditionKind::oaa_iterated, "oaa_iterated"},
    {ConditionKind::saljah, "saljah"},
}};

void require_nonneg(std::string_view what, std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError(std::string(what) + ": coefficients must be finite and non-negative");
    }
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(ConditionKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ConditionKind> parse_condition_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ConditionSpec construction

ConditionSpec ConditionSpec::banach(double alpha) {
  require_nonneg("banach", {alpha});
  if (!(alpha < 1.0)) throw DomainError("banach: alpha must lie in [0, 1)");
  return ConditionSpec(cond::Banach{alpha});
}

ConditionSpec ConditionSpec::quasi(double c) {
  require_nonneg("quasi", {c});
  if (!(c < 0.5)) throw DomainError("quasi: c must lie in [0, 1/2)");
  return ConditionSpec(cond::Quasi{c});
}

ConditionSpec ConditionSpec::sum_type(double a, double b) {
  require_nonneg("sum_type", {a, b});
  if (!(a + b < 0.5)) throw DomainError("sum_type: a + b must be < 1/2");
  return ConditionSpec(cond::SumType{a, b});
}

ConditionSpec ConditionSpec::rational(double a, double b, double c) {
  require_nonneg("rational", {a, b, c});
  if (!(b + c < 1.0)) throw DomainError("rational: b + c must be < 1");
  return ConditionSpec(cond::Rational{a, b, c});
}

ConditionSpec ConditionSpec::expansive(double delta3) {
  require_nonneg("expansive", {delta3});
  return ConditionSpec(cond::Expansive{delta3});
}

ConditionSpec ConditionSpec::oaa_g(double a, double b, double c) {
  require_nonneg("oaa_g", {a, b, c});
  if (!(a + b + c < 1.0)) throw DomainError("oaa_g: a + b + c must be < 1");
  return ConditionSpec(cond::OaaG{a, b, c});
}

ConditionSpec ConditionSpec::oaa_iterated(double e, double f, double g, double h, double i) {
  require_nonneg("oaa_iterated", {e, f, g, h, i});
  if (!(e + f + g + h + i < 1.0)) throw DomainError("oaa_iterated: e + f + g + h + i must be < 1");
  return ConditionSpec(cond::OaaIterated{e, f, g, h, i});
}

ConditionSpec ConditionSpec::saljah(double k1, double k2, double k3) {
  require_nonneg("saljah", {k1, k2, k3});
  return saljah_squared(k1 * k1, k2 * k2, k3 * k3);
}

ConditionSpec ConditionSpec::saljah_squared(double k1_sq, double k2_sq, double k3_sq) {
  require_nonneg("saljah", {k1_sq, k2_sq, k3_sq});
  if (!(k1_sq + k2_sq + k3_sq < 1.0)) {
    throw DomainError("saljah: k1^2 + k2^2 + k3^2 must be < 1");
  }
  return ConditionSpec(cond::SalJah{k1_sq, k2_sq, k3_sq});
}

ConditionSpec ConditionSpec::from_coefficients(
    ConditionKind kind, const std::vector<std::pair<std::string, double>>& coeffs) {
  std::map<std::string, double> named;
  for (const auto& [k, v] : coeffs) {
    if (!named.emplace(k, v).second) throw DomainError("duplicate coefficient '" + k + "'");
  }
  std::size_t used = 0;
  auto take = [&](const std::string& key) -> double {
    auto it = named.find(key);
    if (it == named.end()) {
      throw DomainError(std::string(to_string(kind)) + ": missing coefficient '" + key + "'");
    }
    ++used;
    return it->second;
  };
  auto finish = [&](ConditionSpec spec) {
    if (used != named.size()) {
      throw DomainError(std::string(to_string(kind)) + ": unknown coefficient name");
    }
    return spec;
  };
  switch (kind) {
    case ConditionKind::banach:
      return finish(banach(take("alpha")));
    case ConditionKind::quasi:
      return finish(quasi(take("c")));
    case ConditionKind::sum_type: {
      const double a = take("a");
      return finish(sum_type(a, take("b")));
    }
    case ConditionKind::rational: {
      const double a = take("a");
      const double b = take("b");
      return finish(rational(a, b, take("c")));
    }
    case ConditionKind::expansive:
      return finish(expansive(take("delta3")));
    case ConditionKind::oaa_g: {
      const double a = take("a");
      const double b = take("b");
      return finish(oaa_g(a, b, take("c")));
    }
    case ConditionKind::oaa_iterated: {
      const double e = take("e");
      const double f = take("f");
      const double g = take("g");
      const double h = take("h");
      return finish(oaa_iterated(e, f, g, h, take("i")));
    }
    case ConditionKind::saljah: {
      if (named.count("k1_sq") || named.count("k2_sq") || named.count("k3_sq")) {
        const double k1 = take("k1_sq");
        const double k2 = take("k2_sq");
        return finish(saljah_squared(k1, k2, take("k3_sq")));
      }
      const double k1 = take("k1");
      const double k2 = take("k2");
      return finish(saljah(k1, k2, take("k3")));
    }
  }
  throw DomainError("unknown condition kind");
}

ConditionKind ConditionSpec::kind() const {
  return static_cast<ConditionKind>(params_.index());
}

std::vector<std::pair<std::string, double>> ConditionSpec::coefficients() const {
  return std::visit(
      [](const auto& p) -> std::vector<std::pair<std::string, double>> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, cond::Banach>) {
          return {{"alpha", p.alpha}};
        } else if constexpr (std::is_same_v<T, cond::Quasi>) {
          return {{"c", p.c}};
        } else if constexpr (std::is_same_v<T, cond::SumType>) {
          return {{"a", p.a}, {"b", p.b}};
        } else if constexpr (std::is_same_v<T, cond::Rational>) {
          return {{"a", p.a}, {"b", p.b}, {"c", p.c}};
        } else if constexpr (std::is_same_v<T, cond::Expansive>) {
          return {{"delta3", p.delta3}};
        } else if constexpr (std::is_same_v<T, cond::OaaG>) {
          return {{"a", p.a}, {"b", p.b}, {"c", p.c}};
        } else if constexpr (std::is_same_v<T, cond::OaaIterated>) {
          return {{"e", p.e}, {"f", p.f}, {"g", p.g}, {"h", p.h}, {"i", p.i}};
        } else {
          return {{"k1_sq", p.k1_sq}, {"k2_sq", p.k2_sq}, {"k3_sq", p.k3_sq}};
        }
      },
      params_);
}

bool ConditionSpec::strict() const { return kind() == ConditionKind::banach; }

std::string ConditionSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind()) << '(';
  bool first = true;
  for (const auto& [k, v] : coefficients()) {
    if (!first) os << ", ";
    first = false;
    os << k << '=' << v;
  }
  os << ')';
  return os.str();
}

bool operator==(const ConditionSpec& a, const ConditionSpec& b) {
  return a.kind() == b.kind() && a.coefficients() == b.coefficients();
}

// ---------------------------------------------------------------------------
// Pair evaluation

namespace {

using Terms = PairTerms;

/// LHS/RHS of `cond` at (x, y), or nullopt when the pair is outside the template's scope.
template <typename Dist, typename Map>
std::optional<Terms> evaluate(const ConditionSpec& cond, const Dist& d, const Map& f,
                              PointIndex x, PointIndex y) {
  const PointIndex fx = f(x);
  const PointIndex fy = f(y);
  const double dfxfy = d(fx, fy);
  const double dxy = d(x, y);
  auto upper = [](double lhs, double rhs) { return Terms{lhs, rhs, rhs - lhs}; };

  return std::visit(
      [&](const auto& p) -> std::optional<Terms> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, cond::Banach>) {
          if (x == y) return std::nullopt;
          return upper(dfxfy, p.alpha * dxy);
        } else if constexpr (std::is_same_v<T, cond::Quasi>) {
          const double m = std::max({dxy, d(x, fx), d(y, fy), d(x, fy), d(y, fx)});
          return upper(dfxfy, p.c * m);
        } else if constexpr (std::is_same_v<T, cond::SumType>) {
          return upper(dfxfy, p.a * (d(x, fx) + d(y, fy)) + p.b * (d(x, fy) + d(y, fx)));
        } else if constexpr (std::is_same_v<T, cond::Rational>) {
          if (x == y) return std::nullopt;
          const double dxfx = d(x, fx);
          return upper(dfxfy + p.a * d(y, fx), p.b * dxfx * dxfx / dxy + p.c * dxy);
        } else if constexpr (std::is_same_v<T, cond::Expansive>) {
          if (x == y) return std::nullopt;
          const double rhs = p.delta3 * dxy;
          return Terms{dfxfy, rhs, dfxfy - rhs};
        } else if constexpr (std::is_same_v<T, cond::OaaG>) {
          const std::array<Terms, 3> clauses{
              upper(dfxfy, p.a * dxy),
              upper(dfxfy, p.b * (d(x, fx) + d(y, fy))),
              upper(dfxfy, p.c * (d(x, fy) + d(y, fx))),
          };
          return *std::min_element(clauses.begin(), clauses.end(),
                                   [](const Terms& l, const Terms& r) { return l.margin < r.margin; });
        } else if constexpr (std::is_same_v<T, cond::OaaIterated>) {
          const PointIndex ffx = f(fx);
          const PointIndex ffy = f(fy);
          const double rhs = p.e * dfxfy + p.f * d(fx, ffx) + p.g * d(fy, ffy) +
                             p.h * d(fx, ffy) + p.i * d(fy, ffx);
          return upper(d(ffx, ffy), rhs);
        } else {
          const double dxfx = d(x, fx);
          const double dyfy = d(y, fy);
          const double rhs = p.k1_sq * dxy + p.k2_sq * (dxfx + dyfy) +
                             p.k3_sq * std::sqrt(dxy * std::min(dxfx, dyfy));
          return upper(dfxfy, rhs);
        }
      },
      cond.params());
}

bool violates(const ConditionSpec& cond, double margin, double tolerance) {
  return cond.strict() ? !(margin > tolerance) : margin < -tolerance;
}

template <typename Map>
CheckReport scan(const DigitalMetricSpace& space, const Map& f, std::span<const PointIndex> domain,
                 const ConditionSpec& cond, double tolerance) {
  auto d = [&space](PointIndex i, PointIndex j) { return space.d(i, j); };
  CheckReport report;
  for (auto x : domain) {
    for (auto y : domain) {
      const auto terms = evaluate(cond, d, f, x, y);
      if (!terms) continue;
      ++report.pairs_checked;
      if (terms->margin < report.margin) {
        report.margin = terms->margin;
        report.tightest = {x, y};
        report.lhs = terms->lhs;
        report.rhs = terms->rhs;
      }
      if (report.holds && violates(cond, terms->margin, tolerance)) {
        report.holds = false;
        report.witness = {x, y};
      }
    }
  }
  return report;
}

std::vector<PointIndex> all_indices(std::size_t n) {
  std::vector<PointIndex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

void require_same_size(const DigitalMetricSpace& space, const SelfMap& f, std::string_view op) {
  if (f.size() != space.size()) {
    throw PreconditionError(std::string(op) + ": map has " + std::to_string(f.size()) +
                            " entries, space has " + std::to_string(space.size()) + " points");
  }
}

}  // namespace

CheckReport check_condition(const DigitalMetricSpace& space, const SelfMap& f,
                            const ConditionSpec& cond, double tolerance) {
  require_same_size(space, f, "check_condition");
  const auto domain = all_indices(space.size());
  return scan(space, f, domain, cond, tolerance);
}

CheckReport check_condition_on(const DigitalMetricSpace& space,
                               std::span<const PointIndex> image_of,
                               std::span<const PointIndex> domain, const ConditionSpec& cond,
                               double tolerance) {
  if (image_of.size() != space.size()) {
    throw PreconditionError("check_condition_on: image table size does not match space");
  }
  std::vector<bool> in_domain(space.size(), false);
  for (auto x : domain) {
    if (x >= space.size()) throw PreconditionError("check_condition_on: domain index out of range");
    in_domain[x] = true;
  }
  for (auto x : domain) {
    if (image_of[x] >= space.size()) {
      throw PreconditionError("check_condition_on: image index out of range");
    }
    if (cond.kind() == ConditionKind::oaa_iterated && !in_domain[image_of[x]]) {
      throw PreconditionError("check_condition_on: iterated template needs f(x) inside the domain");
    }
  }
  auto f = [image_of](PointIndex i) { return image_of[i]; };
  return scan(space, f, domain, cond, tolerance);
}

std::optional<PairTerms> evaluate_pair(const DigitalMetricSpace& space, const SelfMap& f,
                                       const ConditionSpec& cond, PointIndex x, PointIndex y) {
  require_same_size(space, f, "evaluate_pair");
  if (x >= space.size() || y >= space.size()) throw PreconditionError("evaluate_pair: index out of range");
  auto d = [&space](PointIndex i, PointIndex j) { return space.d(i, j); };
  return evaluate(cond, d, f, x, y);
}

CheckReport check_lipschitz(const DigitalMetricSpace& space, const SelfMap& f, double a,
                            double tolerance) {
  require_same_size(space, f, "check_lipschitz");
  require_nonneg("lipschitz", {a});
  CheckReport report;
  for (PointIndex x = 0; x < space.size(); ++x) {
    for (PointIndex y = 0; y < space.size(); ++y) {
      ++report.pairs_checked;
      const double lhs = space.d(f(x), f(y));
      const double rhs = a * space.d(x, y);
      if (rhs - lhs < report.margin) {
        report.margin = rhs - lhs;
        report.tightest = {x, y};
        report.lhs = lhs;
        report.rhs = rhs;
      }
      if (report.holds && rhs - lhs < -tolerance) {
        report.holds = false;
        report.witness = {x, y};
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Coefficient fitting

namespace {

/// Largest lhs/kernel over pairs with positive lhs; +inf on a zero kernel.
double max_ratio(const std::vector<std::pair<double, double>>& lhs_kernel) {
  double best = 0.0;
  for (const auto& [lhs, kernel] : lhs_kernel) {
    if (lhs <= 0.0) continue;
    if (kernel <= 0.0) return kInf;
    best = std::max(best, lhs / kernel);
  }
  return best;
}

struct Blend {
  double weight;  // share of the first kernel
  double scale;   // smallest total coefficient that works in this direction
};

/// Minimizes, over w in [0, 1], max_p lhs_p / (w A_p + (1 - w) B_p). The objective is
/// a max of functions convex in w, so a coarse grid plus golden-section refinement suffices.
Blend best_blend(const std::vector<std::array<double, 3>>& rows) {
  auto objective = [&rows](double w) {
    double best = 0.0;
    for (const auto& [lhs, ka, kb] : rows) {
      if (lhs <= 0.0) continue;
      const double kernel = w * ka + (1.0 - w) * kb;
      if (kernel <= 0.0) return kInf;
      best = std::max(best, lhs / kernel);
    }
    return best;
  };
  constexpr int kGrid = 40;
  int best_i = 0;
  double best_val = kInf;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = objective(static_cast<double>(i) / kGrid);
    if (v < best_val) {
      best_val = v;
      best_i = i;
    }
  }
  double lo = std::max(0, best_i - 1) / static_cast<double>(kGrid);
  double hi = std::min(kGrid, best_i + 1) / static_cast<double>(kGrid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - ratio * (hi - lo);
    const double m2 = lo + ratio * (hi - lo);
    if (objective(m1) <= objective(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double w = (lo + hi) / 2.0;
  const double v = objective(w);
  if (v <= best_val) return {w, v};
  return {static_cast<double>(best_i) / kGrid, best_val};
}

// w * total + (1 - w) * total can round up past the bound.
std::pair<double, double> split(double total, double w, double bound) {
  double a = w * total;
  double b = (1.0 - w) * total;
  while (a + b >= bound) {
    if (b >= a) {
      b = std::nextafter(b, 0.0);
    } else {
      a = std::nextafter(a, 0.0);
    }
  }
  return {a, b};
}

}  // namespace

double tightest_coefficient(const DigitalMetricSpace& space, const SelfMap& f,
                            ConditionKind family) {
  require_same_size(space, f, "tightest_coefficient");
  const std::size_t n = space.size();
  auto d = [&space](PointIndex i, PointIndex j) { return space.d(i, j); };
  switch (family) {
    case ConditionKind::banach: {
      std::vector<std::pair<double, double>> rows;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          if (x != y) rows.emplace_back(d(f(x), f(y)), d(x, y));
        }
      }
      return max_ratio(rows);
    }
    case ConditionKind::quasi: {
      std::vector<std::pair<double, double>> rows;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          const auto fx = f(x), fy = f(y);
          rows.emplace_back(d(fx, fy), std::max({d(x, y), d(x, fx), d(y, fy), d(x, fy), d(y, fx)}));
        }
      }
      return max_ratio(rows);
    }
    case ConditionKind::expansive: {
      double best = kInf;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          if (x != y) best = std::min(best, d(f(x), f(y)) / d(x, y));
        }
      }
      return best;
    }
    default:
      throw DomainError("tightest_coefficient: family must be banach, quasi or expansive");
  }
}

std::optional<ConditionSpec> fit_coefficients(const DigitalMetricSpace& space, const SelfMap& f,
                                              ConditionKind family) {
  require_same_size(space, f, "fit_coefficients");
  const std::size_t n = space.size();
  auto d = [&space](PointIndex i, PointIndex j) { return space.d(i, j); };
  switch (family) {
    case ConditionKind::banach: {
      const double t = tightest_coefficient(space, f, family);
      if (!(t < 1.0 - kDefaultTolerance)) return std::nullopt;
      return ConditionSpec::banach(t + (1.0 - t) / 2.0);
    }
    case ConditionKind::quasi: {
      const double t = tightest_coefficient(space, f, family);
      if (!(t < 0.5 - kDefaultTolerance)) return std::nullopt;
      return ConditionSpec::quasi(t + (0.5 - t) / 2.0);
    }
    case ConditionKind::expansive: {
      const double t = tightest_coefficient(space, f, family);
      return ConditionSpec::expansive(std::isfinite(t) ? t : 0.0);
    }
    case ConditionKind::oaa_g: {
      std::vector<std::pair<double, double>> g1, g2, g3;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          const auto fx = f(x), fy = f(y);
          const double lhs = d(fx, fy);
          g1.emplace_back(lhs, d(x, y));
          g2.emplace_back(lhs, d(x, fx) + d(y, fy));
          g3.emplace_back(lhs, d(x, fy) + d(y, fx));
        }
      }
      const double a = max_ratio(g1), b = max_ratio(g2), c = max_ratio(g3);
      const double sum = a + b + c;
      if (!(sum < 1.0 - kDefaultTolerance)) return std::nullopt;
      const double slack = (1.0 - sum) / 4.0;
      return ConditionSpec::oaa_g(a + slack, b + slack, c + slack);
    }
    case ConditionKind::sum_type: {
      std::vector<std::array<double, 3>> rows;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          const auto fx = f(x), fy = f(y);
          rows.push_back({d(fx, fy), d(x, fx) + d(y, fy), d(x, fy) + d(y, fx)});
        }
      }
      const auto blend = best_blend(rows);
      if (!(blend.scale < 0.5 - kDefaultTolerance)) return std::nullopt;
      const double total = blend.scale + (0.5 - blend.scale) / 2.0;
      const auto [a, b] = split(total, blend.weight, 0.5);
      return ConditionSpec::sum_type(a, b);
    }
    case ConditionKind::rational: {
      std::vector<std::array<double, 3>> rows;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          if (x == y) continue;
          const double dxfx = d(x, f(x));
          rows.push_back({d(f(x), f(y)), dxfx * dxfx / d(x, y), d(x, y)});
        }
      }
      const auto blend = best_blend(rows);
      if (!(blend.scale < 1.0 - kDefaultTolerance)) return std::nullopt;
      const double total = blend.scale + (1.0 - blend.scale) / 2.0;
      const auto [b, c] = split(total, blend.weight, 1.0);
      // Spend part of the remaining slack on the a-term.
      double a_max = kInf;
      for (PointIndex x = 0; x < n; ++x) {
        for (PointIndex y = 0; y < n; ++y) {
          if (x == y) continue;
          const double weight = d(y, f(x));
          if (weight <= 0.0) continue;
          const double dxfx = d(x, f(x));
          const double slack = b * dxfx * dxfx / d(x, y) + c * d(x, y) - d(f(x), f(y));
          a_max = std::min(a_max, std::max(0.0, slack) / weight);
        }
      }
      return ConditionSpec::rational(std::isfinite(a_max) ? std::min(a_max / 2.0, 1.0) : 1.0, b, c);
    }
    default:
      throw DomainError("fit_coefficients: unsupported family " + std::string(to_string(family)));
  }
}

// ---------------------------------------------------------------------------
// Coefficient arithmetic

RatioL ratio_L(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw DomainError("ratio_L: c must lie in [0, 1)");
  const double value = c / (1.0 - c);
  return {value, value < 1.0};
}

RatioR ratio_r(double e, double f, double g, double h, double i) {
  require_nonneg("ratio_r", {e, f, g, h, i});
  if (!(g + h < 1.0)) throw DomainError("ratio_r: g + h must be < 1");
  const double value = (e + f + h) / (1.0 - g - h);
  const double sum = e + f + g + h + i;
  return {value, sum, sum < 1.0, value < 1.0};
}

double constant_collapse_bound(const DigitalMetricSpace& space) {
  if (space.size() < 2) {
    throw PreconditionError("constant_collapse_bound: needs at least two points");
  }
  return space.min_separation() / space.diameter();
}

double oaa_beta_margin(const DigitalMetricSpace& space, const SelfMap& f, double beta) {
  require_same_size(space, f, "oaa_beta_margin");
  double margin = kInf;
  for (PointIndex x = 0; x < space.size(); ++x) {
    for (PointIndex y = 0; y < space.size(); ++y) {
      const auto fx = f(x), fy = f(y);
      const double m = std::max({space.d(x, y), (space.d(x, fx) + space.d(y, fy)) / 2.0,
                                 (space.d(x, fy) + space.d(y, fx)) / 2.0});
      margin = std::min(margin, beta * m - space.d(fx, fy));
    }
  }
  return margin;
}

}  // namespace digifix
