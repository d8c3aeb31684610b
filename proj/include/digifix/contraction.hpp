#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "digifix/metrics.hpp"

namespace digifix {

enum class ConditionKind { banach, quasi, sum_type, rational, expansive, oaa_g, oaa_iterated, saljah };

std::string_view to_string(ConditionKind kind);
std::optional<ConditionKind> parse_condition_kind(std::string_view name);

namespace cond {

/// d(fx,fy) < alpha d(x,y) for x != y.
struct Banach {
  double alpha;
};
/// d(fx,fy) <= c max{d(x,y), d(x,fx), d(y,fy), d(x,fy), d(y,fx)}.
struct Quasi {
  double c;
};
/// d(fx,fy) <= a [d(x,fx) + d(y,fy)] + b [d(x,fy) + d(y,fx)].
struct SumType {
  double a, b;
};
/// d(fx,fy) + a d(y,fx) <= b d(x,fx)^2 / d(x,y) + c d(x,y) for x != y.
struct Rational {
  double a, b, c;
};
/// d(fx,fy) >= delta3 d(x,y).
struct Expansive {
  double delta3;
};
/// (G1) d(Gx,Gy) <= a d(x,y), (G2) <= b [d(x,Gx) + d(y,Gy)], (G3) <= c [d(x,Gy) + d(y,Gx)].
struct OaaG {
  double a, b, c;
};
/// d(GGx,GGy) <= e d(Gx,Gy) + f d(Gx,GGx) + g d(Gy,GGy) + h d(Gx,GGy) + i d(Gy,GGx).
struct OaaIterated {
  double e, f, g, h, i;
};
/// d(Ta,Tb) <= k1^2 d(a,b) + k2^2 [d(a,Ta) + d(b,Tb)] + k3^2 sqrt(d(a,b) min{d(a,Ta), d(b,Tb)}).
/// Only the squares enter the inequality, so they are what is stored.
struct SalJah {
  double k1_sq, k2_sq, k3_sq;
};

}  // namespace cond

/// A contraction-type inequality template with coefficients validated against the
/// domain of its (corrected) theorem.
class ConditionSpec {
 public:
  using Params = std::variant<cond::Banach, cond::Quasi, cond::SumType, cond::Rational,
                              cond::Expansive, cond::OaaG, cond::OaaIterated, cond::SalJah>;

  static ConditionSpec banach(double alpha);
  static ConditionSpec quasi(double c);
  static ConditionSpec sum_type(double a, double b);
  static ConditionSpec rational(double a, double b, double c);
  static ConditionSpec expansive(double delta3);
  static ConditionSpec oaa_g(double a, double b, double c);
  static ConditionSpec oaa_iterated(double e, double f, double g, double h, double i);
  static ConditionSpec saljah(double k1, double k2, double k3);
  static ConditionSpec saljah_squared(double k1_sq, double k2_sq, double k3_sq);

  /// Build from named coefficients, e.g. ("quasi", {{"c", 0.3}}). Missing or unknown
  /// names are DomainErrors. saljah accepts k1,k2,k3 or k1_sq,k2_sq,k3_sq.
  static ConditionSpec from_coefficients(ConditionKind kind,
                                         const std::vector<std::pair<std::string, double>>& coeffs);

  ConditionKind kind() const;
  const Params& params() const { return params_; }
  /// Canonical named coefficients (saljah is reported by its squares).
  std::vector<std::pair<std::string, double>> coefficients() const;
  /// The inequality is strict ("<") rather than "<=" / ">=".
  bool strict() const;
  std::string describe() const;

  friend bool operator==(const ConditionSpec& a, const ConditionSpec& b);

 private:
  explicit ConditionSpec(Params p) : params_(std::move(p)) {}
  Params params_;
};

struct CheckReport {
  bool holds = true;
  /// First violating ordered pair in index order.
  std::optional<std::pair<PointIndex, PointIndex>> witness;
  /// Slack at the tightest pair: RHS - LHS for upper-bound templates, LHS - RHS for
  /// the expansive template. +inf when no pair was evaluated.
  double margin = kNoSeparation;
  std::optional<std::pair<PointIndex, PointIndex>> tightest;
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t pairs_checked = 0;
};

/// Exhaustive scan over all ordered pairs (x, y).
CheckReport check_condition(const DigitalMetricSpace& space, const SelfMap& f,
                            const ConditionSpec& cond, double tolerance = kDefaultTolerance);

/// Scan restricted to ordered pairs drawn from `domain`. `image_of[x]` is consulted only
/// for x in `domain`, so it may describe a map that is undefined elsewhere.
CheckReport check_condition_on(const DigitalMetricSpace& space,
                               std::span<const PointIndex> image_of,
                               std::span<const PointIndex> domain, const ConditionSpec& cond,
                               double tolerance = kDefaultTolerance);

struct PairTerms {
  double lhs;
  double rhs;
  /// RHS - LHS, or LHS - RHS for the expansive template.
  double margin;
};

/// The template evaluated at one ordered pair; nullopt when the template skips the
/// pair (x == y for banach, rational and expansive).
std::optional<PairTerms> evaluate_pair(const DigitalMetricSpace& space, const SelfMap& f,
                                       const ConditionSpec& cond, PointIndex x, PointIndex y);

/// (G1) on its own: d(fx,fy) <= a d(x,y) for all pairs.
CheckReport check_lipschitz(const DigitalMetricSpace& space, const SelfMap& f, double a,
                            double tolerance = kDefaultTolerance);

/// Infimum coefficient for a one-coefficient family: banach/quasi give the largest
/// LHS-to-kernel ratio, expansive the smallest. A zero kernel under a nonzero LHS
/// yields +inf. The identity map gives 1.0 for banach, outside [0, 1).
double tightest_coefficient(const DigitalMetricSpace& space, const SelfMap& f,
                            ConditionKind family);

/// Coefficients inside the family's valid domain under which `f` passes, if such
/// coefficients are found. Exact for banach/quasi/oaa_g; sum_type and rational are
/// fitted by a one-dimensional search over the coefficient direction.
std::optional<ConditionSpec> fit_coefficients(const DigitalMetricSpace& space, const SelfMap& f,
                                              ConditionKind family);

struct RatioL {
  double value;
  bool is_contractive;
};

/// c / (1 - c); below 1 exactly when c < 1/2.
RatioL ratio_L(double c);

struct RatioR {
  double value;
  double coefficient_sum;
  bool sum_ok;
  bool r_lt_1;
};

/// r = (e + f + h) / (1 - g - h), alongside whether e+f+g+h+i < 1 and r < 1.
RatioR ratio_r(double e, double f, double g, double h, double i);

/// min_separation / diameter: below this, a (G1) map must be constant.
double constant_collapse_bound(const DigitalMetricSpace& space);

/// Smallest slack of d(Gx,Gy) < beta max{d(x,y), (d(x,Gx)+d(y,Gy))/2, (d(x,Gy)+d(y,Gx))/2}.
/// Informational only; beta carries no stated domain, so there is no verdict.
double oaa_beta_margin(const DigitalMetricSpace& space, const SelfMap& f, double beta);

}  // namespace digifix
