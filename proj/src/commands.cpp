#include "digifix/commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "digifix/document.hpp"
#include "digifix/error.hpp"
#include "digifix/falsify.hpp"

namespace digifix {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string pair_text(const std::optional<std::pair<PointIndex, PointIndex>>& p) {
  if (!p) return "none";
  return std::to_string(p->first) + "," + std::to_string(p->second);
}

std::string metric_text(const MetricSpec& m) {
  if (const auto* lp = std::get_if<LpMetric>(&m)) return "lp(p=" + num(lp->p) + ")";
  if (std::holds_alternative<ShortestPathMetric>(m)) return "shortest_path";
  return "table";
}

void describe_space(const DigitalMetricSpace& space, std::ostream& out) {
  out << "space: " << space.size() << " point(s) in Z^" << space.image().dimension() << ", c_"
      << space.image().u() << " adjacency, metric " << metric_text(space.spec()) << '\n';
}

std::string point_text(const DigitalImage& img, PointIndex i) {
  return std::to_string(i) + " " + img.point(i).to_string();
}

void print_table(const DigitalImage& img, const SelfMap& f, std::ostream& out) {
  for (PointIndex i = 0; i < f.size(); ++i) {
    out << "  " << img.point(i).to_string() << " -> " << img.point(f(i)).to_string() << '\n';
  }
}

std::string table_text(const SelfMap& f) {
  std::string s;
  for (PointIndex i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f(i));
  }
  return s;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const DomainError& e) {
    err << "invalid document: " << e.what() << '\n';
    return kExitSemanticError;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitSemanticError;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kExitSemanticError;
  }
}

}  // namespace

int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_document(path);
    if (!doc.map) throw DomainError("document has no map");
    if (!doc.condition) throw DomainError("document has no condition");
    const auto space = doc.space();
    const auto report = check_condition(space, *doc.map, *doc.condition, opts.tolerance);

    describe_space(space, out);
    out << "condition: " << doc.condition->describe() << '\n';
    out << "pairs checked: " << report.pairs_checked << '\n';
    out << "verdict: " << (report.holds ? "HOLDS" : "FAILS") << '\n';
    if (report.witness) {
      out << "witness: (" << point_text(space.image(), report.witness->first) << ", "
          << point_text(space.image(), report.witness->second) << ")\n";
    }
    if (report.tightest) {
      out << "tightest pair: (" << report.tightest->first << ", " << report.tightest->second
          << ") lhs=" << num(report.lhs) << " rhs=" << num(report.rhs)
          << " margin=" << num(report.margin) << '\n';
    }
    out << "record command=check holds=" << (report.holds ? "true" : "false")
        << " pairs=" << report.pairs_checked << " margin=" << num(report.margin)
        << " tightest=" << pair_text(report.tightest) << " witness=" << pair_text(report.witness)
        << '\n';
    return report.holds ? kExitOk : kExitVerdictFalse;
  });
}

int cmd_fixed_points(const std::string& path, const CliOptions& opts, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_document(path);
    if (!doc.map) throw DomainError("document has no map");
    const auto space = doc.space();
    const auto fps = fixed_points(space, *doc.map);

    describe_space(space, out);
    if (fps.empty()) {
      out << "no fixed points\n";
    } else {
      out << fps.size() << " fixed point(s):\n";
      for (auto p : fps) out << "  " << point_text(space.image(), p) << '\n';
    }
    const auto orbit = picard_orbit(space, *doc.map, 0, opts.max_iter);
    out << "orbit from 0:";
    for (auto p : orbit.orbit) out << ' ' << p;
    out << (orbit.constancy_index ? "" : " ...") << '\n';

    std::string unique = "none";
    if (doc.condition) {
      out << "condition: " << doc.condition->describe() << '\n';
      try {
        const auto solved = solve_unique_fixed_point(space, *doc.map, *doc.condition, opts.tolerance);
        unique = std::to_string(solved.point);
        out << "unique fixed point: " << point_text(space.image(), solved.point) << " after "
            << solved.orbit.iterations << " step(s)\n";
      } catch (const PreconditionError& e) {
        out << "uniqueness not certified: " << e.what() << '\n';
      }
    }
    std::string list;
    for (auto p : fps) list += (list.empty() ? "" : ",") + std::to_string(p);
    out << "record command=fixed-points count=" << fps.size()
        << " points=" << (list.empty() ? "none" : list) << " unique=" << unique
        << " orbit_steps=" << orbit.iterations
        << " constancy=" << (orbit.constancy_index ? std::to_string(*orbit.constancy_index) : "none")
        << '\n';
    return kExitOk;
  });
}

int cmd_fpp(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_document(path);
    const auto report = has_fpp(doc.image, opts.budget);
    out << "image: " << doc.image.size() << " point(s), c_" << doc.image.u() << " adjacency\n";
    out << "maps enumerated: " << report.maps_enumerated << '\n';
    out << "FPP: " << (report.has_fpp ? "yes" : "no") << '\n';
    if (report.witness) {
      out << "continuous fixed-point-free witness:\n";
      print_table(doc.image, *report.witness, out);
    }
    out << "record command=fpp has_fpp=" << (report.has_fpp ? "true" : "false")
        << " maps=" << report.maps_enumerated
        << " witness=" << (report.witness ? table_text(*report.witness) : "none") << '\n';
    return report.has_fpp ? kExitOk : kExitVerdictFalse;
  });
}

int cmd_falsify(const std::optional<std::string>& path, const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    if (!path) {
      const auto dbl = builtin_doubling_counterexample(opts.window);
      out << "doubling map on {2^n | 1 <= n <= " << dbl.window << "}:\n"
          << "  pairs: " << dbl.pairs << ", ratio d(fx,fy)/d(x,y) = " << num(dbl.ratio)
          << (dbl.ratio_exact ? " (exact)" : "") << '\n'
          << "  d(fx,fy) >= 1.5 d(x,y): " << (dbl.relation_holds ? "holds" : "fails") << '\n'
          << "  fixed points in window: " << dbl.fixed_points.size() << '\n';
      const auto inv = builtin_involution_counterexample();
      out << "involution T(x) = 1 - x on [0,1]_Z:\n"
          << "  k1^2 + k2^2 + k3^2 = " << num(inv.coefficient_sum) << '\n'
          << "  pair (0,1): lhs=" << num(inv.distinct_pair.lhs) << " rhs=" << num(inv.distinct_pair.rhs)
          << '\n'
          << "  condition: " << (inv.check.holds ? "holds" : "fails") << ", fixed points: "
          << inv.fixed_points.size() << '\n';
      const bool ok = dbl.certified() && inv.certified();
      out << "record command=falsify doubling=" << (dbl.certified() ? "refuted" : "not_refuted")
          << " window=" << dbl.window << " ratio=" << num(dbl.ratio)
          << " involution=" << (inv.certified() ? "refuted" : "not_refuted")
          << " coefficient_sum=" << num(inv.coefficient_sum) << '\n';
      return ok ? kExitOk : kExitVerdictFalse;
    }

    const auto doc = load_document(*path);
    if (!doc.condition) throw DomainError("document has no condition");
    ImagePool pool;
    pool.universe = doc.image.points();
    pool.u_values = {doc.image.u()};
    pool.max_points = doc.image.size();
    pool.metrics = {doc.metric};
    const auto outcome =
        search_counterexample(*doc.condition, pool, {opts.budget, opts.seed}, opts.tolerance);
    out << "condition: " << doc.condition->describe() << '\n'
        << "spaces scanned: " << outcome.spaces_scanned << ", maps scanned: " << outcome.maps_scanned
        << '\n';
    if (outcome.found) {
      const auto& ce = *outcome.found;
      out << "counterexample: condition holds, no fixed point\n";
      describe_space(ce.space, out);
      print_table(ce.space.image(), ce.map, out);
    } else {
      out << "no counterexample within budget\n";
    }
    out << "record command=falsify found=" << (outcome.found ? "true" : "false")
        << " spaces=" << outcome.spaces_scanned << " maps=" << outcome.maps_scanned
        << " seed=" << outcome.seed;
    if (outcome.found) out << " size=" << outcome.found->space.size() << " map=" << table_text(outcome.found->map);
    out << '\n';
    return outcome.found ? kExitOk : kExitVerdictFalse;
  });
}

int cmd_demo(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto items = run_demo(opts);
    std::size_t passed = 0;
    for (const auto& item : items) {
      passed += item.pass();
      out << (item.pass() ? "[PASS] " : "[FAIL] ") << item.claim << " -> "
          << (item.observed ? "TRUE" : "FALSE") << (item.expected ? "" : " (expected FALSE)");
      if (!item.detail.empty()) out << "  [" << item.detail << ']';
      out << '\n';
    }
    out << "record command=demo items=" << items.size() << " passed=" << passed
        << " failed=" << items.size() - passed << '\n';
    return passed == items.size() ? kExitOk : kExitVerdictFalse;
  });
}

}  // namespace digifix
