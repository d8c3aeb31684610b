#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "digifix/commands.hpp"
#include "digifix/document.hpp"
#include "digifix/error.hpp"
#include "digifix/falsify.hpp"

namespace py = pybind11;
using namespace digifix;

namespace {

std::vector<LatticePoint> to_points(const std::vector<std::vector<Coord>>& raw) {
  std::vector<LatticePoint> pts;
  pts.reserve(raw.size());
  for (const auto& c : raw) pts.emplace_back(c);
  return pts;
}

MetricSpec metric_from(const std::string& kind, double p,
                       const std::optional<std::vector<std::vector<double>>>& rows) {
  if (kind == "lp") return LpMetric{p};
  if (kind == "shortest_path") return ShortestPathMetric{};
  if (kind == "table") {
    if (!rows) throw DomainError("table metric needs rows");
    return TableMetric{*rows};
  }
  throw DomainError("unknown metric kind '" + kind + "'");
}

ConditionKind kind_from(const std::string& name) {
  auto kind = parse_condition_kind(name);
  if (!kind) throw DomainError("unknown condition variant '" + name + "'");
  return *kind;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixed-point checks on digital metric spaces";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("cu_adjacent",
        [](const std::vector<Coord>& x, const std::vector<Coord>& y, int u) {
          return cu_adjacent(LatticePoint(x), LatticePoint(y), u);
        },
        py::arg("x"), py::arg("y"), py::arg("u"));
  m.def("lp_distance",
        [](const std::vector<Coord>& x, const std::vector<Coord>& y, double p) {
          return lp_distance(LatticePoint(x), LatticePoint(y), p);
        },
        py::arg("x"), py::arg("y"), py::arg("p"));

  py::class_<DigitalImage>(m, "DigitalImage")
      .def(py::init([](const std::vector<std::vector<Coord>>& points, int u) {
             return DigitalImage(to_points(points), u);
           }),
           py::arg("points"), py::arg("u"))
      .def_static("interval", &DigitalImage::interval, py::arg("lo"), py::arg("hi"))
      .def_property_readonly("size", &DigitalImage::size)
      .def_property_readonly("dimension", &DigitalImage::dimension)
      .def_property_readonly("u", &DigitalImage::u)
      .def("point", [](const DigitalImage& img, PointIndex i) { return img.point(i).coords(); })
      .def("neighbors", [](const DigitalImage& img, PointIndex i) {
        auto span = img.neighbor_indices(i);
        return std::vector<PointIndex>(span.begin(), span.end());
      })
      .def("components", [](const DigitalImage& img) { return components(img); })
      .def("is_connected", [](const DigitalImage& img) { return is_connected(img); })
      .def("find_path",
           [](const DigitalImage& img, PointIndex x, PointIndex y) -> std::optional<std::vector<PointIndex>> {
             auto path = find_path(img, x, y);
             if (!path) return std::nullopt;
             return path->vertices;
           })
      .def("is_digitally_continuous", [](const DigitalImage& img, const std::vector<PointIndex>& table) {
        const auto r = is_digitally_continuous(img, SelfMap(table));
        return py::make_tuple(r.continuous, r.witness);
      });

  py::class_<DigitalMetricSpace>(m, "DigitalMetricSpace")
      .def(py::init([](const DigitalImage& img, const std::string& metric, double p,
                       const std::optional<std::vector<std::vector<double>>>& rows) {
             return build_space(img, metric_from(metric, p, rows));
           }),
           py::arg("image"), py::arg("metric") = "lp", py::arg("p") = 1.0, py::arg("rows") = py::none())
      .def_property_readonly("size", &DigitalMetricSpace::size)
      .def_property_readonly("min_separation", &DigitalMetricSpace::min_separation)
      .def_property_readonly("diameter", &DigitalMetricSpace::diameter)
      .def_property_readonly("image", &DigitalMetricSpace::image)
      .def("d", &DigitalMetricSpace::d);

  py::class_<ConditionSpec>(m, "ConditionSpec")
      .def(py::init([](const std::string& variant, const std::map<std::string, double>& coeffs) {
             std::vector<std::pair<std::string, double>> named(coeffs.begin(), coeffs.end());
             return ConditionSpec::from_coefficients(kind_from(variant), named);
           }),
           py::arg("variant"), py::arg("coefficients"))
      .def_property_readonly("variant", [](const ConditionSpec& c) { return std::string(to_string(c.kind())); })
      .def_property_readonly("coefficients", &ConditionSpec::coefficients)
      .def("__repr__", &ConditionSpec::describe);

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("holds", &CheckReport::holds)
      .def_readonly("witness", &CheckReport::witness)
      .def_readonly("margin", &CheckReport::margin)
      .def_readonly("tightest", &CheckReport::tightest)
      .def_readonly("lhs", &CheckReport::lhs)
      .def_readonly("rhs", &CheckReport::rhs)
      .def_readonly("pairs_checked", &CheckReport::pairs_checked);

  py::class_<OrbitResult>(m, "OrbitResult")
      .def_readonly("orbit", &OrbitResult::orbit)
      .def_readonly("constancy_index", &OrbitResult::constancy_index)
      .def_readonly("fixed_point", &OrbitResult::fixed_point)
      .def_readonly("iterations", &OrbitResult::iterations);

  m.def("check_condition",
        [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f, const ConditionSpec& c, double tol) {
          return check_condition(s, SelfMap(f), c, tol);
        },
        py::arg("space"), py::arg("map"), py::arg("condition"), py::arg("tolerance") = kDefaultTolerance);
  m.def("tightest_coefficient",
        [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f, const std::string& family) {
          return tightest_coefficient(s, SelfMap(f), kind_from(family));
        });
  m.def("fixed_points", [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f) {
    return fixed_points(s, SelfMap(f));
  });
  m.def("picard_orbit",
        [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f, PointIndex x0, std::size_t max_iter) {
          return picard_orbit(s, SelfMap(f), x0, max_iter);
        },
        py::arg("space"), py::arg("map"), py::arg("x0"), py::arg("max_iter") = 0);
  m.def("solve_unique_fixed_point",
        [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f, const ConditionSpec& c) {
          return solve_unique_fixed_point(s, SelfMap(f), c).point;
        });
  m.def("has_fpp",
        [](const DigitalImage& img, std::uint64_t budget) {
          const auto r = has_fpp(img, budget);
          std::optional<std::vector<PointIndex>> witness;
          if (r.witness) witness = std::vector<PointIndex>(r.witness->table().begin(), r.witness->table().end());
          return py::make_tuple(r.has_fpp, witness, r.maps_enumerated);
        },
        py::arg("image"), py::arg("budget") = kDefaultMapBudget);
  m.def("check_constant_collapse",
        [](const DigitalMetricSpace& s, const std::vector<PointIndex>& f, double a) {
          return check_constant_collapse(s, SelfMap(f), a);
        });
  m.def("ratio_L", [](double c) {
    const auto r = ratio_L(c);
    return py::make_tuple(r.value, r.is_contractive);
  });
  m.def("ratio_r", [](double e, double f, double g, double h, double i) {
    const auto r = ratio_r(e, f, g, h, i);
    return py::make_tuple(r.value, r.sum_ok, r.r_lt_1);
  });
  m.def("constant_collapse_bound", &constant_collapse_bound);

  m.def("doubling_counterexample", [](int window) {
    const auto r = builtin_doubling_counterexample(window);
    py::dict d;
    d["pairs"] = r.pairs;
    d["ratio"] = r.ratio;
    d["ratio_exact"] = r.ratio_exact;
    d["relation_holds"] = r.relation_holds;
    d["fixed_points"] = r.fixed_points;
    d["certified"] = r.certified();
    return d;
  });
  m.def("involution_counterexample", [] {
    const auto r = builtin_involution_counterexample();
    py::dict d;
    d["coefficient_sum"] = r.coefficient_sum;
    d["lhs"] = r.distinct_pair.lhs;
    d["rhs"] = r.distinct_pair.rhs;
    d["holds"] = r.check.holds;
    d["fixed_points"] = r.fixed_points;
    d["certified"] = r.certified();
    return d;
  });

  m.def("parse_document", [](const std::string& text) {
    const auto doc = parse_document(text);
    return py::make_tuple(doc.space(), doc.map ? std::optional<std::vector<PointIndex>>(
                                                     std::vector<PointIndex>(doc.map->table().begin(), doc.map->table().end()))
                                               : std::nullopt,
                          doc.condition);
  });
  m.def("run_demo", [](std::uint64_t seed) {
    CliOptions opts;
    opts.seed = seed;
    py::list out;
    for (const auto& item : run_demo(opts)) out.append(py::make_tuple(item.claim, item.pass(), item.detail));
    return out;
  }, py::arg("seed") = 0);
}
