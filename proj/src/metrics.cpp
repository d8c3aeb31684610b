#include "digifix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digifix/error.hpp"

namespace digifix {

double lp_distance(const LatticePoint& x, const LatticePoint& y, double p) {
  if (x.dimension() != y.dimension()) throw DomainError("lp_distance: dimension mismatch");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_distance: p must be a finite real >= 1");
  if (p == 1.0) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < x.dimension(); ++i) sum += std::abs(x[i] - y[i]);
    return static_cast<double>(sum);
  }
  if (p == 2.0) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < x.dimension(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(static_cast<double>(sum));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    sum += std::pow(static_cast<double>(std::abs(x[i] - y[i])), p);
  }
  return std::pow(sum, 1.0 / p);
}

std::int64_t shortest_path_distance(const DigitalImage& img, PointIndex x, PointIndex y) {
  if (!is_connected(img)) {
    throw PreconditionError("shortest-path metric is undefined on a disconnected image");
  }
  const auto dist = bfs_distances(img, x);
  return static_cast<std::int64_t>(*dist.at(y));
}

std::int64_t shortest_path_distance(const DigitalImage& img, const LatticePoint& x,
                                    const LatticePoint& y) {
  return shortest_path_distance(img, img.require_index(x), img.require_index(y));
}

namespace {

void validate_table(const TableMetric& t, std::size_t n) {
  if (t.rows.size() != n) {
    throw DomainError("table metric has " + std::to_string(t.rows.size()) + " rows, image has " +
                      std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.rows[i].size() != n) {
      throw DomainError("table metric row " + std::to_string(i) + " has wrong length");
    }
  }
  auto at = [&](std::size_t i, std::size_t j) { return t.rows[i][j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v)) throw DomainError("table metric: non-finite entry");
      if (i == j && v != 0.0) {
        throw DomainError("table metric: nonzero diagonal at " + std::to_string(i));
      }
      if (i != j && !(v > 0.0)) {
        throw DomainError("table metric: non-positive distance between " + std::to_string(i) +
                          " and " + std::to_string(j));
      }
      if (v != at(j, i)) {
        throw DomainError("table metric: asymmetric at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (at(i, k) > at(i, j) + at(j, k) + kDefaultTolerance) {
          throw DomainError("table metric: triangle inequality fails for (" + std::to_string(i) +
                            ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
    }
  }
}

}  // namespace

DigitalMetricSpace::DigitalMetricSpace(DigitalImage image, MetricSpec spec)
    : image_(std::move(image)), spec_(std::move(spec)), n_(image_.size()), dist_(n_ * n_, 0.0) {
  if (const auto* lp = std::get_if<LpMetric>(&spec_)) {
    if (!(lp->p >= 1.0) || !std::isfinite(lp->p)) {
      throw DomainError("lp metric requires finite p >= 1");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        dist_[i * n_ + j] = dist_[j * n_ + i] = lp_distance(image_.point(i), image_.point(j), lp->p);
      }
    }
  } else if (std::holds_alternative<ShortestPathMetric>(spec_)) {
    if (!is_connected(image_)) {
      throw DomainError("shortest-path metric requires a connected image");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const auto hops = bfs_distances(image_, i);
      for (std::size_t j = 0; j < n_; ++j) dist_[i * n_ + j] = static_cast<double>(*hops[j]);
    }
  } else {
    const auto& table = std::get<TableMetric>(spec_);
    validate_table(table, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) dist_[i * n_ + j] = table.rows[i][j];
    }
  }

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      min_sep_ = std::min(min_sep_, d(i, j));
      diameter_ = std::max(diameter_, d(i, j));
    }
  }
}

TableMetric DigitalMetricSpace::distance_table() const {
  TableMetric t;
  t.rows.assign(n_, std::vector<double>(n_, 0.0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t.rows[i][j] = d(i, j);
  }
  return t;
}

DigitalMetricSpace build_space(DigitalImage img, MetricSpec spec) {
  return DigitalMetricSpace(std::move(img), std::move(spec));
}

MetricContinuity is_metrically_continuous(const DigitalMetricSpace& space, const SelfMap& f) {
  if (f.size() != space.size()) {
    throw PreconditionError("is_metrically_continuous: map size does not match space");
  }
  // d(x, y) < min_separation forces x == y, hence d(fx, fy) = 0 < epsilon.
  return {true, space.min_separation()};
}

}  // namespace digifix
