#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "digifix/error.hpp"
#include "digifix/lattice.hpp"

using namespace digifix;

namespace {

// Floyd-Warshall hop counts; independent of the BFS in the library.
std::vector<std::vector<std::size_t>> hop_matrix(const DigitalImage& img) {
  const std::size_t n = img.size();
  constexpr std::size_t inf = static_cast<std::size_t>(-1) / 4;
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && cu_adjacent(img.point(i), img.point(j), img.u())) m[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = std::min(m[i][j], m[i][k] + m[k][j]);
  return m;
}

DigitalImage random_image(std::mt19937_64& rng, std::size_t max_points = 8) {
  std::uniform_int_distribution<int> dim(1, 3);
  const int q = dim(rng);
  std::uniform_int_distribution<Coord> coord(0, 3);
  std::set<LatticePoint> pts;
  const std::size_t room = q == 1 ? 4 : max_points;  // only 4 points fit on a line
  const std::size_t want = std::uniform_int_distribution<std::size_t>(1, std::min(room, max_points))(rng);
  while (pts.size() < want) {
    std::vector<Coord> c(q);
    for (auto& v : c) v = coord(rng);
    pts.insert(LatticePoint(c));
  }
  const int u = std::uniform_int_distribution<int>(1, q)(rng);
  return DigitalImage({pts.begin(), pts.end()}, u);
}

}  // namespace

TEST_CASE("cu_adjacent examples") {
  CHECK(cu_adjacent({0, 0}, {1, 1}, 2));
  CHECK_FALSE(cu_adjacent({0, 0}, {1, 1}, 1));
  CHECK_FALSE(cu_adjacent({0, 0}, {0, 2}, 2));
  CHECK_FALSE(cu_adjacent({5}, {5}, 1));
  CHECK(cu_adjacent({0, 0, 0}, {1, -1, 0}, 2));
  CHECK_FALSE(cu_adjacent({0, 0, 0}, {1, -1, 1}, 2));
}

TEST_CASE("cu_adjacent errors") {
  CHECK_THROWS_AS(cu_adjacent({0}, {0, 1}, 1), DomainError);
  CHECK_THROWS_AS(cu_adjacent({0, 0}, {0, 1}, 0), DomainError);
  CHECK_THROWS_AS(cu_adjacent({0, 0}, {0, 1}, 3), DomainError);
}

TEST_CASE("cu_adjacent symmetric, irreflexive, monotone in u") {
  std::vector<LatticePoint> cube;
  for (Coord a = -1; a <= 1; ++a)
    for (Coord b = -1; b <= 1; ++b)
      for (Coord c = -1; c <= 2; ++c) cube.push_back({a, b, c});
  for (const auto& x : cube) {
    for (const auto& y : cube) {
      for (int u = 1; u <= 3; ++u) {
        const bool adj = cu_adjacent(x, y, u);
        CHECK(adj == cu_adjacent(y, x, u));
        if (x == y) CHECK_FALSE(adj);
        for (int v = u; v <= 3 && adj; ++v) CHECK(cu_adjacent(x, y, v));
        // oracle: count unit differences, reject anything larger
        int unit = 0;
        bool big = false;
        for (std::size_t i = 0; i < 3; ++i) {
          const auto diff = x[i] - y[i];
          unit += diff == 1 || diff == -1;
          big = big || diff > 1 || diff < -1;
        }
        CHECK(adj == (!big && unit >= 1 && unit <= u));
      }
    }
  }
}

TEST_CASE("image construction") {
  CHECK_THROWS_AS(DigitalImage({}, 1), DomainError);
  CHECK_THROWS_AS(DigitalImage({{0}, {0}}, 1), DomainError);
  CHECK_THROWS_AS(DigitalImage({{0}, {0, 1}}, 1), DomainError);
  CHECK_THROWS_AS(DigitalImage({{0, 0}}, 3), DomainError);
  const auto img = DigitalImage::interval(-2, 2);
  CHECK(img.size() == 5);
  CHECK(img.index_of({0}) == PointIndex{2});
  CHECK_FALSE(img.index_of({7}).has_value());
  CHECK_THROWS_AS(img.require_index({7}), PreconditionError);
}

TEST_CASE("neighbors examples") {
  const auto line = DigitalImage::interval(0, 3);
  CHECK(neighbors(line, {0}) == std::vector<LatticePoint>{{1}});
  CHECK(neighbors(line, {1}) == std::vector<LatticePoint>{{0}, {2}});
  const DigitalImage diag({{0, 0}, {1, 1}, {3, 3}}, 2);
  CHECK(neighbors(diag, {0, 0}) == std::vector<LatticePoint>{{1, 1}});
  CHECK_THROWS(neighbors(line, {9}));
}

TEST_CASE("components examples") {
  CHECK(components(DigitalImage::interval(0, 3)).size() == 1);
  CHECK(components(DigitalImage({{0}, {5}}, 1)).size() == 2);
  const DigitalImage img({{0, 0}, {1, 1}, {5, 5}}, 2);
  const auto parts = components(img);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == std::vector<PointIndex>{0, 1});
  CHECK(parts[1] == std::vector<PointIndex>{2});
}

TEST_CASE("find_path examples") {
  const auto line = DigitalImage::interval(0, 3);
  auto p = find_path(line, LatticePoint{0}, LatticePoint{3});
  REQUIRE(p);
  CHECK(p->length() == 3);
  CHECK(p->vertices == std::vector<PointIndex>{0, 1, 2, 3});
  auto same = find_path(line, LatticePoint{2}, LatticePoint{2});
  REQUIRE(same);
  CHECK(same->length() == 0);
  CHECK_FALSE(find_path(DigitalImage({{0}, {5}}, 1), LatticePoint{0}, LatticePoint{5}));
  CHECK_THROWS(find_path(line, LatticePoint{0}, LatticePoint{4}));
}

TEST_CASE("find_path breaks ties by smallest index") {
  // Square: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1); two shortest routes 0->3 under c_1.
  const DigitalImage sq({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 1);
  auto p = find_path(sq, 0, 3);
  REQUIRE(p);
  CHECK(p->vertices == std::vector<PointIndex>{0, 1, 3});
}

TEST_CASE("digital continuity examples") {
  const auto two = DigitalImage::interval(0, 1);
  CHECK(is_digitally_continuous(two, SelfMap({1, 0})).continuous);
  const auto three = DigitalImage::interval(0, 2);
  const auto r = is_digitally_continuous(three, SelfMap({0, 2, 2}));
  CHECK_FALSE(r.continuous);
  REQUIRE(r.witness);
  CHECK(*r.witness == std::pair<PointIndex, PointIndex>{0, 1});
  for (PointIndex c = 0; c < 3; ++c) {
    CHECK(is_digitally_continuous(three, SelfMap::constant(3, c)).continuous);
  }
}

TEST_CASE("self map basics") {
  CHECK_THROWS_AS(SelfMap({0, 2}), DomainError);
  CHECK(SelfMap::from_numeral(5, 3) == SelfMap({0, 1, 2}));
  CHECK(SelfMap::identity(3) == SelfMap({0, 1, 2}));
  CHECK(SelfMap::constant(3, 1).constant_value() == PointIndex{1});
  CHECK_FALSE(SelfMap({0, 1}).constant_value());
  CHECK(compose(SelfMap({1, 2, 0}), SelfMap({2, 0, 1})) == SelfMap::identity(3));
  CHECK(commute(SelfMap({1, 2, 0}), SelfMap({2, 0, 1})));
  CHECK_FALSE(commute(SelfMap({1, 1, 2}), SelfMap({0, 2, 2})));
}

TEST_CASE("property: paths, partitions, composition on random images") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    const auto img = random_image(rng);
    const std::size_t n = img.size();
    const auto hops = hop_matrix(img);

    // paths agree with the Floyd-Warshall oracle and are genuine paths
    for (PointIndex x = 0; x < n; ++x) {
      for (PointIndex y = 0; y < n; ++y) {
        auto p = find_path(img, x, y);
        const bool reachable = hops[x][y] < n;
        REQUIRE(p.has_value() == reachable);
        if (!p) continue;
        CHECK(p->length() == hops[x][y]);
        CHECK(p->vertices.front() == x);
        CHECK(p->vertices.back() == y);
        for (std::size_t k = 1; k < p->vertices.size(); ++k) {
          CHECK(img.adjacent(p->vertices[k - 1], p->vertices[k]));
        }
      }
    }

    // components form a partition of connected, mutually non-adjacent parts
    const auto parts = components(img);
    std::vector<int> owner(n, -1);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (auto i : parts[k]) {
        CHECK(owner[i] == -1);
        owner[i] = static_cast<int>(k);
      }
    }
    for (PointIndex x = 0; x < n; ++x) {
      CHECK(owner[x] >= 0);
      for (PointIndex y = 0; y < n; ++y) {
        CHECK((owner[x] == owner[y]) == (hops[x][y] < n));
      }
    }

    // composition of continuous maps is continuous
    std::vector<SelfMap> continuous;
    std::uniform_int_distribution<PointIndex> pick(0, n - 1);
    for (int draw = 0; draw < 300 && continuous.size() < 6; ++draw) {
      std::vector<PointIndex> t(n);
      for (auto& v : t) v = pick(rng);
      SelfMap f(t);
      if (is_digitally_continuous(img, f).continuous) continuous.push_back(f);
    }
    continuous.push_back(SelfMap::identity(n));
    for (const auto& f : continuous) {
      for (const auto& g : continuous) {
        CHECK(is_digitally_continuous(img, compose(g, f)).continuous);
      }
    }
  }
}
