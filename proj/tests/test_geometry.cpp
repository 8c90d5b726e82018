#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minorant/geometry.hpp"
#include "minorant/increments.hpp"
#include "minorant/rng.hpp"
#include "oracles.hpp"

using namespace minorant;

namespace {

WalkPath make(std::initializer_list<double> vals) {
  return WalkPath{std::vector<double>(vals)};
}

bool vertices_equal(const PolyLine& p,
                    std::initializer_list<std::pair<double, double>> want) {
  if (p.vertices.size() != want.size()) return false;
  std::size_t i = 0;
  for (const auto& [x, y] : want) {
    if (p.vertices[i].x != x || p.vertices[i].y != y) return false;
    ++i;
  }
  return true;
}

}  // namespace

TEST_CASE("convex minorant of simple paths") {
  CHECK(vertices_equal(convex_minorant(make({0, 1, 2, 3})), {{0, 0}, {3, 3}}));
  CHECK(vertices_equal(convex_minorant(make({0, -1, 0})),
                       {{0, 0}, {1, -1}, {2, 0}}));
  CHECK(vertices_equal(convex_minorant(make({0, 1, -1, 0})),
                       {{0, 0}, {2, -1}, {3, 0}}));
}

TEST_CASE("concave majorant of simple paths") {
  CHECK(vertices_equal(concave_majorant(make({0, 1, -1, 0})),
                       {{0, 0}, {1, 1}, {3, 0}}));
  CHECK(vertices_equal(concave_majorant(make({0, -1, -2})), {{0, 0}, {2, -2}}));
}

TEST_CASE("malformed paths are rejected") {
  CHECK_THROWS_AS(convex_minorant(WalkPath{{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(convex_minorant(WalkPath{{}}), std::invalid_argument);
  CHECK_THROWS_AS(convex_minorant(make({1, 2})), std::invalid_argument);
}

TEST_CASE("polyline lengths") {
  CHECK(polyline_length(PolyLine{{{0, 0}, {3, 3}}}) ==
        doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(polyline_length(PolyLine{{{0, 0}, {2, -1}, {3, 0}}}) ==
        doctest::Approx(std::sqrt(5.0) + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(polyline_length(convex_minorant(make({0, -1, 0}))) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("face decomposition") {
  const FaceDecomposition affine =
      face_decomposition(convex_minorant(make({0, 1, 2, 3, 4, 5})), 5);
  CHECK(affine.face_count == 1);
  REQUIRE(affine.face_lengths.size() == 1);
  CHECK(affine.face_lengths[0] == 5);

  const FaceDecomposition two =
      face_decomposition(convex_minorant(make({0, 1, -1, 0})), 3);
  REQUIRE(two.face_lengths.size() == 2);
  CHECK(two.face_lengths[0] == 2);
  CHECK(two.face_lengths[1] == 1);

  // non-integer abscissae signal a corrupted polyline
  CHECK_THROWS_AS(face_decomposition(PolyLine{{{0, 0}, {1.5, 1}, {3, 0}}}, 3),
                  std::invalid_argument);
}

TEST_CASE("face lengths partition [0,n] for random walks") {
  RngStream rng(11, 0);
  const IncrementLaw law = IncrementLaw::gaussian(0, 1);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint64_t n = 1 + (rng.next_u64() % 60);
    const WalkPath path = sample_walk(law, n, rng);
    const FaceDecomposition faces =
        face_decomposition(convex_minorant(path), n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < faces.face_lengths.size(); ++i) {
      total += faces.face_lengths[i];
      if (i) CHECK(faces.face_lengths[i] <= faces.face_lengths[i - 1]);
    }
    CHECK(total == n);
  }
}

TEST_CASE("path extremes take first argmax/argmin") {
  const PathExtremes a = path_extremes(make({0, 1, 1}));
  CHECK(a.max_value == 1.0);
  CHECK(a.argmax == 1);

  const PathExtremes b = path_extremes(make({0, -2, 3}));
  CHECK(b.min_value == -2.0);
  CHECK(b.argmin == 1);
  CHECK(b.max_value == 3.0);
  CHECK(b.argmax == 2);

  const PathExtremes c = path_extremes(make({0, 0, 0}));
  CHECK(c.argmax == 0);
  CHECK(c.argmin == 0);
}

TEST_CASE("perimeter equals hull perimeter and satisfies bounds") {
  // affine path, n = 3, slope 1: degenerate hull counted twice
  CHECK(perimeter(make({0, 1, 2, 3})) ==
        doctest::Approx(6.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(perimeter(make({0, 1, -1, 0})) ==
        doctest::Approx(2.0 * (std::sqrt(5.0) + std::sqrt(2.0)))
            .epsilon(1e-12));

  RngStream rng(5, 1);
  const IncrementLaw law = IncrementLaw::gaussian(0, 1);
  for (int rep = 0; rep < 100; ++rep) {
    const std::uint64_t n = 2 + (rng.next_u64() % 20);
    const WalkPath path = sample_walk(law, n, rng);
    std::vector<double> xs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) xs[k] = static_cast<double>(k);
    const double want = oracles::convex_hull_perimeter(xs, path.values);
    CHECK(perimeter(path) == doctest::Approx(want).epsilon(1e-9));
    CHECK(perimeter(path) >= 2.0 * static_cast<double>(n) - 1e-12);
  }
}

TEST_CASE("minorant dominance, convexity, reflection over random paths") {
  RngStream rng(17, 0);
  const IncrementLaw laws[3] = {IncrementLaw::gaussian(0, 1),
                                IncrementLaw::rademacher(),
                                IncrementLaw::cauchy()};
  for (int rep = 0; rep < 10000; ++rep) {
    const IncrementLaw& law = laws[rep % 3];
    const std::uint64_t n = 1 + (rng.next_u64() % 40);
    const WalkPath path = sample_walk(law, n, rng);
    const PolyLine lower = convex_minorant(path);

    // dominance at lattice points
    std::size_t seg = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k);
      while (lower.vertices[seg + 1].x < x) ++seg;
      const Vertex& a = lower.vertices[seg];
      const Vertex& b = lower.vertices[seg + 1];
      const double y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
      CHECK(y <= path.values[k] + 1e-9 * (1.0 + std::abs(path.values[k])));
    }

    // strictly increasing slopes
    for (std::size_t i = 2; i < lower.vertices.size(); ++i) {
      const double s1 = (lower.vertices[i - 1].y - lower.vertices[i - 2].y) /
                        (lower.vertices[i - 1].x - lower.vertices[i - 2].x);
      const double s2 = (lower.vertices[i].y - lower.vertices[i - 1].y) /
                        (lower.vertices[i].x - lower.vertices[i - 1].x);
      CHECK(s2 > s1);
    }

    // reflection identity, bit for bit
    const PolyLine upper = concave_majorant(path);
    WalkPath neg = path;
    for (double& v : neg.values) v = -v;
    const PolyLine lower_of_neg = convex_minorant(neg);
    REQUIRE(upper.vertices.size() == lower_of_neg.vertices.size());
    for (std::size_t i = 0; i < upper.vertices.size(); ++i) {
      CHECK(upper.vertices[i].x == lower_of_neg.vertices[i].x);
      CHECK(upper.vertices[i].y == -lower_of_neg.vertices[i].y);
    }
  }
}

TEST_CASE("sandwich bounds hold exactly") {
  RngStream rng(23, 0);
  const IncrementLaw laws[2] = {IncrementLaw::gaussian(0, 1),
                                IncrementLaw::pareto(0.5, 0.5, 0.5)};
  for (int rep = 0; rep < 2000; ++rep) {
    const IncrementLaw& law = laws[rep % 2];
    const std::uint64_t n = 1 + (rng.next_u64() % 50);
    const WalkPath path = sample_walk(law, n, rng);
    const double nn = static_cast<double>(n);
    const double sn = path.values.back();
    const PathExtremes ex = path_extremes(path);
    const double lmin = polyline_length(convex_minorant(path));
    const double lmaj = polyline_length(concave_majorant(path));
    const double tol = 1e-9 * (1.0 + std::abs(sn) + ex.max_value - ex.min_value);
    CHECK(2.0 * ex.max_value - sn <= lmaj + tol);
    CHECK(lmaj <= 2.0 * ex.max_value - sn + 2.0 * nn + tol);
    CHECK(sn - 2.0 * ex.min_value <= lmin + tol);
    CHECK(lmin <= sn - 2.0 * ex.min_value + 2.0 * nn + tol);

    // length lower bound: chord and horizontal extent
    const double chord = std::sqrt(nn * nn + sn * sn);
    CHECK(lmin >= std::max(nn, chord) - tol);
  }
}

TEST_CASE("matches the O(n^3) integer hull oracle") {
  RngStream rng(31, 0);
  // random integer paths, n <= 10, increments in [-3, 3]
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 10);
    std::vector<long long> vals{0};
    for (std::size_t k = 1; k <= n; ++k) {
      vals.push_back(vals.back() +
                     static_cast<long long>(rng.next_u64() % 7) - 3);
    }
    WalkPath path;
    for (long long v : vals) path.values.push_back(static_cast<double>(v));
    const auto want = oracles::minorant_vertices_int(vals);
    const PolyLine got = convex_minorant(path);
    REQUIRE(got.vertices.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(got.vertices[i].x == static_cast<double>(want[i].x));
      CHECK(got.vertices[i].y == want[i].y);
    }
  }
  // exhaustive over all Rademacher paths with n = 8
  oracles::enumerate_paths({1.0, -1.0}, 8, [](const std::vector<double>& p) {
    std::vector<long long> vals;
    for (double v : p) vals.push_back(static_cast<long long>(v));
    const auto want = oracles::minorant_vertices_int(vals);
    const PolyLine got = convex_minorant(WalkPath{p});
    REQUIRE(got.vertices.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(got.vertices[i].y == want[i].y);
    }
  });
}
