#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pqpierce/errors.hpp"
#include "pqpierce/geom.hpp"
#include "test_random.hpp"

using namespace pqpierce;

namespace {

ConvexBody tri(Point a, Point b, Point c) { return ConvexBody::polygon({a, b, c}); }

ConvexBody square(const Rational& x, const Rational& y, const Rational& side = 1) {
  return ConvexBody::polygon({Point{x, y}, Point{x + side, y}, Point{x + side, y + side}, Point{x, y + side}});
}

bool reduced(const Rational& r) {
  return denominator_of(r) > 0 && gcd(numerator_of(r), denominator_of(r)) == 1;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(parse_rational("3/-6") == Rational(-1, 2));
  CHECK(to_string(Rational(7)) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(floor_of(Rational(-3, 2)) == -2);
  CHECK(ceil_of(Rational(-3, 2)) == -1);
  CHECK(ceil_of(Rational(7, 3)) == 3);
  CHECK(binomial(14, 7) == 3432);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("rationals stay reduced with positive denominators") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a = testrand::rational(rng, -9, 9, 12), b = testrand::rational(rng, -9, 9, 7);
    CHECK(reduced(a + b));
    CHECK(reduced(a * b));
    CHECK(reduced(a - b));
    if (b != 0) CHECK(reduced(a / b));
    CHECK((a < b) == (numerator_of(a) * denominator_of(b) < numerator_of(b) * denominator_of(a)));
  }
}

TEST_CASE("contains") {
  const auto t = tri({0, 0}, {1, 0}, {0, 1});
  CHECK(contains(ConvexBody::interval(0, 1), Point{Rational(1, 2)}));
  CHECK_FALSE(contains(t, Point{1, 1}));
  CHECK(contains(t, Point{0, 0}));
  CHECK(contains(t, Point{Rational(1, 2), Rational(1, 2)}));
  CHECK_FALSE(contains(t, Point{Rational(1, 2), Rational(501, 1000)}));
  CHECK_THROWS_AS(contains(t, Point{0}), DimensionMismatch);
  const auto seg = ConvexBody::polygon({{0, 0}, {2, 2}});
  CHECK(seg.is_degenerate_polygon());
  CHECK(contains(seg, Point{1, 1}));
  CHECK_FALSE(contains(seg, Point{1, 0}));
  CHECK(contains(ConvexBody::box(Point{0, 0, 0}, Point{1, 1, 1}), Point{1, 0, Rational(1, 3)}));
}

TEST_CASE("body construction validates and canonicalizes") {
  CHECK_THROWS_AS(ConvexBody::interval(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ConvexBody::box(Point{0, 2}, Point{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexBody::polygon({}), EmptyBody);
  CHECK_THROWS(ConvexBody::polygon({{0, 0}, {4, 0}, {0, 4}, {1, 1}}));

  // Clockwise input, a repeated vertex and a collinear midpoint.
  const auto p = ConvexBody::polygon({{0, 1}, {1, 1}, {1, 0}, {1, 0}, {Rational(1, 2), 0}, {0, 0}});
  const std::vector<Point> expect = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(p.as_polygon().vertices == expect);
  CHECK(ConvexBody::polygon({{3, 3}, {3, 3}}).as_polygon().vertices.size() == 1);
}

TEST_CASE("intersect_all") {
  const ConvexBody iv[] = {ConvexBody::interval(0, 2), ConvexBody::interval(1, 3)};
  CHECK(*intersect_all(iv) == ConvexBody::interval(1, 2));

  const ConvexBody boxes[] = {ConvexBody::box(Point{0, 0}, Point{1, 1}), ConvexBody::box(Point{2, 2}, Point{3, 3})};
  CHECK_FALSE(intersect_all(boxes).has_value());

  const ConvexBody mixed[] = {ConvexBody::interval(0, 2), ConvexBody::box(Point{1}, Point{5})};
  CHECK(*intersect_all(mixed) == ConvexBody::box(Point{1}, Point{2}));

  const ConvexBody bad[] = {tri({0, 0}, {1, 0}, {0, 1}), ConvexBody::box(Point{0, 0}, Point{1, 1})};
  CHECK_THROWS_AS(intersect_all(bad), UnsupportedBody);

  // Two triangles whose intersection has crossing points as vertices.
  const ConvexBody tris[] = {tri({0, 0}, {4, 0}, {0, 4}), tri({1, -1}, {1, 5}, {5, 1})};
  const auto meet = intersect_all(tris);
  REQUIRE(meet);
  const Family f({tris[0], tris[1]});
  std::vector<Point> expect;
  for (const auto& v : oracle::arrangement_vertices(f))
    if (oracle::contains(tris[0], v) && oracle::contains(tris[1], v)) expect.push_back(v);
  expect = oracle::hull_vertices(expect);
  auto got = meet->as_polygon().vertices;
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  CHECK(std::find(got.begin(), got.end(), Point{1, 3}) != got.end());

  // Touching at a single corner.
  const ConvexBody corner[] = {square(0, 0), square(1, 1)};
  const auto touch = intersect_all(corner);
  REQUIRE(touch);
  CHECK(touch->as_polygon().vertices == std::vector<Point>{{1, 1}});
}

TEST_CASE("intersect_all agrees with containment on random polygons") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    const auto a = convex_hull(testrand::points(rng, 5, -3, 3, 2));
    const auto b = convex_hull(testrand::points(rng, 5, -3, 3, 2));
    const ConvexBody ab[] = {a, b};
    const ConvexBody ba[] = {b, a};
    const auto m1 = intersect_all(ab), m2 = intersect_all(ba);
    CHECK(m1.has_value() == m2.has_value());
    if (m1) CHECK(*m1 == *m2);
    const Family f({a, b});
    for (const auto& p : oracle::cell_representatives(f)) {
      const bool both = oracle::contains(a, p) && oracle::contains(b, p);
      CHECK(both == (m1 && oracle::contains(*m1, p)));
    }
    if (m1) {
      for (const auto& v : body_vertices(*m1)) {
        for (const auto& c : v.coords()) CHECK(reduced(c));
      }
    }
  }
}

TEST_CASE("convex_hull") {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}, {Rational(1, 4), Rational(1, 4)}};
  CHECK(convex_hull(pts) == tri({0, 0}, {1, 0}, {0, 1}));
  const std::vector<Point> one = {{0, 0}};
  CHECK(convex_hull(one).as_polygon().vertices.size() == 1);
  const std::vector<Point> line = {{Rational(3)}, {Rational(-1)}, {Rational(2)}};
  CHECK(convex_hull(line) == ConvexBody::interval(-1, 3));

  std::mt19937_64 rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto sample = testrand::points(rng, 8, -5, 5, 3);
    const auto h = convex_hull(sample);
    auto got = h.as_polygon().vertices;
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::hull_vertices(sample));
    CHECK(convex_hull(h.as_polygon().vertices) == h);
  }
}

TEST_CASE("edge_intersections") {
  CHECK(edge_intersections(tri({0, 0}, {1, 0}, {0, 1}), tri({5, 5}, {6, 5}, {5, 6})).empty());

  const auto sq = square(0, 0);
  const auto shifted = square(Rational(1, 2), Rational(1, 2));
  const std::vector<Point> crossing = {{Rational(1, 2), 1}, {1, Rational(1, 2)}};
  CHECK(edge_intersections(sq, shifted) == crossing);

  const std::vector<Point> corners = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(edge_intersections(sq, sq) == corners);

  std::mt19937_64 rng(21);
  for (int round = 0; round < 60; ++round) {
    const auto a = convex_hull(testrand::points(rng, 4, -3, 3, 2));
    const auto b = convex_hull(testrand::points(rng, 4, -3, 3, 2));
    std::set<Point> expect;
    for (const auto& s : oracle::edges(a))
      for (const auto& t : oracle::edges(b))
        for (const auto& p : oracle::segment_meet(s, t)) expect.insert(p);
    const auto got = edge_intersections(a, b);
    CHECK(got == std::vector<Point>(expect.begin(), expect.end()));
  }
}
