#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pqpierce/epsnet.hpp"
#include "test_random.hpp"

using namespace pqpierce;

namespace {

std::vector<Point> line_points(std::initializer_list<int> values) {
  std::vector<Point> out;
  for (int v : values) out.push_back(Point{Rational(v)});
  return out;
}

std::vector<Point> random_multiset(std::mt19937_64& rng, std::size_t m, std::size_t dim) {
  std::vector<Point> out;
  while (out.size() < m) {
    Point p = dim == 1 ? Point{testrand::rational(rng, 0, 6, 1)} : Point{testrand::rational(rng, 0, 4, 1), testrand::rational(rng, 0, 4, 1)};
    const std::size_t copies = testrand::index(rng, 1, 2);
    for (std::size_t c = 0; c < copies && out.size() < m; ++c) out.push_back(p);
  }
  return out;
}

std::vector<Point> support(std::vector<Point> y) { return dedupe_points(std::move(y)); }

}  // namespace

TEST_CASE("method names round-trip") {
  for (auto m : {NetMethod::Quantile1D, NetMethod::Centerpoint, NetMethod::SlabPair2D, NetMethod::SupportFallback})
    CHECK(parse_net_method(to_string(m)) == m);
  CHECK_THROWS(parse_net_method("nope"));
}

TEST_CASE("halfspace depth matches the subset oracle") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 60; ++round) {
    const auto y = random_multiset(rng, testrand::index(rng, 1, 9), round % 3 == 0 ? 1 : 2);
    std::vector<Point> probes = support(y);
    probes.push_back(y.front().dim() == 1 ? Point{Rational(5, 2)} : Point{Rational(3, 2), Rational(5, 2)});
    for (const auto& c : probes) CHECK(halfspace_depth(y, c) == oracle::tukey_depth(y, c));
  }
}

TEST_CASE("centerpoint") {
  const std::vector<Point> single = {{Rational(3), Rational(4)}};
  CHECK(centerpoint(single).point == single[0]);
  CHECK(centerpoint(single).depth == 1);

  const std::vector<Point> triangle = {{0, 0}, {3, 0}, {0, 3}};
  CHECK(centerpoint(triangle).depth >= 1);
  CHECK(halfspace_depth(triangle, Point{1, 1}) == 1);

  // Nine points in convex position.
  const std::vector<Point> nine = {{0, 0}, {4, 0}, {7, 2}, {8, 5}, {6, 8}, {3, 9}, {0, 7}, {-2, 4}, {-2, 1}};
  const auto c = centerpoint(nine);
  CHECK(c.depth >= 3);
  CHECK(oracle::tukey_depth(nine, c.point) == c.depth);

  std::mt19937_64 rng(43);
  for (int round = 0; round < 40; ++round) {
    const auto y = random_multiset(rng, testrand::index(rng, 1, 10), 2);
    const auto cp = centerpoint(y);
    CHECK(oracle::tukey_depth(y, cp.point) == cp.depth);
    CHECK(Integer(cp.depth) >= ceil_of(Rational(y.size(), 3)));
  }
}

TEST_CASE("verify_weak_net basics") {
  const auto y = line_points({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(verify_weak_net(y, Rational(1, 2), support(y)).passed());
  const std::vector<Point> none;
  const auto empty = verify_weak_net(y, Rational(1, 2), none);
  CHECK(empty.outcome == NetVerification::Outcome::Failed);
  REQUIRE(empty.first_failure);
  CHECK(empty.first_failure->size() == 5);

  // The fifth order statistic alone does not hit {6..10}.
  const auto fifth = line_points({5});
  const auto miss = verify_weak_net(y, Rational(1, 2), fifth);
  CHECK(miss.outcome == NetVerification::Outcome::Failed);
  CHECK_FALSE(oracle::is_weak_net(y, Rational(1, 2), fifth));

  const auto q = weak_eps_net(y, Rational(1, 2));
  CHECK(q.method == NetMethod::Quantile1D);
  CHECK(q.net == line_points({5, 10}));
  CHECK(q.verified == true);
  CHECK(oracle::is_weak_net(y, Rational(1, 2), q.net));

  // Tiny budget: neither enumeration fits.
  const auto u = verify_weak_net(y, Rational(1, 2), fifth, 3);
  CHECK(u.outcome == NetVerification::Outcome::Unverifiable);
}

TEST_CASE("square corners with multiplicity two") {
  std::vector<Point> y;
  for (const Point& p : std::vector<Point>{{0, 0}, {2, 0}, {2, 2}, {0, 2}}) y.push_back(p), y.push_back(p);
  const std::vector<Point> center = {{1, 1}};
  const auto v = verify_weak_net(y, Rational(1, 2), center);
  // Two copies each of two adjacent corners span an edge missing the center.
  CHECK(v.outcome == NetVerification::Outcome::Failed);
  CHECK_FALSE(oracle::is_weak_net(y, Rational(1, 2), center));
  const std::vector<Point> with_edges = {{1, 1}, {1, 0}, {2, 1}, {1, 2}, {0, 1}};
  CHECK(verify_weak_net(y, Rational(1, 2), with_edges).passed());
  CHECK(oracle::is_weak_net(y, Rational(1, 2), with_edges));
}

TEST_CASE("support enumeration agrees with element enumeration") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 80; ++round) {
    const auto y = random_multiset(rng, testrand::index(rng, 4, 12), 2);
    std::vector<Point> x = testrand::points(rng, testrand::index(rng, 0, 3), 0, 4, 2);
    const Rational eps = round % 2 ? Rational(1, 2) : Rational(1, 3);
    const auto full = verify_weak_net(y, eps, x);
    REQUIRE(full.strategy == "elements");
    const auto k = static_cast<std::uint64_t>(ceil_of(eps * y.size()));
    const auto coarse = verify_weak_net(y, eps, x, binomial(y.size(), k) - 1);
    if (coarse.outcome != NetVerification::Outcome::Unverifiable) {
      CHECK(coarse.strategy == "support");
      CHECK(coarse.outcome == full.outcome);
    }
    CHECK(full.passed() == oracle::is_weak_net(y, eps, x));
    if (full.passed()) {
      auto bigger = x;
      bigger.push_back(Point{0, 0});
      CHECK(verify_weak_net(y, eps, bigger).passed());
      CHECK(verify_weak_net(y, eps + Rational(1, 6), x).passed());
    }
  }
}

TEST_CASE("Quantile1D is always correct") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 60; ++round) {
    const auto y = random_multiset(rng, testrand::index(rng, 1, 20), 1);
    for (const Rational eps : {Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
      const auto r = weak_eps_net(y, eps, NetMethod::Quantile1D);
      CHECK(r.verified == true);
      if (y.size() <= 14) CHECK(oracle::is_weak_net(y, eps, r.net));
    }
  }
}

TEST_CASE("weak nets in the plane") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 40; ++round) {
    const auto y = random_multiset(rng, testrand::index(rng, 3, 12), 2);
    for (const Rational eps : {Rational(1, 2), Rational(1, 3), Rational(3, 4)}) {
      const auto r = weak_eps_net(y, eps);
      CHECK(!r.net.empty());
      if (r.verified == true) CHECK(oracle::is_weak_net(y, eps, r.net));
      const auto fb = weak_eps_net(y, eps, NetMethod::SupportFallback);
      CHECK(fb.verified == true);
      CHECK(fb.net == support(y));
    }
    const auto one = weak_eps_net(y, Rational(1, static_cast<long>(y.size()) + 1));
    CHECK(one.method == NetMethod::SupportFallback);
    CHECK(one.net == support(y));
  }
}
