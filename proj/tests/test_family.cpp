#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pqpierce/errors.hpp"
#include "pqpierce/family.hpp"
#include "pqpierce/generate.hpp"
#include "pqpierce/piercing.hpp"

using namespace pqpierce;

namespace {

Family intervals(std::initializer_list<std::pair<int, int>> spans) {
  std::vector<ConvexBody> bodies;
  for (auto [lo, hi] : spans) bodies.push_back(ConvexBody::interval(lo, hi));
  return Family(bodies);
}

// Pairwise overlapping, no common point. Impossible for intervals, so the
// three sides of a triangle.
Family triangle_sides() {
  return Family({ConvexBody::polygon({{0, 0}, {4, 0}}), ConvexBody::polygon({{4, 0}, {0, 4}}),
                 ConvexBody::polygon({{0, 4}, {0, 0}})});
}

}  // namespace

TEST_CASE("family validation") {
  CHECK_THROWS_AS(Family({}), std::invalid_argument);
  CHECK_THROWS_AS(Family({ConvexBody::interval(0, 1), ConvexBody::box(Point{0, 0}, Point{1, 1})}), DimensionMismatch);
  CHECK_THROWS_AS(Family({ConvexBody::polygon({{0, 0}}), ConvexBody::box(Point{0, 0}, Point{1, 1})}), UnsupportedBody);
  CHECK_THROWS(Family({ConvexBody::interval(0, 1)}, {0}));
  CHECK_THROWS(Family({ConvexBody::interval(0, 1)}, {1, 1}));
  const Family f({ConvexBody::interval(0, 1), ConvexBody::interval(2, 3)}, {2, 3});
  CHECK(f.total_weight() == 5);
  CHECK(f.expanded().size() == 5);
  const std::size_t idx[] = {1};
  CHECK(f.subfamily(idx).multiplicity(0) == 3);
}

TEST_CASE("verify_pq examples") {
  const Family f = triangle_sides();
  const auto ok = verify_pq(f, 3, 2);
  CHECK(ok.holds);
  CHECK_FALSE(ok.witness);
  const auto bad = verify_pq(f, 3, 3);
  CHECK_FALSE(bad.holds);
  CHECK(bad.witness == std::vector<std::size_t>{0, 1, 2});
  CHECK(verify_pq(f, 1, 1).holds);
  CHECK(verify_pq(f, 4, 3).holds);  // p > n
  CHECK_THROWS_AS(verify_pq(generate_random_intervals(20, 1).family(), 10, 3, 1000), BudgetExceeded);
}

TEST_CASE("verify_pq agrees with the direct oracle and is monotone") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Family f = seed % 2 ? generate_random_intervals(7, seed, 10, 6).family()
                              : generate_random_polygons(6, seed, 4, 2, 5).family();
    for (std::size_t p = 1; p <= 5; ++p)
      for (std::size_t q = 1; q <= p; ++q) {
        const auto r = verify_pq(f, p, q);
        CHECK(r.holds == oracle::has_pq(f, p, q));
        if (r.holds) {
          CHECK(verify_pq(f, p + 1, q).holds);
          if (q > 1) CHECK(verify_pq(f, p, q - 1).holds);
        } else {
          REQUIRE(r.witness);
          CHECK(r.witness->size() == p);
          const Family sub = f.subfamily(*r.witness);
          CHECK_FALSE(oracle::has_pq(sub, p, q));
        }
      }
  }
}

TEST_CASE("hd_regime") {
  CHECK(hd_regime(4, 3, 1) == HDRegime::HDTight);
  CHECK(hd_regime(4, 3, 2) == HDRegime::Open);
  for (std::uint64_t d = 1; d <= 30; ++d) CHECK(hd_regime(d + 1, d + 1, d) == HDRegime::HDTight);
  CHECK_THROWS(hd_regime(2, 3, 1));
  CHECK_THROWS(hd_regime(3, 2, 2));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t d = 1 + rng() % 40;
    const std::uint64_t q = d + 1 + rng() % 50;
    const std::uint64_t p = q + rng() % 100;
    const Integer lhs = Integer(p) * (d - 1), rhs = (Integer(q) - 1) * d;
    CHECK((hd_regime(p, q, d) == HDRegime::HDTight) == (lhs < rhs));
  }
  const std::uint64_t big = std::uint64_t{1} << 62;
  CHECK(hd_regime(big, big, 3) == HDRegime::HDTight);
  CHECK(hd_regime(big, big / 2, 3) == HDRegime::Open);
}

TEST_CASE("fractional Helly census") {
  CHECK(verify_pq(intervals({{0, 2}, {1, 3}, {2, 5}}), 3, 3).holds);
  const Family common = intervals({{0, 2}, {1, 3}});
  const auto c1 = fractional_helly_census(common);
  CHECK(c1.alpha == 1);
  CHECK(c1.delta == 1);

  const auto c2 = fractional_helly_census(intervals({{0, 1}, {0, 1}, {2, 3}, {2, 3}}));
  CHECK(c2.alpha == Rational(2, 6));
  CHECK(c2.delta == Rational(2, 4));

  // Multiplicities count as separate members.
  const Family weighted({ConvexBody::interval(0, 1), ConvexBody::interval(2, 3)}, {2, 2});
  CHECK(fractional_helly_census(weighted).alpha == Rational(2, 6));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Family f = generate_random_polygons(6, seed, 4, 1, 6).family();
    const auto c = fractional_helly_census(f);
    CHECK(c.alpha >= 0);
    CHECK(c.alpha <= 1);
    if (c.alpha == 1) CHECK(c.delta == 1);
    CHECK(c.delta * c.n == deepest_point(f).depth);
    std::size_t best = 0;
    for (const auto& p : oracle::cell_representatives(f)) {
      std::size_t depth = 0;
      for (std::size_t i = 0; i < f.size(); ++i) depth += oracle::contains(f[i], p);
      best = std::max(best, depth);
    }
    CHECK(c.max_depth == best);
  }
}

TEST_CASE("hypothesis checker") {
  const Family same = intervals({{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  CHECK(check_theorem_1_2_hypothesis(same, 3));
  CHECK_FALSE(check_theorem_1_2_hypothesis(same, 1));
  CHECK_FALSE(check_theorem_1_2_hypothesis(generate_slabs(10).family(), 4, kDefaultSubsetBudget));
  const Family polys = generate_random_polygons(5, 2, 4, 0, 6).family();
  CHECK_FALSE(check_theorem_1_2_hypothesis(polys, 2));
}
