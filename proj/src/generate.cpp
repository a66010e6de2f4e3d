#include "pqpierce/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pqpierce/piercing.hpp"

namespace pqpierce {

namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

ConvexBody slab(const Rational& t, const Rational& w) {
  // Tangent to y = x^2 at t: y = 2t x - t^2, taken over x in [-1, 2].
  auto line = [&](const Rational& x) { return 2 * t * x - t * t; };
  const Rational x0 = -1, x1 = 2;
  return ConvexBody::polygon({Point{x0, line(x0) - w}, Point{x1, line(x1) - w}, Point{x1, line(x1) + w},
                              Point{x0, line(x0) + w}});
}

bool pairwise_intersecting(const Family& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const ConvexBody pair[] = {f[i], f[j]};
      if (!intersect_all(pair)) return false;
    }
  return true;
}

}  // namespace

Instance generate_slabs(std::size_t n, Rational thickness) {
  if (n < 2) throw std::invalid_argument("slabs: need at least two slabs");
  if (thickness <= 0) throw std::invalid_argument("slabs: thickness must be positive");
  for (int attempt = 0; attempt < 64; ++attempt, thickness /= 2) {
    std::vector<ConvexBody> bodies;
    for (std::size_t i = 0; i < n; ++i) bodies.push_back(slab(Rational(i + 1, n + 1), thickness));
    const Family f(bodies);
    if (!pairwise_intersecting(f) || deepest_point(f).depth > 2) continue;
    Instance inst;
    inst.name = "slabs" + std::to_string(n);
    inst.dim = 2;
    inst.bodies = std::move(bodies);
    inst.metadata = {{"kind", "slabs"}, {"n", n}, {"thickness", to_string(thickness)}};
    return inst;
  }
  throw std::runtime_error("slabs: could not reach general position");
}

DiscreteMeasure uniform_grid_measure(std::size_t side) {
  if (side == 0) throw std::invalid_argument("grid measure: side must be positive");
  DiscreteMeasure mu;
  const Rational each(1, side * side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      mu.points.push_back(Point{Rational(i), Rational(j)});
      mu.mass.push_back(each);
    }
  return mu;
}

Instance generate_measure(const DiscreteMeasure& mu, const Rational& epsilon, std::size_t count,
                          std::uint64_t seed) {
  if (mu.points.empty() || mu.points.size() != mu.mass.size())
    throw std::invalid_argument("measure: points and masses must be nonempty and aligned");
  if (std::accumulate(mu.mass.begin(), mu.mass.end(), Rational(0)) != 1)
    throw std::invalid_argument("measure: masses must sum to one");
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("measure: epsilon must lie in (0, 1]");
  if (count == 0) throw std::invalid_argument("measure: count must be positive");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(mu.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Instance inst;
  inst.dim = mu.points.front().dim();
  for (std::size_t b = 0; b < count; ++b) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Point> chosen;
    Rational mass = 0;
    for (std::size_t i : order) {
      if (mass >= epsilon) break;
      chosen.push_back(mu.points[i]);
      mass += mu.mass[i];
    }
    inst.bodies.push_back(convex_hull(chosen));
  }
  const Integer p = floor_of(Rational(inst.dim) / epsilon) + 1;
  inst.name = "measure";
  inst.metadata = {{"kind", "measure"},
                   {"epsilon", to_string(epsilon)},
                   {"count", count},
                   {"seed", seed},
                   {"support", mu.points.size()},
                   {"p", p.str()}};
  return inst;
}

Instance generate_hd_tight_intervals(std::size_t p, std::size_t q, std::size_t extra) {
  if (q < 2 || p < q) throw std::invalid_argument("hd_tight_intervals: requires p >= q >= 2");
  Instance inst;
  inst.name = "hd_tight_" + std::to_string(p) + "_" + std::to_string(q);
  inst.dim = 1;
  const std::size_t singles = p - q;
  for (std::size_t c = 0; c < singles; ++c) {
    const Rational center(10 * static_cast<long>(c));
    inst.bodies.push_back(ConvexBody::interval(center - 1, center + 1));
  }
  const Rational center(10 * static_cast<long>(singles));
  for (std::size_t i = 0; i < q + extra; ++i) {
    const Rational left = center - 1 - Rational(static_cast<long>(i), 4);
    const Rational right = center + Rational(static_cast<long>(i % 3), 2);
    inst.bodies.push_back(ConvexBody::interval(left, right));
  }
  inst.metadata = {{"kind", "hd_tight_intervals"}, {"p", p}, {"q", q}, {"extra", extra}};
  return inst;
}

Instance generate_random_intervals(std::size_t n, std::uint64_t seed, std::int64_t span, std::int64_t max_length) {
  if (n == 0) throw std::invalid_argument("random_intervals: n must be positive");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.name = "random_intervals";
  inst.dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational lo(uniform(rng, 0, 2 * span), 2);
    const Rational len(uniform(rng, 0, 2 * max_length), 2);
    inst.bodies.push_back(ConvexBody::interval(lo, lo + len));
  }
  inst.metadata = {{"kind", "random_intervals"}, {"n", n}, {"seed", seed}, {"span", span}, {"max_length", max_length}};
  return inst;
}

Instance generate_random_polygons(std::size_t n, std::uint64_t seed, std::size_t max_vertices, std::int64_t spread,
                                  std::int64_t radius) {
  if (n == 0) throw std::invalid_argument("random_polygons: n must be positive");
  if (max_vertices < 3) throw std::invalid_argument("random_polygons: max_vertices must be >= 3");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.name = "random_polygons";
  inst.dim = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t cx = uniform(rng, -spread, spread), cy = uniform(rng, -spread, spread);
    const auto k = static_cast<std::size_t>(uniform(rng, 3, static_cast<std::int64_t>(max_vertices)));
    std::vector<Point> pts;
    for (std::size_t v = 0; v < k; ++v)
      pts.push_back(Point{Rational(cx + uniform(rng, -radius, radius)), Rational(cy + uniform(rng, -radius, radius))});
    inst.bodies.push_back(convex_hull(pts));
  }
  inst.metadata = {{"kind", "random_polygons"}, {"n", n},          {"seed", seed},
                   {"max_vertices", max_vertices}, {"spread", spread}, {"radius", radius}};
  return inst;
}

Search43Result search_43(std::uint64_t seed, std::size_t rounds, std::size_t n) {
  if (n < 4) throw std::invalid_argument("search_43: need at least four bodies");
  Search43Result result;
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    ++result.rounds_run;
    const std::uint64_t round_seed = rng();
    Instance inst = generate_random_polygons(n, round_seed, 4, 1, 8);
    const Family f = inst.family();
    if (!verify_pq(f, 4, 3).holds) continue;
    ++result.with_property;
    const auto exact = exact_piercing(f);
    if (!exact.optimal) continue;
    result.best_piercing = std::max(result.best_piercing, exact.size());
    if (exact.size() >= 3) {
      inst.name = "search_43";
      inst.metadata = {{"kind", "search_43"}, {"seed", seed}, {"round", r},
                       {"round_seed", round_seed}, {"piercing", exact.size()}};
      result.found = std::move(inst);
      return result;
    }
  }
  return result;
}

}  // namespace pqpierce
