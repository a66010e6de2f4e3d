#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqpierce/family.hpp"
#include "pqpierce/geom.hpp"

namespace pqpierce {

/// Named family plus the generator parameters that produced it.
struct Instance {
  std::string name;
  std::size_t dim = 0;
  std::vector<ConvexBody> bodies;
  std::vector<std::size_t> multiplicities;  ///< empty means all ones
  nlohmann::json metadata = nlohmann::json::object();

  Family family() const { return Family(bodies, multiplicities); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

/// n thin parallelograms around tangent lines of a parabola, clipped to a
/// box. Pairwise intersecting, no point in three of them (checked; thickness
/// is halved until it holds).
Instance generate_slabs(std::size_t n, Rational thickness = Rational(1, 100));

/// Weighted points standing in for a probability measure.
struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<Rational> mass;  ///< sums to one
};

DiscreteMeasure uniform_grid_measure(std::size_t side);

/// `count` bodies, each the hull of a random point subset of mass >= eps.
/// Such a family has the (p, d+1) property for p = floor(d/eps) + 1.
Instance generate_measure(const DiscreteMeasure& mu, const Rational& epsilon, std::size_t count,
                          std::uint64_t seed);

/// p-q singleton clusters plus one cluster of q+extra intervals sharing a
/// point: (p,q) property with piercing number exactly p-q+1.
Instance generate_hd_tight_intervals(std::size_t p, std::size_t q, std::size_t extra = 1);

Instance generate_random_intervals(std::size_t n, std::uint64_t seed, std::int64_t span = 20,
                                   std::int64_t max_length = 8);

/// Random convex polygons (3..max_vertices vertices) with integer
/// coordinates near the origin.
Instance generate_random_polygons(std::size_t n, std::uint64_t seed, std::size_t max_vertices = 5,
                                  std::int64_t spread = 6, std::int64_t radius = 5);

struct Search43Result {
  std::optional<Instance> found;
  std::size_t rounds_run = 0;
  std::size_t with_property = 0;  ///< candidates passing verify_pq(4,3)
  std::size_t best_piercing = 0;  ///< largest exact piercing seen among them
};

/// Randomized search for a planar family with the (4,3) property and exact
/// piercing number >= 3. Reports failure honestly.
Search43Result search_43(std::uint64_t seed, std::size_t rounds, std::size_t n = 6);

}  // namespace pqpierce
