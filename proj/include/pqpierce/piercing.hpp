#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pqpierce/family.hpp"
#include "pqpierce/geom.hpp"

namespace pqpierce {

/// Candidate points with a completeness guarantee: if some point pierces a
/// subfamily, some candidate pierces it too.
///  - intervals: all endpoints
///  - boxes: the grid of body lower/upper coordinates, kept where at least
///    one body contains the grid point
///  - polygons: all vertices plus pairwise edge_intersections
/// Sorted and deduplicated.
std::vector<Point> candidate_points(const Family& f);

/// Vertices are candidate points, edge i is the set of candidates in body i.
struct IncidenceHypergraph {
  std::vector<Point> vertices;
  std::vector<boost::dynamic_bitset<>> edges;
  std::vector<std::size_t> weights;

  std::size_t vertex_degree(std::size_t v) const;
};

IncidenceHypergraph build_hypergraph(const Family& f);

/// Piercing points plus, per body, the index of a point inside it.
struct PiercingCertificate {
  std::vector<Point> points;
  std::vector<std::size_t> assignment;
};

/// Rechecks every assignment with exact containment.
bool verify_piercing(const Family& f, const PiercingCertificate& cert);

/// Assigns each body the first listed point it contains. Throws if some body
/// contains none.
PiercingCertificate assign_points(const Family& f, std::vector<Point> points);

struct ExactPiercingResult {
  PiercingCertificate certificate;
  bool optimal = false;
  /// ceil of the set-cover LP relaxation at the root.
  std::size_t lp_lower_bound = 0;
  std::size_t greedy_upper_bound = 0;
  std::uint64_t nodes = 0;
  /// Optimality re-proved by showing no (k-1)-subset of candidates covers.
  bool double_checked = false;

  std::size_t size() const { return certificate.points.size(); }
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

/// Minimum piercing set over candidate points: set-cover branch-and-bound
/// with a greedy incumbent and LP/packing lower bounds. When the node budget
/// runs out the best cover found is returned with optimal = false.
ExactPiercingResult exact_piercing(const Family& f, std::uint64_t node_budget = kDefaultNodeBudget);

/// f on vertices and g on edges (both distributions) certifying that gamma
/// is the optimal value of max_f min_e f(e) = min_g max_v g(star of v).
struct FractionalCertificate {
  Rational gamma;
  std::vector<Rational> f;
  std::vector<Rational> g;
};

/// Checks min_e f(e) >= gamma, max_v g(star v) <= gamma, and that f and g are
/// nonnegative and sum to one.
bool verify_fractional(const IncidenceHypergraph& h, const FractionalCertificate& cert);

/// Exact optimum of the vertex-distribution LP. Throws EmptyBody naming the
/// first empty edge.
FractionalCertificate gamma_lp(const IncidenceHypergraph& h);

struct DeepestPoint {
  Point point;
  std::size_t depth = 0;  ///< multiplicity-weighted
  std::size_t total = 0;  ///< m
  Rational ratio() const { return Rational(depth, total); }
};

DeepestPoint deepest_point(const Family& f);

struct HeavyMultiset {
  std::vector<Point> points;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  /// gamma actually certified for this multiset (gamma' when guarded).
  Rational gamma;
  bool denominator_guard_fired = false;

  /// Points repeated by count, in listed order.
  std::vector<Point> expand() const;
};

inline const Integer kDefaultDenominatorCap = 1'000'000;

struct HeavyMultisetResult {
  HeavyMultiset multiset;
  FractionalCertificate fractional;
};

/// Clears denominators of the optimal vertex distribution. If the common
/// denominator exceeds `cap`, counts are rounded up on a grid of size below
/// the cap and gamma' is recomputed exactly.
HeavyMultisetResult heavy_multiset(const Family& f, const Integer& cap = kDefaultDenominatorCap);

/// Rechecks |Y cap A_i| >= gamma |Y| for every body by geometric counting.
bool verify_heavy(const Family& f, const HeavyMultiset& y);

}  // namespace pqpierce
