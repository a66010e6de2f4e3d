#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pqpierce/geom.hpp"

namespace pqpierce {

/// Default cap on enumerated subsets for exhaustive checks.
inline constexpr std::uint64_t kDefaultSubsetBudget = 2'000'000;

/// Ordered finite family of convex bodies in R^d, each with a positive
/// integer multiplicity. All bodies are polygons, or all are intervals/boxes.
class Family {
 public:
  explicit Family(std::vector<ConvexBody> bodies, std::vector<std::size_t> multiplicities = {});

  std::size_t size() const { return bodies_.size(); }
  std::size_t dim() const { return dim_; }
  const ConvexBody& operator[](std::size_t i) const { return bodies_[i]; }
  const std::vector<ConvexBody>& bodies() const { return bodies_; }
  std::size_t multiplicity(std::size_t i) const { return multiplicities_[i]; }
  const std::vector<std::size_t>& multiplicities() const { return multiplicities_; }
  /// m = sum of multiplicities.
  std::size_t total_weight() const;
  bool is_polygonal() const { return bodies_.front().is_polygon(); }

  /// Members at the given indices, multiplicities carried along.
  Family subfamily(std::span<const std::size_t> indices) const;
  /// Each body repeated according to its multiplicity, all weights 1.
  Family expanded() const;

 private:
  std::vector<ConvexBody> bodies_;
  std::vector<std::size_t> multiplicities_;
  std::size_t dim_;
};

struct PQReport {
  std::size_t p = 0;
  std::size_t q = 0;
  bool holds = true;
  /// First p-subset (lexicographic) in which no q members share a point.
  std::optional<std::vector<std::size_t>> witness;
  std::uint64_t subsets_checked = 0;
};

/// Exhaustively decides the (p,q) property over distinct members
/// (multiplicities ignored). p > n holds vacuously; q > p fails on the first
/// p-subset since it has no q-subsets. Throws BudgetExceeded past `budget`.
PQReport verify_pq(const Family& f, std::size_t p, std::size_t q,
                   std::uint64_t budget = kDefaultSubsetBudget);

enum class HDRegime { HDTight, Open };

/// HDTight iff p(d-1) < (q-1)d, where the maximum piercing number is known
/// to be exactly p-q+1. Requires p >= q >= d+1 >= 2.
HDRegime hd_regime(std::uint64_t p, std::uint64_t q, std::uint64_t d);

const char* to_string(HDRegime r);

struct FractionalHellyCensus {
  std::size_t n = 0;  ///< members counted with multiplicity
  std::size_t d = 0;
  Rational alpha;     ///< fraction of intersecting (d+1)-subsets
  Rational delta;     ///< largest fraction of members sharing one point
  std::uint64_t intersecting_tuples = 0;
  std::uint64_t total_tuples = 0;
  std::size_t max_depth = 0;
};

/// Census over the family expanded by multiplicity. alpha counts (d+1)-subsets
/// whose intersection is nonempty; delta uses candidate points.
FractionalHellyCensus fractional_helly_census(const Family& f,
                                              std::uint64_t budget = kDefaultSubsetBudget);

/// True iff every x-member subfamily has exact piercing number < ceil(x/d).
/// Throws BudgetExceeded when the subset count or a solver run exceeds budget.
bool check_theorem_1_2_hypothesis(const Family& f, std::size_t x,
                                  std::uint64_t budget = kDefaultSubsetBudget);

}  // namespace pqpierce
