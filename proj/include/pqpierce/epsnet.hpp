#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqpierce/geom.hpp"

namespace pqpierce {

enum class NetMethod { Quantile1D, Centerpoint, SlabPair2D, SupportFallback };

const char* to_string(NetMethod m);
NetMethod parse_net_method(const std::string& name);

/// Tukey depth of `c` in the multiset `y` (R^1 or R^2): the minimum number of
/// points of y in a closed halfspace containing c.
std::size_t halfspace_depth(std::span<const Point> y, const Point& c);

struct CenterpointResult {
  Point point;
  std::size_t depth = 0;
};

/// Deepest point among the support of y and all intersections of lines
/// through pairs of support points. Its depth is at least ceil(m/(d+1)).
CenterpointResult centerpoint(std::span<const Point> y);

struct NetVerification {
  enum class Outcome { Passed, Failed, Unverifiable };
  Outcome outcome = Outcome::Unverifiable;
  std::uint64_t subsets_checked = 0;
  /// Indices into y of the first subset whose hull misses the net.
  std::optional<std::vector<std::size_t>> first_failure;
  /// "elements" (index k-subsets) or "support" (realizable support sets).
  std::string strategy;

  bool passed() const { return outcome == Outcome::Passed; }
};

inline constexpr std::uint64_t kDefaultNetBudget = 1'000'000;

/// Decides whether every k = ceil(eps*m) element subset of y (copies are
/// distinct elements) has a convex hull meeting x. Enumerates index subsets
/// when C(m,k) fits the budget; otherwise enumerates support subsets T with
/// |T| <= k <= (copies in T), which decides the same property. If neither fits,
/// the outcome is Unverifiable.
NetVerification verify_weak_net(std::span<const Point> y, const Rational& epsilon,
                                std::span<const Point> x, std::uint64_t budget = kDefaultNetBudget);

struct WeakNetResult {
  std::vector<Point> net;
  Rational epsilon;
  std::size_t source_size = 0;
  NetMethod method = NetMethod::SupportFallback;
  std::optional<bool> verified;
  NetVerification transcript;
  /// Method that was tried before falling back, if any.
  std::optional<NetMethod> abandoned;
};

struct SlabPairConfig {
  /// 0 means ceil(4/eps).
  std::size_t slabs = 0;
  std::size_t samples = 0;
};

/// Builds a weak eps-net for y in R^1 or R^2 and checks it with
/// verify_weak_net. Heuristic nets that fail, or that cannot be verified and
/// are not correct by construction, are replaced by the support of y.
WeakNetResult weak_eps_net(std::span<const Point> y, const Rational& epsilon,
                           std::optional<NetMethod> method = std::nullopt,
                           std::uint64_t budget = kDefaultNetBudget, SlabPairConfig config = {});

}  // namespace pqpierce
