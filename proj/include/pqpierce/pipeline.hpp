#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pqpierce/epsnet.hpp"
#include "pqpierce/family.hpp"
#include "pqpierce/piercing.hpp"

namespace pqpierce {

struct PipelineOptions {
  std::uint64_t subset_budget = kDefaultSubsetBudget;
  std::uint64_t net_budget = kDefaultNetBudget;
  std::uint64_t node_budget = kDefaultNodeBudget;
  Integer denominator_cap = kDefaultDenominatorCap;
  /// Run exact_piercing for comparison when the family has at most this many
  /// members.
  std::size_t exact_max_bodies = 20;
};

struct PipelineReport {
  PQReport pq;
  FractionalCertificate fractional;
  HeavyMultiset multiset;
  WeakNetResult net;
  PiercingCertificate piercing;
  std::optional<std::size_t> exact_optimum;
  /// The constructed net missed a body or was unverifiable, so the support
  /// of Y replaced it.
  bool fallback_used = false;

  std::size_t multiset_size() const { return multiset.total; }
  std::size_t net_size() const { return piercing.points.size(); }
  const Rational& achieved_gamma() const { return multiset.gamma; }
};

/// Finite piercing set for a family with the (p, d+1) property: heavy
/// multiset Y from the vertex-distribution LP, a weak eps-net of Y with
/// eps = gamma', then each body assigned a net point it contains. Throws
/// PropertyViolation (with witness) if the (p, d+1) property fails.
PipelineReport run_pipeline(const Family& f, std::size_t p, const PipelineOptions& options = {});

/// Fresh body-by-body recheck of a report's invariants.
bool verify_report(const Family& f, const PipelineReport& report);

}  // namespace pqpierce
