#include "pqpierce/pipeline.hpp"

#include <algorithm>
#include <string>

#include "pqpierce/errors.hpp"

namespace pqpierce {

namespace {

bool pierces_all(const Family& f, const std::vector<Point>& net) {
  for (const auto& body : f.bodies()) {
    const bool hit = std::any_of(net.begin(), net.end(), [&](const Point& p) { return contains(body, p); });
    if (!hit) return false;
  }
  return true;
}

/// Net points that some body is assigned to, in net order.
PiercingCertificate prune(const Family& f, const std::vector<Point>& net) {
  const PiercingCertificate full = assign_points(f, net);
  std::vector<bool> used(net.size(), false);
  for (std::size_t k : full.assignment) used[k] = true;
  std::vector<Point> kept;
  for (std::size_t k = 0; k < net.size(); ++k)
    if (used[k]) kept.push_back(net[k]);
  return assign_points(f, std::move(kept));
}

}  // namespace

PipelineReport run_pipeline(const Family& f, std::size_t p, const PipelineOptions& options) {
  const std::size_t q = f.dim() + 1;
  PipelineReport report;
  report.pq = verify_pq(f, p, q, options.subset_budget);
  if (!report.pq.holds)
    throw PropertyViolation("family lacks the (" + std::to_string(p) + "," + std::to_string(q) + ") property",
                            *report.pq.witness);

  auto heavy = heavy_multiset(f, options.denominator_cap);
  report.fractional = std::move(heavy.fractional);
  report.multiset = std::move(heavy.multiset);

  const std::vector<Point> y = report.multiset.expand();
  const std::vector<Point> support = dedupe_points(report.multiset.points);
  const std::size_t d = y.front().dim();
  if (d <= 2) {
    report.net = weak_eps_net(y, report.multiset.gamma, std::nullopt, options.net_budget);
  } else {
    report.net.epsilon = report.multiset.gamma;
    report.net.source_size = y.size();
    report.net.method = NetMethod::SupportFallback;
    report.net.net = support;
    report.net.transcript.strategy = "none";
  }

  const bool unverified = report.net.verified != true;
  if (unverified || !pierces_all(f, report.net.net)) {
    if (report.net.method != NetMethod::SupportFallback) report.net.abandoned = report.net.method;
    report.net.method = NetMethod::SupportFallback;
    report.net.net = support;
    report.fallback_used = true;
  }

  report.piercing = prune(f, report.net.net);
  if (f.size() <= options.exact_max_bodies) {
    const auto exact = exact_piercing(f, options.node_budget);
    if (exact.optimal) report.exact_optimum = exact.size();
  }
  if (!verify_report(f, report)) throw std::logic_error("pipeline: final certificate failed verification");
  return report;
}

bool verify_report(const Family& f, const PipelineReport& report) {
  if (!verify_piercing(f, report.piercing)) return false;
  for (const auto& p : report.piercing.points)
    if (std::find(report.net.net.begin(), report.net.net.end(), p) == report.net.net.end()) return false;
  if (!pierces_all(f, report.net.net)) return false;
  if (!verify_heavy(f, report.multiset)) return false;
  if (report.exact_optimum && report.piercing.points.size() < *report.exact_optimum) return false;
  return true;
}

}  // namespace pqpierce
