#include "pqpierce/family.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "pqpierce/errors.hpp"
#include "pqpierce/piercing.hpp"
#include "pqpierce/subsets.hpp"

namespace pqpierce {

Family::Family(std::vector<ConvexBody> bodies, std::vector<std::size_t> multiplicities)
    : bodies_(std::move(bodies)), multiplicities_(std::move(multiplicities)) {
  if (bodies_.empty()) throw std::invalid_argument("family must contain at least one body");
  if (multiplicities_.empty()) multiplicities_.assign(bodies_.size(), 1);
  if (multiplicities_.size() != bodies_.size())
    throw std::invalid_argument("family: multiplicities length differs from body count");
  dim_ = bodies_.front().dim();
  const bool polygonal = bodies_.front().is_polygon();
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    if (bodies_[i].dim() != dim_)
      throw DimensionMismatch("family: body " + std::to_string(i) + " has dimension " +
                              std::to_string(bodies_[i].dim()) + ", expected " + std::to_string(dim_));
    if (bodies_[i].is_polygon() != polygonal)
      throw UnsupportedBody("family: body " + std::to_string(i) + " mixes polygons with boxes");
    if (multiplicities_[i] == 0)
      throw std::invalid_argument("family: multiplicity of body " + std::to_string(i) + " is zero");
  }
}

std::size_t Family::total_weight() const {
  return std::accumulate(multiplicities_.begin(), multiplicities_.end(), std::size_t{0});
}

Family Family::subfamily(std::span<const std::size_t> indices) const {
  std::vector<ConvexBody> bodies;
  std::vector<std::size_t> mult;
  for (std::size_t i : indices) {
    bodies.push_back(bodies_.at(i));
    mult.push_back(multiplicities_.at(i));
  }
  return Family(std::move(bodies), std::move(mult));
}

Family Family::expanded() const {
  std::vector<ConvexBody> bodies;
  for (std::size_t i = 0; i < bodies_.size(); ++i)
    for (std::size_t c = 0; c < multiplicities_[i]; ++c) bodies.push_back(bodies_[i]);
  return Family(std::move(bodies));
}

namespace {

class BudgetCounter {
 public:
  BudgetCounter(std::uint64_t budget, const char* what) : budget_(budget), what_(what) {}
  void tick() {
    if (++count_ > budget_)
      throw BudgetExceeded(std::string(what_) + ": more than " + std::to_string(budget_) + " subsets");
  }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t budget_;
  std::uint64_t count_ = 0;
  const char* what_;
};

}  // namespace

PQReport verify_pq(const Family& f, std::size_t p, std::size_t q, std::uint64_t budget) {
  if (p < 1 || q < 1) throw std::invalid_argument("verify_pq: p and q must be positive");
  PQReport report{p, q, true, std::nullopt, 0};
  const std::size_t n = f.size();
  if (p > n) return report;

  BudgetCounter counter(budget, "verify_pq");
  std::map<std::vector<std::size_t>, bool> memo;
  auto intersects = [&](std::span<const std::size_t> members) {
    std::vector<std::size_t> key(members.begin(), members.end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    counter.tick();
    std::vector<ConvexBody> sub;
    for (std::size_t i : members) sub.push_back(f[i]);
    const bool nonempty = intersect_all(sub).has_value();
    memo.emplace(std::move(key), nonempty);
    return nonempty;
  };

  for_each_combination(n, p, [&](std::span<const std::size_t> chosen) {
    counter.tick();
    bool found = false;
    if (q <= p) {
      for_each_combination(p, q, [&](std::span<const std::size_t> pick) {
        std::vector<std::size_t> members;
        for (std::size_t k : pick) members.push_back(chosen[k]);
        found = intersects(members);
        return !found;
      });
    }
    if (!found) {
      report.holds = false;
      report.witness = std::vector<std::size_t>(chosen.begin(), chosen.end());
    }
    return found;
  });
  report.subsets_checked = counter.count();
  return report;
}

HDRegime hd_regime(std::uint64_t p, std::uint64_t q, std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("hd_regime: d must be at least 1");
  if (q < d + 1) throw std::invalid_argument("hd_regime: requires q >= d+1");
  if (p < q) throw std::invalid_argument("hd_regime: requires p >= q");
  const Integer lhs = Integer(p) * Integer(d - 1);
  const Integer rhs = Integer(q - 1) * Integer(d);
  return lhs < rhs ? HDRegime::HDTight : HDRegime::Open;
}

const char* to_string(HDRegime r) { return r == HDRegime::HDTight ? "HDTight" : "Open"; }

FractionalHellyCensus fractional_helly_census(const Family& f, std::uint64_t budget) {
  const Family g = f.expanded();
  const std::size_t n = g.size();
  const std::size_t d = g.dim();
  if (n < d + 1) throw std::invalid_argument("census: needs at least d+1 members");

  FractionalHellyCensus census;
  census.n = n;
  census.d = d;
  census.total_tuples = binomial(n, d + 1);
  if (census.total_tuples > budget)
    throw BudgetExceeded("census: C(" + std::to_string(n) + "," + std::to_string(d + 1) +
                         ") exceeds the subset budget");
  for_each_combination(n, d + 1, [&](std::span<const std::size_t> tuple) {
    std::vector<ConvexBody> sub;
    for (std::size_t i : tuple) sub.push_back(g[i]);
    if (intersect_all(sub)) ++census.intersecting_tuples;
    return true;
  });
  census.alpha = Rational(census.intersecting_tuples, census.total_tuples);

  for (const auto& c : candidate_points(f)) {
    std::size_t depth = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (contains(g[i], c)) ++depth;
    census.max_depth = std::max(census.max_depth, depth);
  }
  census.delta = Rational(census.max_depth, n);
  return census;
}

bool check_theorem_1_2_hypothesis(const Family& f, std::size_t x, std::uint64_t budget) {
  const std::size_t n = f.size();
  if (x < 1 || x > n) throw std::invalid_argument("check_t12: requires 1 <= x <= n");
  const std::size_t d = f.dim();
  const std::size_t threshold = (x + d - 1) / d;
  if (binomial(n, x) > budget)
    throw BudgetExceeded("check_t12: C(" + std::to_string(n) + "," + std::to_string(x) +
                         ") exceeds the subset budget");
  bool all_below = true;
  for_each_combination(n, x, [&](std::span<const std::size_t> chosen) {
    const auto result = exact_piercing(f.subfamily(chosen));
    if (!result.optimal) throw BudgetExceeded("check_t12: exact solver ran out of nodes");
    all_below = result.size() < threshold;
    return all_below;
  });
  return all_below;
}

}  // namespace pqpierce
