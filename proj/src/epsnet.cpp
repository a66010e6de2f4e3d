#include "pqpierce/epsnet.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "pqpierce/errors.hpp"
#include "pqpierce/subsets.hpp"

namespace pqpierce {

const char* to_string(NetMethod m) {
  switch (m) {
    case NetMethod::Quantile1D: return "Quantile1D";
    case NetMethod::Centerpoint: return "Centerpoint";
    case NetMethod::SlabPair2D: return "SlabPair2D";
    case NetMethod::SupportFallback: return "SupportFallback";
  }
  return "?";
}

NetMethod parse_net_method(const std::string& name) {
  for (auto m : {NetMethod::Quantile1D, NetMethod::Centerpoint, NetMethod::SlabPair2D,
                 NetMethod::SupportFallback})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown net method '" + name + "'");
}

namespace {

struct Support {
  std::vector<Point> points;        // sorted, distinct
  std::vector<std::size_t> weight;  // copies of each
  std::vector<std::size_t> index;   // element -> support index
};

Support support_of(std::span<const Point> y) {
  Support s;
  s.points = dedupe_points({y.begin(), y.end()});
  s.weight.assign(s.points.size(), 0);
  for (const auto& p : y) {
    const auto k = static_cast<std::size_t>(std::lower_bound(s.points.begin(), s.points.end(), p) -
                                            s.points.begin());
    ++s.weight[k];
    s.index.push_back(k);
  }
  return s;
}

std::vector<Point> stable_unique(const std::vector<Point>& points) {
  std::vector<Point> out;
  std::vector<Point> seen;
  for (const auto& p : points) {
    auto it = std::lower_bound(seen.begin(), seen.end(), p);
    if (it != seen.end() && *it == p) continue;
    seen.insert(it, p);
    out.push_back(p);
  }
  return out;
}

std::size_t weighted_depth_2d(const Support& s, const Point& c) {
  std::size_t at_c = 0;
  std::vector<std::pair<Rational, Rational>> w;
  std::vector<std::size_t> wt;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (s.points[i] == c) {
      at_c += s.weight[i];
      continue;
    }
    w.emplace_back(s.points[i].x() - c.x(), s.points[i].y() - c.y());
    wt.push_back(s.weight[i]);
  }
  std::size_t total = at_c;
  for (auto v : wt) total += v;
  if (w.empty()) return total;

  // Normals just off each critical direction u = rot90(w_i), in both
  // rotational senses, cover every open arc of halfplane normals.
  std::size_t best = total;
  for (const auto& [wx, wy] : w) {
    for (int flip : {1, -1}) {
      const Rational ux = -wy * flip, uy = wx * flip;
      for (int sense : {1, -1}) {
        std::size_t count = at_c;
        for (std::size_t j = 0; j < w.size(); ++j) {
          const Rational along = ux * w[j].first + uy * w[j].second;
          if (along > 0) {
            count += wt[j];
          } else if (along == 0) {
            const Rational side = -uy * w[j].first + ux * w[j].second;
            if ((sense > 0 && side > 0) || (sense < 0 && side < 0)) count += wt[j];
          }
        }
        best = std::min(best, count);
      }
    }
  }
  return best;
}

std::size_t weighted_depth_1d(const Support& s, const Point& c) {
  std::size_t le = 0, ge = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (s.points[i][0] <= c[0]) le += s.weight[i];
    if (s.points[i][0] >= c[0]) ge += s.weight[i];
  }
  return std::min(le, ge);
}

void require_same_dim(std::span<const Point> pts, std::size_t d) {
  for (const auto& p : pts)
    if (p.dim() != d) throw DimensionMismatch("point multiset mixes dimensions");
}

void require_epsilon(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1)
    throw std::invalid_argument("epsilon must lie in (0, 1], got " + to_string(epsilon));
}

bool hull_meets(const std::vector<Point>& subset_support, std::span<const Point> x) {
  if (x.empty()) return false;
  const ConvexBody hull = convex_hull(subset_support);
  for (const auto& p : x)
    if (contains(hull, p)) return true;
  return false;
}

}  // namespace

std::size_t halfspace_depth(std::span<const Point> y, const Point& c) {
  if (y.empty()) return 0;
  const std::size_t d = c.dim();
  require_same_dim(y, d);
  const Support s = support_of(y);
  if (d == 1) return weighted_depth_1d(s, c);
  if (d == 2) return weighted_depth_2d(s, c);
  throw DimensionMismatch("halfspace_depth supports R^1 and R^2 only");
}

CenterpointResult centerpoint(std::span<const Point> y) {
  if (y.empty()) throw std::invalid_argument("centerpoint of an empty multiset");
  const std::size_t d = y.front().dim();
  require_same_dim(y, d);
  const Support s = support_of(y);
  const std::size_t m = y.size();

  if (d == 1) {
    std::vector<Point> sorted(y.begin(), y.end());
    std::sort(sorted.begin(), sorted.end());
    const Point& median = sorted[(m + 1) / 2 - 1];
    return {median, weighted_depth_1d(s, median)};
  }
  if (d != 2) throw DimensionMismatch("centerpoint supports R^1 and R^2 only");

  std::vector<Point> candidates = s.points;
  if (s.points.size() >= 3) {
    struct Line {
      Rational a, b, c;  // a x + b y = c
    };
    std::vector<Line> lines;
    for (std::size_t i = 0; i < s.points.size(); ++i)
      for (std::size_t j = i + 1; j < s.points.size(); ++j) {
        const Point& p = s.points[i];
        const Point& q = s.points[j];
        Rational a = q.y() - p.y(), b = p.x() - q.x();
        Rational c = a * p.x() + b * p.y();
        lines.push_back({std::move(a), std::move(b), std::move(c)});
      }
    const ConvexBody hull = convex_hull(s.points);
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const Rational det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
        if (det == 0) continue;
        Point p{(lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det,
                (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det};
        if (contains(hull, p)) candidates.push_back(std::move(p));
      }
    candidates = dedupe_points(std::move(candidates));
  }

  CenterpointResult best{candidates.front(), 0};
  for (const auto& c : candidates) {
    const std::size_t depth = weighted_depth_2d(s, c);
    if (depth > best.depth) best = {c, depth};
  }
  const std::size_t bound = (m + d) / (d + 1);
  if (best.depth < bound) throw std::logic_error("centerpoint: no candidate reaches depth ceil(m/3)");
  return best;
}

NetVerification verify_weak_net(std::span<const Point> y, const Rational& epsilon,
                                std::span<const Point> x, std::uint64_t budget) {
  require_epsilon(epsilon);
  NetVerification v;
  const std::size_t m = y.size();
  if (m == 0) {
    v.outcome = NetVerification::Outcome::Passed;
    v.strategy = "elements";
    return v;
  }
  const std::size_t d = y.front().dim();
  require_same_dim(y, d);
  require_same_dim(x, d);
  const std::size_t k = static_cast<std::size_t>(ceil_of(epsilon * m));
  const Support s = support_of(y);

  if (binomial(m, k) <= budget) {
    v.strategy = "elements";
    std::map<std::vector<std::size_t>, bool> memo;
    const bool all_hit = for_each_combination(m, k, [&](std::span<const std::size_t> chosen) {
      ++v.subsets_checked;
      std::vector<std::size_t> key;
      for (std::size_t e : chosen) key.push_back(s.index[e]);
      std::sort(key.begin(), key.end());
      key.erase(std::unique(key.begin(), key.end()), key.end());
      auto it = memo.find(key);
      if (it == memo.end()) {
        std::vector<Point> pts;
        for (std::size_t i : key) pts.push_back(s.points[i]);
        it = memo.emplace(std::move(key), hull_meets(pts, x)).first;
      }
      if (!it->second) v.first_failure = std::vector<std::size_t>(chosen.begin(), chosen.end());
      return it->second;
    });
    v.outcome = all_hit ? NetVerification::Outcome::Passed : NetVerification::Outcome::Failed;
    return v;
  }

  const std::size_t ns = s.points.size();
  if (ns < 63 && (std::uint64_t{1} << ns) <= budget) {
    v.strategy = "support";
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ns); ++mask) {
      std::size_t size = 0, copies = 0;
      std::vector<Point> pts;
      for (std::size_t i = 0; i < ns; ++i)
        if (mask >> i & 1) {
          ++size;
          copies += s.weight[i];
          pts.push_back(s.points[i]);
        }
      if (size > k || copies < k) continue;
      ++v.subsets_checked;
      if (hull_meets(pts, x)) continue;
      // Realize the failing support set as k element indices: one copy of
      // each point first, then further copies in index order.
      std::vector<std::size_t> chosen;
      std::vector<bool> used(m, false);
      std::vector<bool> covered(ns, false);
      for (std::size_t e = 0; e < m; ++e)
        if ((mask >> s.index[e] & 1) && !covered[s.index[e]]) {
          covered[s.index[e]] = true;
          used[e] = true;
          chosen.push_back(e);
        }
      for (std::size_t e = 0; e < m && chosen.size() < k; ++e)
        if ((mask >> s.index[e] & 1) && !used[e]) chosen.push_back(e);
      std::sort(chosen.begin(), chosen.end());
      v.first_failure = std::move(chosen);
      v.outcome = NetVerification::Outcome::Failed;
      return v;
    }
    v.outcome = NetVerification::Outcome::Passed;
    return v;
  }

  v.outcome = NetVerification::Outcome::Unverifiable;
  v.strategy = "none";
  return v;
}

namespace {

std::vector<Point> quantile_net(std::span<const Point> y, std::size_t k) {
  std::vector<Point> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Point> net;
  for (std::size_t r = k; r <= sorted.size(); r += k) net.push_back(sorted[r - 1]);
  return stable_unique(net);
}

Point coordinate_median(std::span<const Point> slab) {
  std::vector<Rational> xs, ys;
  for (const auto& p : slab) {
    xs.push_back(p.x());
    ys.push_back(p.y());
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const std::size_t mid = (slab.size() + 1) / 2 - 1;
  return Point{xs[mid], ys[mid]};
}

std::vector<Point> slab_pair_net(std::span<const Point> y, const Rational& epsilon, SlabPairConfig config) {
  const std::size_t m = y.size();
  const auto knob = static_cast<std::size_t>(ceil_of(Rational(4) / epsilon));
  const std::size_t t = std::min(config.slabs ? config.slabs : knob, m);
  const std::size_t samples = config.samples ? config.samples : knob;

  std::vector<Point> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Point> centers, medians;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t lo = i * m / t, hi = (i + 1) * m / t;
    std::span<const Point> slab(sorted.data() + lo, hi - lo);
    centers.push_back(centerpoint(slab).point);
    medians.push_back(coordinate_median(slab));
  }
  std::vector<Point> net = centers;
  net.insert(net.end(), medians.begin(), medians.end());
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      for (std::size_t r = 1; r <= samples; ++r) {
        const Rational frac(r, samples + 1);
        net.push_back(Point{medians[i].x() + frac * (medians[j].x() - medians[i].x()),
                            medians[i].y() + frac * (medians[j].y() - medians[i].y())});
      }
  return stable_unique(net);
}

}  // namespace

WeakNetResult weak_eps_net(std::span<const Point> y, const Rational& epsilon, std::optional<NetMethod> method,
                           std::uint64_t budget, SlabPairConfig config) {
  require_epsilon(epsilon);
  WeakNetResult result;
  result.epsilon = epsilon;
  result.source_size = y.size();
  if (y.empty()) {
    result.verified = true;
    result.transcript = verify_weak_net(y, epsilon, {}, budget);
    return result;
  }
  const std::size_t d = y.front().dim();
  require_same_dim(y, d);
  if (d != 1 && d != 2) throw DimensionMismatch("weak_eps_net supports R^1 and R^2 only");
  const std::size_t m = y.size();
  const std::size_t k = static_cast<std::size_t>(ceil_of(epsilon * m));
  const std::vector<Point> support = dedupe_points({y.begin(), y.end()});

  NetMethod chosen;
  if (k == 1) {
    chosen = NetMethod::SupportFallback;
  } else if (method) {
    chosen = *method;
  } else if (d == 1) {
    chosen = NetMethod::Quantile1D;
  } else {
    chosen = epsilon >= Rational(2, 3) ? NetMethod::Centerpoint : NetMethod::SlabPair2D;
  }
  if (chosen == NetMethod::Quantile1D && d != 1) throw std::invalid_argument("Quantile1D requires R^1");
  if (chosen == NetMethod::SlabPair2D && d != 2) throw std::invalid_argument("SlabPair2D requires R^2");

  // Nets that are correct by construction may stand without verification.
  bool by_construction = false;
  switch (chosen) {
    case NetMethod::Quantile1D:
      result.net = quantile_net(y, k);
      by_construction = true;
      break;
    case NetMethod::Centerpoint: {
      const auto c = centerpoint(y);
      result.net = {c.point};
      // A closed halfplane separating c from a k-subset holds >= depth points
      // outside the subset, so depth > m - k forces c into every such hull.
      by_construction = c.depth > m - k;
      break;
    }
    case NetMethod::SlabPair2D:
      result.net = slab_pair_net(y, epsilon, config);
      break;
    case NetMethod::SupportFallback:
      result.net = support;
      by_construction = true;
      break;
  }
  result.method = chosen;

  result.transcript = verify_weak_net(y, epsilon, result.net, budget);
  using Outcome = NetVerification::Outcome;
  const bool keep = result.transcript.outcome == Outcome::Passed ||
                    (result.transcript.outcome == Outcome::Unverifiable && by_construction);
  if (!keep) {
    result.abandoned = chosen;
    result.method = NetMethod::SupportFallback;
    result.net = support;
    result.transcript = verify_weak_net(y, epsilon, result.net, budget);
  }
  switch (result.transcript.outcome) {
    case Outcome::Passed: result.verified = true; break;
    case Outcome::Failed: result.verified = false; break;
    case Outcome::Unverifiable: result.verified = std::nullopt; break;
  }
  return result;
}

}  // namespace pqpierce
