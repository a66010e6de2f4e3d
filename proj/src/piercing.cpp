#include "pqpierce/piercing.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "pqpierce/errors.hpp"
#include "pqpierce/exactlp.hpp"
#include "pqpierce/subsets.hpp"

namespace pqpierce {

namespace {

constexpr std::uint64_t kMaxBoxGrid = 5'000'000;

std::vector<Point> box_grid_candidates(const Family& f) {
  const std::size_t d = f.dim();
  std::vector<Box> boxes;
  for (const auto& b : f.bodies()) boxes.push_back(b.to_box());

  std::vector<std::vector<Rational>> values(d);
  std::uint64_t grid = 1;
  for (std::size_t j = 0; j < d; ++j) {
    for (const auto& b : boxes) {
      values[j].push_back(b.lo[j]);
      values[j].push_back(b.hi[j]);
    }
    std::sort(values[j].begin(), values[j].end());
    values[j].erase(std::unique(values[j].begin(), values[j].end()), values[j].end());
    grid *= values[j].size();
    if (grid > kMaxBoxGrid) throw BudgetExceeded("candidate_points: box grid too large");
  }

  std::vector<Point> out;
  std::vector<std::size_t> idx(d, 0);
  std::vector<Rational> coords(d);
  while (true) {
    for (std::size_t j = 0; j < d; ++j) coords[j] = values[j][idx[j]];
    Point p(coords);
    for (const auto& body : f.bodies()) {
      if (contains(body, p)) {
        out.push_back(std::move(p));
        break;
      }
    }
    std::size_t j = d;
    while (j > 0 && ++idx[j - 1] == values[j - 1].size()) idx[--j] = 0;
    if (j == 0) break;
  }
  return out;  // odometer order is already lexicographic
}

std::uint64_t mask_of(const Family& f, const Point& p) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (contains(f[i], p)) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

std::vector<Point> candidate_points(const Family& f) {
  if (!f.is_polygonal()) return box_grid_candidates(f);
  std::vector<Point> out;
  for (const auto& b : f.bodies()) {
    const auto v = body_vertices(b);
    out.insert(out.end(), v.begin(), v.end());
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const auto x = edge_intersections(f[i], f[j]);
      out.insert(out.end(), x.begin(), x.end());
    }
  return dedupe_points(std::move(out));
}

std::size_t IncidenceHypergraph::vertex_degree(std::size_t v) const {
  std::size_t deg = 0;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].test(v)) deg += weights.empty() ? 1 : weights[e];
  return deg;
}

IncidenceHypergraph build_hypergraph(const Family& f) {
  IncidenceHypergraph h;
  h.vertices = candidate_points(f);
  h.weights = f.multiplicities();
  for (std::size_t i = 0; i < f.size(); ++i) {
    boost::dynamic_bitset<> edge(h.vertices.size());
    for (std::size_t v = 0; v < h.vertices.size(); ++v)
      if (contains(f[i], h.vertices[v])) edge.set(v);
    h.edges.push_back(std::move(edge));
  }
  return h;
}

bool verify_piercing(const Family& f, const PiercingCertificate& cert) {
  if (cert.assignment.size() != f.size()) return false;
  if (dedupe_points(cert.points).size() != cert.points.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t k = cert.assignment[i];
    if (k >= cert.points.size() || !contains(f[i], cert.points[k])) return false;
  }
  return true;
}

PiercingCertificate assign_points(const Family& f, std::vector<Point> points) {
  PiercingCertificate cert{std::move(points), {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t k = 0;
    while (k < cert.points.size() && !contains(f[i], cert.points[k])) ++k;
    if (k == cert.points.size())
      throw std::logic_error("assign_points: body " + std::to_string(i) + " is not pierced");
    cert.assignment.push_back(k);
  }
  return cert;
}

namespace {

/// Minimum set cover of bodies (bits) by candidate masks.
class CoverSearch {
 public:
  CoverSearch(std::vector<std::uint64_t> masks, std::size_t n, std::uint64_t budget)
      : masks_(std::move(masks)), n_(n), full_(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1),
        budget_(budget), covers_(n), neighbourhood_(n, 0) {
    for (std::size_t c = 0; c < masks_.size(); ++c)
      for (std::size_t i = 0; i < n_; ++i)
        if (masks_[c] >> i & 1) {
          covers_[i].push_back(c);
          neighbourhood_[i] |= masks_[c];
        }
  }

  std::vector<std::size_t> greedy() const {
    std::vector<std::size_t> chosen;
    std::uint64_t uncovered = full_;
    while (uncovered) {
      std::size_t best = 0;
      int best_gain = -1;
      for (std::size_t c = 0; c < masks_.size(); ++c) {
        const int gain = std::popcount(masks_[c] & uncovered);
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      chosen.push_back(best);
      uncovered &= ~masks_[best];
    }
    return chosen;
  }

  /// Bodies pairwise sharing no candidate need distinct points.
  std::size_t packing_bound(std::uint64_t uncovered) const {
    std::size_t count = 0;
    std::uint64_t blocked = 0;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n_; ++i)
      if (uncovered >> i & 1) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return covers_[a].size() < covers_[b].size(); });
    for (std::size_t i : order) {
      if (blocked >> i & 1) continue;
      ++count;
      blocked |= neighbourhood_[i];
    }
    return count;
  }

  /// Returns false if the node budget ran out.
  bool run(std::vector<std::size_t> incumbent, std::size_t lower_bound) {
    best_ = std::move(incumbent);
    lower_bound_ = lower_bound;
    std::vector<std::size_t> chosen;
    if (best_.size() > lower_bound_) search(full_, chosen);
    return !exhausted_;
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void search(std::uint64_t uncovered, std::vector<std::size_t>& chosen) {
    if (exhausted_ || best_.size() <= lower_bound_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (!uncovered) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(uncovered) >= best_.size()) return;

    std::size_t pivot = n_;
    for (std::size_t i = 0; i < n_; ++i)
      if ((uncovered >> i & 1) && (pivot == n_ || covers_[i].size() < covers_[pivot].size())) pivot = i;

    std::vector<std::size_t> options = covers_[pivot];
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(masks_[a] & uncovered) > std::popcount(masks_[b] & uncovered);
    });
    for (std::size_t c : options) {
      chosen.push_back(c);
      search(uncovered & ~masks_[c], chosen);
      chosen.pop_back();
      if (exhausted_ || best_.size() <= lower_bound_) return;
    }
  }

  std::vector<std::uint64_t> masks_;
  std::size_t n_;
  std::uint64_t full_;
  std::uint64_t budget_;
  std::vector<std::vector<std::size_t>> covers_;
  std::vector<std::uint64_t> neighbourhood_;
  std::vector<std::size_t> best_;
  std::size_t lower_bound_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

/// ceil of min sum x_c subject to sum_{c covers i} x_c >= 1, x >= 0.
std::size_t set_cover_lp_bound(const std::vector<std::uint64_t>& masks, std::size_t n) {
  lp::LinearProgram prog;
  prog.sense = lp::Sense::Maximize;
  prog.objective = lp::Vector(masks.size(), Rational(-1));
  for (std::size_t i = 0; i < n; ++i) {
    lp::Vector row(masks.size());
    for (std::size_t c = 0; c < masks.size(); ++c)
      if (masks[c] >> i & 1) row[c] = -1;
    prog.A.push_back(std::move(row));
    prog.b.push_back(-1);
  }
  const auto out = lp::solve(prog);
  const auto* opt = std::get_if<lp::Optimal>(&out);
  if (!opt) throw std::logic_error("set-cover relaxation is not optimal");
  return static_cast<std::size_t>(ceil_of(-opt->value));
}

}  // namespace

ExactPiercingResult exact_piercing(const Family& f, std::uint64_t node_budget) {
  const std::size_t n = f.size();
  if (n > 64) throw std::invalid_argument("exact_piercing supports at most 64 bodies");
  const auto candidates = candidate_points(f);

  // Keep one candidate per distinct mask, then drop strictly dominated masks.
  std::vector<std::uint64_t> masks;
  std::vector<std::size_t> origin;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::uint64_t m = mask_of(f, candidates[c]);
    if (m == 0 || std::find(masks.begin(), masks.end(), m) != masks.end()) continue;
    masks.push_back(m);
    origin.push_back(c);
  }
  std::vector<std::uint64_t> kept_masks;
  std::vector<std::size_t> kept_origin;
  for (std::size_t a = 0; a < masks.size(); ++a) {
    const bool dominated = std::any_of(masks.begin(), masks.end(), [&](std::uint64_t other) {
      return other != masks[a] && (masks[a] & other) == masks[a];
    });
    if (!dominated) {
      kept_masks.push_back(masks[a]);
      kept_origin.push_back(origin[a]);
    }
  }

  CoverSearch search(kept_masks, n, node_budget);
  ExactPiercingResult result;
  auto incumbent = search.greedy();
  result.greedy_upper_bound = incumbent.size();
  result.lp_lower_bound = set_cover_lp_bound(kept_masks, n);
  const std::size_t lower = std::max(result.lp_lower_bound, search.packing_bound(
                                                                n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1));
  result.optimal = search.run(std::move(incumbent), lower);
  result.nodes = search.nodes();

  std::vector<std::size_t> chosen = search.best();
  std::sort(chosen.begin(), chosen.end());
  const std::size_t k = chosen.size();
  if (result.optimal) {
    if (k == 1) {
      result.double_checked = true;
    } else if (binomial(kept_masks.size(), k - 1) <= 1'000'000) {
      const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
      const bool smaller_exists = !for_each_combination(kept_masks.size(), k - 1, [&](auto pick) {
        std::uint64_t cover = 0;
        for (std::size_t c : pick) cover |= kept_masks[c];
        return cover != full;
      });
      if (smaller_exists) throw std::logic_error("exact_piercing: optimality re-check found a smaller cover");
      result.double_checked = true;
    }
  }

  std::vector<Point> points;
  for (std::size_t c : chosen) points.push_back(candidates[kept_origin[c]]);
  result.certificate = assign_points(f, std::move(points));
  return result;
}

bool verify_fractional(const IncidenceHypergraph& h, const FractionalCertificate& cert) {
  const std::size_t nv = h.vertices.size();
  const std::size_t ne = h.edges.size();
  if (cert.f.size() != nv || cert.g.size() != ne) return false;
  Rational sum_f = 0, sum_g = 0;
  for (const auto& v : cert.f) {
    if (v < 0) return false;
    sum_f += v;
  }
  for (const auto& v : cert.g) {
    if (v < 0) return false;
    sum_g += v;
  }
  if (sum_f != 1 || sum_g != 1) return false;
  for (const auto& edge : h.edges) {
    Rational mass = 0;
    for (std::size_t v = edge.find_first(); v != edge.npos; v = edge.find_next(v)) mass += cert.f[v];
    if (mass < cert.gamma) return false;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    Rational star = 0;
    for (std::size_t e = 0; e < ne; ++e)
      if (h.edges[e].test(v)) star += cert.g[e];
    if (star > cert.gamma) return false;
  }
  return true;
}

FractionalCertificate gamma_lp(const IncidenceHypergraph& h) {
  const std::size_t nv = h.vertices.size();
  const std::size_t ne = h.edges.size();
  if (ne == 0) throw std::invalid_argument("gamma_lp: hypergraph without edges");
  for (std::size_t e = 0; e < ne; ++e)
    if (h.edges[e].none())
      throw EmptyBody("gamma_lp: body " + std::to_string(e) + " contains no candidate point", e);

  // Variables f_0..f_{nv-1}, gamma. Maximize gamma subject to
  // gamma - f(e) <= 0 for every edge and sum f = 1.
  lp::GeneralProgram prog;
  prog.num_vars = nv + 1;
  prog.sense = lp::Sense::Maximize;
  prog.objective = lp::Vector(nv + 1);
  (*prog.objective)[nv] = 1;
  for (const auto& edge : h.edges) {
    lp::Constraint c{lp::Vector(nv + 1), lp::Relation::LessEqual, 0};
    c.coeffs[nv] = 1;
    for (std::size_t v = edge.find_first(); v != edge.npos; v = edge.find_next(v)) c.coeffs[v] = -1;
    prog.constraints.push_back(std::move(c));
  }
  lp::Constraint total{lp::Vector(nv + 1, Rational(1)), lp::Relation::Equal, 1};
  total.coeffs[nv] = 0;
  prog.constraints.push_back(std::move(total));

  const auto normalized = lp::normalize(prog);
  const auto outcome = lp::solve(normalized.lp);
  const auto* opt = std::get_if<lp::Optimal>(&outcome);
  if (!opt) throw std::logic_error(std::string("gamma_lp: unexpected LP status ") + lp::status_name(outcome));

  const lp::Vector x = normalized.recover_primal(opt->x);
  const lp::Vector y = normalized.recover_dual(opt->y);
  FractionalCertificate cert;
  cert.gamma = opt->value;
  cert.f.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nv));
  Rational edge_mass = 0;
  for (std::size_t e = 0; e < ne; ++e) edge_mass += y[e];
  for (std::size_t e = 0; e < ne; ++e) cert.g.push_back(y[e] / edge_mass);
  if (!verify_fractional(h, cert)) throw std::logic_error("gamma_lp: certificate failed verification");
  return cert;
}

DeepestPoint deepest_point(const Family& f) {
  const auto candidates = candidate_points(f);
  DeepestPoint best{candidates.front(), 0, f.total_weight()};
  for (const auto& c : candidates) {
    std::size_t depth = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (contains(f[i], c)) depth += f.multiplicity(i);
    if (depth > best.depth) {
      best.depth = depth;
      best.point = c;
    }
  }
  return best;
}

std::vector<Point> HeavyMultiset::expand() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t c = 0; c < counts[i]; ++c) out.push_back(points[i]);
  return out;
}

HeavyMultisetResult heavy_multiset(const Family& f, const Integer& cap) {
  const IncidenceHypergraph h = build_hypergraph(f);
  HeavyMultisetResult result{{}, gamma_lp(h)};
  const auto& frac = result.fractional;

  Integer common = 1;
  std::size_t support = 0;
  for (const auto& v : frac.f)
    if (v > 0) {
      common = lcm_of(common, denominator_of(v));
      ++support;
    }

  HeavyMultiset& y = result.multiset;
  std::vector<Integer> counts(frac.f.size());
  if (common <= cap) {
    for (std::size_t v = 0; v < frac.f.size(); ++v)
      if (frac.f[v] > 0) counts[v] = numerator_of(frac.f[v] * common);
    y.gamma = frac.gamma;
  } else {
    // Round the distribution up on a grid of size cap - support so the
    // total stays below the cap, then certify whatever gamma survives.
    const Integer grid = cap - support;
    if (grid <= 0) throw std::invalid_argument("heavy_multiset: denominator cap below support size");
    for (std::size_t v = 0; v < frac.f.size(); ++v)
      if (frac.f[v] > 0) counts[v] = ceil_of(frac.f[v] * grid);
    y.denominator_guard_fired = true;
  }

  Integer total = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    y.points.push_back(h.vertices[v]);
    y.counts.push_back(static_cast<std::size_t>(counts[v]));
    total += counts[v];
  }
  y.total = static_cast<std::size_t>(total);

  if (y.denominator_guard_fired) {
    Rational worst = frac.gamma;
    for (const auto& edge : h.edges) {
      Integer mass = 0;
      for (std::size_t v = edge.find_first(); v != edge.npos; v = edge.find_next(v)) mass += counts[v];
      worst = std::min(worst, Rational(mass, total));
    }
    y.gamma = worst;
  }
  if (!verify_heavy(f, y)) throw std::logic_error("heavy_multiset: multiset failed verification");
  return result;
}

bool verify_heavy(const Family& f, const HeavyMultiset& y) {
  if (y.points.size() != y.counts.size() || y.points.empty()) return false;
  std::size_t total = 0;
  for (std::size_t c : y.counts) {
    if (c == 0) return false;
    total += c;
  }
  if (total != y.total) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t inside = 0;
    for (std::size_t k = 0; k < y.points.size(); ++k)
      if (contains(f[i], y.points[k])) inside += y.counts[k];
    if (Rational(inside) < y.gamma * Rational(total)) return false;
  }
  return true;
}

}  // namespace pqpierce
