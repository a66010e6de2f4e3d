#include <doctest.h>

#include "oracles.hpp"
#include "pqpierce/errors.hpp"
#include "pqpierce/generate.hpp"
#include "pqpierce/json_io.hpp"
#include "pqpierce/pipeline.hpp"

using namespace pqpierce;

namespace {

void check_report(const Family& f, const PipelineReport& r) {
  CHECK(verify_report(f, r));
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool hit = false;
    for (const auto& p : r.piercing.points) hit = hit || oracle::contains(f[i], p);
    CHECK(hit);
    const auto pts = r.multiset.expand();
    std::size_t inside = 0;
    for (const auto& p : pts) inside += oracle::contains(f[i], p);
    CHECK(Rational(inside) >= r.achieved_gamma() * r.multiset_size());
  }
  if (r.exact_optimum) CHECK(r.net_size() >= *r.exact_optimum);
  if (!r.multiset.denominator_guard_fired) CHECK(r.achieved_gamma() == r.fractional.gamma);
}

}  // namespace

TEST_CASE("pipeline examples") {
  const Family shared({ConvexBody::interval(0, 2), ConvexBody::interval(1, 3), ConvexBody::interval(-1, 1)});
  const auto r = run_pipeline(shared, 2);
  CHECK(r.net_size() == 1);
  check_report(shared, r);

  std::vector<ConvexBody> disjoint;
  for (int i = 0; i < 4; ++i) disjoint.push_back(ConvexBody::interval(3 * i, 3 * i + 1));
  const Family d(disjoint);
  const auto rd = run_pipeline(d, 5);
  CHECK(rd.achieved_gamma() == Rational(1, 4));
  CHECK(rd.multiset_size() == 4);
  CHECK(rd.net_size() == 4);
  check_report(d, rd);

  try {
    run_pipeline(d, 2);
    FAIL("expected PropertyViolation");
  } catch (const PropertyViolation& e) {
    CHECK(e.witness() == std::vector<std::size_t>{0, 1});
  }
  CHECK_THROWS_AS(run_pipeline(generate_slabs(10).family(), 2), PropertyViolation);
}

TEST_CASE("pipeline on planar (4,3) families") {
  int runs = 0;
  for (std::uint64_t seed = 0; runs < 12 && seed < 400; ++seed) {
    const Family f = generate_random_polygons(8, seed, 4, 1, 8).family();
    if (!verify_pq(f, 4, 3).holds) continue;
    ++runs;
    const auto r = run_pipeline(f, 4);
    REQUIRE(r.exact_optimum);
    check_report(f, r);
  }
  CHECK(runs == 12);
}

TEST_CASE("pipeline on measure families and boxes") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = generate_measure(uniform_grid_measure(3), Rational(1, 3), 7, seed);
    const Family f = inst.family();
    const auto p = std::stoul(inst.metadata.at("p").get<std::string>());
    CHECK(verify_pq(f, p, 3).holds);
    check_report(f, run_pipeline(f, p));
  }
  const Family boxes({ConvexBody::box(Point{0, 0, 0}, Point{2, 2, 2}), ConvexBody::box(Point{1, 1, 1}, Point{3, 3, 3}),
                      ConvexBody::box(Point{1, 0, 1}, Point{2, 4, 2}), ConvexBody::box(Point{0, 1, 0}, Point{5, 2, 5})});
  const auto rb = run_pipeline(boxes, 4);
  CHECK(rb.net_size() == 1);
  CHECK(verify_report(boxes, rb));
}

TEST_CASE("denominator guard is reported") {
  int fired = 0;
  // p = n + 1 makes the property vacuous, so any family qualifies.
  for (std::uint64_t seed = 0; seed < 300 && fired < 3; ++seed) {
    const Family f = generate_random_polygons(8, seed, 4, 3, 4).family();
    const std::size_t p = f.size() + 1;
    PipelineOptions opts;
    const auto plain = run_pipeline(f, p, opts);
    Integer common = 1;
    std::size_t support = 0;
    for (const auto& v : plain.fractional.f)
      if (v > 0) common = lcm_of(common, denominator_of(v)), ++support;
    if (common - 1 <= Integer(support)) continue;
    opts.denominator_cap = common - 1;
    const auto guarded = run_pipeline(f, p, opts);
    CHECK(guarded.multiset.denominator_guard_fired);
    CHECK(guarded.achieved_gamma() <= guarded.fractional.gamma);
    CHECK(Integer(guarded.multiset_size()) <= opts.denominator_cap);
    check_report(f, guarded);
    ++fired;
  }
  CHECK(fired == 3);
}

TEST_CASE("generators") {
  for (std::size_t n : {6u, 8u, 10u}) {
    const Family f = generate_slabs(n).family();
    CHECK(f.size() == n);
    CHECK(verify_pq(f, 2, 2).holds);
    CHECK(deepest_point(f).depth == 2);
  }
  for (auto [p, q] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 3}, {5, 3}, {6, 2}}) {
    const Family f = generate_hd_tight_intervals(p, q).family();
    CHECK(verify_pq(f, p, q).holds);
    CHECK(exact_piercing(f).size() == p - q + 1);
  }
  CHECK_THROWS(generate_hd_tight_intervals(2, 3));

  const auto a = generate_random_polygons(6, 99), b = generate_random_polygons(6, 99);
  CHECK(a == b);
  CHECK(generate_measure(uniform_grid_measure(3), Rational(1, 3), 5, 4) ==
        generate_measure(uniform_grid_measure(3), Rational(1, 3), 5, 4));

  const auto s = search_43(7, 30);
  CHECK(s.rounds_run <= 30);
  if (s.found) CHECK(exact_piercing(s.found->family()).size() >= 3);
  else CHECK(s.rounds_run == 30);
}

TEST_CASE("instances round-trip through JSON") {
  std::vector<Instance> all = {generate_slabs(6), generate_measure(uniform_grid_measure(4), Rational(1, 4), 6, 3),
                               generate_hd_tight_intervals(5, 3), generate_random_intervals(7, 2),
                               generate_random_polygons(5, 8)};
  Instance boxes;
  boxes.name = "boxes";
  boxes.dim = 3;
  boxes.bodies = {ConvexBody::box(Point{0, Rational(-1, 3), 0}, Point{1, 1, Rational(7, 2)})};
  boxes.multiplicities = {4};
  all.push_back(boxes);
  for (const auto& inst : all) {
    const auto text = json_io::encode(inst).dump();
    CHECK(json_io::decode_instance(json_io::json::parse(text)) == inst);
  }
}
