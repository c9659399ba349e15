#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rnaudit/error.hpp"
#include "rnaudit/segregation.hpp"

using namespace rnaudit;
using fixtures::edge;
using fixtures::item;

namespace {

InformationUniverse universe(std::vector<double> n) {
  InformationUniverse u;
  for (std::size_t i = 0; i < n.size(); ++i) u.units.push_back("u" + std::to_string(i));
  for (double x : n) u.total += x;
  u.sources = std::move(n);
  return u;
}

}  // namespace

TEST_CASE("build_universe splits multi-genre items") {
  auto rn = build_network({item("a", {"g1"}), item("b", {"g1", "g2"})}, {});
  auto u = build_universe(rn);
  CHECK(u.units == std::vector<std::string>{"g1", "g2"});
  CHECK(u.sources == std::vector<double>{1.5, 0.5});
  CHECK(u.total == 2.0);

  auto single = build_universe(build_network({item("a", {"x"}), item("b", {"y"}), item("c", {"x"})}, {}));
  CHECK(single.sources == std::vector<double>{2.0, 1.0});
}

TEST_CASE("evenness closed forms") {
  CHECK(evenness(ExposureVector::from({4, 4, 4})) == 1.0);
  CHECK(std::abs(evenness(ExposureVector::from({6, 0, 0})) - 1.0 / 3.0) < 1e-12);
  // a = (3, 1): sum |a_i - a_j| = 4, denominator 2 * 2 * 4 = 16.
  CHECK(std::abs(evenness(ExposureVector::from({3, 1})) - 0.75) < 1e-12);
  CHECK(std::abs(evenness(ExposureVector::from({4, 0})) - 0.5) < 1e-12);
  CHECK_THROWS_AS(evenness(ExposureVector::from({0, 0})), AuditError);
}

TEST_CASE("concentration closed forms") {
  auto u = universe({80, 20});
  CHECK(std::abs(concentration(ExposureVector::from({10, 0}), u) - 0.4) < 1e-12);
  CHECK(std::abs(concentration(ExposureVector::from({0, 10}), u) - 0.1) < 1e-12);
  for (std::size_t m : {1u, 3u, 7u}) {
    auto uu = universe(std::vector<double>(m, 5.0));
    CHECK(std::abs(concentration(ExposureVector::from(std::vector<double>(m, 2.0)), uu) - 1.0 / (2.0 * m)) < 1e-12);
  }
  try {
    concentration(ExposureVector::from({1, 2, 3}), u);
    FAIL("expected kUnitMismatch");
  } catch (const AuditError& e) {
    CHECK(e.code() == Errc::kUnitMismatch);
  }
  CHECK_THROWS_AS(concentration(ExposureVector::from({0, 0}), u), AuditError);
}

TEST_CASE("evenness and concentration properties on random vectors") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 10.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng() % 12;
    std::vector<double> a(m), n(m);
    for (auto& x : a) x = (rng() % 4 == 0) ? 0.0 : unit(rng);
    for (auto& x : n) x = 0.1 + unit(rng);
    a[rng() % m] += 1.0;
    const auto av = ExposureVector::from(a);
    const auto u = universe(n);
    const double ie = evenness(av);
    const double ic = concentration(av, u);

    CHECK(std::abs(ie - (1.0 - oracle::gini_sorted(a))) < 1e-12);
    CHECK(ie >= 1.0 / static_cast<double>(m) - 1e-12);
    CHECK(ie <= 1.0 + 1e-12);
    const double lo = 0.5 * *std::min_element(n.begin(), n.end()) / u.total;
    const double hi = 0.5 * *std::max_element(n.begin(), n.end()) / u.total;
    CHECK(ic >= lo - 1e-12);
    CHECK(ic <= hi + 1e-12);

    std::vector<double> scaled(a);
    for (auto& x : scaled) x *= 3.7;
    CHECK(std::abs(evenness(ExposureVector::from(scaled)) - ie) < 1e-12);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pa(m), pn(m);
    for (std::size_t i = 0; i < m; ++i) {
      pa[i] = a[perm[i]];
      pn[i] = n[perm[i]];
    }
    CHECK(std::abs(evenness(ExposureVector::from(pa)) - ie) < 1e-12);
    CHECK(std::abs(concentration(ExposureVector::from(pa), universe(pn)) - ic) < 1e-12);
  }
}

TEST_CASE("group_exposure") {
  SUBCASE("walk confined to one genre") {
    auto rn = build_network({item("a", {"g1"}), item("b", {"g1"}), item("c", {"g2"})},
                            {edge("a", "b", 1), edge("b", "a", 1)});
    auto u = build_universe(rn);
    auto a = group_exposure(rn, {"a", SurferPolicy::stochastic(0.0), 1, 10}, u, 5);
    CHECK(a.mass[0] == 11.0);
    CHECK(a.mass[1] == 0.0);
    CHECK(a.total == 11.0);
  }
  SUBCASE("top-one members agree") {
    auto rn = build_network({item("a", {"g1"}), item("b", {"g2"}), item("c", {"g3"})},
                            {edge("a", "b", 1), edge("b", "c", 1), edge("a", "c", 2)});
    auto u = build_universe(rn);
    auto one = group_exposure(rn, {"a", SurferPolicy::top_one(), 1, 25}, u, 1);
    auto two = group_exposure(rn, {"a", SurferPolicy::top_one(), 2, 25}, u, 99);
    CHECK(one.mass == two.mass);
  }
  SUBCASE("uniform jumps recover the universe shares") {
    std::vector<ItemRecord> items;
    for (int i = 0; i < 12; ++i) items.push_back(item("n" + std::to_string(i), {"g" + std::to_string(i % 3)}));
    auto rn = build_network(items, {});
    auto u = build_universe(rn);
    auto a = group_exposure(rn, {"n0", SurferPolicy::stochastic(1.0), 10, 5000}, u, 8);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.mass[i] / a.total - u.sources[i] / u.total) < 0.02);
  }
  SUBCASE("unknown start") {
    auto rn = build_network({item("a", {"g1"})}, {});
    CHECK_THROWS_AS(group_exposure(rn, {"zz", SurferPolicy::top_one(), 1, 5}, build_universe(rn), 1), AuditError);
  }
}

TEST_CASE("run_segregation_experiment") {
  std::vector<ItemRecord> items;
  std::vector<RecEdge> edges;
  for (int i = 0; i < 20; ++i) items.push_back(item("n" + std::to_string(i), {"g" + std::to_string(i % 4)}));
  for (int i = 0; i < 20; ++i) {
    edges.push_back(edge("n" + std::to_string(i), "n" + std::to_string((i + 4) % 20), 1));
    edges.push_back(edge("n" + std::to_string(i), "n" + std::to_string((i + 1) % 20), 2));
  }
  auto rn = build_network(items, edges);

  SUBCASE("grid shape") {
    SegregationConfig cfg;
    cfg.starts = top_indegree_starts(rn, 10);
    cfg.steps = 50;
    cfg.seed = 3;
    auto report = run_segregation_experiment(rn, cfg);
    CHECK(report.groups.size() == 110);
    REQUIRE(report.per_tp.size() == 11);
    for (const auto& row : report.per_tp) CHECK(row.num_groups == 10);
    CHECK(report.per_tp[10].tp == 1.0);

    cfg.threads = 5;
    auto again = run_segregation_experiment(rn, cfg);
    CHECK(again.groups == report.groups);
    CHECK(again.per_tp == report.per_tp);
  }
  SUBCASE("single group") {
    SegregationConfig cfg;
    cfg.starts = {"n3"};
    cfg.tps = {0.3};
    cfg.members = 1;
    cfg.steps = 40;
    auto report = run_segregation_experiment(rn, cfg);
    REQUIRE(report.per_tp.size() == 1);
    auto u = build_universe(rn);
    auto a = group_exposure(rn, {"n3", SurferPolicy::stochastic(0.3), 1, 40}, u, derive_seed(0, hash_id("n3"), 0));
    CHECK(report.per_tp[0].mean_evenness == evenness(a));
    CHECK(report.per_tp[0].mean_concentration == concentration(a, u));
  }
  SUBCASE("unknown start") {
    SegregationConfig cfg;
    cfg.starts = {"nope"};
    CHECK_THROWS_AS(run_segregation_experiment(rn, cfg), AuditError);
  }
}

TEST_CASE("single-genre network has constant indices") {
  std::vector<ItemRecord> items;
  std::vector<RecEdge> edges;
  for (int i = 0; i < 6; ++i) {
    items.push_back(item("n" + std::to_string(i), {"only"}));
    edges.push_back(edge("n" + std::to_string(i), "n" + std::to_string((i + 1) % 6), 1));
  }
  auto rn = build_network(items, edges);
  SegregationConfig cfg;
  cfg.starts = {"n0", "n2"};
  cfg.steps = 30;
  auto report = run_segregation_experiment(rn, cfg);
  for (const auto& row : report.per_tp) {
    CHECK(row.mean_evenness == 1.0);  // m = 1
    CHECK(row.mean_concentration == 0.5);
  }
}

TEST_CASE("segregation tables") {
  SegregationReport r;
  r.groups = {{"a", 0.0, 0.5, 0.25}, {"a", 0.1, 0.75, 0.125}};
  r.per_tp = {{0.0, 0.5, 0.25, 1}, {0.1, 0.75, 0.125, 1}};
  std::ostringstream summary, groups;
  write_segregation_summary(summary, r);
  write_segregation_groups(groups, r);
  CHECK(summary.str() ==
        "tp,mean_evenness,mean_concentration,num_groups\n0.0,0.500000,0.250000,1\n0.1,0.750000,0.125000,1\n");
  CHECK(groups.str() == "start,tp,evenness,concentration\na,0.0,0.500000,0.250000\na,0.1,0.750000,0.125000\n");
}
