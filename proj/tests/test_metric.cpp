#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kcenter/metric.hpp"
#include "kcenter/rng.hpp"
#include "support/fixtures.hpp"

using namespace kcenter;
using fixtures::Points;
using fixtures::thrown_code;

TEST_SUITE("metric") {

TEST_CASE("zero matrix is a valid degenerate metric") {
  auto inst = MetricInstance::from_matrix(std::vector<double>(9, 0.0), 3);
  CHECK(inst.size() == 3);
  CHECK(inst.kind() == MetricKind::Matrix);
  for (PointId p = 0; p < 3; ++p)
    for (PointId q = 0; q < 3; ++q) CHECK(inst.distance(p, q) == 0.0);
  CHECK(inst.has_duplicate_points());
}

TEST_CASE("euclidean 3-4-5 triangle") {
  auto inst = MetricInstance::from_points({{0, 0}, {3, 4}});
  CHECK(inst.distance(0, 1) == 5.0);
  CHECK(inst.distance(1, 0) == 5.0);
  CHECK(inst.distance(0, 0) == 0.0);
  CHECK(inst.dimension() == 2);
  CHECK_FALSE(inst.has_duplicate_points());
}

TEST_CASE("triangle violation reports the offending triple") {
  std::vector<double> m = {0, 1, 10,
                           1, 0, 1,
                           10, 1, 0};
  try {
    MetricInstance::from_matrix(m, 3);
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TriangleViolation);
    REQUIRE(e.triple().has_value());
    auto t = *e.triple();
    std::sort(t.begin(), t.end());
    CHECK(t == std::array<std::uint32_t, 3>{0, 1, 2});
  }
}

TEST_CASE("matrix ingestion validation") {
  SUBCASE("asymmetry beyond tolerance rejected") {
    std::vector<double> m = {0, 1, 1.1, 0};
    CHECK(thrown_code([&] { MetricInstance::from_matrix(m, 2); }) ==
          ErrorCode::AsymmetricMatrix);
  }
  SUBCASE("asymmetry within tolerance symmetrized by averaging") {
    std::vector<double> m = {0, 1.0, 1.0 + 5e-10, 0};
    auto inst = MetricInstance::from_matrix(m, 2);
    CHECK(inst.distance(0, 1) == inst.distance(1, 0));
    CHECK(inst.distance(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("negative entry rejected") {
    std::vector<double> m = {0, -1, -1, 0};
    CHECK(thrown_code([&] { MetricInstance::from_matrix(m, 2); }) ==
          ErrorCode::NegativeDistance);
  }
  SUBCASE("nonzero diagonal rejected") {
    std::vector<double> m = {1, 0, 0, 1};
    CHECK(thrown_code([&] { MetricInstance::from_matrix(m, 2); }) ==
          ErrorCode::NonzeroDiagonal);
  }
  SUBCASE("wrong entry count rejected") {
    CHECK(thrown_code([&] { MetricInstance::from_matrix({0, 1, 1}, 2); }) ==
          ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("coordinate ingestion validation") {
  CHECK(thrown_code([&] { MetricInstance::from_coordinates({1, 2, 3}, 2); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(thrown_code([&] {
          MetricInstance::from_coordinates({0.0, std::nan("")}, 1);
        }) == ErrorCode::InvalidParams);
}

TEST_CASE("disk graph on the 0,1,3 line") {
  auto inst = fixtures::line013();
  SUBCASE("r=1 yields the single short edge") {
    auto g = disk_graph(inst, 1.0);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 0));
  }
  SUBCASE("r=3 is complete") {
    auto g = disk_graph(inst, 3.0);
    CHECK(g.edge_count() == 3);
  }
  SUBCASE("r=0 connects only coincident points") {
    CHECK(disk_graph(inst, 0.0).edge_count() == 0);
    CHECK(disk_graph(fixtures::coincident_pair(), 0.0).edge_count() == 1);
  }
  SUBCASE("negative radius rejected") {
    CHECK(thrown_code([&] { disk_graph(inst, -1.0); }) == ErrorCode::InvalidParams);
  }
}

TEST_CASE("disk graph matches pairwise recomputation and grows with r") {
  auto inst = fixtures::nonmono4();
  auto points = all_points(inst);
  double radii[] = {0.0, 1.0, 1.2, 1.5, 1.8, 1.9, 2.5};
  std::size_t prev_edges = 0;
  for (double r : radii) {
    auto g = disk_graph(inst, r);
    for (PointId p : points)
      for (PointId q : points) {
        bool expect = p != q && inst.distance(p, q) <= r;
        CHECK(g.has_edge(p, q) == expect);
        CHECK(g.has_edge(p, q) == g.has_edge(q, p));
      }
    CHECK(g.edge_count() >= prev_edges);
    prev_edges = g.edge_count();
  }
}

TEST_CASE("center_covers basics") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  CHECK(center_covers(inst, all, all, 0.0));
  CHECK_FALSE(center_covers(inst, Points{0}, all, 1.0));
  CHECK(center_covers(inst, Points{0, 2}, all, 1.0));
  CHECK(center_covers(inst, Points{0}, Points{}, 0.0));
  CHECK_FALSE(center_covers(inst, Points{}, all, 100.0));
  CHECK(center_covers(inst, Points{}, Points{}, 0.0));
}

TEST_CASE("center_covers is monotone in radius and in centers") {
  auto inst = fixtures::nonmono4();
  auto all = all_points(inst);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Points centers;
    for (PointId p : all)
      if (rng.uniform() < 0.5) centers.push_back(p);
    double r = rng.uniform(0.0, 2.0);
    if (!center_covers(inst, centers, all, r)) continue;
    CHECK(center_covers(inst, centers, all, r + 0.1));
    Points more = centers;
    more.push_back(static_cast<PointId>(rng.index(all.size())));
    CHECK(center_covers(inst, more, all, r));
  }
}

TEST_CASE("ordering construction") {
  auto phi = Ordering::identity(3);
  CHECK(phi.rank(0) == 1);
  CHECK(phi.rank(2) == 3);
  CHECK(phi.before(0, 2));

  auto rev = Ordering::from_ranks({3, 2, 1});
  CHECK(rev.by_rank() == Points{2, 1, 0});
  CHECK(rev.before(2, 0));

  CHECK(thrown_code([&] { Ordering::from_ranks({1, 1, 2}); }) ==
        ErrorCode::InvalidParams);
  CHECK(thrown_code([&] { Ordering::from_ranks({0, 1, 2}); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("reorder_prioritizing") {
  SUBCASE("single promotion") {
    auto phi = reorder_prioritizing(Ordering::identity(4), Points{2});
    CHECK(phi.by_rank() == Points{2, 0, 1, 3});
  }
  SUBCASE("priority list order is normalized to the old phi order") {
    auto phi = reorder_prioritizing(Ordering::identity(5), Points{3, 1});
    CHECK(phi.by_rank() == Points{1, 3, 0, 2, 4});
  }
  SUBCASE("full point set in phi order leaves ranks unchanged") {
    auto phi = reorder_prioritizing(Ordering::identity(4), Points{0, 1, 2, 3});
    CHECK(phi.by_rank() == Points{0, 1, 2, 3});
  }
  SUBCASE("idempotent under the same priority list") {
    auto once = reorder_prioritizing(Ordering::identity(5), Points{3, 1});
    auto twice = reorder_prioritizing(once, Points{3, 1});
    CHECK(once.by_rank() == twice.by_rank());
  }
  SUBCASE("unknown or duplicate priority ids rejected") {
    CHECK(thrown_code([&] {
            reorder_prioritizing(Ordering::identity(3), Points{7});
          }) == ErrorCode::UnknownPointId);
    CHECK(thrown_code([&] {
            reorder_prioritizing(Ordering::identity(3), Points{1, 1});
          }) == ErrorCode::InvalidParams);
  }
}

TEST_CASE("sorted_by_rank respects the ordering, not id order") {
  auto phi = Ordering::from_ranks({3, 1, 2});
  CHECK(sorted_by_rank(Points{0, 1, 2}, phi) == Points{1, 2, 0});
  CHECK(sorted_by_rank(Points{2, 0}, phi) == Points{2, 0});
}

}  // TEST_SUITE
