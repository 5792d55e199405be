#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "kcenter/generator.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/rng.hpp"
#include "kcenter/solvers.hpp"
#include "support/fixtures.hpp"

using namespace kcenter;
using fixtures::Points;
using fixtures::thrown_code;

namespace {

bool same_record(const CoverRecord& a, const CoverRecord& b) {
  return a.rho == b.rho && a.centers == b.centers;
}

bool same_wrecord(const WRecord& a, const WRecord& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (const auto& [kappa, record] : a.entries) {
    auto it = b.entries.find(kappa);
    if (it == b.entries.end() || !same_record(record, it->second)) return false;
  }
  return true;
}

// All distinct pairwise distances of the instance, ascending, 0 included.
std::vector<double> candidate_radii(const MetricInstance& inst) {
  std::vector<double> radii{0.0};
  for (PointId p = 0; p < inst.size(); ++p)
    for (PointId q = p + 1; q < inst.size(); ++q) radii.push_back(inst.distance(p, q));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("greedy_cover on the 0,1,3 line") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  auto phi = Ordering::identity(3);
  CHECK(greedy_cover(inst, all, phi, 1.0) == Points{0, 2});
  CHECK(greedy_cover(inst, all, phi, 0.0) == Points{0, 1, 2});
  CHECK(greedy_cover(inst, all, phi, 3.0) == Points{0});
  CHECK(greedy_cover(inst, all, phi, 100.0) == Points{0});
}

TEST_CASE("greedy_cover follows phi, not id order") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  auto reversed = Ordering::from_ranks({3, 2, 1});
  CHECK(greedy_cover(inst, all, reversed, 1.0) == Points{2, 1});
}

TEST_CASE("greedy_cover ignores subset arrival order") {
  auto inst = fixtures::line01234();
  auto phi = Ordering::identity(5);
  Points shuffled{4, 0, 3, 1, 2};
  CHECK(greedy_cover(inst, shuffled, phi, 1.0) ==
        greedy_cover(inst, all_points(inst), phi, 1.0));
}

TEST_CASE("greedy_cover output is independent and covering at every radius") {
  auto inst = fixtures::nonmono4();
  auto all = all_points(inst);
  auto phi = Ordering::identity(4);
  for (double rho : candidate_radii(inst)) {
    auto picked = greedy_cover(inst, all, phi, rho);
    for (std::size_t i = 0; i < picked.size(); ++i)
      for (std::size_t j = i + 1; j < picked.size(); ++j)
        CHECK(inst.distance(picked[i], picked[j]) > rho);
    CHECK(center_covers(inst, picked, all, rho));
  }
}

TEST_CASE("greedy size is not monotone in rho") {
  auto inst = fixtures::nonmono4();
  auto all = all_points(inst);
  auto phi = Ordering::identity(4);
  CHECK(greedy_cover(inst, all, phi, 0.0).size() == 4);
  CHECK(greedy_cover(inst, all, phi, 1.0).size() == 2);
  CHECK(greedy_cover(inst, all, phi, 1.2).size() == 3);
  CHECK(greedy_cover(inst, all, phi, 1.8).size() == 2);
  CHECK(greedy_cover(inst, all, phi, 1.9).size() == 1);
}

TEST_CASE("greedy_cover_capped stops at the cap") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  auto phi = Ordering::identity(3);
  CHECK(greedy_cover_capped(inst, all, phi, 0.0, 2) == Points{0, 1});
  CHECK(greedy_cover_capped(inst, all, phi, 0.0, 5) == Points{0, 1, 2});
}

TEST_CASE("pruning sweep on the 0,1,3 line") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  auto phi = Ordering::identity(3);

  SUBCASE("k=2 records the two achieved sizes") {
    auto w = permutation_stable_pruning(inst, all, phi, 2);
    REQUIRE(w.entries.size() == 2);
    CHECK(same_record(w.at(2), CoverRecord{1.0, {0, 2}}));
    CHECK(same_record(w.at(1), CoverRecord{3.0, {0}}));
    CHECK(w.largest_kappa() == 2);
    CHECK(same_record(w.best(), w.at(2)));
  }
  SUBCASE("k=1 keeps only the covering single center") {
    auto w = permutation_stable_pruning(inst, all, phi, 1);
    REQUIRE(w.entries.size() == 1);
    CHECK(same_record(w.at(1), CoverRecord{3.0, {0}}));
  }
  SUBCASE("k=3 starts from the zero-radius cover") {
    auto w = permutation_stable_pruning(inst, all, phi, 3);
    REQUIRE(w.entries.size() == 3);
    CHECK(same_record(w.at(3), CoverRecord{0.0, {0, 1, 2}}));
    CHECK(same_record(w.at(2), CoverRecord{1.0, {0, 2}}));
    CHECK(same_record(w.at(1), CoverRecord{3.0, {0}}));
  }
  SUBCASE("missing kappa lookup is an error") {
    auto w = permutation_stable_pruning(inst, all, phi, 2);
    CHECK(thrown_code([&] { w.at(3); }) == ErrorCode::InvalidParams);
  }
  SUBCASE("parameter validation") {
    CHECK(thrown_code([&] { permutation_stable_pruning(inst, all, phi, 0); }) ==
          ErrorCode::InvalidParams);
    CHECK(thrown_code([&] { permutation_stable_pruning(inst, all, phi, 4); }) ==
          ErrorCode::KTooLarge);
  }
}

TEST_CASE("coincident pair collapses the sweep") {
  auto inst = fixtures::coincident_pair();
  auto all = all_points(inst);
  auto phi = Ordering::identity(2);

  auto improving = permutation_stable_pruning(inst, all, phi, 2);
  REQUIRE(improving.entries.size() == 1);
  CHECK(same_record(improving.at(1), CoverRecord{0.0, {0}}));

  // The countdown variant waits for a size-2 cover that never appears.
  auto literal = permutation_stable_pruning(inst, all, phi, 2, PruningMode::Literal);
  CHECK(literal.empty());
}

TEST_CASE("sweep skips dominated sizes when greedy is non-monotone") {
  auto inst = fixtures::nonmono4();
  auto all = all_points(inst);
  auto phi = Ordering::identity(4);
  auto w = permutation_stable_pruning(inst, all, phi, 3);
  REQUIRE(w.entries.size() == 2);
  CHECK(same_record(w.at(2), CoverRecord{1.0, {0, 1}}));
  CHECK(same_record(w.at(1), CoverRecord{1.9, {0}}));
  CHECK(w.entries.count(3) == 0);
}

TEST_CASE("literal countdown versus improving recorder on the 0..4 line") {
  auto inst = fixtures::line01234();
  auto all = all_points(inst);
  auto phi = Ordering::identity(5);

  auto literal = permutation_stable_pruning(inst, all, phi, 4, PruningMode::Literal);
  REQUIRE(literal.entries.size() == 4);
  CHECK(same_record(literal.at(4), CoverRecord{0.0, {0, 1, 2, 3}}));
  CHECK(same_record(literal.at(3), CoverRecord{1.0, {0, 2, 4}}));
  CHECK(same_record(literal.at(2), CoverRecord{2.0, {0, 3}}));
  CHECK(same_record(literal.at(1), CoverRecord{4.0, {0}}));
  // The capped kappa=4 record leaves point 4 uncovered at rho=0.
  CHECK_FALSE(center_covers(inst, literal.at(4).centers, all, literal.at(4).rho));

  auto improving = permutation_stable_pruning(inst, all, phi, 4);
  REQUIRE(improving.entries.size() == 3);
  CHECK(same_record(improving.at(3), CoverRecord{1.0, {0, 2, 4}}));
  CHECK(same_record(improving.at(2), CoverRecord{2.0, {0, 3}}));
  CHECK(same_record(improving.at(1), CoverRecord{4.0, {0}}));
  for (const auto& [kappa, record] : improving.entries)
    CHECK(center_covers(inst, record.centers, all, record.rho));
}

TEST_CASE("WRecord rho is non-increasing in kappa") {
  auto inst = generate_instance(GeneratorKind::UniformEuclidean, {.n = 12}, 42);
  auto w = permutation_stable_pruning(inst, all_points(inst), Ordering::identity(12), 4);
  double prev = -1.0;
  // entries iterate kappa ascending; rho must descend (weakly) as kappa grows.
  for (auto it = w.entries.rbegin(); it != w.entries.rend(); ++it) {
    if (prev >= 0.0) CHECK(it->second.rho >= prev);
    prev = it->second.rho;
  }
}

TEST_CASE("pruning is permutation stable") {
  auto inst = generate_instance(GeneratorKind::UniformEuclidean, {.n = 10}, 9);
  auto all = all_points(inst);
  auto phi = Ordering::from_ranks({5, 2, 9, 1, 7, 3, 10, 4, 6, 8});
  auto a = permutation_stable_pruning(inst, all, phi, 3);
  auto b = permutation_stable_pruning(inst, all, phi, 3);
  CHECK(same_wrecord(a, b));
}

TEST_CASE("classic parametric pruning") {
  SUBCASE("0,1,3 line, k=2") {
    auto sol = classic_parametric_pruning(fixtures::line013(), 2, Ordering::identity(3));
    CHECK(sol.centers == Points{0, 2});
    CHECK(sol.radius == 1.0);
    CHECK(sol.algorithm == Algorithm::Pruning);
  }
  SUBCASE("k=n gives radius 0 on distinct points") {
    auto sol = classic_parametric_pruning(fixtures::line013(), 3, Ordering::identity(3));
    CHECK(sol.radius == 0.0);
    CHECK(sol.centers == Points{0, 1, 2});
  }
  SUBCASE("equilateral triple, k=1") {
    auto sol = classic_parametric_pruning(fixtures::equilateral(), 1, Ordering::identity(3));
    CHECK(sol.radius == 1.0);
    CHECK(sol.centers.size() == 1);
  }
}

TEST_CASE("gonzalez farthest-first") {
  auto phi4 = Ordering::identity(4);
  SUBCASE("two tight pairs, k=2") {
    auto inst = fixtures::line_0_1_10_11();
    auto sol = gonzalez(inst, all_points(inst), 2, phi4);
    CHECK(sol.centers == Points{0, 3});
    CHECK(sol.radius == 1.0);
    CHECK(sol.algorithm == Algorithm::Gonzalez);
  }
  SUBCASE("k equal to subset size gives radius 0") {
    auto inst = fixtures::line_0_1_10_11();
    auto sol = gonzalez(inst, all_points(inst), 4, phi4);
    CHECK(sol.radius == 0.0);
    CHECK(sol.centers == Points{0, 1, 2, 3});
  }
  SUBCASE("single point") {
    auto inst = fixtures::line013();
    auto sol = gonzalez(inst, Points{1}, 1, Ordering::identity(3));
    CHECK(sol.centers == Points{1});
    CHECK(sol.radius == 0.0);
  }
  SUBCASE("farthest ties break toward the lowest rank") {
    auto inst = MetricInstance::from_coordinates({0.0, 5.0, 10.0}, 1);
    GonzalezOptions opts;
    opts.first_point = 1;
    auto sol = gonzalez(inst, all_points(inst), 2, Ordering::identity(3), opts);
    CHECK(sol.centers == Points{0, 1});
    CHECK(sol.radius == 5.0);
  }
  SUBCASE("explicit first point outside the subset is rejected") {
    auto inst = fixtures::line013();
    GonzalezOptions opts;
    opts.first_point = 2;
    CHECK(thrown_code([&] { gonzalez(inst, Points{0, 1}, 1, Ordering::identity(3), opts); }) ==
          ErrorCode::UnknownPointId);
  }
  SUBCASE("k too large is rejected") {
    auto inst = fixtures::line013();
    CHECK(thrown_code([&] { gonzalez(inst, Points{0, 1}, 3, Ordering::identity(3)); }) ==
          ErrorCode::KTooLarge);
  }
}

TEST_CASE("exact oracle") {
  SUBCASE("0,1,3 line, k=2: picks the first optimal set in id order") {
    auto inst = fixtures::line013();
    auto sol = exact_kcenter(inst, all_points(inst), 2);
    CHECK(sol.radius == 1.0);
    CHECK(sol.centers == Points{0, 2});
    CHECK(sol.algorithm == Algorithm::Exact);
  }
  SUBCASE("two tight pairs, k=2") {
    auto inst = fixtures::line_0_1_10_11();
    CHECK(exact_kcenter(inst, all_points(inst), 2).radius == 1.0);
  }
  SUBCASE("equilateral triple") {
    auto inst = fixtures::equilateral();
    CHECK(exact_kcenter(inst, all_points(inst), 1).radius == 1.0);
    CHECK(exact_kcenter(inst, all_points(inst), 2).radius == 1.0);
  }
  SUBCASE("k equal to subset size") {
    auto inst = fixtures::line013();
    CHECK(exact_kcenter(inst, all_points(inst), 3).radius == 0.0);
  }
  SUBCASE("size guard") {
    std::vector<double> coords(21);
    for (int i = 0; i < 21; ++i) coords[i] = i;
    auto inst = MetricInstance::from_coordinates(coords, 1);
    CHECK(thrown_code([&] { exact_kcenter(inst, all_points(inst), 2); }) ==
          ErrorCode::InstanceTooLarge);
    ExactGuard loose;
    loose.max_points = 32;
    CHECK(exact_kcenter(inst, all_points(inst), 2, loose).radius == 5.0);
  }
  SUBCASE("k larger than the subset is rejected") {
    auto inst = fixtures::line013();
    CHECK(thrown_code([&] { exact_kcenter(inst, Points{0, 1}, 3); }) ==
          ErrorCode::KTooLarge);
  }
}

TEST_CASE("constrained oracle restricts the center pool") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  auto sol = exact_kcenter_constrained(inst, Points{0, 1}, all, 2);
  CHECK(sol.centers == Points{0, 1});
  CHECK(sol.radius == 2.0);
  auto single = exact_kcenter_constrained(inst, Points{1}, all, 1);
  CHECK(single.radius == 2.0);
}

TEST_CASE("covering_radius") {
  auto inst = fixtures::line013();
  auto all = all_points(inst);
  CHECK(covering_radius(inst, Points{0}, all) == 3.0);
  CHECK(covering_radius(inst, Points{0, 2}, all) == 1.0);
  CHECK(covering_radius(inst, Points{0}, Points{}) == 0.0);
  CHECK(covering_radius(inst, Points{}, all) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("oracle sandwich on small random instances") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    auto kind = seed % 2 == 0 ? GeneratorKind::UniformEuclidean : GeneratorKind::RandomMetricMatrix;
    auto inst = generate_instance(kind, {.n = 9}, seed);
    auto all = all_points(inst);
    auto phi = Ordering::identity(9);
    for (std::uint32_t k : {1u, 2u, 3u}) {
      double rstar = exact_kcenter(inst, all, k).radius;
      double g = gonzalez(inst, all, k, phi).radius;
      double p = classic_parametric_pruning(inst, k, phi).radius;
      CHECK(g >= rstar - 1e-12);
      CHECK(g <= 2 * rstar + 1e-12);
      CHECK(p >= rstar - 1e-12);
      CHECK(p <= 2 * rstar + 1e-12);
    }
  }
}

TEST_CASE("algorithm names round-trip") {
  for (auto alg : {Algorithm::Exact, Algorithm::Gonzalez, Algorithm::Pruning,
                   Algorithm::Baseline4, Algorithm::Alg2}) {
    auto name = algorithm_name(alg);
    REQUIRE(algorithm_from_name(name).has_value());
    CHECK(*algorithm_from_name(name) == alg);
  }
  CHECK_FALSE(algorithm_from_name("nonsense").has_value());
}

}  // TEST_SUITE
