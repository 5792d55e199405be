#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kcenter/metric.hpp"

namespace kcenter {

enum class Algorithm { Exact, Gonzalez, Pruning, Baseline4, Alg2 };

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

// A set of at most k centers together with the radius at which they cover
// the set they were computed on.
struct Solution {
  std::vector<PointId> centers;  // sorted ascending
  double radius = 0.0;
  Algorithm algorithm = Algorithm::Exact;
  std::optional<std::uint32_t> source_machine;
};

// One (rho, centers) pair: the centers are pairwise more than rho apart and
// cover the input set at radius rho. Selection order is the scan order.
struct CoverRecord {
  double rho = 0.0;
  std::vector<PointId> centers;

  std::uint32_t kappa() const { return static_cast<std::uint32_t>(centers.size()); }
};

// The per-set output of the parametric pruning sweep: at most one record per
// achieved cover size, with rho non-increasing as kappa grows.
struct WRecord {
  std::map<std::uint32_t, CoverRecord> entries;  // kappa -> record
  std::uint32_t source_set = 0;                  // machine index, 0 = standalone

  bool empty() const { return entries.empty(); }
  std::uint32_t largest_kappa() const;
  const CoverRecord& at(std::uint32_t kappa) const;
  // The record with the smallest rho (equivalently the largest kappa).
  const CoverRecord& best() const;
};

// Improving: uncapped greedy, recording a size only when it beats every
// previously recorded size. Literal: the pseudocode-faithful variant (greedy
// capped at k, countdown recording); kept for side-by-side study, its
// records may fail to cover.
enum class PruningMode { Improving, Literal };

// Scan `subset` in increasing phi-rank, adding a point iff it is farther
// than rho from every point added so far. Returns the phi-first maximal
// independent set of the disk graph of radius rho restricted to the subset,
// in selection order; it covers the subset at radius rho.
std::vector<PointId> greedy_cover(const MetricInstance& instance, std::span<const PointId> subset,
                                  const Ordering& phi, double rho);

// Same scan but stops adding once `cap` points are chosen.
std::vector<PointId> greedy_cover_capped(const MetricInstance& instance,
                                         std::span<const PointId> subset, const Ordering& phi,
                                         double rho, std::uint32_t cap);

// Sweep rho over the distinct pairwise distances of the subset (0 included:
// the candidate set is over all point pairs, a point paired with itself
// contributing 0) in increasing order, running the greedy cover at each.
WRecord permutation_stable_pruning(const MetricInstance& instance, std::span<const PointId> subset,
                                   const Ordering& phi, std::uint32_t k,
                                   PruningMode mode = PruningMode::Improving,
                                   std::uint32_t source_set = 0);

// The smallest-rho record of the sweep with kappa <= k, as a Solution.
Solution classic_parametric_pruning(const MetricInstance& instance, std::uint32_t k,
                                    const Ordering& phi,
                                    PruningMode mode = PruningMode::Improving);

struct GonzalezOptions {
  // Defaults to the lowest-rank point of the subset.
  std::optional<PointId> first_point;
};

// Farthest-first traversal: repeatedly add the point maximizing the distance
// to the chosen centers, ties broken by lowest phi-rank.
Solution gonzalez(const MetricInstance& instance, std::span<const PointId> subset, std::uint32_t k,
                  const Ordering& phi, const GonzalezOptions& options = {});

struct ExactGuard {
  std::uint32_t max_points = 20;
  std::uint64_t max_combinations = 1'000'000;
};

// Brute force over all k-subsets of `subset`; ground truth at desk scale.
Solution exact_kcenter(const MetricInstance& instance, std::span<const PointId> subset,
                       std::uint32_t k, const ExactGuard& guard = {});

// Brute force with the center pool and the covered set decoupled: the best
// k-subset of `candidates` minimizing the covering radius over `targets`.
Solution exact_kcenter_constrained(const MetricInstance& instance,
                                   std::span<const PointId> candidates,
                                   std::span<const PointId> targets, std::uint32_t k,
                                   const ExactGuard& guard = {});

// Covering radius of `centers` over `targets` (max of min distances).
double covering_radius(const MetricInstance& instance, std::span<const PointId> centers,
                       std::span<const PointId> targets);

}  // namespace kcenter
