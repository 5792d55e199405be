#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kcenter/mpc.hpp"
#include "kcenter/solvers.hpp"

namespace kcenter::dkcenter {

// The pseudocode picks t_i as the largest recorded kappa whose radius is
// within rho, which drags every machine's finest cover into the union and
// makes the |T| <= k test fail on almost anything. MinKappa takes the
// coarsest qualifying cover instead; LiteralMaxKappa keeps the written rule
// for side-by-side runs.
enum class SelectionRule { MinKappa, LiteralMaxKappa };

struct DistributedConfig {
  std::uint32_t machines = 1;
  std::size_t memory_budget = 0;  // 0 = unbounded
  std::uint32_t round_limit = 4;
  PruningMode pruning = PruningMode::Improving;
  SelectionRule selection = SelectionRule::MinKappa;
  // Order in which machine computations are invoked, for scheduling
  // independence tests. Empty means 1..L.
  std::vector<mpc::MachineId> evaluation_order;
};

// Per-machine pruning families gathered on machine 1.
struct Round2Family {
  std::vector<WRecord> by_machine;  // index 0 unused

  std::uint32_t machines() const { return static_cast<std::uint32_t>(by_machine.size()) - 1; }
};

struct SelectionResult {
  bool feasible = false;
  double rho = 0.0;
  std::vector<PointId> centers;                 // sorted by id
  std::vector<std::uint32_t> kappa_by_machine;  // chosen t_i; index 0 unused, 0 = none
};

struct DistributedResult {
  Solution solution;  // radius re-evaluated over the whole point set
  bool feasible = true;
  double selection_rho = 0.0;
  bool covers_at_selection = true;

  std::vector<PointId> coreset;  // broadcast payload C, in phi order
  double coreset_radius = 0.0;   // max of the round-1 radii r_i
  bool centers_within_coreset = true;
  std::vector<std::uint32_t> kappa_by_machine;

  std::uint32_t rounds = 0;
  std::size_t points_communicated = 0;
  std::size_t entries_communicated = 0;
  std::size_t resident_peak = 0;
  bool budget_warning = false;  // k^2 L exceeds the memory budget
  std::vector<mpc::RoundTrace> traces;
};

// Local pruning on one machine's points: the recorded entry with the most
// centers (never more than k). Degenerate sets (|S_i| <= k, or duplicates
// starving the literal countdown) fall back to the zero-radius dedup so
// every machine contributes centers.
std::pair<std::vector<PointId>, double> round1_local_coreset(
    const MetricInstance& instance, std::span<const PointId> local, const Ordering& phi,
    std::uint32_t k, PruningMode mode = PruningMode::Improving);

// The full pruning family on S_i united with the broadcast coreset, under
// the coreset-prioritizing order. One sweep emits every achieved kappa.
WRecord round2_family(const MetricInstance& instance, std::span<const PointId> resident,
                      const Ordering& prioritized_phi, std::uint32_t k, PruningMode mode,
                      std::uint32_t source_set);

// Scan rho over the recorded family radii in increasing order; per machine
// pick the qualifying entry per `rule`; return the first rho whose union has
// at most k centers. Infeasibility is reported, not thrown, with the
// smallest-union attempt filled in.
SelectionResult select_solution(const Round2Family& families, std::uint32_t k,
                                SelectionRule rule = SelectionRule::MinKappa);

DistributedResult run_algorithm2(const MetricInstance& instance,
                                 std::span<const std::uint32_t> machine_of_point,
                                 const Ordering& phi, std::uint32_t k,
                                 const DistributedConfig& config);

// Composable-coreset baseline: local farthest-first, gather, farthest-first
// on the union. Two rounds, radius at most 4x optimal.
DistributedResult run_baseline4(const MetricInstance& instance,
                                std::span<const std::uint32_t> machine_of_point,
                                const Ordering& phi, std::uint32_t k,
                                const DistributedConfig& config);

}  // namespace kcenter::dkcenter
