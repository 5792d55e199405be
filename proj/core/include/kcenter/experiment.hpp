#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcenter/dkcenter.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/solvers.hpp"

namespace kcenter::experiment {

// Everything needed to reproduce one algorithm run. Reports embed these
// fields so a run can be replayed from its own output.
struct RunRequest {
  Algorithm algorithm = Algorithm::Alg2;
  std::uint32_t k = 1;
  std::uint32_t machines = 1;
  std::size_t memory = 0;  // 0 means |S|
  std::string partition = "round-robin";  // round-robin | random | file
  std::string partition_file;
  std::uint64_t seed = 0;
  std::uint32_t round_limit = 4;
  bool literal_alg1 = false;
  bool literal_select = false;
  // Timing is the only non-deterministic report content; tests switch it
  // off to compare whole reports byte for byte.
  bool include_timing = true;
  std::vector<mpc::MachineId> evaluation_order;  // test hook
};

struct RunOutcome {
  Algorithm algorithm = Algorithm::Alg2;
  bool feasible = true;
  double radius = 0.0;
  std::vector<PointId> centers;
  bool covers = true;  // center_covers at the reported radius
  double selection_rho = 0.0;
  std::uint32_t rounds = 0;
  std::size_t points_communicated = 0;
  std::size_t entries_communicated = 0;
  std::size_t resident_peak = 0;
  std::vector<PointId> coreset;  // phi order; distributed runs only
  bool centers_within_coreset = true;
  bool budget_warning = false;
  std::vector<mpc::RoundTrace> traces;
  double wall_ms = 0.0;
};

RunOutcome execute(const MetricInstance& instance, const Ordering& phi, const RunRequest& request);

struct OracleOutcome {
  double radius = 0.0;
  std::vector<PointId> centers;
};

// The exact solution when the instance fits the brute-force guard.
std::optional<OracleOutcome> try_oracle(const MetricInstance& instance, std::uint32_t k,
                                        const ExactGuard& guard = {});

struct SolveResult {
  RunOutcome outcome;
  std::string json;
};

SolveResult solve_report(const MetricInstance& instance, const std::string& source,
                         const Ordering& phi, const RunRequest& request);

struct CompareRequest {
  std::uint32_t k = 1;
  std::uint32_t machines = 1;
  std::size_t memory = 0;
  std::string partition = "round-robin";
  std::string partition_file;
  std::vector<std::uint64_t> seeds{0};
  bool literal_alg1 = false;
  bool literal_select = false;
  bool include_timing = true;
};

struct CompareResult {
  std::string json;
  bool bounds_ok = true;       // 2x for alg2/gonzalez/pruning, 4x for baseline4
  bool any_infeasible = false;
  double oracle_radius = 0.0;
  double alg2_max_ratio = 0.0;  // ratios are 0 when the oracle radius is 0
  double alg2_mean_ratio = 0.0;
  double baseline4_max_ratio = 0.0;
  double baseline4_mean_ratio = 0.0;
};

// Runs every algorithm against the exact oracle. Throws InstanceTooLarge
// when the oracle guard rejects the instance.
CompareResult compare_report(const MetricInstance& instance, const std::string& source,
                             const Ordering& phi, const CompareRequest& request);

// Summary for the `validate` command; construction already validated.
std::string validate_report(const MetricInstance& instance, const std::string& source);

}  // namespace kcenter::experiment
