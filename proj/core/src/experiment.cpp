#include "kcenter/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json_io.hpp"
#include "kcenter/instance_io.hpp"

namespace kcenter::experiment {

namespace {

using jsonio::ordered_json;

constexpr double kBoundSlack = 1e-12;

std::vector<std::uint32_t> resolve_partition(const MetricInstance& instance,
                                             const std::string& strategy,
                                             const std::string& partition_file,
                                             std::uint32_t machines, std::uint64_t seed) {
  if (strategy == "round-robin") return mpc::partition_round_robin(instance.size(), machines);
  if (strategy == "random") return mpc::partition_seeded_random(instance.size(), machines, seed);
  if (strategy == "file") {
    if (partition_file.empty())
      throw Error(ErrorCode::InvalidParams, "partition strategy 'file' needs a path");
    return load_partition(partition_file, instance.size(), machines);
  }
  throw Error(ErrorCode::InvalidParams, "unknown partition strategy '" + strategy + "'");
}

dkcenter::DistributedConfig distributed_config(const MetricInstance& instance,
                                               const RunRequest& request) {
  dkcenter::DistributedConfig config;
  config.machines = request.machines;
  config.memory_budget = request.memory == 0 ? instance.size() : request.memory;
  config.round_limit = request.round_limit;
  config.pruning = request.literal_alg1 ? PruningMode::Literal : PruningMode::Improving;
  config.selection =
      request.literal_select ? dkcenter::SelectionRule::LiteralMaxKappa : dkcenter::SelectionRule::MinKappa;
  config.evaluation_order = request.evaluation_order;
  return config;
}

double json_safe(double value) { return std::isfinite(value) ? value : -1.0; }

ordered_json instance_summary(const MetricInstance& instance, const std::string& source) {
  ordered_json doc;
  doc["source"] = source;
  doc["n"] = instance.size();
  doc["kind"] = instance.kind() == MetricKind::Euclidean ? "euclidean" : "matrix";
  doc["dimension"] = instance.dimension();
  doc["duplicate_points"] = instance.has_duplicate_points();
  return doc;
}

ordered_json request_params(const RunRequest& request) {
  ordered_json doc;
  doc["algorithm"] = std::string(algorithm_name(request.algorithm));
  doc["k"] = request.k;
  doc["L"] = request.machines;
  doc["memory"] = request.memory;  // 0 = instance size
  doc["partition"] = request.partition;
  if (!request.partition_file.empty()) doc["partition_file"] = request.partition_file;
  doc["seed"] = request.seed;
  doc["compat_literal_alg1"] = request.literal_alg1;
  doc["compat_literal_select"] = request.literal_select;
  return doc;
}

ordered_json trace_json(const std::vector<mpc::RoundTrace>& traces) {
  ordered_json out = ordered_json::array();
  for (const auto& trace : traces) {
    ordered_json round;
    round["round"] = trace.round;
    round["label"] = trace.label;
    round["points_sent"] = trace.total_points_sent;
    round["points_received"] = trace.total_points_received;
    round["entries_sent"] = trace.total_entries_sent;
    round["messages"] = trace.total_messages;
    ordered_json machines = ordered_json::array();
    for (std::size_t m = 1; m < trace.machines.size(); ++m) {
      const auto& mt = trace.machines[m];
      ordered_json machine;
      machine["machine"] = mt.machine;
      machine["resident_peak"] = mt.resident_peak;
      machine["points_sent"] = mt.points_sent;
      machine["points_received"] = mt.points_received;
      machine["entries_sent"] = mt.entries_sent;
      machine["entries_received"] = mt.entries_received;
      machine["messages_sent"] = mt.messages_sent;
      machine["memory_exceeded"] = mt.memory_exceeded;
      machines.push_back(std::move(machine));
    }
    round["machines"] = std::move(machines);
    out.push_back(std::move(round));
  }
  return out;
}

ordered_json outcome_json(const RunOutcome& outcome, bool include_timing, bool distributed) {
  ordered_json doc;
  doc["algorithm"] = std::string(algorithm_name(outcome.algorithm));
  doc["feasible"] = outcome.feasible;
  doc["radius"] = json_safe(outcome.radius);
  doc["centers"] = outcome.centers;
  doc["covers"] = outcome.covers;
  if (distributed) {
    doc["selection_rho"] = json_safe(outcome.selection_rho);
    doc["rounds"] = outcome.rounds;
    doc["points_communicated"] = outcome.points_communicated;
    doc["entries_communicated"] = outcome.entries_communicated;
    doc["resident_peak"] = outcome.resident_peak;
    doc["coreset"] = outcome.coreset;
    doc["centers_within_coreset"] = outcome.centers_within_coreset;
    doc["budget_warning"] = outcome.budget_warning;
    doc["traces"] = trace_json(outcome.traces);
  }
  if (include_timing) doc["timing"] = ordered_json{{"wall_ms", outcome.wall_ms}};
  return doc;
}

void attach_ratio(ordered_json& doc, double radius, const std::optional<OracleOutcome>& oracle) {
  if (!oracle) {
    doc["ratio"] = nullptr;
    return;
  }
  if (oracle->radius > 0.0) {
    doc["ratio"] = radius / oracle->radius;
  } else {
    doc["ratio"] = "degenerate";
  }
}

bool within_bound(double radius, double oracle_radius, double factor) {
  if (oracle_radius > 0.0) return radius <= factor * oracle_radius + kBoundSlack;
  return radius == 0.0;
}

}  // namespace

RunOutcome execute(const MetricInstance& instance, const Ordering& phi,
                   const RunRequest& request) {
  if (request.k == 0) throw Error(ErrorCode::InvalidParams, "k must be positive");
  const auto everything = all_points(instance);
  RunOutcome outcome;
  outcome.algorithm = request.algorithm;

  const auto start = std::chrono::steady_clock::now();
  switch (request.algorithm) {
    case Algorithm::Exact: {
      const Solution sol = exact_kcenter(instance, everything, request.k);
      outcome.radius = sol.radius;
      outcome.centers = sol.centers;
      break;
    }
    case Algorithm::Gonzalez: {
      const Solution sol = gonzalez(instance, everything, request.k, phi);
      outcome.radius = sol.radius;
      outcome.centers = sol.centers;
      break;
    }
    case Algorithm::Pruning: {
      const Solution sol = classic_parametric_pruning(
          instance, request.k, phi,
          request.literal_alg1 ? PruningMode::Literal : PruningMode::Improving);
      outcome.radius = sol.radius;
      outcome.centers = sol.centers;
      break;
    }
    case Algorithm::Baseline4:
    case Algorithm::Alg2: {
      const auto assignment = resolve_partition(instance, request.partition,
                                                request.partition_file, request.machines,
                                                request.seed);
      const auto config = distributed_config(instance, request);
      const dkcenter::DistributedResult result =
          request.algorithm == Algorithm::Alg2
              ? dkcenter::run_algorithm2(instance, assignment, phi, request.k, config)
              : dkcenter::run_baseline4(instance, assignment, phi, request.k, config);
      outcome.feasible = result.feasible;
      outcome.radius = result.solution.radius;
      outcome.centers = result.solution.centers;
      outcome.selection_rho = result.selection_rho;
      outcome.rounds = result.rounds;
      outcome.points_communicated = result.points_communicated;
      outcome.entries_communicated = result.entries_communicated;
      outcome.resident_peak = result.resident_peak;
      outcome.coreset = result.coreset;
      outcome.centers_within_coreset = result.centers_within_coreset;
      outcome.budget_warning = result.budget_warning;
      outcome.traces = result.traces;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  outcome.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  outcome.covers = !outcome.centers.empty() && std::isfinite(outcome.radius) &&
                   center_covers(instance, outcome.centers, everything, outcome.radius);
  return outcome;
}

std::optional<OracleOutcome> try_oracle(const MetricInstance& instance, std::uint32_t k,
                                        const ExactGuard& guard) {
  try {
    const Solution sol = exact_kcenter(instance, all_points(instance), k, guard);
    return OracleOutcome{sol.radius, sol.centers};
  } catch (const Error& error) {
    if (error.code() == ErrorCode::InstanceTooLarge) return std::nullopt;
    throw;
  }
}

SolveResult solve_report(const MetricInstance& instance, const std::string& source,
                         const Ordering& phi, const RunRequest& request) {
  SolveResult result;
  result.outcome = execute(instance, phi, request);

  const bool distributed =
      request.algorithm == Algorithm::Alg2 || request.algorithm == Algorithm::Baseline4;
  ordered_json doc;
  doc["format"] = "kcenter-report-v1";
  doc["instance"] = instance_summary(instance, source);
  doc["params"] = request_params(request);
  ordered_json run = outcome_json(result.outcome, request.include_timing, distributed);

  std::optional<OracleOutcome> oracle;
  if (request.algorithm == Algorithm::Exact) {
    oracle = OracleOutcome{result.outcome.radius, result.outcome.centers};
  } else {
    oracle = try_oracle(instance, request.k);
  }
  attach_ratio(run, result.outcome.radius, oracle);
  doc["run"] = std::move(run);
  if (oracle) {
    doc["oracle"] = ordered_json{{"radius", oracle->radius}, {"centers", oracle->centers}};
  } else {
    doc["oracle"] = nullptr;
  }

  result.json = jsonio::finalize_report(std::move(doc));
  return result;
}

CompareResult compare_report(const MetricInstance& instance, const std::string& source,
                             const Ordering& phi, const CompareRequest& request) {
  const auto oracle = try_oracle(instance, request.k);
  if (!oracle) {
    throw Error(ErrorCode::InstanceTooLarge, "instance exceeds the exact oracle guard");
  }

  CompareResult result;
  result.oracle_radius = oracle->radius;

  ordered_json doc;
  doc["format"] = "kcenter-compare-v1";
  doc["instance"] = instance_summary(instance, source);
  {
    ordered_json params;
    params["k"] = request.k;
    params["L"] = request.machines;
    params["memory"] = request.memory;
    params["partition"] = request.partition;
    if (!request.partition_file.empty()) params["partition_file"] = request.partition_file;
    params["seeds"] = request.seeds;
    params["compat_literal_alg1"] = request.literal_alg1;
    params["compat_literal_select"] = request.literal_select;
    doc["params"] = params;
  }
  doc["oracle"] = ordered_json{{"radius", oracle->radius}, {"centers", oracle->centers}};

  ordered_json algorithms;
  const auto base_request = [&](Algorithm algorithm, std::uint64_t seed) {
    RunRequest rr;
    rr.algorithm = algorithm;
    rr.k = request.k;
    rr.machines = request.machines;
    rr.memory = request.memory;
    rr.partition = request.partition;
    rr.partition_file = request.partition_file;
    rr.seed = seed;
    rr.literal_alg1 = request.literal_alg1;
    rr.literal_select = request.literal_select;
    rr.include_timing = request.include_timing;
    return rr;
  };

  // Sequential algorithms: one run each, partition-free.
  for (const Algorithm algorithm : {Algorithm::Gonzalez, Algorithm::Pruning}) {
    const RunOutcome outcome = execute(instance, phi, base_request(algorithm, request.seeds.front()));
    ordered_json run = outcome_json(outcome, request.include_timing, false);
    attach_ratio(run, outcome.radius, oracle);
    const bool ok = within_bound(outcome.radius, oracle->radius, 2.0);
    run["within_bound"] = ok;
    result.bounds_ok = result.bounds_ok && ok;
    algorithms[std::string(algorithm_name(algorithm))] = std::move(run);
  }

  // Distributed algorithms: one run per seed.
  for (const Algorithm algorithm : {Algorithm::Baseline4, Algorithm::Alg2}) {
    const double factor = algorithm == Algorithm::Baseline4 ? 4.0 : 2.0;
    ordered_json runs = ordered_json::array();
    double max_ratio = 0.0;
    double ratio_sum = 0.0;
    std::size_t ratio_count = 0;
    for (const std::uint64_t seed : request.seeds) {
      const RunOutcome outcome = execute(instance, phi, base_request(algorithm, seed));
      ordered_json run = outcome_json(outcome, request.include_timing, true);
      run["seed"] = seed;
      attach_ratio(run, outcome.radius, oracle);
      bool ok = within_bound(outcome.radius, oracle->radius, factor);
      if (algorithm == Algorithm::Alg2 && !outcome.feasible) {
        result.any_infeasible = true;
        ok = false;
      }
      run["within_bound"] = ok;
      result.bounds_ok = result.bounds_ok && ok;
      if (oracle->radius > 0.0) {
        const double ratio = outcome.radius / oracle->radius;
        max_ratio = std::max(max_ratio, ratio);
        ratio_sum += ratio;
        ++ratio_count;
      }
      runs.push_back(std::move(run));
    }
    ordered_json entry;
    entry["runs"] = std::move(runs);
    if (ratio_count > 0) {
      entry["max_ratio"] = max_ratio;
      entry["mean_ratio"] = ratio_sum / static_cast<double>(ratio_count);
    } else {
      entry["max_ratio"] = nullptr;
      entry["mean_ratio"] = nullptr;
    }
    if (algorithm == Algorithm::Alg2) {
      result.alg2_max_ratio = max_ratio;
      result.alg2_mean_ratio = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;
    } else {
      result.baseline4_max_ratio = max_ratio;
      result.baseline4_mean_ratio = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;
    }
    algorithms[std::string(algorithm_name(algorithm))] = std::move(entry);
  }

  doc["algorithms"] = std::move(algorithms);
  doc["bounds_ok"] = result.bounds_ok;
  doc["any_infeasible"] = result.any_infeasible;

  result.json = jsonio::finalize_report(std::move(doc));
  return result;
}

std::string validate_report(const MetricInstance& instance, const std::string& source) {
  ordered_json doc;
  doc["format"] = "kcenter-validate-v1";
  doc["instance"] = instance_summary(instance, source);
  doc["valid"] = true;
  return jsonio::finalize_report(std::move(doc));
}

}  // namespace kcenter::experiment
