#include "kcenter/dkcenter.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "kcenter/coreset.hpp"
#include "kcenter/errors.hpp"

namespace kcenter::dkcenter {

namespace {

std::vector<mpc::MachineId> effective_order(const DistributedConfig& config) {
  if (!config.evaluation_order.empty()) return config.evaluation_order;
  std::vector<mpc::MachineId> order(config.machines);
  std::iota(order.begin(), order.end(), 1u);
  return order;
}

mpc::ClusterConfig cluster_config(const DistributedConfig& config) {
  mpc::ClusterConfig cc;
  cc.machines = config.machines;
  cc.memory_budget = config.memory_budget;
  cc.round_limit = config.round_limit;
  return cc;
}

void validate_common(const MetricInstance& instance, const DistributedConfig& config,
                     std::uint32_t k) {
  if (instance.size() == 0) throw Error(ErrorCode::InvalidParams, "empty instance");
  if (k == 0) throw Error(ErrorCode::InvalidParams, "k must be positive");
  if (config.machines == 0) throw Error(ErrorCode::InvalidParams, "need at least one machine");
}

std::size_t peak_residency(const std::vector<mpc::RoundTrace>& traces) {
  std::size_t peak = 0;
  for (const auto& trace : traces)
    for (const auto& machine : trace.machines) peak = std::max(peak, machine.resident_peak);
  return peak;
}

void finish_accounting(DistributedResult& out, const mpc::Cluster& cluster,
                       const DistributedConfig& config, std::uint32_t k) {
  out.traces = cluster.traces();
  out.rounds = cluster.rounds_run();
  out.points_communicated = cluster.total_points_communicated();
  out.entries_communicated = cluster.total_entries_communicated();
  out.resident_peak = peak_residency(out.traces);
  out.budget_warning =
      config.memory_budget != 0 &&
      static_cast<std::size_t>(k) * k * config.machines > config.memory_budget;
}

}  // namespace

std::pair<std::vector<PointId>, double> round1_local_coreset(const MetricInstance& instance,
                                                             std::span<const PointId> local,
                                                             const Ordering& phi, std::uint32_t k,
                                                             PruningMode mode) {
  if (local.empty()) return {{}, 0.0};
  const auto k_eff = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(local.size()));
  const WRecord w = permutation_stable_pruning(instance, local, phi, k_eff, mode);
  if (w.empty()) {
    // Literal countdown never fires when duplicates keep the greedy below k.
    return {greedy_cover(instance, local, phi, 0.0), 0.0};
  }
  const CoverRecord& best = w.best();
  return {best.centers, best.rho};
}

WRecord round2_family(const MetricInstance& instance, std::span<const PointId> resident,
                      const Ordering& prioritized_phi, std::uint32_t k, PruningMode mode,
                      std::uint32_t source_set) {
  const auto k_eff = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(resident.size()));
  return permutation_stable_pruning(instance, resident, prioritized_phi, k_eff, mode, source_set);
}

SelectionResult select_solution(const Round2Family& families, std::uint32_t k,
                                SelectionRule rule) {
  const std::uint32_t machines = families.machines();

  std::vector<double> candidates;
  for (std::uint32_t i = 1; i <= machines; ++i)
    for (const auto& [kappa, record] : families.by_machine[i].entries)
      candidates.push_back(record.rho);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  SelectionResult result;
  result.kappa_by_machine.assign(machines + 1, 0);
  std::size_t best_attempt = std::numeric_limits<std::size_t>::max();

  std::vector<PointId> pool;
  std::vector<std::uint32_t> chosen(machines + 1, 0);
  for (double rho : candidates) {
    pool.clear();
    bool every_machine_qualifies = true;
    for (std::uint32_t i = 1; i <= machines; ++i) {
      const auto& entries = families.by_machine[i].entries;
      // Radii are non-increasing in kappa, so the qualifying entries form a
      // suffix of the kappa range.
      std::uint32_t pick = 0;
      if (rule == SelectionRule::MinKappa) {
        for (const auto& [kappa, record] : entries) {
          if (record.rho <= rho) {
            pick = kappa;
            break;
          }
        }
      } else {
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
          if (it->second.rho <= rho) {
            pick = it->first;
            break;
          }
        }
      }
      if (pick == 0) {
        every_machine_qualifies = false;
        break;
      }
      chosen[i] = pick;
      const auto& centers = entries.at(pick).centers;
      pool.insert(pool.end(), centers.begin(), centers.end());
    }
    if (!every_machine_qualifies) continue;

    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    if (pool.size() <= k) {
      result.feasible = true;
      result.rho = rho;
      result.centers = pool;
      result.kappa_by_machine = chosen;
      return result;
    }
    if (pool.size() < best_attempt) {
      best_attempt = pool.size();
      result.rho = rho;
      result.centers = pool;
      result.kappa_by_machine = chosen;
    }
  }
  return result;  // feasible stays false; best attempt reported
}

DistributedResult run_algorithm2(const MetricInstance& instance,
                                 std::span<const std::uint32_t> machine_of_point,
                                 const Ordering& phi, std::uint32_t k,
                                 const DistributedConfig& config) {
  validate_common(instance, config, k);

  auto cluster = mpc::Cluster::scatter(instance, machine_of_point, cluster_config(config));
  const auto order = effective_order(config);

  // Round 1: prune each S_i locally, gather the centers (and the radius as
  // a zero-point entry) on machine 1.
  cluster.run_round_ordered(
      "local-prune",
      [&](const mpc::MachineContext& context) {
        auto [centers, radius] = round1_local_coreset(instance, context.resident, phi, k,
                                                      config.pruning);
        mpc::Message message;
        message.from = context.machine;
        message.to = 1;
        message.points = std::move(centers);
        message.records.push_back(mpc::RecordEntry{radius, {}});
        return std::vector<mpc::Message>{std::move(message)};
      },
      order);

  // Machine-1 work between barriers: stitch the coreset together.
  std::vector<CoresetPart> parts;
  double coreset_radius = 0.0;
  for (const auto& message : cluster.inbox(1)) {
    CoresetPart part;
    part.source_set = message.from;
    part.points = message.points;
    parts.push_back(std::move(part));
    for (const auto& record : message.records) coreset_radius = std::max(coreset_radius, record.value);
  }
  const OrderedCoreset coreset = assemble(instance, std::move(parts), phi);

  // Round 2: everyone learns C.
  cluster.broadcast("broadcast-coreset", 1, coreset.merged);

  // Round 3: prune S_i u C under the order that walks C first; ship the
  // whole family to machine 1.
  const Ordering prioritized = reorder_prioritizing(phi, coreset.merged);
  cluster.run_round_ordered(
      "family-gather",
      [&](const mpc::MachineContext& context) {
        const WRecord family = round2_family(instance, context.resident, prioritized, k,
                                             config.pruning, context.machine);
        mpc::Message message;
        message.from = context.machine;
        message.to = 1;
        for (const auto& [kappa, record] : family.entries)
          message.records.push_back(mpc::RecordEntry{record.rho, record.centers});
        return std::vector<mpc::Message>{std::move(message)};
      },
      order);

  // Round 4: machine 1 selects; the answer leaves the cluster, so no
  // messages move.
  Round2Family families;
  families.by_machine.resize(config.machines + 1);
  SelectionResult selection;
  cluster.run_round_ordered(
      "select",
      [&](const mpc::MachineContext& context) {
        if (context.machine == 1) {
          for (const auto& message : context.inbox) {
            WRecord w;
            w.source_set = message.from;
            for (const auto& record : message.records)
              w.entries[static_cast<std::uint32_t>(record.points.size())] =
                  CoverRecord{record.value, record.points};
            families.by_machine[message.from] = std::move(w);
          }
          selection = select_solution(families, k, config.selection);
        }
        return std::vector<mpc::Message>{};
      },
      order);

  DistributedResult out;
  out.feasible = selection.feasible;
  out.selection_rho = selection.rho;
  out.kappa_by_machine = selection.kappa_by_machine;
  out.coreset = coreset.merged;
  out.coreset_radius = coreset_radius;

  const auto everything = all_points(instance);
  out.solution.centers = selection.centers;
  out.solution.algorithm = Algorithm::Alg2;
  out.solution.source_machine = 1;
  out.solution.radius = selection.centers.empty()
                            ? std::numeric_limits<double>::infinity()
                            : covering_radius(instance, selection.centers, everything);
  out.covers_at_selection =
      !selection.centers.empty() &&
      center_covers(instance, selection.centers, everything, selection.rho);
  if (selection.feasible && config.pruning == PruningMode::Improving && !out.covers_at_selection) {
    throw Error(ErrorCode::InvalidParams,
                "internal: selected centers fail to cover at the selected radius");
  }
  out.centers_within_coreset =
      std::all_of(selection.centers.begin(), selection.centers.end(), [&](PointId c) {
        return std::find(coreset.merged.begin(), coreset.merged.end(), c) != coreset.merged.end();
      });

  finish_accounting(out, cluster, config, k);
  return out;
}

DistributedResult run_baseline4(const MetricInstance& instance,
                                std::span<const std::uint32_t> machine_of_point,
                                const Ordering& phi, std::uint32_t k,
                                const DistributedConfig& config) {
  validate_common(instance, config, k);

  auto cluster = mpc::Cluster::scatter(instance, machine_of_point, cluster_config(config));
  const auto order = effective_order(config);

  // Round 1: local farthest-first, centers to machine 1.
  cluster.run_round_ordered(
      "local-gonzalez",
      [&](const mpc::MachineContext& context) {
        std::vector<mpc::Message> out_messages;
        if (context.resident.empty()) return out_messages;
        const auto k_eff =
            std::min<std::uint32_t>(k, static_cast<std::uint32_t>(context.resident.size()));
        const Solution local = gonzalez(instance, context.resident, k_eff, phi);
        mpc::Message message;
        message.from = context.machine;
        message.to = 1;
        message.points = local.centers;
        out_messages.push_back(std::move(message));
        return out_messages;
      },
      order);

  // Round 2: machine 1 solves on the union; nothing else moves.
  std::vector<PointId> unioned;
  Solution combined;
  cluster.run_round_ordered(
      "combine",
      [&](const mpc::MachineContext& context) {
        if (context.machine == 1) {
          for (const auto& message : context.inbox)
            unioned.insert(unioned.end(), message.points.begin(), message.points.end());
          std::sort(unioned.begin(), unioned.end());
          unioned.erase(std::unique(unioned.begin(), unioned.end()), unioned.end());
          const auto k_eff =
              std::min<std::uint32_t>(k, static_cast<std::uint32_t>(unioned.size()));
          combined = gonzalez(instance, unioned, k_eff, phi);
        }
        return std::vector<mpc::Message>{};
      },
      order);

  DistributedResult out;
  out.feasible = true;
  out.coreset = sorted_by_rank(unioned, phi);
  out.kappa_by_machine.assign(config.machines + 1, 0);

  const auto everything = all_points(instance);
  out.solution.centers = combined.centers;
  out.solution.algorithm = Algorithm::Baseline4;
  out.solution.source_machine = 1;
  out.solution.radius = covering_radius(instance, combined.centers, everything);
  out.selection_rho = out.solution.radius;
  out.covers_at_selection = true;
  out.centers_within_coreset = true;  // centers come from the gathered union

  finish_accounting(out, cluster, config, k);
  return out;
}

}  // namespace kcenter::dkcenter
