#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kcenter/metric.hpp"

namespace kcenter::mpc {

// Machines are indexed 1..L.
using MachineId = std::uint32_t;

struct ClusterConfig {
  std::uint32_t machines = 1;
  // Maximum resident points per machine, checked at every barrier. 0 means
  // unbounded.
  std::size_t memory_budget = 0;
  std::uint32_t round_limit = 4;
  // When false, a budget overrun only sets the trace flag instead of
  // throwing.
  bool strict_memory = true;
};

// A scalar-tagged point list (a radius and its centers). Records travel in
// messages and are charged as points plus one entry, but are consumed by the
// receiver's computation rather than stored as resident points.
struct RecordEntry {
  double value = 0.0;
  std::vector<PointId> points;
};

struct Message {
  MachineId from = 0;
  MachineId to = 0;
  std::vector<PointId> points;  // transferred points; resident after the barrier
  std::vector<RecordEntry> records;

  std::size_t point_cost() const;
  std::size_t entry_cost() const { return records.size(); }
};

struct MachineTrace {
  MachineId machine = 0;
  std::size_t resident_peak = 0;
  std::size_t points_sent = 0;
  std::size_t points_received = 0;
  std::size_t entries_sent = 0;
  std::size_t entries_received = 0;
  std::size_t messages_sent = 0;
  bool memory_exceeded = false;
};

struct RoundTrace {
  std::uint32_t round = 0;  // 0 is the scatter pseudo-round
  std::string label;
  std::vector<MachineTrace> machines;  // index 0 unused
  std::size_t total_points_sent = 0;
  std::size_t total_points_received = 0;
  std::size_t total_entries_sent = 0;
  std::size_t total_entries_received = 0;
  std::size_t total_messages = 0;
};

// What a machine's computation may see: its own resident points (sorted by
// id), the messages delivered at the last barrier, and the shared instance.
struct MachineContext {
  MachineId machine = 0;
  const MetricInstance* instance = nullptr;
  std::span<const PointId> resident;
  std::span<const Message> inbox;
};

using ComputeFn = std::function<std::vector<Message>(const MachineContext&)>;

// Synchronous-round simulator. Per round, every machine's computation runs
// against the pre-round snapshot; outgoing messages are applied only at the
// barrier, in a canonical order, so the result is independent of the order
// in which machine computations execute.
class Cluster {
 public:
  static Cluster scatter(const MetricInstance& instance,
                         std::span<const std::uint32_t> machine_of_point,
                         const ClusterConfig& config);

  const RoundTrace& run_round(const std::string& label, const ComputeFn& compute);
  // Same, but machine computations are invoked in the given order (a
  // permutation of 1..L). The outcome must not depend on it.
  const RoundTrace& run_round_ordered(const std::string& label, const ComputeFn& compute,
                                      std::span<const MachineId> evaluation_order);

  // One full round in which `from` sends the payload to every machine
  // (itself included), costing machines * |payload| points.
  const RoundTrace& broadcast(const std::string& label, MachineId from,
                              std::span<const PointId> payload);

  std::uint32_t machines() const { return config_.machines; }
  std::uint32_t rounds_run() const { return rounds_run_; }
  const ClusterConfig& config() const { return config_; }
  const MetricInstance& instance() const { return *instance_; }

  std::span<const PointId> resident(MachineId machine) const;  // sorted by id
  std::span<const Message> inbox(MachineId machine) const;

  const std::vector<RoundTrace>& traces() const { return traces_; }
  std::size_t total_points_communicated() const;
  std::size_t total_entries_communicated() const;

  std::size_t max_machine_load() const { return max_load_; }
  std::size_t min_machine_load() const { return min_load_; }

  // Canonical digest of resident sets and inboxes, for scheduling-
  // independence checks.
  std::string state_fingerprint() const;

 private:
  Cluster() = default;
  void check_memory(MachineId machine, std::size_t resident_count, MachineTrace& trace);

  const MetricInstance* instance_ = nullptr;
  ClusterConfig config_;
  std::vector<std::vector<PointId>> resident_;   // per machine, sorted
  std::vector<std::vector<Message>> inbox_;      // delivered at the last barrier
  std::vector<RoundTrace> traces_;
  std::uint32_t rounds_run_ = 0;
  std::size_t max_load_ = 0;
  std::size_t min_load_ = 0;
};

// Point i goes to machine 1 + i mod L; sizes differ by at most one.
std::vector<std::uint32_t> partition_round_robin(std::size_t n, std::uint32_t machines);

// Independent uniform machine choice per point, reproducible across
// platforms for a fixed seed.
std::vector<std::uint32_t> partition_seeded_random(std::size_t n, std::uint32_t machines,
                                                   std::uint64_t seed);

}  // namespace kcenter::mpc
