#include "kcenter/mpc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kcenter/errors.hpp"
#include "kcenter/rng.hpp"

namespace kcenter::mpc {

std::size_t Message::point_cost() const {
  std::size_t cost = points.size();
  for (const auto& record : records) cost += record.points.size();
  return cost;
}

namespace {

void sort_unique(std::vector<PointId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

// Delivery order is a pure function of the message set, never of the
// execution schedule that produced it.
void canonical_sort(std::vector<Message>& messages) {
  std::stable_sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
    if (a.to != b.to) return a.to < b.to;
    return a.from < b.from;
  });
}

}  // namespace

Cluster Cluster::scatter(const MetricInstance& instance,
                         std::span<const std::uint32_t> machine_of_point,
                         const ClusterConfig& config) {
  if (config.machines == 0) throw Error(ErrorCode::InvalidParams, "cluster needs at least one machine");
  if (machine_of_point.size() != instance.size())
    throw Error(ErrorCode::InvalidParams, "partition size does not match instance size");

  Cluster cluster;
  cluster.instance_ = &instance;
  cluster.config_ = config;
  cluster.resident_.assign(config.machines + 1, {});
  cluster.inbox_.assign(config.machines + 1, {});

  for (std::size_t p = 0; p < machine_of_point.size(); ++p) {
    const auto machine = machine_of_point[p];
    if (machine < 1 || machine > config.machines)
      throw Error(ErrorCode::InvalidParams, "partition assigns point to machine outside 1..L");
    cluster.resident_[machine].push_back(static_cast<PointId>(p));
  }

  RoundTrace trace;
  trace.round = 0;
  trace.label = "scatter";
  trace.machines.resize(config.machines + 1);
  cluster.max_load_ = 0;
  cluster.min_load_ = instance.size();
  for (MachineId m = 1; m <= config.machines; ++m) {
    sort_unique(cluster.resident_[m]);
    auto& mt = trace.machines[m];
    mt.machine = m;
    mt.resident_peak = cluster.resident_[m].size();
    cluster.check_memory(m, cluster.resident_[m].size(), mt);
    cluster.max_load_ = std::max(cluster.max_load_, cluster.resident_[m].size());
    cluster.min_load_ = std::min(cluster.min_load_, cluster.resident_[m].size());
  }
  cluster.traces_.push_back(std::move(trace));
  return cluster;
}

void Cluster::check_memory(MachineId machine, std::size_t resident_count, MachineTrace& trace) {
  if (config_.memory_budget == 0 || resident_count <= config_.memory_budget) return;
  trace.memory_exceeded = true;
  if (config_.strict_memory) {
    std::ostringstream msg;
    msg << "machine " << machine << " holds " << resident_count << " points, budget "
        << config_.memory_budget;
    throw Error(ErrorCode::MemoryExceeded, msg.str());
  }
}

const RoundTrace& Cluster::run_round(const std::string& label, const ComputeFn& compute) {
  std::vector<MachineId> order(config_.machines);
  std::iota(order.begin(), order.end(), 1u);
  return run_round_ordered(label, compute, order);
}

const RoundTrace& Cluster::run_round_ordered(const std::string& label, const ComputeFn& compute,
                                             std::span<const MachineId> evaluation_order) {
  if (rounds_run_ >= config_.round_limit) {
    std::ostringstream msg;
    msg << "round limit " << config_.round_limit << " reached before round '" << label << "'";
    throw Error(ErrorCode::RoundLimitExceeded, msg.str());
  }
  if (evaluation_order.size() != config_.machines)
    throw Error(ErrorCode::InvalidParams, "evaluation order must list every machine once");
  std::vector<bool> seen(config_.machines + 1, false);
  for (const auto m : evaluation_order) {
    if (m < 1 || m > config_.machines || seen[m])
      throw Error(ErrorCode::InvalidParams, "evaluation order must list every machine once");
    seen[m] = true;
  }

  RoundTrace trace;
  trace.round = rounds_run_ + 1;
  trace.label = label;
  trace.machines.resize(config_.machines + 1);
  for (MachineId m = 1; m <= config_.machines; ++m) trace.machines[m].machine = m;

  // Every computation sees the pre-round snapshot, whatever the schedule.
  std::vector<Message> in_flight;
  for (const auto m : evaluation_order) {
    MachineContext context;
    context.machine = m;
    context.instance = instance_;
    context.resident = resident_[m];
    context.inbox = inbox_[m];
    auto outgoing = compute(context);
    auto& mt = trace.machines[m];
    for (auto& message : outgoing) {
      if (message.from != m)
        throw Error(ErrorCode::InvalidParams, "message claims a sender other than its machine");
      if (message.to < 1 || message.to > config_.machines)
        throw Error(ErrorCode::InvalidParams, "message addressed outside 1..L");
      mt.points_sent += message.point_cost();
      mt.entries_sent += message.entry_cost();
      mt.messages_sent += 1;
      in_flight.push_back(std::move(message));
    }
  }

  canonical_sort(in_flight);

  // Barrier: deliver inboxes, merge transferred points into residency.
  for (auto& box : inbox_) box.clear();
  for (auto& message : in_flight) {
    auto& mt = trace.machines[message.to];
    mt.points_received += message.point_cost();
    mt.entries_received += message.entry_cost();
    auto& home = resident_[message.to];
    home.insert(home.end(), message.points.begin(), message.points.end());
    inbox_[message.to].push_back(std::move(message));
  }

  max_load_ = 0;
  min_load_ = instance_->size();
  for (MachineId m = 1; m <= config_.machines; ++m) {
    sort_unique(resident_[m]);
    auto& mt = trace.machines[m];
    mt.resident_peak = resident_[m].size();
    check_memory(m, resident_[m].size(), mt);
    max_load_ = std::max(max_load_, resident_[m].size());
    min_load_ = std::min(min_load_, resident_[m].size());
  }

  for (MachineId m = 1; m <= config_.machines; ++m) {
    const auto& mt = trace.machines[m];
    trace.total_points_sent += mt.points_sent;
    trace.total_points_received += mt.points_received;
    trace.total_entries_sent += mt.entries_sent;
    trace.total_entries_received += mt.entries_received;
    trace.total_messages += mt.messages_sent;
  }
  // Synchronous delivery loses nothing in flight.
  if (trace.total_points_sent != trace.total_points_received ||
      trace.total_entries_sent != trace.total_entries_received)
    throw Error(ErrorCode::InvalidParams, "round lost messages in flight");

  ++rounds_run_;
  traces_.push_back(std::move(trace));
  return traces_.back();
}

const RoundTrace& Cluster::broadcast(const std::string& label, MachineId from,
                                     std::span<const PointId> payload) {
  if (from < 1 || from > config_.machines)
    throw Error(ErrorCode::InvalidParams, "broadcast source outside 1..L");
  const auto& home = resident_[from];
  for (const auto p : payload) {
    if (!std::binary_search(home.begin(), home.end(), p))
      throw Error(ErrorCode::InvalidParams, "broadcast payload must be resident on the source");
  }
  std::vector<PointId> copy(payload.begin(), payload.end());
  return run_round(label, [&](const MachineContext& context) {
    std::vector<Message> out;
    if (context.machine != from || copy.empty()) return out;
    out.reserve(config_.machines);
    for (MachineId m = 1; m <= config_.machines; ++m)
      out.push_back(Message{from, m, copy, {}});
    return out;
  });
}

std::span<const PointId> Cluster::resident(MachineId machine) const {
  if (machine < 1 || machine > config_.machines)
    throw Error(ErrorCode::InvalidParams, "machine index outside 1..L");
  return resident_[machine];
}

std::span<const Message> Cluster::inbox(MachineId machine) const {
  if (machine < 1 || machine > config_.machines)
    throw Error(ErrorCode::InvalidParams, "machine index outside 1..L");
  return inbox_[machine];
}

std::size_t Cluster::total_points_communicated() const {
  std::size_t total = 0;
  for (const auto& trace : traces_) total += trace.total_points_sent;
  return total;
}

std::size_t Cluster::total_entries_communicated() const {
  std::size_t total = 0;
  for (const auto& trace : traces_) total += trace.total_entries_sent;
  return total;
}

std::vector<std::uint32_t> partition_round_robin(std::size_t n, std::uint32_t machines) {
  if (machines == 0) throw Error(ErrorCode::InvalidParams, "need at least one machine");
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t i = 0; i < n; ++i) assignment[i] = 1 + static_cast<std::uint32_t>(i % machines);
  return assignment;
}

std::vector<std::uint32_t> partition_seeded_random(std::size_t n, std::uint32_t machines,
                                                   std::uint64_t seed) {
  if (machines == 0) throw Error(ErrorCode::InvalidParams, "need at least one machine");
  Rng rng(seed);
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t i = 0; i < n; ++i)
    assignment[i] = 1 + static_cast<std::uint32_t>(rng.index(machines));
  return assignment;
}

std::string Cluster::state_fingerprint() const {
  std::ostringstream out;
  for (MachineId m = 1; m <= config_.machines; ++m) {
    out << "m" << m << ":r[";
    for (const auto p : resident_[m]) out << p << ",";
    out << "]i[";
    for (const auto& message : inbox_[m]) {
      out << "(" << message.from << ";";
      for (const auto p : message.points) out << p << ",";
      out << ";";
      for (const auto& record : message.records) {
        out << record.value << ":";
        for (const auto p : record.points) out << p << ",";
        out << "|";
      }
      out << ")";
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace kcenter::mpc
