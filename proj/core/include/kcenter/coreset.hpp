#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcenter/metric.hpp"
#include "kcenter/solvers.hpp"

namespace kcenter {

// Per-set summary: the points one machine contributes to the merged coreset,
// optionally with the pruning sweep that produced them.
struct CoresetPart {
  std::uint32_t source_set = 0;  // machine index 1..L
  std::vector<PointId> points;
  std::optional<WRecord> payload;
};

// The union of parts, deduplicated and presented in increasing phi-rank.
struct OrderedCoreset {
  std::vector<CoresetPart> parts;
  std::vector<PointId> merged;
};

// Merge parts into an OrderedCoreset. The merged list depends only on the
// set of contributed points and phi, never on arrival order.
OrderedCoreset assemble(const MetricInstance& instance, std::vector<CoresetPart> parts,
                        const Ordering& phi);

// Quality of the coreset as a center pool for the whole instance: the best
// k-subset of the merged points is evaluated over all instance points and
// divided by the optimal radius. Both zero counts as ratio 1 (the degenerate
// all-coincident case); a positive radius against a zero oracle is infinity.
double composition_ratio(const MetricInstance& instance, const OrderedCoreset& coreset,
                         std::uint32_t k, double oracle_radius, const ExactGuard& guard = {});

}  // namespace kcenter
