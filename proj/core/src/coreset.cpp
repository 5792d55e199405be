#include "kcenter/coreset.hpp"

#include <algorithm>
#include <limits>

namespace kcenter {

OrderedCoreset assemble(const MetricInstance& instance, std::vector<CoresetPart> parts,
                        const Ordering& phi) {
  std::vector<PointId> merged;
  for (const auto& part : parts) {
    for (PointId p : part.points) {
      if (p >= instance.size()) {
        throw Error(ErrorCode::UnknownPointId, "point " + std::to_string(p));
      }
      merged.push_back(p);
    }
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  OrderedCoreset coreset;
  coreset.merged = sorted_by_rank(merged, phi);
  coreset.parts = std::move(parts);
  return coreset;
}

double composition_ratio(const MetricInstance& instance, const OrderedCoreset& coreset,
                         std::uint32_t k, double oracle_radius, const ExactGuard& guard) {
  if (coreset.merged.empty()) throw Error(ErrorCode::InvalidParams, "empty coreset");
  const auto targets = all_points(instance);
  const auto pool_k = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(coreset.merged.size()));
  const Solution best = exact_kcenter_constrained(instance, coreset.merged, targets, pool_k, guard);
  if (oracle_radius == 0.0) {
    return best.radius == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return best.radius / oracle_radius;
}

}  // namespace kcenter
