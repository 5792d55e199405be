#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "kcenter/metric.hpp"

namespace kcenter {

enum class GeneratorKind { UniformEuclidean, ClusteredEuclidean, RandomMetricMatrix };

std::string_view generator_name(GeneratorKind kind);
std::optional<GeneratorKind> generator_from_name(std::string_view name);

struct GeneratorParams {
  std::uint32_t n = 10;
  std::uint32_t dimension = 2;  // Euclidean kinds
  double low = 0.0;             // uniform: coordinate range
  double high = 1.0;
  std::uint32_t clusters = 2;  // clustered: group count
  double separation = 10.0;    // clustered: gap between consecutive group centers
  double spread = 1.0;         // clustered: side of the noise box around each center
};

// Deterministic for a fixed (kind, params, seed). The matrix kind draws a
// random symmetric matrix and takes its shortest-path closure, so the
// triangle inequality holds exactly in the emitted doubles.
MetricInstance generate_instance(GeneratorKind kind, const GeneratorParams& params,
                                 std::uint64_t seed);

}  // namespace kcenter
