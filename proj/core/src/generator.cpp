#include "kcenter/generator.hpp"

#include <algorithm>

#include "kcenter/rng.hpp"

namespace kcenter {

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::UniformEuclidean: return "uniform-random-euclidean";
    case GeneratorKind::ClusteredEuclidean: return "clustered-euclidean";
    case GeneratorKind::RandomMetricMatrix: return "random-metric-matrix";
  }
  return "unknown";
}

std::optional<GeneratorKind> generator_from_name(std::string_view name) {
  if (name == "uniform-random-euclidean") return GeneratorKind::UniformEuclidean;
  if (name == "clustered-euclidean") return GeneratorKind::ClusteredEuclidean;
  if (name == "random-metric-matrix") return GeneratorKind::RandomMetricMatrix;
  return std::nullopt;
}

namespace {

void validate(GeneratorKind kind, const GeneratorParams& params) {
  if (params.n == 0) throw Error(ErrorCode::InvalidParams, "n must be positive");
  switch (kind) {
    case GeneratorKind::UniformEuclidean:
      if (params.dimension == 0) throw Error(ErrorCode::InvalidParams, "dimension must be positive");
      if (!(params.low <= params.high))
        throw Error(ErrorCode::InvalidParams, "coordinate range is inverted");
      break;
    case GeneratorKind::ClusteredEuclidean:
      if (params.dimension == 0) throw Error(ErrorCode::InvalidParams, "dimension must be positive");
      if (params.clusters == 0) throw Error(ErrorCode::InvalidParams, "clusters must be positive");
      if (params.spread < 0.0 || params.separation < 0.0)
        throw Error(ErrorCode::InvalidParams, "spread and separation must be non-negative");
      break;
    case GeneratorKind::RandomMetricMatrix:
      break;
  }
}

MetricInstance uniform_euclidean(const GeneratorParams& params, Rng& rng) {
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(params.n) * params.dimension);
  for (std::uint32_t i = 0; i < params.n; ++i)
    for (std::uint32_t d = 0; d < params.dimension; ++d)
      coords.push_back(rng.uniform(params.low, params.high));
  return MetricInstance::from_coordinates(std::move(coords), params.dimension);
}

MetricInstance clustered_euclidean(const GeneratorParams& params, Rng& rng) {
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(params.n) * params.dimension);
  const double half = params.spread / 2.0;
  for (std::uint32_t i = 0; i < params.n; ++i) {
    const std::uint32_t group = i % params.clusters;
    for (std::uint32_t d = 0; d < params.dimension; ++d) {
      const double base = d == 0 ? group * params.separation : 0.0;
      coords.push_back(base + rng.uniform(-half, half));
    }
  }
  return MetricInstance::from_coordinates(std::move(coords), params.dimension);
}

MetricInstance random_metric_matrix(const GeneratorParams& params, Rng& rng) {
  const std::uint32_t n = params.n;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double d = rng.uniform(0.5, 10.0);
      m[static_cast<std::size_t>(i) * n + j] = d;
      m[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  // Shortest-path closure, iterated to a floating-point fixpoint so the
  // triangle inequality holds for the doubles as stored, not just in exact
  // arithmetic. Entries only decrease and symmetry is restored on every
  // pass, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t k = 0; k < n; ++k) {
      for (std::uint32_t i = 0; i < n; ++i) {
        const double dik = m[static_cast<std::size_t>(i) * n + k];
        for (std::uint32_t j = 0; j < n; ++j) {
          const double via = dik + m[static_cast<std::size_t>(k) * n + j];
          double& direct = m[static_cast<std::size_t>(i) * n + j];
          if (via < direct) {
            direct = via;
            changed = true;
          }
        }
      }
    }
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        double& upper = m[static_cast<std::size_t>(i) * n + j];
        double& lower = m[static_cast<std::size_t>(j) * n + i];
        if (upper != lower) {
          upper = lower = std::min(upper, lower);
          changed = true;
        }
      }
  }
  return MetricInstance::from_matrix(std::move(m), n);
}

}  // namespace

MetricInstance generate_instance(GeneratorKind kind, const GeneratorParams& params,
                                 std::uint64_t seed) {
  validate(kind, params);
  Rng rng(seed);
  switch (kind) {
    case GeneratorKind::UniformEuclidean: return uniform_euclidean(params, rng);
    case GeneratorKind::ClusteredEuclidean: return clustered_euclidean(params, rng);
    case GeneratorKind::RandomMetricMatrix: return random_metric_matrix(params, rng);
  }
  throw Error(ErrorCode::InvalidParams, "unknown generator kind");
}

}  // namespace kcenter
