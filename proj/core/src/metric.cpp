#include "kcenter/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "kcenter/rng.hpp"

namespace kcenter {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownPointId: return "UnknownPointId";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::MemoryExceeded: return "MemoryExceeded";
    case ErrorCode::RoundLimitExceeded: return "RoundLimitExceeded";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

namespace {

void check_triangle_triple(const std::vector<double>& m, std::uint32_t n, std::uint32_t p,
                           std::uint32_t q, std::uint32_t r) {
  // d(p,r) <= d(p,q) + d(q,r), compared on stored values with no epsilon.
  const double direct = m[static_cast<std::size_t>(p) * n + r];
  const double via = m[static_cast<std::size_t>(p) * n + q] + m[static_cast<std::size_t>(q) * n + r];
  if (direct > via) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "d(%u,%u)=%.17g > d(%u,%u)+d(%u,%u)=%.17g", p, r, direct, p, q,
                  q, r, via);
    throw Error(ErrorCode::TriangleViolation, buf, {p, q, r});
  }
}

void validate_matrix(std::vector<double>& m, std::uint32_t n, const ValidationPolicy& policy) {
  for (std::uint32_t i = 0; i < n; ++i) {
    const double diag = m[static_cast<std::size_t>(i) * n + i];
    if (std::abs(diag) > policy.symmetry_tolerance) {
      throw Error(ErrorCode::NonzeroDiagonal,
                  "d(" + std::to_string(i) + "," + std::to_string(i) + ") = " + std::to_string(diag));
    }
    m[static_cast<std::size_t>(i) * n + i] = 0.0;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double a = m[static_cast<std::size_t>(i) * n + j];
      const double b = m[static_cast<std::size_t>(j) * n + i];
      if (std::abs(a - b) > policy.symmetry_tolerance) {
        throw Error(ErrorCode::AsymmetricMatrix, "entries (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ") differ by " +
                                                     std::to_string(std::abs(a - b)));
      }
      const double avg = (a + b) / 2.0;
      if (avg < 0.0) {
        throw Error(ErrorCode::NegativeDistance,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") < 0");
      }
      m[static_cast<std::size_t>(i) * n + j] = avg;
      m[static_cast<std::size_t>(j) * n + i] = avg;
    }
  }

  if (n <= policy.exhaustive_triangle_limit) {
    for (std::uint32_t p = 0; p < n; ++p)
      for (std::uint32_t q = 0; q < n; ++q)
        for (std::uint32_t r = 0; r < n; ++r) check_triangle_triple(m, n, p, q, r);
  } else {
    Rng rng(policy.sample_seed);
    const std::uint64_t samples =
        static_cast<std::uint64_t>(policy.sample_factor) * n * n;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto p = static_cast<std::uint32_t>(rng.index(n));
      const auto q = static_cast<std::uint32_t>(rng.index(n));
      const auto r = static_cast<std::uint32_t>(rng.index(n));
      check_triangle_triple(m, n, p, q, r);
    }
  }
}

}  // namespace

MetricInstance MetricInstance::from_matrix(std::vector<double> entries, std::uint32_t n,
                                           const ValidationPolicy& policy) {
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not " + std::to_string(n) + "x" +
                                                  std::to_string(n) + " (got " +
                                                  std::to_string(entries.size()) + " entries)");
  }
  for (double v : entries) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParams, "non-finite matrix entry");
  }
  validate_matrix(entries, n, policy);

  MetricInstance inst;
  inst.n_ = n;
  inst.kind_ = MetricKind::Matrix;
  inst.matrix_ = std::move(entries);
  return inst;
}

MetricInstance MetricInstance::from_coordinates(std::vector<double> coords, std::uint32_t dimension,
                                                const ValidationPolicy&) {
  if (dimension == 0) throw Error(ErrorCode::InvalidParams, "dimension must be positive");
  if (coords.size() % dimension != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "coordinate count " + std::to_string(coords.size()) +
                    " is not a multiple of dimension " + std::to_string(dimension));
  }
  for (double v : coords) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParams, "non-finite coordinate");
  }
  MetricInstance inst;
  inst.n_ = static_cast<std::uint32_t>(coords.size() / dimension);
  inst.kind_ = MetricKind::Euclidean;
  inst.dimension_ = dimension;
  inst.coords_ = std::move(coords);
  return inst;
}

MetricInstance MetricInstance::from_points(const std::vector<std::vector<double>>& points,
                                           const ValidationPolicy& policy) {
  if (points.empty()) throw Error(ErrorCode::InvalidParams, "empty point list");
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                                    std::to_string(points[i].size()) +
                                                    " coordinates, expected " + std::to_string(dim));
    }
    flat.insert(flat.end(), points[i].begin(), points[i].end());
  }
  return from_coordinates(std::move(flat), static_cast<std::uint32_t>(dim), policy);
}

double MetricInstance::distance(PointId p, PointId q) const {
  if (kind_ == MetricKind::Matrix) {
    return matrix_[static_cast<std::size_t>(p) * n_ + q];
  }
  const double* a = coords_.data() + static_cast<std::size_t>(p) * dimension_;
  const double* b = coords_.data() + static_cast<std::size_t>(q) * dimension_;
  double sum = 0.0;
  for (std::uint32_t i = 0; i < dimension_; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

bool MetricInstance::has_duplicate_points() const {
  for (PointId p = 0; p < n_; ++p)
    for (PointId q = p + 1; q < n_; ++q)
      if (distance(p, q) == 0.0) return true;
  return false;
}

void MetricInstance::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n_) {
    throw Error(ErrorCode::InvalidParams, "label count does not match point count");
  }
  labels_ = std::move(labels);
}

Ordering Ordering::identity(std::uint32_t n) {
  Ordering o;
  o.rank_.resize(n);
  o.by_rank_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    o.rank_[i] = i + 1;
    o.by_rank_[i] = i;
  }
  return o;
}

Ordering Ordering::from_ranks(std::vector<std::uint32_t> rank_of_point) {
  const auto n = static_cast<std::uint32_t>(rank_of_point.size());
  std::vector<PointId> by_rank(n, n);  // n as sentinel
  for (std::uint32_t p = 0; p < n; ++p) {
    const std::uint32_t r = rank_of_point[p];
    if (r < 1 || r > n || by_rank[r - 1] != n) {
      throw Error(ErrorCode::InvalidParams,
                  "ranks are not a bijection onto 1.." + std::to_string(n));
    }
    by_rank[r - 1] = p;
  }
  Ordering o;
  o.rank_ = std::move(rank_of_point);
  o.by_rank_ = std::move(by_rank);
  return o;
}

std::uint32_t Ordering::rank(PointId p) const {
  if (p >= rank_.size()) {
    throw Error(ErrorCode::UnknownPointId, "point " + std::to_string(p));
  }
  return rank_[p];
}

bool DiskGraph::has_edge(PointId p, PointId q) const {
  const auto& adj = adjacency[p];
  return std::binary_search(adj.begin(), adj.end(), q);
}

std::size_t DiskGraph::edge_count() const {
  std::size_t deg_sum = 0;
  for (const auto& adj : adjacency) deg_sum += adj.size();
  return deg_sum / 2;
}

DiskGraph disk_graph(const MetricInstance& instance, double radius) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidParams, "radius must be non-negative");
  const std::uint32_t n = instance.size();
  DiskGraph g;
  g.radius = radius;
  g.adjacency.resize(n);
  for (PointId p = 0; p < n; ++p) {
    for (PointId q = p + 1; q < n; ++q) {
      if (instance.distance(p, q) <= radius) {
        g.adjacency[p].push_back(q);
        g.adjacency[q].push_back(p);
      }
    }
  }
  return g;
}

bool center_covers(const MetricInstance& instance, std::span<const PointId> centers,
                   std::span<const PointId> targets, double radius) {
  for (PointId t : targets) {
    bool covered = false;
    for (PointId c : centers) {
      if (instance.distance(t, c) <= radius) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

Ordering reorder_prioritizing(const Ordering& phi, std::span<const PointId> priority) {
  const std::uint32_t n = phi.size();
  std::vector<bool> is_priority(n, false);
  for (PointId p : priority) {
    if (p >= n) throw Error(ErrorCode::UnknownPointId, "point " + std::to_string(p));
    if (is_priority[p]) {
      throw Error(ErrorCode::InvalidParams, "duplicate priority point " + std::to_string(p));
    }
    is_priority[p] = true;
  }
  // Priority points keep their old relative order, ahead of everything else.
  std::vector<std::uint32_t> ranks(n, 0);
  std::uint32_t next = 1;
  for (PointId p : phi.by_rank()) {
    if (is_priority[p]) ranks[p] = next++;
  }
  for (PointId p : phi.by_rank()) {
    if (!is_priority[p]) ranks[p] = next++;
  }
  return Ordering::from_ranks(std::move(ranks));
}

std::vector<PointId> all_points(const MetricInstance& instance) {
  std::vector<PointId> pts(instance.size());
  for (std::uint32_t i = 0; i < instance.size(); ++i) pts[i] = i;
  return pts;
}

std::vector<PointId> sorted_by_rank(std::span<const PointId> points, const Ordering& phi) {
  std::vector<PointId> out(points.begin(), points.end());
  std::sort(out.begin(), out.end(),
            [&phi](PointId a, PointId b) { return phi.rank(a) < phi.rank(b); });
  return out;
}

}  // namespace kcenter
