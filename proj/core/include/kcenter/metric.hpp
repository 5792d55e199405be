#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcenter/errors.hpp"

namespace kcenter {

// Points are dense indices 0..n-1, stable for the lifetime of an instance.
// The index doubles as the point's identity in orderings, so two points with
// identical coordinates (distance 0) are still distinct.
using PointId = std::uint32_t;

enum class MetricKind { Euclidean, Matrix };

struct ValidationPolicy {
  double symmetry_tolerance = 1e-9;
  // Triangle inequality is checked over all triples up to this many points;
  // above it, sample_factor * n^2 seeded random triples are checked instead.
  std::uint32_t exhaustive_triangle_limit = 64;
  std::uint32_t sample_factor = 3;
  std::uint64_t sample_seed = 0x5eedULL;
};

// A finite metric space: either an explicit symmetric distance matrix or a
// list of fixed-dimension Euclidean coordinates. Immutable after
// construction; distance() is safe to call from concurrent readers.
class MetricInstance {
 public:
  // `entries` is row-major n*n. Entries are symmetrized by averaging, then
  // validated (zero diagonal, non-negativity, triangle inequality).
  static MetricInstance from_matrix(std::vector<double> entries, std::uint32_t n,
                                    const ValidationPolicy& policy = {});

  // `coords` is row-major n*dimension. The metric is Euclidean; symmetry and
  // the triangle inequality hold by construction and are not checked.
  static MetricInstance from_coordinates(std::vector<double> coords, std::uint32_t dimension,
                                         const ValidationPolicy& policy = {});

  static MetricInstance from_points(const std::vector<std::vector<double>>& points,
                                    const ValidationPolicy& policy = {});

  std::uint32_t size() const { return n_; }
  MetricKind kind() const { return kind_; }
  std::uint32_t dimension() const { return dimension_; }  // 0 for matrix form

  double distance(PointId p, PointId q) const;

  bool has_duplicate_points() const;

  const std::vector<double>& raw_matrix() const { return matrix_; }
  const std::vector<double>& raw_coordinates() const { return coords_; }

  void set_labels(std::vector<std::string> labels);
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  MetricInstance() = default;

  std::uint32_t n_ = 0;
  MetricKind kind_ = MetricKind::Euclidean;
  std::uint32_t dimension_ = 0;
  std::vector<double> matrix_;  // row-major, Matrix form only
  std::vector<double> coords_;  // row-major, Euclidean form only
  std::vector<std::string> labels_;
};

// A total order on the points of an instance: a bijection PointId -> 1..n.
class Ordering {
 public:
  static Ordering identity(std::uint32_t n);
  // rank_of_point[p] must be a bijection onto 1..n.
  static Ordering from_ranks(std::vector<std::uint32_t> rank_of_point);

  std::uint32_t size() const { return static_cast<std::uint32_t>(rank_.size()); }
  std::uint32_t rank(PointId p) const;
  const std::vector<PointId>& by_rank() const { return by_rank_; }
  bool before(PointId p, PointId q) const { return rank(p) < rank(q); }

 private:
  Ordering() = default;
  std::vector<std::uint32_t> rank_;    // PointId -> 1..n
  std::vector<PointId> by_rank_;       // rank-1 -> PointId
};

// Threshold graph: an edge between distinct points at distance <= radius.
struct DiskGraph {
  double radius = 0.0;
  std::vector<std::vector<PointId>> adjacency;  // sorted neighbor lists

  bool has_edge(PointId p, PointId q) const;
  std::size_t edge_count() const;
};

DiskGraph disk_graph(const MetricInstance& instance, double radius);

// True iff every target is within `radius` (closed ball) of some center.
// Empty targets are vacuously covered; an empty center set covers nothing.
bool center_covers(const MetricInstance& instance, std::span<const PointId> centers,
                   std::span<const PointId> targets, double radius);

// New ordering that ranks `priority` points (in their old relative order)
// ahead of everything else, preserving the old relative order of the rest.
Ordering reorder_prioritizing(const Ordering& phi, std::span<const PointId> priority);

std::vector<PointId> all_points(const MetricInstance& instance);

// The given points sorted by increasing rank.
std::vector<PointId> sorted_by_rank(std::span<const PointId> points, const Ordering& phi);

}  // namespace kcenter
