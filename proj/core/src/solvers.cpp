#include "kcenter/solvers.hpp"

#include <algorithm>
#include <limits>

namespace kcenter {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Exact: return "exact";
    case Algorithm::Gonzalez: return "gonzalez";
    case Algorithm::Pruning: return "pruning";
    case Algorithm::Baseline4: return "baseline4";
    case Algorithm::Alg2: return "alg2";
  }
  return "unknown";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "gonzalez") return Algorithm::Gonzalez;
  if (name == "pruning") return Algorithm::Pruning;
  if (name == "baseline4") return Algorithm::Baseline4;
  if (name == "alg2") return Algorithm::Alg2;
  return std::nullopt;
}

std::uint32_t WRecord::largest_kappa() const {
  if (entries.empty()) throw Error(ErrorCode::InvalidParams, "empty WRecord");
  return entries.rbegin()->first;
}

const CoverRecord& WRecord::at(std::uint32_t kappa) const {
  auto it = entries.find(kappa);
  if (it == entries.end()) {
    throw Error(ErrorCode::InvalidParams, "no record for kappa=" + std::to_string(kappa));
  }
  return it->second;
}

const CoverRecord& WRecord::best() const { return at(largest_kappa()); }

namespace {

// Scratch space for the pruning sweep: subset in scan order plus a local
// distance matrix so the inner loops avoid repeated coordinate math.
struct LocalView {
  std::vector<PointId> order;   // subset sorted by phi-rank
  std::vector<double> dist;     // m*m, local indices
  std::uint32_t m = 0;

  double d(std::uint32_t a, std::uint32_t b) const {
    return dist[static_cast<std::size_t>(a) * m + b];
  }
};

LocalView make_local_view(const MetricInstance& instance, std::span<const PointId> subset,
                          const Ordering& phi) {
  LocalView view;
  view.order = sorted_by_rank(subset, phi);
  view.m = static_cast<std::uint32_t>(view.order.size());
  view.dist.resize(static_cast<std::size_t>(view.m) * view.m, 0.0);
  for (std::uint32_t a = 0; a < view.m; ++a) {
    for (std::uint32_t b = a + 1; b < view.m; ++b) {
      const double d = instance.distance(view.order[a], view.order[b]);
      view.dist[static_cast<std::size_t>(a) * view.m + b] = d;
      view.dist[static_cast<std::size_t>(b) * view.m + a] = d;
    }
  }
  return view;
}

// Greedy scan over local indices. cap = 0 means uncapped.
std::vector<std::uint32_t> greedy_local(const LocalView& view, double rho, std::uint32_t cap) {
  std::vector<std::uint32_t> picked;
  for (std::uint32_t i = 0; i < view.m; ++i) {
    if (cap != 0 && picked.size() >= cap) break;
    bool covered = false;
    for (std::uint32_t c : picked) {
      if (view.d(i, c) <= rho) {
        covered = true;
        break;
      }
    }
    if (!covered) picked.push_back(i);
  }
  return picked;
}

std::vector<PointId> to_global(const LocalView& view, const std::vector<std::uint32_t>& local) {
  std::vector<PointId> out;
  out.reserve(local.size());
  for (std::uint32_t i : local) out.push_back(view.order[i]);
  return out;
}

// Distinct candidate radii, always starting at 0.
std::vector<double> candidate_radii(const LocalView& view) {
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(view.m) * (view.m - 1) / 2 + 1);
  radii.push_back(0.0);
  for (std::uint32_t a = 0; a < view.m; ++a)
    for (std::uint32_t b = a + 1; b < view.m; ++b) radii.push_back(view.d(a, b));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

std::uint64_t combination_count(std::uint32_t n, std::uint32_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // stays integral at every step
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

std::vector<PointId> greedy_cover(const MetricInstance& instance, std::span<const PointId> subset,
                                  const Ordering& phi, double rho) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidParams, "rho must be non-negative");
  if (subset.empty()) throw Error(ErrorCode::InvalidParams, "empty subset");
  std::vector<PointId> picked;
  for (PointId p : sorted_by_rank(subset, phi)) {
    bool covered = false;
    for (PointId c : picked) {
      if (instance.distance(p, c) <= rho) {
        covered = true;
        break;
      }
    }
    if (!covered) picked.push_back(p);
  }
  return picked;
}

std::vector<PointId> greedy_cover_capped(const MetricInstance& instance,
                                         std::span<const PointId> subset, const Ordering& phi,
                                         double rho, std::uint32_t cap) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidParams, "rho must be non-negative");
  if (subset.empty()) throw Error(ErrorCode::InvalidParams, "empty subset");
  std::vector<PointId> picked;
  for (PointId p : sorted_by_rank(subset, phi)) {
    if (picked.size() >= cap) break;
    bool covered = false;
    for (PointId c : picked) {
      if (instance.distance(p, c) <= rho) {
        covered = true;
        break;
      }
    }
    if (!covered) picked.push_back(p);
  }
  return picked;
}

WRecord permutation_stable_pruning(const MetricInstance& instance, std::span<const PointId> subset,
                                   const Ordering& phi, std::uint32_t k, PruningMode mode,
                                   std::uint32_t source_set) {
  if (subset.empty()) throw Error(ErrorCode::InvalidParams, "empty subset");
  if (k == 0) throw Error(ErrorCode::InvalidParams, "k must be positive");
  if (k > subset.size()) {
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(k) + " exceeds subset size " + std::to_string(subset.size()));
  }

  const LocalView view = make_local_view(instance, subset, phi);
  const std::vector<double> radii = candidate_radii(view);

  WRecord w;
  w.source_set = source_set;

  if (mode == PruningMode::Literal) {
    // Countdown recording over the capped greedy. Recorded entries may fail
    // to cover the subset; they exist for comparison against the improving
    // mode, not for use.
    std::uint32_t countdown = k;
    for (double rho : radii) {
      if (countdown == 0) break;
      const auto picked = greedy_local(view, rho, k);
      if (picked.size() == countdown) {
        w.entries[countdown] = CoverRecord{rho, to_global(view, picked)};
        --countdown;
      }
    }
    return w;
  }

  // Improving mode: record a size only when it is smaller than everything
  // recorded so far. The greedy size is not monotone in rho, so entries that
  // would break the rho/kappa monotonicity (and could never be selected over
  // an earlier record) are skipped.
  std::uint32_t best = k + 1;
  for (double rho : radii) {
    const auto picked = greedy_local(view, rho, 0);
    const auto size = static_cast<std::uint32_t>(picked.size());
    if (size <= k && size < best) {
      w.entries[size] = CoverRecord{rho, to_global(view, picked)};
      best = size;
      if (best == 1) break;
    }
  }
  return w;
}

Solution classic_parametric_pruning(const MetricInstance& instance, std::uint32_t k,
                                    const Ordering& phi, PruningMode mode) {
  const auto points = all_points(instance);
  const WRecord w = permutation_stable_pruning(instance, points, phi, k, mode);
  const CoverRecord& record = w.best();
  Solution sol;
  sol.centers = record.centers;
  std::sort(sol.centers.begin(), sol.centers.end());
  sol.radius = record.rho;
  sol.algorithm = Algorithm::Pruning;
  return sol;
}

Solution gonzalez(const MetricInstance& instance, std::span<const PointId> subset, std::uint32_t k,
                  const Ordering& phi, const GonzalezOptions& options) {
  if (subset.empty()) throw Error(ErrorCode::InvalidParams, "empty subset");
  if (k == 0) throw Error(ErrorCode::InvalidParams, "k must be positive");
  if (k > subset.size()) {
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(k) + " exceeds subset size " + std::to_string(subset.size()));
  }

  const std::vector<PointId> order = sorted_by_rank(subset, phi);
  PointId first = order.front();
  if (options.first_point) {
    first = *options.first_point;
    if (std::find(order.begin(), order.end(), first) == order.end()) {
      throw Error(ErrorCode::UnknownPointId, "first point " + std::to_string(first) +
                                                 " is not in the subset");
    }
  }

  std::vector<PointId> centers{first};
  // Distance from each subset point to the nearest chosen center.
  std::vector<double> nearest(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    nearest[i] = instance.distance(order[i], first);
  }

  while (centers.size() < k) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (nearest[i] > nearest[far]) far = i;  // tie keeps the lower phi-rank
    }
    const PointId next = order[far];
    centers.push_back(next);
    for (std::size_t i = 0; i < order.size(); ++i) {
      nearest[i] = std::min(nearest[i], instance.distance(order[i], next));
    }
  }

  Solution sol;
  sol.centers = centers;
  std::sort(sol.centers.begin(), sol.centers.end());
  sol.radius = *std::max_element(nearest.begin(), nearest.end());
  sol.algorithm = Algorithm::Gonzalez;
  return sol;
}

double covering_radius(const MetricInstance& instance, std::span<const PointId> centers,
                       std::span<const PointId> targets) {
  double radius = 0.0;
  for (PointId t : targets) {
    double best = std::numeric_limits<double>::infinity();
    for (PointId c : centers) {
      best = std::min(best, instance.distance(t, c));
      if (best == 0.0) break;
    }
    radius = std::max(radius, best);
  }
  return radius;
}

Solution exact_kcenter_constrained(const MetricInstance& instance,
                                   std::span<const PointId> candidates,
                                   std::span<const PointId> targets, std::uint32_t k,
                                   const ExactGuard& guard) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidParams, "empty candidate set");
  if (k == 0) throw Error(ErrorCode::InvalidParams, "k must be positive");
  if (k > candidates.size()) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds candidate set size " +
                                          std::to_string(candidates.size()));
  }
  const auto m = static_cast<std::uint32_t>(candidates.size());
  if (m > guard.max_points) {
    throw Error(ErrorCode::InstanceTooLarge,
                std::to_string(m) + " candidates exceed the brute-force limit of " +
                    std::to_string(guard.max_points));
  }
  if (combination_count(m, k, guard.max_combinations) > guard.max_combinations) {
    throw Error(ErrorCode::InstanceTooLarge,
                "C(" + std::to_string(m) + "," + std::to_string(k) + ") exceeds " +
                    std::to_string(guard.max_combinations));
  }

  // Candidates in id order so the first optimum found is deterministic.
  std::vector<PointId> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());

  std::vector<std::uint32_t> pick(k);
  for (std::uint32_t i = 0; i < k; ++i) pick[i] = i;

  double best_radius = std::numeric_limits<double>::infinity();
  std::vector<PointId> best_centers;

  for (;;) {
    double radius = 0.0;
    for (PointId t : targets) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::uint32_t idx : pick) {
        nearest = std::min(nearest, instance.distance(t, pool[idx]));
        if (nearest == 0.0) break;
      }
      radius = std::max(radius, nearest);
      if (radius >= best_radius) break;
    }
    if (radius < best_radius) {
      best_radius = radius;
      best_centers.clear();
      for (std::uint32_t idx : pick) best_centers.push_back(pool[idx]);
    }

    // Next lexicographic combination.
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  Solution sol;
  sol.centers = std::move(best_centers);
  sol.radius = best_radius;
  sol.algorithm = Algorithm::Exact;
  return sol;
}

Solution exact_kcenter(const MetricInstance& instance, std::span<const PointId> subset,
                       std::uint32_t k, const ExactGuard& guard) {
  return exact_kcenter_constrained(instance, subset, subset, k, guard);
}

}  // namespace kcenter
