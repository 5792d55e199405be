#pragma once

#include <optional>
#include <vector>

#include "kcenter/errors.hpp"
#include "kcenter/metric.hpp"

namespace fixtures {

using Points = std::vector<kcenter::PointId>;

// Line at coordinates 0, 1, 3 (ids 0, 1, 2). Pairwise distances {1, 2, 3}.
inline kcenter::MetricInstance line013() {
  return kcenter::MetricInstance::from_coordinates({0.0, 1.0, 3.0}, 1);
}

// Two tight pairs far apart: coordinates 0, 1, 10, 11 (ids 0..3).
inline kcenter::MetricInstance line_0_1_10_11() {
  return kcenter::MetricInstance::from_coordinates({0.0, 1.0, 10.0, 11.0}, 1);
}

// Five evenly spaced points, coordinates 0..4 (ids 0..4).
inline kcenter::MetricInstance line01234() {
  return kcenter::MetricInstance::from_coordinates({0.0, 1.0, 2.0, 3.0, 4.0}, 1);
}

// Three points pairwise at distance 1.
inline kcenter::MetricInstance equilateral() {
  return kcenter::MetricInstance::from_matrix(
      {0, 1, 1,
       1, 0, 1,
       1, 1, 0},
      3);
}

// Greedy cover size is not monotone in rho here: sizes over increasing rho
// run 4, 2, 3, 2, 1. Ids: 0=a, 1=b, 2=x, 3=y with d(a,b)=1.2, d(b,x)=
// d(b,y)=1.0, d(x,y)=1.8, d(a,x)=d(a,y)=1.9.
inline kcenter::MetricInstance nonmono4() {
  return kcenter::MetricInstance::from_matrix(
      {0.0, 1.2, 1.9, 1.9,
       1.2, 0.0, 1.0, 1.0,
       1.9, 1.0, 0.0, 1.8,
       1.9, 1.0, 1.8, 0.0},
      4);
}

// Two ids at the same location.
inline kcenter::MetricInstance coincident_pair() {
  return kcenter::MetricInstance::from_coordinates({5.0, 5.0}, 1);
}

// Two groups of three coincident points, groups 10 apart (ids 0,2,4 at 0
// and 1,3,5 at 10, so round-robin over two machines splits each group).
inline kcenter::MetricInstance two_coincident_clusters() {
  return kcenter::MetricInstance::from_coordinates({0.0, 10.0, 0.0, 10.0, 0.0, 10.0}, 1);
}

// The ErrorCode thrown by fn, or nullopt if it does not throw a
// kcenter::Error.
template <typename Fn>
std::optional<kcenter::ErrorCode> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const kcenter::Error& e) {
    return e.code();
  } catch (...) {
  }
  return std::nullopt;
}

}  // namespace fixtures
