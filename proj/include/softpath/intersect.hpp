#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace softpath {

inline constexpr double kBoxTolerance = 1e-4;
inline constexpr double kDedupTolerance = 1e-3;
inline constexpr double kAdjacentTolerance = 1e-3;
inline constexpr double kHitTolerance = 1e-3;

struct IntersectionHit {
  std::size_t seg_a = 0;  // 1-based global segment indices
  double t_a = 0;
  std::size_t seg_b = 0;
  double t_b = 0;
  Point point;
};

// Hits between two drawing pieces, sorted by (t_a, t_b). seg_a and seg_b are
// left at 1.
std::vector<IntersectionHit> segment_intersections(Point start_a, const Segment& a,
                                                   Point start_b, const Segment& b);

// Crossings of a single cubic with itself (at most one for a true cubic).
std::vector<IntersectionHit> segment_self_intersections(Point start, const Segment& s);

// Deduplicated hits of p against q, sorted by (seg_a, t_a).
std::vector<IntersectionHit> path_intersections(const SoftPath& p, const SoftPath& q);

// Deduplicated crossings of p with itself; seg_a/t_a is the earlier passage.
std::vector<IntersectionHit> self_intersections(const SoftPath& p);

SoftPath split_with(const SoftPath& p, const SoftPath& q);
std::pair<SoftPath, SoftPath> split_both(const SoftPath& p, const SoftPath& q);
SoftPath split_self(const SoftPath& p);

SoftPath replace_lines(const SoftPath& p);

}  // namespace softpath
