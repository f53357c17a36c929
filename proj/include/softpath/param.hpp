#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "softpath/errors.hpp"
#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace softpath {

// A point on a path in terms of the global path coordinate: the interval
// [(k-1)/n, k/n] belongs to the k-th of n countable segments.
struct PathLocation {
  std::size_t component_index = 1;  // 1-based
  std::size_t segment_index = 1;    // 1-based, global over the path
  double local_t = 0;
  Point point;
  Vec2 tangent;
};

struct Frame {
  Point origin;
  double angle_rad = 0;
};

// Throws EmptyPath, ParameterOutOfRange.
PathLocation locate(const SoftPath& p, double t);
Frame frame_at(const SoftPath& p, double t, bool upright);

std::pair<Segment, Segment> split_segment(Point start, const Segment& s, double t);

// A break position in countable-segment terms (0-based global segment).
struct Break {
  std::size_t segment = 0;
  double t = 0;
};

// For each requested break, the components meeting there after insertion.
struct Junction {
  std::size_t before = 0;  // 0-based component ending at the break
  std::size_t after = 0;   // 0-based component starting at the break
};

struct BreakResult {
  SoftPath path;
  std::vector<Junction> junctions;  // parallel to the input breaks
  // For each input component, its output components [first, second).
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

// Inserts component breaks without changing the trace. Breaks in a closed
// component open it, starting the first piece at the earliest break.
// Coincident breaks produce isolated-point components between them.
BreakResult insert_breaks(const SoftPath& p, const std::vector<Break>& breaks);

SoftPath split_at(const SoftPath& p, double t);
std::pair<SoftPath, SoftPath> split_into(const SoftPath& p, double t);

struct KeepStart {
  double t;
};
struct KeepEnd {
  double t;
};
struct KeepMiddle {
  double t1;
  double t2;
};
using KeepMode = std::variant<KeepStart, KeepEnd, KeepMiddle>;

// Throws InvalidRange when a KeepMiddle range is reversed.
SoftPath keep(const SoftPath& p, const KeepMode& mode);

enum class PathEnd { Start, End, Both };

// Derivative-based shortening of the first (Start) / last (End) component.
SoftPath shorten(const SoftPath& p, PathEnd where, double length, Diagnostics* diag = nullptr);

// Single-component variants used by gap insertion. Return false when the
// component was consumed entirely.
bool shorten_component_end(Component& c, double length);
bool shorten_component_start(Component& c, double length);

}  // namespace softpath
