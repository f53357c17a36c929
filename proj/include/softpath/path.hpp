#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "softpath/errors.hpp"
#include "softpath/geom.hpp"

namespace softpath {

struct LineTo {
  Point to;
  friend bool operator==(const LineTo&, const LineTo&) = default;
};

struct CubicTo {
  Point c1;
  Point c2;
  Point to;
  friend bool operator==(const CubicTo&, const CubicTo&) = default;
};

// A drawing piece. Its start point is the end of whatever precedes it.
using Segment = std::variant<LineTo, CubicTo>;

inline Point end_point(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.to; }, s);
}

inline bool is_line(const Segment& s) { return std::holds_alternative<LineTo>(s); }

Segment transformed(const Segment& s, const Transform2D& t);

// Cubic control polygon with an explicit start. Lines map to the cubic with
// controls at the thirds, which has the same parametrisation.
struct Bezier {
  Point p0, p1, p2, p3;

  friend bool operator==(const Bezier&, const Bezier&) = default;

  Point eval(double t) const;
  Vec2 derivative(double t) const;
  std::pair<Bezier, Bezier> split(double t) const;
  Bezier reversed() const { return {p3, p2, p1, p0}; }
};

Bezier to_bezier(Point start, const Segment& s);

// Evaluation honouring the segment kind; lines use exact interpolation.
Point point_on(Point start, const Segment& s, double t);
Vec2 derivative_on(Point start, const Segment& s, double t);

// Tangent used for frames and end directions. Falls back when the derivative
// vanishes: 1.5 (c2 - p0) at the start (1.5 (p3 - c1) at the end), then the
// chord. Returns the zero vector only for a point-like segment.
Vec2 tangent_on(Point start, const Segment& s, double t);

struct Component {
  Point start;
  std::vector<Segment> segments;
  bool closed = false;

  friend bool operator==(const Component&, const Component&) = default;

  // Last on-segment point (ignores the implicit closing edge).
  Point end() const { return segments.empty() ? start : end_point(segments.back()); }
  Point segment_start(std::size_t i) const {
    return i == 0 ? start : end_point(segments[i - 1]);
  }
  // Where the pen is after drawing the component.
  Point final_point() const { return closed ? start : end(); }
};

struct SoftPath {
  std::vector<Component> components;

  friend bool operator==(const SoftPath&, const SoftPath&) = default;

  bool empty() const { return components.empty(); }
  std::size_t size() const { return components.size(); }
  std::size_t segment_count() const;
  Point start() const { return components.front().start; }
  Point final_point() const { return components.back().final_point(); }
};

// One countable drawing piece of a path. Closed components contribute their
// closing edge as an extra slot (index == segments.size()).
struct SegmentRef {
  std::size_t component = 0;
  std::size_t index = 0;
  Point start;
  Segment segment;
  bool closing = false;
};

std::vector<SegmentRef> countable_segments(const SoftPath& p);

// Opens a closed component, turning the closing edge into an explicit line
// when it has length greater than `tolerance`.
Component opened(const Component& c, double tolerance = 0.0);

// Appends `next` onto `into`, dropping next's start point. A closed `into`
// is opened first.
void weld_into(Component& into, const Component& next);

class Registry {
 public:
  void store(const std::string& name, SoftPath p) { entries_[name] = std::move(p); }
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  // Throws UnknownPath.
  const SoftPath& lookup(const std::string& name) const;
  SoftPath& lookup_mutable(const std::string& name);
  void clone(const std::string& target, const std::string& source);
  const std::map<std::string, SoftPath>& entries() const { return entries_; }

 private:
  std::map<std::string, SoftPath> entries_;
};

std::vector<SoftPath> get_components(const SoftPath& p);
SoftPath concat(const std::vector<SoftPath>& parts);

struct AppendOptions {
  bool reverse = false;
  bool move = false;
  bool weld = false;
  std::optional<Transform2D> transform = std::nullopt;
};

// Applies reverse, transform, move, weld to `inserted` (in that order) and
// appends it to `base`.
SoftPath append(const SoftPath& base, const SoftPath& inserted, const AppendOptions& opts,
                Diagnostics* diag = nullptr);

// Fixed-point with 6 decimals, trailing zeros trimmed, -0 printed as 0.
std::string format_number(double v);

// Text dump: one of `M x y`, `L x y`, `C x1 y1 x2 y2 x y`, `Z` per line.
std::string serialize(const SoftPath& p, Diagnostics* diag = nullptr);
std::string serialize_component(const Component& c, char separator = '\n');

}  // namespace softpath
