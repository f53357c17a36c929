#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace fixtures {

using softpath::Component;
using softpath::CubicTo;
using softpath::LineTo;
using softpath::Point;
using softpath::SoftPath;
using softpath::Vec2;

inline constexpr double kPtPerCm = 28.452756;

inline Point polar(double deg, double r) {
  const double a = deg * std::numbers::pi / 180.0;
  return {r * std::cos(a), r * std::sin(a)};
}

// Closed Catmull-Rom spline through the given points.
inline SoftPath closed_spline(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  Component c{pts[0], {}, true};
  for (std::size_t i = 0; i < n; ++i) {
    const Point p0 = pts[(i + n - 1) % n];
    const Point p1 = pts[i];
    const Point p2 = pts[(i + 1) % n];
    const Point p3 = pts[(i + 2) % n];
    c.segments.push_back(CubicTo{p1 + (p2 - p0) / 6.0, p2 - (p3 - p1) / 6.0, p2});
  }
  return SoftPath{{c}};
}

// Trefoil through alternating outer (2cm) and inner (0.5cm) points, in pt.
inline SoftPath trefoil() {
  std::vector<Point> pts;
  for (int k = 0; k < 3; ++k) {
    const Point outer = polar(90 + 240 * k, 2 * kPtPerCm);
    const Point inner = polar(-30 + 240 * (k + 1), 0.5 * kPtPerCm);
    pts.push_back(outer);
    pts.push_back(inner);
  }
  return closed_spline(pts);
}

// TikZ-style `to[out=0,in=180]` cubic: horizontal tangents, control
// distance 0.3915 of the chord.
inline CubicTo horizontal_to(Point from, Point to) {
  const double d = 0.3915 * softpath::distance(from, to);
  return CubicTo{from + Vec2{d, 0}, to - Vec2{d, 0}, to};
}

// Two out-of-phase waves crossing four times.
inline SoftPath braid_strand(bool starts_low) {
  Component c{{0, starts_low ? 0.0 : 1.0}, {}, false};
  Point at = c.start;
  for (int i = 1; i <= 4; ++i) {
    const Point next{static_cast<double>(i), (i % 2 == 0) == starts_low ? 0.0 : 1.0};
    c.segments.push_back(horizontal_to(at, next));
    at = next;
  }
  return SoftPath{{c}};
}

inline SoftPath figure_eight() {
  return SoftPath{{Component{{0, 0}, {LineTo{{2, 2}}, LineTo{{0, 2}}, LineTo{{2, 0}}}, false}}};
}

inline SoftPath line(Point a, Point b) { return SoftPath{{Component{a, {LineTo{b}}, false}}}; }

inline SoftPath cubic(Point p0, Point c1, Point c2, Point p3) {
  return SoftPath{{Component{p0, {CubicTo{c1, c2, p3}}, false}}};
}

// Random paths on a 1e-3 grid so they survive the 6-decimal dump exactly.
class PathGen {
 public:
  explicit PathGen(unsigned seed) : rng_(seed) {}

  double coord() { return std::round(std::uniform_real_distribution<double>(-10, 10)(rng_) * 1000) / 1000; }
  Point point() { return {coord(), coord()}; }
  double unit() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Component component() {
    Component c{point(), {}, integer(0, 4) == 0};
    const int n = integer(1, 4);
    for (int i = 0; i < n; ++i) {
      if (integer(0, 1) == 0) {
        c.segments.push_back(LineTo{point()});
      } else {
        c.segments.push_back(CubicTo{point(), point(), point()});
      }
    }
    return c;
  }

  SoftPath path() {
    SoftPath p;
    const int n = integer(1, 3);
    for (int i = 0; i < n; ++i) p.components.push_back(component());
    return p;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace fixtures
