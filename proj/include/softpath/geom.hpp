#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace softpath {

struct Vec2 {
  double dx = 0;
  double dy = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;

  Vec2 operator-() const { return {-dx, -dy}; }
  Vec2& operator+=(Vec2 v) { dx += v.dx; dy += v.dy; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.dx + b.dx, a.dy + b.dy}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.dx - b.dx, a.dy - b.dy}; }
  friend Vec2 operator*(Vec2 v, double s) { return {v.dx * s, v.dy * s}; }
  friend Vec2 operator*(double s, Vec2 v) { return {v.dx * s, v.dy * s}; }
  friend Vec2 operator/(Vec2 v, double s) { return {v.dx / s, v.dy / s}; }
};

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;

  Point& operator+=(Vec2 v) { x += v.dx; y += v.dy; return *this; }
  friend Point operator+(Point p, Vec2 v) { return {p.x + v.dx, p.y + v.dy}; }
  friend Point operator-(Point p, Vec2 v) { return {p.x - v.dx, p.y - v.dy}; }
  friend Vec2 operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.dx * b.dx + a.dy * b.dy; }
inline double cross(Vec2 a, Vec2 b) { return a.dx * b.dy - a.dy * b.dx; }
inline double norm(Vec2 v) { return std::hypot(v.dx, v.dy); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline double angle_of(Vec2 v) { return std::atan2(v.dy, v.dx); }
inline Vec2 unit(Vec2 v) { return v / norm(v); }

// (1-t)a + tb, exact at both ends.
inline Point lerp(Point a, Point b, double t) {
  return {(1 - t) * a.x + t * b.x, (1 - t) * a.y + t * b.y};
}

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

// Affine map (x, y) -> (a x + c y + e, b x + d y + f).
struct Transform2D {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  friend bool operator==(const Transform2D&, const Transform2D&) = default;

  static Transform2D identity() { return {}; }
  static Transform2D translation(double dx, double dy) { return {1, 0, 0, 1, dx, dy}; }
  static Transform2D rotation_degrees(double deg);
  static Transform2D scaling(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
  // Reflection across the line through p and q.
  static Transform2D reflection(Point p, Point q);

  Point apply(Point p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
  Vec2 apply(Vec2 v) const { return {a * v.dx + c * v.dy, b * v.dx + d * v.dy}; }
  double determinant() const { return a * d - b * c; }

  // The map that applies *this first and then `next`.
  Transform2D then(const Transform2D& next) const;
};

inline Point apply(const Transform2D& t, Point p) { return t.apply(p); }

// Minimum chord length for span-style similarity transforms.
inline constexpr double kSpanEpsilon = 0.01;

// Rotation + uniform scale + translation taking p0 -> q0 and p1 -> q1.
// Throws DegenerateSpan when |p1 - p0| <= kSpanEpsilon.
Transform2D similarity_from_endpoints(Point p0, Point p1, Point q0, Point q1);

struct CubicPiece {
  Point c1;
  Point c2;
  Point to;

  friend bool operator==(const CubicPiece&, const CubicPiece&) = default;
};

// Elliptical arc from start_deg to end_deg (counterclockwise when end > start),
// split into pieces of at most 90 degrees, each approximated by one cubic with
// control length (4/3) tan(delta/4). The ellipse axes are rotated by
// rotation_deg about the center. The start point is implicit.
std::vector<CubicPiece> arc_to_cubics(Point center, double rx, double ry, double start_deg,
                                      double end_deg, double rotation_deg = 0.0);

// Point on the same ellipse at the given angle.
Point ellipse_point(Point center, double rx, double ry, double angle_deg,
                    double rotation_deg = 0.0);

}  // namespace softpath
