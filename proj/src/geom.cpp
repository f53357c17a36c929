#include "softpath/geom.hpp"

#include <cmath>
#include <string>

#include "softpath/errors.hpp"

namespace softpath {

namespace {

// cos/sin in degrees, exact at multiples of 90.
double cos_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  if (r == 0) return 1;
  if (r == 90 || r == 270) return 0;
  if (r == 180) return -1;
  return std::cos(degrees_to_radians(deg));
}

double sin_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  if (r == 0 || r == 180) return 0;
  if (r == 90) return 1;
  if (r == 270) return -1;
  return std::sin(degrees_to_radians(deg));
}

Vec2 rotate(Vec2 v, double deg) {
  const double cs = cos_deg(deg);
  const double sn = sin_deg(deg);
  return {cs * v.dx - sn * v.dy, sn * v.dx + cs * v.dy};
}

Vec2 ellipse_velocity(double rx, double ry, double angle_deg, double rotation_deg) {
  return rotate({-rx * sin_deg(angle_deg), ry * cos_deg(angle_deg)}, rotation_deg);
}

}  // namespace

Transform2D Transform2D::rotation_degrees(double deg) {
  const double cs = cos_deg(deg);
  const double sn = sin_deg(deg);
  return {cs, sn, -sn, cs, 0, 0};
}

Transform2D Transform2D::reflection(Point p, Point q) {
  const Vec2 u = unit(q - p);
  const double m00 = u.dx * u.dx - u.dy * u.dy;
  const double m01 = 2 * u.dx * u.dy;
  Transform2D r{m00, m01, m01, -m00, 0, 0};
  const Point image = r.apply(p);
  r.e = p.x - image.x;
  r.f = p.y - image.y;
  return r;
}

Transform2D Transform2D::then(const Transform2D& n) const {
  return {
      n.a * a + n.c * b,
      n.b * a + n.d * b,
      n.a * c + n.c * d,
      n.b * c + n.d * d,
      n.a * e + n.c * f + n.e,
      n.b * e + n.d * f + n.f,
  };
}

Transform2D similarity_from_endpoints(Point p0, Point p1, Point q0, Point q1) {
  const Vec2 from = p1 - p0;
  const double len2 = dot(from, from);
  if (!(std::sqrt(len2) > kSpanEpsilon)) {
    throw DegenerateSpan("span endpoints are too close together");
  }
  const Vec2 to = q1 - q0;
  // z = to / from as complex numbers.
  const double zr = (to.dx * from.dx + to.dy * from.dy) / len2;
  const double zi = (to.dy * from.dx - to.dx * from.dy) / len2;
  Transform2D t{zr, zi, -zi, zr, 0, 0};
  const Point image = t.apply(p0);
  t.e = q0.x - image.x;
  t.f = q0.y - image.y;
  return t;
}

Point ellipse_point(Point center, double rx, double ry, double angle_deg, double rotation_deg) {
  return center + rotate({rx * cos_deg(angle_deg), ry * sin_deg(angle_deg)}, rotation_deg);
}

std::vector<CubicPiece> arc_to_cubics(Point center, double rx, double ry, double start_deg,
                                      double end_deg, double rotation_deg) {
  if (!(rx > 0) || !(ry > 0) || !std::isfinite(rx) || !std::isfinite(ry)) {
    throw InvalidArc("arc radii must be positive");
  }
  const double sweep = end_deg - start_deg;
  if (!std::isfinite(sweep) || std::abs(sweep) > 360.0 + 1e-9) {
    throw InvalidArc("arc sweep exceeds 360 degrees: " + std::to_string(sweep));
  }
  std::vector<CubicPiece> pieces;
  if (sweep == 0) return pieces;

  const int count = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / 90.0 - 1e-9)));
  const double step = sweep / count;
  const double k = 4.0 / 3.0 * std::tan(degrees_to_radians(step) / 4.0);
  pieces.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double a0 = start_deg + step * i;
    const double a1 = i + 1 == count ? end_deg : start_deg + step * (i + 1);
    const Point p0 = ellipse_point(center, rx, ry, a0, rotation_deg);
    const Point p3 = ellipse_point(center, rx, ry, a1, rotation_deg);
    pieces.push_back({p0 + k * ellipse_velocity(rx, ry, a0, rotation_deg),
                      p3 - k * ellipse_velocity(rx, ry, a1, rotation_deg), p3});
  }
  return pieces;
}

}  // namespace softpath
