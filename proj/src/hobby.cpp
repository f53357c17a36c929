#include "softpath/hobby.hpp"

#include <algorithm>
#include <cmath>

namespace softpath {

namespace {

constexpr double kMaxVelocity = 12.0;
constexpr double kWarnAngle = 5.0 * std::numbers::pi / 6.0;

}  // namespace

double hobby_velocity(double theta, double phi) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sf = std::sin(phi);
  const double cf = std::cos(phi);
  const double sqrt5 = std::sqrt(5.0);
  const double num = 2 + std::numbers::sqrt2 * (st - sf / 16) * (sf - st / 16) * (ct - cf);
  const double den = 1 + (sqrt5 - 1) / 2 * ct + (3 - sqrt5) / 2 * cf;
  if (!(den > 0) || num / den > kMaxVelocity) return kMaxVelocity;
  return num / den;
}

CubicTo hobby_curve(const HobbyJoin& join, Diagnostics* diag) {
  const Vec2 chord = join.p1 - join.p0;
  const double length = norm(chord);
  if (!(length > kSpanEpsilon)) throw DegenerateSpan("hobby join endpoints are too close together");
  if (norm(join.dir0) == 0 || norm(join.dir1) == 0) throw ZeroTangent("hobby join needs nonzero directions");

  const double theta = std::atan2(cross(chord, join.dir0), dot(chord, join.dir0));
  const double phi = std::atan2(cross(join.dir1, chord), dot(join.dir1, chord));
  if (std::abs(theta) > kWarnAngle || std::abs(phi) > kWarnAngle) {
    warn(diag, "hobby join: tangents point nearly backwards, the curve may misbehave");
  }
  const double rho = std::max(0.0, hobby_velocity(theta, phi));
  const double sigma = std::max(0.0, hobby_velocity(phi, theta));
  return CubicTo{join.p0 + unit(join.dir0) * (rho * length / 3),
                 join.p1 - unit(join.dir1) * (sigma * length / 3), join.p1};
}

}  // namespace softpath
