#pragma once

#include "softpath/errors.hpp"
#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace softpath {

struct HobbyJoin {
  Point p0;
  Vec2 dir0;
  Point p1;
  Vec2 dir1;
};

// Hobby's velocity function at tension 1.
double hobby_velocity(double theta, double phi);

// One cubic from p0 to p1 leaving along dir0 and arriving along dir1.
// Throws DegenerateSpan, ZeroTangent.
CubicTo hobby_curve(const HobbyJoin& join, Diagnostics* diag = nullptr);

}  // namespace softpath
