#include "softpath/intersect.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "softpath/param.hpp"

namespace softpath {

namespace {

constexpr double kTouch = 1e-9;        // bounding boxes touching within this count as overlapping
constexpr double kNodeSnap = 1e-9;     // parameters this close to 0 or 1 sit on the node
constexpr int kMaxDepth = 48;
constexpr std::size_t kMaxTasks = 1u << 20;

struct Box {
  double x0, y0, x1, y1;
};

Box bounds(const Bezier& b) {
  return {std::min({b.p0.x, b.p1.x, b.p2.x, b.p3.x}), std::min({b.p0.y, b.p1.y, b.p2.y, b.p3.y}),
          std::max({b.p0.x, b.p1.x, b.p2.x, b.p3.x}), std::max({b.p0.y, b.p1.y, b.p2.y, b.p3.y})};
}

bool overlap(const Box& a, const Box& b) {
  return a.x0 <= b.x1 + kTouch && b.x0 <= a.x1 + kTouch && a.y0 <= b.y1 + kTouch && b.y0 <= a.y1 + kTouch;
}

double extent(const Box& b) { return std::max(b.x1 - b.x0, b.y1 - b.y0); }

bool is_degenerate(const Bezier& b) {
  return b.p0 == b.p1 && b.p1 == b.p2 && b.p2 == b.p3;
}

// A drawing piece with its start, evaluated honouring the segment kind.
struct Curve {
  Point start;
  Segment seg;
  Bezier bez;

  Curve(Point s, const Segment& g) : start(s), seg(g), bez(to_bezier(s, g)) {}
  Point eval(double t) const { return point_on(start, seg, t); }
  Vec2 derivative(double t) const { return derivative_on(start, seg, t); }
};

struct RawHit {
  double s, u;
  Point point;
  double residual;
};

RawHit polish(const Curve& a, const Curve& b, double s, double u) {
  auto residual_at = [&](double ss, double uu) { return norm(a.eval(ss) - b.eval(uu)); };
  RawHit best{s, u, a.eval(s), residual_at(s, u)};
  for (int it = 0; it < 8 && best.residual > 0; ++it) {
    const Vec2 f = a.eval(s) - b.eval(u);
    const Vec2 col1 = a.derivative(s);
    const Vec2 col2 = -b.derivative(u);
    const double det = cross(col1, col2);
    if (std::abs(det) < 1e-300) break;
    s = std::clamp(s + cross(-f, col2) / det, 0.0, 1.0);
    u = std::clamp(u + cross(col1, -f) / det, 0.0, 1.0);
    const double r = residual_at(s, u);
    if (r < best.residual) best = {s, u, a.eval(s), r};
  }
  return best;
}

std::vector<RawHit> line_line(const Curve& a, const Curve& b) {
  const Point a0 = a.start;
  const Point b0 = b.start;
  const Vec2 r = end_point(a.seg) - a0;
  const Vec2 s = end_point(b.seg) - b0;
  const double rr = dot(r, r);
  const double ss = dot(s, s);
  std::vector<RawHit> hits;
  if (rr == 0 || ss == 0) return hits;
  const Vec2 qp = b0 - a0;
  const double denom = cross(r, s);
  auto make = [&](double t, double u) {
    const Point pa = a.eval(t);
    hits.push_back({t, u, pa, norm(pa - b.eval(u))});
  };
  if (std::abs(denom) <= 1e-12 * std::sqrt(rr * ss)) {
    const double scale = std::max({1.0, std::sqrt(rr), std::sqrt(ss)});
    if (std::abs(cross(qp, r)) / std::sqrt(rr) > 1e-9 * scale) return hits;
    // Collinear: report the ends of the overlap.
    const double t0 = dot(b0 - a0, r) / rr;
    const double t1 = dot(end_point(b.seg) - a0, r) / rr;
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    if (lo > hi + 1e-12) return hits;
    auto u_of = [&](double t) { return std::clamp(dot(a.eval(t) - b0, s) / ss, 0.0, 1.0); };
    make(lo, u_of(lo));
    if (hi - lo > kDedupTolerance) make(hi, u_of(hi));
    return hits;
  }
  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  constexpr double eps = 1e-9;
  if (t < -eps || t > 1 + eps || u < -eps || u > 1 + eps) return hits;
  make(std::clamp(t, 0.0, 1.0), std::clamp(u, 0.0, 1.0));
  return hits;
}

std::vector<RawHit> subdivide(const Curve& a, const Curve& b) {
  struct Task {
    Bezier a;
    double a0, a1;
    Bezier b;
    double b0, b1;
    int depth;
  };
  std::vector<std::pair<double, double>> leaves;
  std::vector<Task> stack{{a.bez, 0, 1, b.bez, 0, 1, 0}};
  std::size_t budget = kMaxTasks;
  while (!stack.empty() && budget-- > 0) {
    const Task t = stack.back();
    stack.pop_back();
    const Box ba = bounds(t.a);
    const Box bb = bounds(t.b);
    if (!overlap(ba, bb)) continue;
    const bool split_a = extent(ba) >= kBoxTolerance;
    const bool split_b = extent(bb) >= kBoxTolerance;
    if ((!split_a && !split_b) || t.depth >= kMaxDepth) {
      leaves.emplace_back((t.a0 + t.a1) / 2, (t.b0 + t.b1) / 2);
      continue;
    }
    const double am = (t.a0 + t.a1) / 2;
    const double bm = (t.b0 + t.b1) / 2;
    if (split_a && split_b) {
      const auto [al, ar] = t.a.split(0.5);
      const auto [bl, br] = t.b.split(0.5);
      stack.push_back({ar, am, t.a1, br, bm, t.b1, t.depth + 1});
      stack.push_back({ar, am, t.a1, bl, t.b0, bm, t.depth + 1});
      stack.push_back({al, t.a0, am, br, bm, t.b1, t.depth + 1});
      stack.push_back({al, t.a0, am, bl, t.b0, bm, t.depth + 1});
    } else if (split_a) {
      const auto [al, ar] = t.a.split(0.5);
      stack.push_back({ar, am, t.a1, t.b, t.b0, t.b1, t.depth + 1});
      stack.push_back({al, t.a0, am, t.b, t.b0, t.b1, t.depth + 1});
    } else {
      const auto [bl, br] = t.b.split(0.5);
      stack.push_back({t.a, t.a0, t.a1, br, bm, t.b1, t.depth + 1});
      stack.push_back({t.a, t.a0, t.a1, bl, t.b0, bm, t.depth + 1});
    }
  }
  std::vector<RawHit> hits;
  hits.reserve(leaves.size());
  for (const auto& [s, u] : leaves) hits.push_back(polish(a, b, s, u));
  return hits;
}

// Keeps the lowest-residual hit of every cluster closer than kDedupTolerance
// in both parameters; returns hits sorted by (s, u).
std::vector<RawHit> dedup(std::vector<RawHit> hits) {
  std::sort(hits.begin(), hits.end(), [](const RawHit& x, const RawHit& y) {
    return x.residual != y.residual ? x.residual < y.residual : (x.s != y.s ? x.s < y.s : x.u < y.u);
  });
  std::vector<RawHit> kept;
  for (const auto& h : hits) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const RawHit& k) {
      return std::abs(k.s - h.s) < kDedupTolerance && std::abs(k.u - h.u) < kDedupTolerance;
    });
    if (!dup) kept.push_back(h);
  }
  std::sort(kept.begin(), kept.end(),
            [](const RawHit& x, const RawHit& y) { return x.s != y.s ? x.s < y.s : x.u < y.u; });
  return kept;
}

// Cheaper dedup for large candidate sets: sweep over s.
std::vector<RawHit> dedup_large(std::vector<RawHit> hits) {
  if (hits.size() < 256) return dedup(std::move(hits));
  std::sort(hits.begin(), hits.end(),
            [](const RawHit& x, const RawHit& y) { return x.s != y.s ? x.s < y.s : x.u < y.u; });
  std::vector<RawHit> kept;
  for (const auto& h : hits) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && h.s - it->s < kDedupTolerance; ++it) {
      if (std::abs(it->u - h.u) < kDedupTolerance) {
        if (h.residual < it->residual) *it = h;
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(h);
  }
  return kept;
}

// Parameter on c nearest to p, by Newton iteration from t.
double project(const Curve& c, Point p, double t) {
  for (int it = 0; it < 16; ++it) {
    const Vec2 d = c.derivative(t);
    const double dd = dot(d, d);
    if (dd < 1e-300) break;
    const double next = std::clamp(t - dot(c.eval(t) - p, d) / dd, 0.0, 1.0);
    if (next == t) break;
    t = next;
  }
  return t;
}

// Coincident stretches show up as a dense run of hits, one per dedup cell.
// Like collinear lines, such a run is reported by its two ends only. A run
// that stops just short of a segment end is carried onto that end, since the
// subdivision leaves never sit exactly on a node.
std::vector<RawHit> collapse_overlaps(std::vector<RawHit> hits, const Curve& a, const Curve& b) {
  constexpr double kStep = 0.02;
  auto linked = [&](const RawHit& x, const RawHit& y) {
    if (y.s - x.s >= kStep || std::abs(y.u - x.u) >= kStep) return false;
    return distance(a.eval((x.s + y.s) / 2), b.eval((x.u + y.u) / 2)) < kHitTolerance;
  };
  auto make = [&](double s, double u) {
    const Point pa = a.eval(s);
    return RawHit{s, u, pa, distance(pa, b.eval(u))};
  };
  // Moves h onto an end of either curve when the overlap reaches it.
  auto extend = [&](RawHit h, double s_end) {
    if (std::abs(h.s - s_end) < kStep) {
      const RawHit cand = make(s_end, project(b, a.eval(s_end), h.u));
      if (cand.residual < kHitTolerance && std::abs(cand.u - h.u) < kStep && linked(cand.s < h.s ? cand : h, cand.s < h.s ? h : cand))
        return cand;
    }
    for (const double u_end : {0.0, 1.0}) {
      if (std::abs(h.u - u_end) >= kStep) continue;
      const double s = project(a, b.eval(u_end), h.s);
      if ((s - h.s) * (s_end - h.s) < 0) continue;
      const RawHit cand = make(s, u_end);
      if (cand.residual < kHitTolerance && std::abs(s - h.s) < kStep &&
          linked(cand.s < h.s ? cand : h, cand.s < h.s ? h : cand))
        return cand;
    }
    return h;
  };
  std::vector<RawHit> out;
  std::size_t i = 0;
  while (i < hits.size()) {
    std::size_t j = i;
    while (j + 1 < hits.size() && linked(hits[j], hits[j + 1])) ++j;
    if (j == i) {
      out.push_back(hits[i]);
    } else {
      const RawHit first = extend(hits[i], 0.0);
      const RawHit last = extend(hits[j], 1.0);
      out.push_back(first);
      if (last.s - first.s >= kDedupTolerance || std::abs(last.u - first.u) >= kDedupTolerance)
        out.push_back(last);
    }
    i = j + 1;
  }
  return out;
}

std::vector<RawHit> curve_hits(const Curve& a, const Curve& b) {
  if (is_degenerate(a.bez) || is_degenerate(b.bez)) return {};
  if (!overlap(bounds(a.bez), bounds(b.bez))) return {};
  std::vector<RawHit> hits = is_line(a.seg) && is_line(b.seg) ? line_line(a, b) : subdivide(a, b);
  std::erase_if(hits, [](const RawHit& h) { return !(h.residual < kHitTolerance); });
  return collapse_overlaps(dedup_large(std::move(hits)), a, b);
}

// True when the hodograph lies in an open half-plane: the curve is monotone
// along some direction and cannot cross itself.
bool cannot_self_intersect(const Bezier& b) {
  std::vector<double> angles;
  for (const Vec2 v : {b.p1 - b.p0, b.p2 - b.p1, b.p3 - b.p2}) {
    if (norm(v) > 0) angles.push_back(angle_of(v));
  }
  if (angles.size() < 2) return true;
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return max_gap > std::numbers::pi;
}

void self_recurse(const Bezier& b, double t0, double t1, int depth, std::vector<RawHit>& out) {
  if (depth > 6 || cannot_self_intersect(b)) return;
  const auto [left, right] = b.split(0.5);
  const double mid = (t0 + t1) / 2;
  const Curve cl(left.p0, CubicTo{left.p1, left.p2, left.p3});
  const Curve cr(right.p0, CubicTo{right.p1, right.p2, right.p3});
  for (const RawHit& h : curve_hits(cl, cr)) {
    const double s = t0 + h.s * (mid - t0);
    const double u = mid + h.u * (t1 - mid);
    if (u - s < kAdjacentTolerance) continue;  // the shared midpoint
    out.push_back({s, u, h.point, h.residual});
  }
  self_recurse(left, t0, mid, depth + 1, out);
  self_recurse(right, mid, t1, depth + 1, out);
}

// Path-level bookkeeping: countable slots grouped by component so positions
// can be compared across segment boundaries.
struct PathGeometry {
  std::vector<SegmentRef> refs;
  std::vector<Curve> curves;
  std::vector<Box> boxes;
  std::vector<bool> degenerate;
  std::vector<std::size_t> first;  // per component
  std::vector<std::size_t> count;
  std::vector<bool> closed;

  explicit PathGeometry(const SoftPath& p) : refs(countable_segments(p)) {
    first.assign(p.components.size(), 0);
    count.assign(p.components.size(), 0);
    closed.resize(p.components.size());
    for (std::size_t ci = 0; ci < p.components.size(); ++ci) closed[ci] = p.components[ci].closed;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      curves.emplace_back(refs[i].start, refs[i].segment);
      boxes.push_back(bounds(curves.back().bez));
      degenerate.push_back(is_degenerate(curves.back().bez));
      if (count[refs[i].component]++ == 0) first[refs[i].component] = i;
    }
  }

  std::optional<std::size_t> successor(std::size_t slot) const {
    const std::size_t c = refs[slot].component;
    if (slot + 1 < first[c] + count[c]) return slot + 1;
    if (closed[c]) return first[c];
    return std::nullopt;
  }
};

struct PathPos {
  std::size_t slot;
  double t;
  std::size_t component;
  double g;  // position within the component, in segments
};

PathPos canonical(const PathGeometry& geo, std::size_t slot, double t) {
  for (std::size_t guard = 0; guard <= geo.refs.size(); ++guard) {
    if (t < 1 - kNodeSnap && !geo.degenerate[slot]) break;
    const auto next = geo.successor(slot);
    if (!next) break;
    slot = *next;
    t = 0;
  }
  if (t <= kNodeSnap) t = 0;
  if (t >= 1 - kNodeSnap) t = 1;
  const std::size_t c = geo.refs[slot].component;
  return {slot, t, c, static_cast<double>(slot - geo.first[c]) + t};
}

double position_gap(const PathGeometry& geo, const PathPos& a, const PathPos& b) {
  double d = std::abs(a.g - b.g);
  if (geo.closed[a.component]) d = std::min(d, static_cast<double>(geo.count[a.component]) - d);
  return d;
}

bool same_place(const PathGeometry& geo, const PathPos& a, const PathPos& b) {
  return a.component == b.component && position_gap(geo, a, b) < kDedupTolerance;
}

struct PathHit {
  PathPos a;
  PathPos b;
  Point point;
  double residual;
};

bool pos_less(const PathPos& x, const PathPos& y) {
  return x.component != y.component ? x.component < y.component : x.g < y.g;
}

std::vector<PathHit> dedup_path_hits(std::vector<PathHit> hits, const PathGeometry& ga,
                                     const PathGeometry& gb) {
  std::sort(hits.begin(), hits.end(), [](const PathHit& x, const PathHit& y) {
    return x.residual != y.residual ? x.residual < y.residual : pos_less(x.a, y.a);
  });
  std::vector<PathHit> kept;
  for (const auto& h : hits) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const PathHit& k) {
      return same_place(ga, k.a, h.a) && same_place(gb, k.b, h.b);
    });
    if (!dup) kept.push_back(h);
  }
  std::sort(kept.begin(), kept.end(), [](const PathHit& x, const PathHit& y) {
    if (x.a.slot != y.a.slot) return x.a.slot < y.a.slot;
    if (x.a.t != y.a.t) return x.a.t < y.a.t;
    return pos_less(x.b, y.b);
  });
  return kept;
}

std::vector<IntersectionHit> to_public(const std::vector<PathHit>& hits) {
  std::vector<IntersectionHit> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back({h.a.slot + 1, h.a.t, h.b.slot + 1, h.b.t, h.point});
  return out;
}

std::vector<PathHit> mutual_hits(const PathGeometry& ga, const PathGeometry& gb) {
  std::vector<PathHit> hits;
  for (std::size_t i = 0; i < ga.curves.size(); ++i) {
    for (std::size_t j = 0; j < gb.curves.size(); ++j) {
      if (!overlap(ga.boxes[i], gb.boxes[j])) continue;
      for (const RawHit& h : curve_hits(ga.curves[i], gb.curves[j])) {
        hits.push_back({canonical(ga, i, h.s), canonical(gb, j, h.u), h.point, h.residual});
      }
    }
  }
  return dedup_path_hits(std::move(hits), ga, gb);
}

std::vector<PathHit> own_hits(const PathGeometry& g) {
  std::vector<PathHit> hits;
  auto add = [&](std::size_t i, double s, std::size_t j, double u, Point point, double residual) {
    PathPos a = canonical(g, i, s);
    PathPos b = canonical(g, j, u);
    if (pos_less(b, a)) std::swap(a, b);
    if (a.component == b.component && position_gap(g, a, b) < kAdjacentTolerance) return;
    hits.push_back({a, b, point, residual});
  };
  for (std::size_t i = 0; i < g.curves.size(); ++i) {
    if (!g.degenerate[i] && !is_line(g.curves[i].seg)) {
      std::vector<RawHit> loops;
      self_recurse(g.curves[i].bez, 0, 1, 0, loops);
      for (const RawHit& h : dedup(loops)) add(i, h.s, i, h.u, h.point, h.residual);
    }
    for (std::size_t j = i + 1; j < g.curves.size(); ++j) {
      if (!overlap(g.boxes[i], g.boxes[j])) continue;
      for (const RawHit& h : curve_hits(g.curves[i], g.curves[j])) add(i, h.s, j, h.u, h.point, h.residual);
    }
  }
  return dedup_path_hits(std::move(hits), g, g);
}

void add_break(std::vector<PathPos>& positions, const PathGeometry& geo, const PathPos& p) {
  for (const auto& q : positions) {
    if (same_place(geo, p, q)) return;
  }
  positions.push_back(p);
}

SoftPath break_at_positions(const SoftPath& p, const std::vector<PathPos>& positions) {
  std::vector<Break> breaks;
  breaks.reserve(positions.size());
  for (const auto& pos : positions) breaks.push_back({pos.slot, pos.t});
  return insert_breaks(p, breaks).path;
}

}  // namespace

std::vector<IntersectionHit> segment_intersections(Point start_a, const Segment& a, Point start_b,
                                                   const Segment& b) {
  std::vector<IntersectionHit> out;
  for (const RawHit& h : curve_hits(Curve(start_a, a), Curve(start_b, b))) {
    out.push_back({1, h.s, 1, h.u, h.point});
  }
  return out;
}

std::vector<IntersectionHit> segment_self_intersections(Point start, const Segment& s) {
  std::vector<IntersectionHit> out;
  if (is_line(s)) return out;
  std::vector<RawHit> hits;
  self_recurse(to_bezier(start, s), 0, 1, 0, hits);
  for (const RawHit& h : dedup(hits)) out.push_back({1, h.s, 1, h.u, h.point});
  return out;
}

std::vector<IntersectionHit> path_intersections(const SoftPath& p, const SoftPath& q) {
  const PathGeometry ga(p);
  const PathGeometry gb(q);
  return to_public(mutual_hits(ga, gb));
}

std::vector<IntersectionHit> self_intersections(const SoftPath& p) {
  const PathGeometry g(p);
  return to_public(own_hits(g));
}

SoftPath split_with(const SoftPath& p, const SoftPath& q) {
  return split_both(p, q).first;
}

std::pair<SoftPath, SoftPath> split_both(const SoftPath& p, const SoftPath& q) {
  const PathGeometry ga(p);
  const PathGeometry gb(q);
  std::vector<PathPos> pa;
  std::vector<PathPos> pb;
  for (const auto& h : mutual_hits(ga, gb)) {
    add_break(pa, ga, h.a);
    add_break(pb, gb, h.b);
  }
  return {break_at_positions(p, pa), break_at_positions(q, pb)};
}

SoftPath split_self(const SoftPath& p) {
  const PathGeometry g(p);
  std::vector<PathPos> positions;
  for (const auto& h : own_hits(g)) {
    add_break(positions, g, h.a);
    add_break(positions, g, h.b);
  }
  return break_at_positions(p, positions);
}

SoftPath replace_lines(const SoftPath& p) {
  SoftPath out = p;
  for (auto& c : out.components) {
    Point cur = c.start;
    for (auto& seg : c.segments) {
      if (const auto* line = std::get_if<LineTo>(&seg)) {
        const Vec2 d = line->to - cur;
        seg = CubicTo{cur + d / 3.0, cur + d * (2.0 / 3.0), line->to};
      }
      cur = end_point(seg);
    }
  }
  return out;
}

}  // namespace softpath
