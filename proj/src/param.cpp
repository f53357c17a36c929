#include "softpath/param.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "softpath/edit.hpp"

namespace softpath {

PathLocation locate(const SoftPath& p, double t) {
  const auto refs = countable_segments(p);
  if (refs.empty()) throw EmptyPath("cannot locate a point on a path without segments");
  if (!(t >= 0 && t <= 1)) throw ParameterOutOfRange("path parameter must lie in [0,1]");

  const std::size_t n = refs.size();
  const double scaled = t * static_cast<double>(n);
  // k/n belongs to the k-th segment (local parameter 1).
  auto k = static_cast<std::size_t>(std::ceil(scaled));
  k = std::clamp<std::size_t>(k, 1, n);
  const double local = std::clamp(scaled - static_cast<double>(k - 1), 0.0, 1.0);

  const SegmentRef& ref = refs[k - 1];
  PathLocation loc;
  loc.component_index = ref.component + 1;
  loc.segment_index = k;
  loc.local_t = local;
  loc.point = point_on(ref.start, ref.segment, local);
  loc.tangent = tangent_on(ref.start, ref.segment, local);
  return loc;
}

Frame frame_at(const SoftPath& p, double t, bool upright) {
  const PathLocation loc = locate(p, t);
  double angle = norm(loc.tangent) > 0 ? angle_of(loc.tangent) : 0.0;
  // The frame's y axis is (-sin, cos); flip when it points down the page.
  if (upright && std::cos(angle) < 0) angle += std::numbers::pi;
  if (angle > std::numbers::pi) angle -= 2 * std::numbers::pi;
  return {loc.point, angle};
}

std::pair<Segment, Segment> split_segment(Point start, const Segment& s, double t) {
  if (const auto* line = std::get_if<LineTo>(&s)) {
    return {LineTo{lerp(start, line->to, t)}, LineTo{line->to}};
  }
  const auto [first, second] = to_bezier(start, s).split(t);
  return {CubicTo{first.p1, first.p2, first.p3}, CubicTo{second.p1, second.p2, second.p3}};
}

namespace {

enum class ClosedRule { Rotate, OpenAtStart };

struct Cut {
  std::size_t node;
  std::size_t id;
};

struct Item {
  std::size_t slot;
  double t;
  std::size_t id;
};

Component piece_range(Point start, const std::vector<Segment>& pieces, std::size_t from, std::size_t to) {
  Component c{start, {}, false};
  const std::size_t m = pieces.size();
  for (std::size_t i = from; i < to; ++i) c.segments.push_back(pieces[m == 0 ? 0 : i % m]);
  return c;
}

BreakResult insert_breaks_impl(const SoftPath& p, const std::vector<Break>& breaks, ClosedRule rule) {
  const auto refs = countable_segments(p);
  std::vector<std::vector<Item>> per(p.components.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (breaks[i].segment >= refs.size()) throw ParameterOutOfRange("break segment out of range");
    const SegmentRef& r = refs[breaks[i].segment];
    per[r.component].push_back({r.index, std::clamp(breaks[i].t, 0.0, 1.0), i});
  }

  BreakResult res;
  res.junctions.resize(breaks.size());
  for (std::size_t ci = 0; ci < p.components.size(); ++ci) {
    const Component& comp = p.components[ci];
    auto& items = per[ci];
    const std::size_t base = res.path.components.size();
    if (items.empty()) {
      res.path.components.push_back(comp);
      res.spans.emplace_back(base, base + 1);
      continue;
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return a.slot != b.slot ? a.slot < b.slot : a.t < b.t;
    });

    std::vector<Segment> slots = comp.segments;
    const bool materialised = comp.closed && comp.end() != comp.start;
    if (materialised) slots.push_back(LineTo{comp.start});

    std::vector<Segment> pieces;
    std::vector<Point> nodes{comp.start};
    std::vector<Cut> cuts;
    std::size_t next = 0;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      Segment rest = slots[j];
      Point rest_start = nodes.back();
      double prev = 0;
      std::vector<std::size_t> end_cuts;
      for (; next < items.size() && items[next].slot == j; ++next) {
        const double t = items[next].t;
        if (t >= 1) {
          end_cuts.push_back(items[next].id);
        } else if (t <= prev) {
          cuts.push_back({pieces.size(), items[next].id});
        } else {
          auto [a, b] = split_segment(rest_start, rest, (t - prev) / (1 - prev));
          pieces.push_back(a);
          rest_start = end_point(a);
          nodes.push_back(rest_start);
          cuts.push_back({pieces.size(), items[next].id});
          rest = b;
          prev = t;
        }
      }
      pieces.push_back(rest);
      nodes.push_back(end_point(rest));
      for (std::size_t id : end_cuts) cuts.push_back({pieces.size(), id});
    }
    // Remaining items sit on a zero-length closing edge, i.e. at the start.
    for (; next < items.size(); ++next) cuts.push_back({pieces.size(), items[next].id});

    const std::size_t m = pieces.size();
    if (comp.closed && rule == ClosedRule::Rotate) {
      for (auto& c : cuts) {
        if (c.node == m) c.node = 0;
      }
      std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.node < b.node; });
      const std::size_t k = cuts.size();
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t from = cuts[i].node;
        const std::size_t to = i + 1 < k ? cuts[i + 1].node : cuts[0].node + m;
        res.path.components.push_back(piece_range(nodes[from], pieces, from, to));
        res.junctions[cuts[i].id] = {i == 0 ? base + k - 1 : base + i - 1, base + i};
      }
    } else {
      std::size_t from = 0;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        res.path.components.push_back(piece_range(nodes[from], pieces, from, cuts[i].node));
        res.junctions[cuts[i].id] = {base + i, base + i + 1};
        from = cuts[i].node;
      }
      res.path.components.push_back(piece_range(nodes[from], pieces, from, m));
    }
    res.spans.emplace_back(base, res.path.components.size());
  }
  return res;
}

Break break_at(const SoftPath& p, double t) {
  const PathLocation loc = locate(p, t);
  return {loc.segment_index - 1, loc.local_t};
}

SoftPath slice(const SoftPath& p, std::size_t from, std::size_t to) {
  SoftPath out;
  out.components.assign(p.components.begin() + static_cast<std::ptrdiff_t>(from),
                        p.components.begin() + static_cast<std::ptrdiff_t>(to));
  return out;
}

}  // namespace

BreakResult insert_breaks(const SoftPath& p, const std::vector<Break>& breaks) {
  return insert_breaks_impl(p, breaks, ClosedRule::Rotate);
}

SoftPath split_at(const SoftPath& p, double t) {
  return insert_breaks(p, {break_at(p, t)}).path;
}

std::pair<SoftPath, SoftPath> split_into(const SoftPath& p, double t) {
  const BreakResult r = insert_breaks_impl(p, {break_at(p, t)}, ClosedRule::OpenAtStart);
  const std::size_t after = r.junctions[0].after;
  return {slice(r.path, 0, after), slice(r.path, after, r.path.size())};
}

SoftPath keep(const SoftPath& p, const KeepMode& mode) {
  if (const auto* s = std::get_if<KeepStart>(&mode)) return split_into(p, s->t).first;
  if (const auto* e = std::get_if<KeepEnd>(&mode)) return split_into(p, e->t).second;
  const auto& mid = std::get<KeepMiddle>(mode);
  if (mid.t1 > mid.t2) throw InvalidRange("keep middle needs t1 <= t2");
  const BreakResult r =
      insert_breaks_impl(p, {break_at(p, mid.t1), break_at(p, mid.t2)}, ClosedRule::OpenAtStart);
  return slice(r.path, r.junctions[0].after, r.junctions[1].before + 1);
}

bool shorten_component_end(Component& c, double length) {
  double remaining = length;
  while (remaining > 0) {
    if (c.segments.empty()) return false;
    const Point start = c.segment_start(c.segments.size() - 1);
    const Segment seg = c.segments.back();
    const double speed = norm(tangent_on(start, seg, 1.0));
    if (speed == 0) {
      c.segments.pop_back();
      continue;
    }
    const double dt = remaining / speed;
    if (dt >= 1) {
      c.segments.pop_back();
      remaining -= speed;
      continue;
    }
    if (const auto* line = std::get_if<LineTo>(&seg)) {
      c.segments.back() = LineTo{line->to + (start - line->to) * dt};
    } else {
      c.segments.back() = split_segment(start, seg, 1 - dt).first;
    }
    remaining = 0;
  }
  return !(c.segments.empty() && length > 0);
}

bool shorten_component_start(Component& c, double length) {
  Component r = reverse(c);
  const bool ok = shorten_component_end(r, length);
  c = reverse(r);
  return ok;
}

SoftPath shorten(const SoftPath& p, PathEnd where, double length, Diagnostics* diag) {
  if (!(length >= 0)) throw InvalidRange("shortening length must be non-negative");
  if (p.empty()) {
    warn(diag, "shorten: path is empty");
    return p;
  }
  SoftPath out = p;
  auto apply = [&](Component& c, bool at_start) {
    if (c.closed) {
      warn(diag, "shorten: closed component left unchanged");
      return;
    }
    const bool ok = at_start ? shorten_component_start(c, length) : shorten_component_end(c, length);
    if (!ok) warn(diag, "shorten: component shortened away to a single point");
  };
  if (where == PathEnd::Start || where == PathEnd::Both) apply(out.components.front(), true);
  if (where == PathEnd::End || where == PathEnd::Both) apply(out.components.back(), false);
  return out;
}

}  // namespace softpath
