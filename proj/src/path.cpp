#include "softpath/path.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "softpath/edit.hpp"

namespace softpath {

namespace {

constexpr double kTinyDerivative = 1e-12;

}  // namespace

Segment transformed(const Segment& s, const Transform2D& t) {
  if (const auto* line = std::get_if<LineTo>(&s)) return LineTo{t.apply(line->to)};
  const auto& cubic = std::get<CubicTo>(s);
  return CubicTo{t.apply(cubic.c1), t.apply(cubic.c2), t.apply(cubic.to)};
}

Point Bezier::eval(double t) const {
  const Point a = lerp(p0, p1, t);
  const Point b = lerp(p1, p2, t);
  const Point c = lerp(p2, p3, t);
  return lerp(lerp(a, b, t), lerp(b, c, t), t);
}

Vec2 Bezier::derivative(double t) const {
  const double s = 1 - t;
  return 3 * (s * s * (p1 - p0) + 2 * s * t * (p2 - p1) + t * t * (p3 - p2));
}

std::pair<Bezier, Bezier> Bezier::split(double t) const {
  const Point a = lerp(p0, p1, t);
  const Point b = lerp(p1, p2, t);
  const Point c = lerp(p2, p3, t);
  const Point ab = lerp(a, b, t);
  const Point bc = lerp(b, c, t);
  const Point mid = lerp(ab, bc, t);
  return {Bezier{p0, a, ab, mid}, Bezier{mid, bc, c, p3}};
}

Bezier to_bezier(Point start, const Segment& s) {
  if (const auto* line = std::get_if<LineTo>(&s)) {
    const Vec2 d = line->to - start;
    return {start, start + d / 3.0, start + d * (2.0 / 3.0), line->to};
  }
  const auto& cubic = std::get<CubicTo>(s);
  return {start, cubic.c1, cubic.c2, cubic.to};
}

Point point_on(Point start, const Segment& s, double t) {
  if (const auto* line = std::get_if<LineTo>(&s)) return lerp(start, line->to, t);
  return to_bezier(start, s).eval(t);
}

Vec2 derivative_on(Point start, const Segment& s, double t) {
  if (const auto* line = std::get_if<LineTo>(&s)) return line->to - start;
  return to_bezier(start, s).derivative(t);
}

Vec2 tangent_on(Point start, const Segment& s, double t) {
  const Vec2 d = derivative_on(start, s, t);
  if (norm(d) > kTinyDerivative) return d;
  if (const auto* cubic = std::get_if<CubicTo>(&s)) {
    const Vec2 second = t < 0.5 ? 1.5 * (cubic->c2 - start) : 1.5 * (cubic->to - cubic->c1);
    if (norm(second) > kTinyDerivative) return second;
  }
  const Vec2 chord = end_point(s) - start;
  if (norm(chord) > kTinyDerivative) return chord;
  return {0, 0};
}

std::size_t SoftPath::segment_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.segments.size() + (c.closed ? 1 : 0);
  return n;
}

std::vector<SegmentRef> countable_segments(const SoftPath& p) {
  std::vector<SegmentRef> refs;
  refs.reserve(p.segment_count());
  for (std::size_t ci = 0; ci < p.components.size(); ++ci) {
    const Component& c = p.components[ci];
    Point cur = c.start;
    for (std::size_t si = 0; si < c.segments.size(); ++si) {
      refs.push_back({ci, si, cur, c.segments[si], false});
      cur = end_point(c.segments[si]);
    }
    if (c.closed) refs.push_back({ci, c.segments.size(), cur, LineTo{c.start}, true});
  }
  return refs;
}

Component opened(const Component& c, double tolerance) {
  Component out = c;
  if (!c.closed) return out;
  if (distance(c.end(), c.start) > tolerance) out.segments.push_back(LineTo{c.start});
  out.closed = false;
  return out;
}

void weld_into(Component& into, const Component& next) {
  if (into.closed) into = opened(into);
  into.segments.insert(into.segments.end(), next.segments.begin(), next.segments.end());
  into.closed = next.closed;
}

const SoftPath& Registry::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownPath("unknown path '" + name + "'");
  return it->second;
}

SoftPath& Registry::lookup_mutable(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownPath("unknown path '" + name + "'");
  return it->second;
}

void Registry::clone(const std::string& target, const std::string& source) {
  SoftPath copy = lookup(source);
  entries_[target] = std::move(copy);
}

std::vector<SoftPath> get_components(const SoftPath& p) {
  std::vector<SoftPath> parts;
  parts.reserve(p.components.size());
  for (const auto& c : p.components) parts.push_back(SoftPath{{c}});
  return parts;
}

SoftPath concat(const std::vector<SoftPath>& parts) {
  SoftPath out;
  for (const auto& part : parts) {
    out.components.insert(out.components.end(), part.components.begin(), part.components.end());
  }
  return out;
}

SoftPath append(const SoftPath& base, const SoftPath& inserted, const AppendOptions& opts,
                Diagnostics* diag) {
  SoftPath ins = inserted;
  if (opts.reverse) ins = reverse(ins);
  if (opts.transform) ins = transform(ins, *opts.transform);
  if (opts.move && !ins.empty()) {
    if (base.empty()) {
      warn(diag, "append: nothing to move onto, base path is empty");
    } else {
      const Point target = base.final_point();
      ins = translate(ins, target.x - ins.start().x, target.y - ins.start().y);
      ins.components.front().start = target;
    }
  }

  SoftPath out = base;
  auto first = ins.components.begin();
  if (opts.weld && !ins.empty()) {
    if (base.empty()) {
      warn(diag, "append: cannot weld onto an empty path");
    } else {
      weld_into(out.components.back(), *first);
      ++first;
    }
  }
  out.components.insert(out.components.end(), first, ins.components.end());
  return out;
}

std::string format_number(double v) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  if (ec != std::errc{}) return std::to_string(v);
  std::string s(buf, ptr);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace {

void component_lines(const Component& c, std::vector<std::string>& lines) {
  auto pt = [](Point p) { return format_number(p.x) + " " + format_number(p.y); };
  lines.push_back("M " + pt(c.start));
  for (const auto& seg : c.segments) {
    if (const auto* line = std::get_if<LineTo>(&seg)) {
      lines.push_back("L " + pt(line->to));
    } else {
      const auto& cubic = std::get<CubicTo>(seg);
      lines.push_back("C " + pt(cubic.c1) + " " + pt(cubic.c2) + " " + pt(cubic.to));
    }
  }
  if (c.closed) lines.push_back("Z");
}

}  // namespace

std::string serialize_component(const Component& c, char separator) {
  std::vector<std::string> lines;
  component_lines(c, lines);
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += separator;
    out += lines[i];
  }
  return out;
}

std::string serialize(const SoftPath& p, Diagnostics* diag) {
  if (p.empty()) {
    warn(diag, "show: path is empty");
    return {};
  }
  std::vector<std::string> lines;
  for (const auto& c : p.components) component_lines(c, lines);
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace softpath
