#include "softpath/edit.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "softpath/hobby.hpp"
#include "softpath/intersect.hpp"
#include "softpath/param.hpp"

namespace softpath {

namespace {

// Valid, deduplicated 1-based indices in ascending order.
std::vector<int> checked_indices(const IndexList& indices, std::size_t limit, const char* what,
                                 Diagnostics* diag) {
  std::set<int> valid;
  for (int k : indices) {
    if (k < 1 || static_cast<std::size_t>(k) > limit) {
      warn(diag, std::string(what) + ": index " + std::to_string(k) + " out of range (1.." +
                     std::to_string(limit) + ")");
      continue;
    }
    valid.insert(k);
  }
  return {valid.begin(), valid.end()};
}

bool use_all(const std::optional<IndexList>& indices) { return !indices || indices->empty(); }

struct ComponentJunction {
  std::size_t before;
  std::size_t after;
};

void gap_junctions(SoftPath& p, const std::vector<ComponentJunction>& junctions, double amount,
                   Diagnostics* diag) {
  const double half = amount / 2;
  for (const auto& j : junctions) {
    Component& a = p.components[j.before];
    Component& b = p.components[j.after];
    if (a.closed || b.closed) {
      warn(diag, "gaps: closed component after index " + std::to_string(j.before + 1) + " skipped");
      continue;
    }
    bool ok = shorten_component_end(a, half);
    ok = shorten_component_start(p.components[j.after], half) && ok;
    if (!ok) warn(diag, "gaps: gap consumed a whole component near index " + std::to_string(j.before + 1));
  }
}

// Bridges component a's end to component b's start; nullopt skips.
using BridgeMaker = std::function<std::optional<SoftPath>(const Component&, const Component&)>;

SoftPath bridge_junctions(const SoftPath& p, const std::optional<IndexList>& indices,
                          const BridgeMaker& make, const char* what, Diagnostics* diag) {
  if (p.empty()) {
    warn(diag, std::string(what) + ": path is empty");
    return p;
  }
  const bool all = use_all(indices);
  SoftPath work = all ? spot_weld(p) : p;
  const std::size_t n = work.size();
  std::vector<int> ks;
  if (all) {
    for (std::size_t k = 1; k < n; ++k) ks.push_back(static_cast<int>(k));
  } else {
    ks = checked_indices(*indices, n, what, diag);
  }
  const bool wrap = !ks.empty() && static_cast<std::size_t>(ks.back()) == n;
  if (wrap) ks.pop_back();
  if (wrap && n < 2) warn(diag, std::string(what) + ": a single component cannot be joined to itself");

  auto bridge = [&](std::size_t a, std::size_t b) -> std::optional<SoftPath> {
    const Component& ca = work.components[a];
    const Component& cb = work.components[b];
    if (ca.closed || cb.closed) {
      warn(diag, std::string(what) + ": closed component at junction " + std::to_string(a + 1) + " skipped");
      return std::nullopt;
    }
    if (distance(ca.end(), cb.start) <= kSpanEpsilon) {
      warn(diag, std::string(what) + ": nothing to bridge at junction " + std::to_string(a + 1));
      return std::nullopt;
    }
    std::optional<SoftPath> piece = make(ca, cb);
    if (!piece) return std::nullopt;
    SoftPath merged = append(SoftPath{{ca}}, *piece, {.weld = true});
    return append(merged, SoftPath{{cb}}, {.weld = true});
  };

  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const auto a = static_cast<std::size_t>(*it - 1);
    auto merged = bridge(a, a + 1);
    if (!merged) continue;
    auto pos = work.components.begin() + static_cast<std::ptrdiff_t>(a);
    pos = work.components.erase(pos, pos + 2);
    work.components.insert(pos, merged->components.begin(), merged->components.end());
  }
  if (wrap && work.size() >= 2) {
    if (auto merged = bridge(work.size() - 1, 0)) {
      work.components.pop_back();
      work.components.erase(work.components.begin());
      work.components.insert(work.components.end(), merged->components.begin(), merged->components.end());
    }
  }
  return work;
}

Vec2 end_direction(const Component& c) {
  return tangent_on(c.segment_start(c.segments.size() - 1), c.segments.back(), 1.0);
}

Vec2 start_direction(const Component& c) { return tangent_on(c.start, c.segments.front(), 0.0); }

}  // namespace

Component reverse(const Component& c) {
  Component out{c.end(), {}, c.closed};
  out.segments.reserve(c.segments.size());
  for (std::size_t i = c.segments.size(); i-- > 0;) {
    const Point to = c.segment_start(i);
    if (const auto* cubic = std::get_if<CubicTo>(&c.segments[i])) {
      out.segments.push_back(CubicTo{cubic->c2, cubic->c1, to});
    } else {
      out.segments.push_back(LineTo{to});
    }
  }
  return out;
}

SoftPath reverse(const SoftPath& p) {
  SoftPath out;
  out.components.reserve(p.components.size());
  for (auto it = p.components.rbegin(); it != p.components.rend(); ++it) out.components.push_back(reverse(*it));
  return out;
}

SoftPath transform(const SoftPath& p, const Transform2D& t) {
  SoftPath out = p;
  for (auto& c : out.components) {
    c.start = t.apply(c.start);
    for (auto& seg : c.segments) seg = transformed(seg, t);
  }
  return out;
}

SoftPath translate(const SoftPath& p, double dx, double dy) {
  return transform(p, Transform2D::translation(dx, dy));
}

SoftPath span(const SoftPath& p, Point from, Point to) {
  if (p.empty()) throw EmptyPath("cannot span an empty path");
  SoftPath out = transform(p, similarity_from_endpoints(p.start(), p.final_point(), from, to));
  out.components.front().start = from;
  Component& last = out.components.back();
  if (!last.closed) {
    if (last.segments.empty()) {
      last.start = to;
    } else {
      std::visit([&](auto& seg) { seg.to = to; }, last.segments.back());
    }
  }
  return out;
}

SoftPath insert_gaps_components(const SoftPath& p, const GapSpec& g, Diagnostics* diag) {
  if (!(g.amount > 0)) throw InvalidRange("gap amount must be positive");
  if (p.empty()) {
    warn(diag, "gaps: path is empty");
    return p;
  }
  const std::size_t n = p.size();
  std::vector<ComponentJunction> junctions;
  if (use_all(g.indices)) {
    for (std::size_t k = 1; k < n; ++k) junctions.push_back({k - 1, k});
  } else {
    for (int k : checked_indices(*g.indices, n, "gaps", diag)) {
      const auto a = static_cast<std::size_t>(k - 1);
      junctions.push_back({a, (a + 1) % n});
    }
  }
  SoftPath out = p;
  gap_junctions(out, junctions, g.amount, diag);
  return out;
}

SoftPath insert_gaps_segments(const SoftPath& p, const GapSpec& g, Diagnostics* diag) {
  if (!(g.amount > 0)) throw InvalidRange("gap amount must be positive");
  const auto refs = countable_segments(p);
  if (refs.empty()) {
    warn(diag, "gaps: path has no segments");
    return p;
  }
  std::vector<int> slots;
  if (use_all(g.indices)) {
    for (std::size_t s = 1; s < refs.size(); ++s) slots.push_back(static_cast<int>(s));
  } else {
    slots = checked_indices(*g.indices, refs.size(), "gaps", diag);
  }

  std::vector<Break> breaks;
  std::vector<std::size_t> component_ends;  // open components whose last segment was listed
  for (int s : slots) {
    const SegmentRef& r = refs[static_cast<std::size_t>(s - 1)];
    const Component& c = p.components[r.component];
    const bool last_slot = !c.closed && r.index + 1 == c.segments.size();
    if (!last_slot) {
      breaks.push_back({static_cast<std::size_t>(s - 1), 1.0});
    } else if (r.component + 1 < p.size()) {
      component_ends.push_back(r.component);
    } else {
      warn(diag, "gaps: segment " + std::to_string(s) + " is not followed by another segment");
    }
  }

  const BreakResult broken = insert_breaks(p, breaks);
  std::vector<ComponentJunction> junctions;
  for (const auto& j : broken.junctions) junctions.push_back({j.before, j.after});
  for (std::size_t c : component_ends) {
    junctions.push_back({broken.spans[c].second - 1, broken.spans[c + 1].first});
  }
  SoftPath out = broken.path;
  gap_junctions(out, junctions, g.amount, diag);
  return out;
}

SoftPath join_components(const SoftPath& p, const IndexList& indices, Diagnostics* diag) {
  const std::vector<int> ks = checked_indices(indices, p.size(), "join", diag);
  SoftPath out = p;
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const auto k = static_cast<std::size_t>(*it);
    if (k == 1) {
      if (out.size() < 2) {
        warn(diag, "join: a single component cannot be joined to itself");
        continue;
      }
      weld_into(out.components.back(), out.components.front());
      out.components.erase(out.components.begin());
    } else {
      weld_into(out.components[k - 2], out.components[k - 1]);
      out.components.erase(out.components.begin() + static_cast<std::ptrdiff_t>(k - 1));
    }
  }
  return out;
}

SoftPath spot_weld(const SoftPath& p) {
  auto touching = [](const Component& a, const Component& b) {
    return !a.closed && !b.closed && distance(a.end(), b.start) <= kWeldTolerance + 1e-9;
  };
  SoftPath out;
  for (const auto& c : p.components) {
    if (!out.empty() && touching(out.components.back(), c)) {
      weld_into(out.components.back(), c);
    } else {
      out.components.push_back(c);
    }
  }
  while (out.size() >= 2 && touching(out.components.back(), out.components.front())) {
    Component merged = out.components.back();
    weld_into(merged, out.components.front());
    out.components.front() = std::move(merged);
    out.components.pop_back();
  }
  return out;
}

SoftPath remove_empty(const SoftPath& p) {
  SoftPath out;
  for (const auto& c : p.components) {
    if (!c.segments.empty()) out.components.push_back(c);
  }
  return out;
}

SoftPath remove_components(const SoftPath& p, const IndexList& indices, Diagnostics* diag) {
  const std::vector<int> ks = checked_indices(indices, p.size(), "remove", diag);
  SoftPath out = p;
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    out.components.erase(out.components.begin() + (*it - 1));
  }
  return out;
}

SoftPath open(const SoftPath& p) {
  SoftPath out = p;
  for (auto& c : out.components) c = opened(c, kWeldTolerance);
  return out;
}

SoftPath close(const SoftPath& p, const CloseMode& mode, Diagnostics* diag) {
  if (p.empty()) throw EmptyPath("cannot close an empty path");
  const Component& last = p.components.back();
  if (last.closed) {
    warn(diag, "close: last component is already closed");
    return p;
  }
  if (last.segments.empty()) throw EmptyPath("cannot close a component without segments");

  SoftPath out = p;
  Component& c = out.components.back();
  if (std::holds_alternative<ClosePlain>(mode)) {
    c.closed = true;
  } else if (std::holds_alternative<CloseAdjust>(mode)) {
    const Vec2 shift = c.start - c.end();
    if (auto* cubic = std::get_if<CubicTo>(&c.segments.back())) {
      cubic->c2 += shift;
      cubic->to = c.start;
    } else {
      c.segments.back() = LineTo{c.start};
    }
    c.closed = true;
  } else if (const auto* with = std::get_if<CloseWith>(&mode)) {
    if (with->splice.empty()) throw EmptyPath("close with: splice path is empty");
    if (with->splice.size() > 1) warn(diag, "close with: only the last splice component is closed");
    const SoftPath spanned = span(with->splice, c.end(), c.start);
    SoftPath merged = append(SoftPath{{c}}, spanned, {.weld = true});
    merged.components.back().closed = true;
    out.components.pop_back();
    out.components.insert(out.components.end(), merged.components.begin(), merged.components.end());
  } else {
    const CubicTo bridge = hobby_curve({c.end(), end_direction(c), c.start, start_direction(c)}, diag);
    c.segments.push_back(bridge);
    c.closed = true;
  }
  return out;
}

SoftPath join_with(const SoftPath& p, const SoftPath& splice_path, const std::optional<IndexList>& indices,
                   bool upright, Diagnostics* diag) {
  if (splice_path.empty()) {
    warn(diag, "join with: splice path is empty");
    return p;
  }
  auto make = [&](const Component& a, const Component& b) -> std::optional<SoftPath> {
    SoftPath piece = splice_path;
    const Point from = a.end();
    const Point to = b.start;
    try {
      if (upright && (to - from).dx < 0) {
        piece = transform(piece, Transform2D::reflection(piece.start(), piece.final_point()));
      }
      return span(piece, from, to);
    } catch (const DegenerateSpan& e) {
      warn(diag, std::string("join with: ") + e.what());
      return std::nullopt;
    }
  };
  return bridge_junctions(p, indices, make, "join with", diag);
}

SoftPath join_with_curve(const SoftPath& p, const std::optional<IndexList>& indices, Diagnostics* diag) {
  auto make = [&](const Component& a, const Component& b) -> std::optional<SoftPath> {
    if (a.segments.empty() || b.segments.empty()) {
      warn(diag, "join with curve: junction next to an empty component skipped");
      return std::nullopt;
    }
    try {
      const CubicTo curve = hobby_curve({a.end(), end_direction(a), b.start, start_direction(b)}, diag);
      return SoftPath{{Component{a.end(), {curve}, false}}};
    } catch (const Error& e) {
      warn(diag, std::string("join with curve: ") + e.what());
      return std::nullopt;
    }
  };
  return bridge_junctions(p, indices, make, "join with curve", diag);
}

SoftPath splice(const SoftPath& initial, const SoftPath& middle, const SoftPath& final_path,
                Diagnostics* diag) {
  if (initial.empty() || middle.empty() || final_path.empty()) {
    throw EmptyPath("splice needs non-empty initial, middle and final paths");
  }
  const SoftPath spanned = span(middle, initial.final_point(), final_path.start());
  SoftPath out = append(initial, spanned, {.weld = true}, diag);
  return append(out, final_path, {.weld = true}, diag);
}

std::vector<SoftPath> knot(const SoftPath& p, double gap, const std::optional<IndexList>& indices,
                           bool draft, Diagnostics* diag) {
  if (!(gap > 0)) throw InvalidRange("knot gap must be positive");
  SoftPath s = split_self(p);
  s = insert_gaps_components(s, {gap, indices}, diag);
  if (!draft) s = spot_weld(s);
  return get_components(s);
}

}  // namespace softpath
