#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "softpath/hobby.hpp"
#include "softpath/intersect.hpp"
#include "softpath/script.hpp"
#include "softpath/svg.hpp"

using namespace softpath;

TEST_CASE("reverse is an involution") {
  fixtures::PathGen gen(11);
  CHECK(properties::reverse_involution(gen, 500) == 0);
}

TEST_CASE("parse inverts serialize") {
  fixtures::PathGen gen(12);
  CHECK(properties::parse_serialize_identity(gen, 500) == 0);
}

TEST_CASE("split keeps the trace") {
  fixtures::PathGen gen(13);
  CHECK(properties::split_preserves_trace(gen, 500) == 0);
}

TEST_CASE("spot weld is idempotent") {
  fixtures::PathGen gen(14);
  CHECK(properties::spot_weld_idempotent(gen, 500) == 0);
}

TEST_CASE("transforms compose") {
  fixtures::PathGen gen(15);
  CHECK(properties::transform_composition(gen, 500) == 0);
}

TEST_CASE("components and concat are inverse") {
  fixtures::PathGen gen(16);
  CHECK(properties::components_round_trip(gen, 500) == 0);
}

TEST_CASE("located points lie on their segment") {
  fixtures::PathGen gen(17);
  for (int i = 0; i < 500; ++i) {
    const SoftPath p = gen.path();
    const PathLocation loc = locate(p, gen.unit());
    const auto refs = countable_segments(p);
    REQUIRE(loc.segment_index <= refs.size());
    const auto& ref = refs[loc.segment_index - 1];
    CHECK(distance(loc.point, point_on(ref.start, ref.segment, loc.local_t)) <= 1e-12);
  }
}

TEST_CASE("split pieces keep the segment count and never lose components") {
  fixtures::PathGen gen(18);
  for (int i = 0; i < 300; ++i) {
    const SoftPath p = gen.path();
    const SoftPath s = split_at(p, gen.unit());
    CHECK(s.size() >= p.size());
    CHECK(s.size() <= p.size() + 1);
  }
}

TEST_CASE("reported hits meet and come sorted") {
  fixtures::PathGen gen(19);
  for (int i = 0; i < 200; ++i) {
    const SoftPath p = gen.path();
    const SoftPath q = gen.path();
    const auto hits = path_intersections(p, q);
    const auto pa = countable_segments(p);
    const auto qb = countable_segments(q);
    for (std::size_t k = 0; k < hits.size(); ++k) {
      const auto& h = hits[k];
      const Point a = point_on(pa[h.seg_a - 1].start, pa[h.seg_a - 1].segment, h.t_a);
      const Point b = point_on(qb[h.seg_b - 1].start, qb[h.seg_b - 1].segment, h.t_b);
      CHECK(distance(a, b) < kHitTolerance);
      if (k > 0) {
        const auto& g = hits[k - 1];
        CHECK((g.seg_a < h.seg_a || (g.seg_a == h.seg_a && g.t_a <= h.t_a)));
      }
    }
  }
}

TEST_CASE("intersection is deterministic") {
  fixtures::PathGen gen(20);
  for (int i = 0; i < 50; ++i) {
    const SoftPath p = gen.path();
    const SoftPath q = gen.path();
    const auto a = path_intersections(p, q);
    const auto b = path_intersections(p, q);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].t_a == b[k].t_a);
      CHECK(a[k].t_b == b[k].t_b);
    }
  }
}

TEST_CASE("splitting at crossings preserves geometry") {
  fixtures::PathGen gen(21);
  for (int i = 0; i < 100; ++i) {
    const SoftPath p = gen.path();
    const SoftPath q = gen.path();
    const SoftPath s = split_with(p, q);
    CHECK(s.size() >= p.size());
    if (!p.components[0].closed) CHECK(s.start() == p.start());
  }
}

TEST_CASE("similarities hit both endpoints and keep the similarity form") {
  fixtures::PathGen gen(30);
  for (int i = 0; i < 500; ++i) {
    const Point p0 = gen.point(), p1 = gen.point(), q0 = gen.point(), q1 = gen.point();
    if (distance(p0, p1) <= kSpanEpsilon) continue;
    const Transform2D t = similarity_from_endpoints(p0, p1, q0, q1);
    CHECK(distance(t.apply(p0), q0) < 1e-9);
    CHECK(distance(t.apply(p1), q1) < 1e-9);
    CHECK(t.a == doctest::Approx(t.d).epsilon(1e-12));
    CHECK(t.b == doctest::Approx(-t.c).epsilon(1e-12));
  }
}

TEST_CASE("transforms respect convex combinations") {
  fixtures::PathGen gen(31);
  for (int i = 0; i < 500; ++i) {
    const Transform2D t = Transform2D::rotation_degrees(gen.unit() * 360)
                              .then(Transform2D::scaling(gen.coord(), gen.coord()))
                              .then(Transform2D::translation(gen.coord(), gen.coord()));
    const Point p = gen.point(), q = gen.point();
    const double l = gen.unit();
    const Point lhs = t.apply(lerp(q, p, l));
    const Point rhs = lerp(t.apply(q), t.apply(p), l);
    CHECK(distance(lhs, rhs) < 1e-12 * std::max(1.0, norm(rhs - Point{0, 0})));
  }
}

TEST_CASE("plain append is associative") {
  fixtures::PathGen gen(32);
  for (int i = 0; i < 500; ++i) {
    const SoftPath a = gen.path(), b = gen.path(), c = gen.path();
    CHECK(append(append(a, b, {}), c, {}) == append(a, append(b, c, {}), {}));
  }
}

namespace {

// Relative-command rendering of an integer-coordinate path.
std::string relative_form(const SoftPath& p) {
  std::string s;
  Point at{0, 0};
  auto rel = [&](Point q) {
    return format_number(q.x - at.x) + " " + format_number(q.y - at.y) + " ";
  };
  for (const auto& c : p.components) {
    s += "m " + rel(c.start);
    at = c.start;
    for (const auto& seg : c.segments) {
      if (const auto* l = std::get_if<LineTo>(&seg)) {
        s += "l " + rel(l->to);
        at = l->to;
      } else {
        const auto& cu = std::get<CubicTo>(seg);
        s += "c " + rel(cu.c1) + rel(cu.c2) + rel(cu.to);
        at = cu.to;
      }
    }
    if (c.closed) {
      s += "z ";
      at = c.start;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("relative and absolute forms parse alike") {
  fixtures::PathGen gen(33);
  for (int i = 0; i < 500; ++i) {
    SoftPath p = gen.path();
    p = transform(p, Transform2D::scaling(1000, 1000));
    for (auto& c : p.components) {
      c.start = {std::round(c.start.x), std::round(c.start.y)};
      for (auto& s : c.segments) {
        std::visit([](auto& seg) {
          if constexpr (std::is_same_v<std::decay_t<decltype(seg)>, CubicTo>) {
            seg.c1 = {std::round(seg.c1.x), std::round(seg.c1.y)};
            seg.c2 = {std::round(seg.c2.x), std::round(seg.c2.y)};
          }
          seg.to = {std::round(seg.to.x), std::round(seg.to.y)};
        }, s);
      }
    }
    CHECK(parse_path(relative_form(p)) == parse_path(serialize(p)));
  }
}

TEST_CASE("original trace is covered by the split path") {
  fixtures::PathGen gen(34);
  for (int i = 0; i < 20; ++i) {
    const SoftPath p = gen.path();
    std::vector<Bezier> pieces;
    for (const auto& ref : countable_segments(split_at(p, gen.unit()))) pieces.push_back(to_bezier(ref.start, ref.segment));
    const auto refs = countable_segments(p);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const double t = k / 999.0;
      const PathLocation loc = locate(p, t);
      const auto& ref = refs[loc.segment_index - 1];
      const Bezier o = to_bezier(ref.start, ref.segment);
      if (std::find(pieces.begin(), pieces.end(), o) != pieces.end()) continue;
      double best = INFINITY;
      for (const auto& b : pieces) best = std::min(best, properties::nearest_distance(b, loc.point));
      worst = std::max(worst, best);
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("segment boundaries locate to the earlier segment") {
  fixtures::PathGen gen(35);
  for (int i = 0; i < 500; ++i) {
    const SoftPath p = gen.path();
    const std::size_t n = p.segment_count();
    for (std::size_t k = 1; k < n; ++k) {
      const PathLocation loc = locate(p, static_cast<double>(k) / static_cast<double>(n));
      CHECK(loc.segment_index == k);
      CHECK(loc.local_t == 1.0);
    }
  }
}

TEST_CASE("upright frames never point down the page") {
  fixtures::PathGen gen(36);
  for (int i = 0; i < 500; ++i) {
    const Frame f = frame_at(gen.path(), gen.unit(), true);
    CHECK(std::cos(f.angle_rad) >= -1e-12);
  }
}

TEST_CASE("repeated shortening trims at least as much as one step") {
  fixtures::PathGen gen(37);
  auto length = [](const SoftPath& p) {
    double total = 0;
    for (const auto& ref : countable_segments(p)) {
      const Bezier b = to_bezier(ref.start, ref.segment);
      total += oracles::chord_length({b.p0, b.p1, b.p2, b.p3}, 0, 1, 2000);
    }
    return total;
  };
  for (int i = 0; i < 200; ++i) {
    const SoftPath p = fixtures::SoftPath{{gen.component()}};
    if (p.components[0].closed) continue;
    const double full = length(p);
    const double a = 0.05 * full * gen.unit(), b = 0.05 * full * gen.unit();
    const double twice = full - length(shorten(shorten(p, PathEnd::Start, a), PathEnd::Start, b));
    const double once = full - length(shorten(p, PathEnd::Start, a + b));
    CHECK(twice >= 0.9 * once);
  }
}

TEST_CASE("split_with and split_self keep the trace") {
  fixtures::PathGen gen(38);
  for (int i = 0; i < 60; ++i) {
    const SoftPath p = gen.path();
    std::vector<Bezier> originals;
    for (const auto& ref : countable_segments(p)) originals.push_back(to_bezier(ref.start, ref.segment));
    for (const SoftPath& s : {split_with(p, gen.path()), split_self(p)}) {
      double worst = 0;
      for (const auto& ref : countable_segments(s)) {
        const Bezier b = to_bezier(ref.start, ref.segment);
        if (std::find(originals.begin(), originals.end(), b) != originals.end()) continue;
        for (int k = 0; k <= 10; ++k) {
          double best = INFINITY;
          for (const auto& o : originals) best = std::min(best, properties::nearest_distance(o, b.eval(k / 10.0)));
          worst = std::max(worst, best);
        }
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("split_self adds one component per interior break") {
  fixtures::PathGen gen(39);
  for (int i = 0; i < 300; ++i) {
    const SoftPath p{{gen.component()}};
    // Break parameters closer than the dedup tolerance on one segment merge.
    std::vector<std::pair<std::size_t, double>> breaks;
    for (const auto& h : self_intersections(p)) {
      for (auto b : {std::pair{h.seg_a, h.t_a}, std::pair{h.seg_b, h.t_b}}) {
        bool seen = false;
        for (const auto& e : breaks) seen = seen || (e.first == b.first && std::abs(e.second - b.second) < kDedupTolerance);
        if (!seen) breaks.push_back(b);
      }
    }
    const std::size_t m = breaks.size();
    const std::size_t expected = p.components[0].closed ? std::max<std::size_t>(m, 1) : m + 1;
    CHECK(split_self(p).size() == expected);
  }
}

TEST_CASE("edits keep counts and closed flags") {
  fixtures::PathGen gen(40);
  auto shape = [](const SoftPath& p) {
    std::vector<std::pair<std::size_t, bool>> s;
    for (const auto& c : p.components) s.emplace_back(c.segments.size(), c.closed);
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    const SoftPath p = gen.path();
    CHECK(shape(translate(p, gen.coord(), gen.coord())) == shape(p));
    CHECK(shape(transform(p, Transform2D::rotation_degrees(gen.unit() * 360))) == shape(p));
    if (distance(p.start(), p.final_point()) > kSpanEpsilon) CHECK(shape(span(p, gen.point(), gen.point())) == shape(p));
  }
}

TEST_CASE("gaps then join on the same junctions restores the count") {
  fixtures::PathGen gen(41);
  for (int i = 0; i < 300; ++i) {
    SoftPath p;
    const int n = gen.integer(2, 5);
    for (int k = 0; k < n; ++k) {
      Component c = gen.component();
      c.closed = false;
      p.components.push_back(c);
    }
    const int k = gen.integer(1, n - 1);
    const SoftPath gapped = insert_gaps_components(p, {0.01, IndexList{k}});
    CHECK(join_components(gapped, IndexList{k + 1}).size() == p.size() - 1);
    CHECK(join_components(p, IndexList{k + 1}).size() == p.size() - 1);
  }
}

TEST_CASE("knot renders one component per gapped junction") {
  // Spot welding merges every unbroken junction of the closed curve, so only
  // gapped junctions survive as component breaks.
  const SoftPath t = fixtures::trefoil();
  CHECK(knot(t, 8, IndexList{1, 3, 5}, false).size() == 3);
  CHECK(knot(t, 8, IndexList{2, 4, 6}, false).size() == 3);
  CHECK(knot(t, 8, IndexList{1, 3}, false).size() == 2);
  CHECK(knot(t, 8, IndexList{1, 2, 3, 4, 5, 6}, false).size() == 6);
}

TEST_CASE("Hobby curves commute with similarities") {
  fixtures::PathGen gen(42);
  for (int i = 0; i < 500; ++i) {
    const HobbyJoin j{gen.point(), gen.point() - Point{0, 0}, gen.point(), gen.point() - Point{0, 0}};
    if (distance(j.p0, j.p1) <= kSpanEpsilon || norm(j.dir0) == 0 || norm(j.dir1) == 0) continue;
    const Transform2D t = similarity_from_endpoints({0, 0}, {1, 0}, gen.point(), gen.point());
    const CubicTo a = hobby_curve({t.apply(j.p0), t.apply(j.dir0), t.apply(j.p1), t.apply(j.dir1)});
    const CubicTo b = hobby_curve(j);
    const double scale = std::max(1.0, std::sqrt(std::abs(t.determinant())) * 20);
    CHECK(distance(a.c1, t.apply(b.c1)) < 1e-9 * scale);
    CHECK(distance(a.c2, t.apply(b.c2)) < 1e-9 * scale);
  }
}

TEST_CASE("velocity is positive for moderate angles") {
  for (double th = -1.5; th <= 1.5; th += 0.05) {
    for (double ph = -1.5; ph <= 1.5; ph += 0.05) CHECK(hobby_velocity(th, ph) > 0);
  }
}

TEST_CASE("emitted path data re-parses to each component") {
  fixtures::PathGen gen(43);
  for (int i = 0; i < 200; ++i) {
    const SoftPath p = gen.path();
    const std::string doc = to_svg({{"p", p, {}}});
    CHECK(oracles::XmlChecker(doc).well_formed());
    const auto ds = oracles::attribute_values(doc, "d");
    const auto parts = get_components(p);
    REQUIRE(ds.size() == parts.size());
    for (std::size_t k = 0; k < ds.size(); ++k) CHECK(parse_path(ds[k]) == parts[k]);
  }
}

TEST_CASE("scripts are deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "softpath-determinism";
  std::filesystem::create_directories(dir);
  std::string trefoil = serialize(fixtures::trefoil());
  std::replace(trefoil.begin(), trefoil.end(), '\n', ' ');
  const std::string script = "load k \"" + trefoil + "\"\nsplitself k\nshow k\nknot k 8 1,3,5\nshow k\nsvg k out.svg\n";
  std::string dumps[2], svgs[2];
  for (int run = 0; run < 2; ++run) {
    std::ostringstream out, err;
    Interpreter interp(dir, dir, out, err);
    CHECK(interp.run(script) == 0);
    dumps[run] = out.str();
    std::ifstream in(dir / "out.svg");
    std::stringstream buf;
    buf << in.rdbuf();
    svgs[run] = buf.str();
  }
  CHECK(dumps[0] == dumps[1]);
  CHECK(svgs[0] == svgs[1]);
  CHECK(!svgs[0].empty());
}
