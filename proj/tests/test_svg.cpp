#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "softpath/edit.hpp"
#include "softpath/parser.hpp"
#include "softpath/svg.hpp"

using namespace softpath;

TEST_CASE("empty document") {
  const std::string doc = to_svg({});
  CHECK(doc.find("viewBox=\"0 0 1 1\"") != std::string::npos);
  CHECK(oracles::XmlChecker(doc).well_formed());
}

TEST_CASE("single line") {
  const std::string doc = to_svg({{"a", fixtures::line({0, 0}, {1, 0}), {}}});
  CHECK(doc.find("d=\"M 0 0 L 1 0\"") != std::string::npos);
  CHECK(oracles::XmlChecker(doc).well_formed());
}

TEST_CASE("knot output has one element per component") {
  const SoftPath k = concat(knot(fixtures::trefoil(), 8, IndexList{1, 3, 5}, false));
  const std::string doc = to_svg({{"trefoil", k, {}}});
  CHECK(oracles::XmlChecker(doc).well_formed());
  const auto classes = oracles::attribute_values(doc, "class");
  int found = 0;
  for (int i = 1; i <= 3; ++i) {
    for (const auto& c : classes) found += c.find("trefoil-component-" + std::to_string(i) + " ") != std::string::npos ||
                                           c.ends_with("trefoil-component-" + std::to_string(i));
  }
  CHECK(found == 3);
  CHECK(oracles::attribute_values(doc, "d").size() == 3);
}

TEST_CASE("path data re-parses to the same components") {
  const SoftPath p = parse_path("M 0 0 L 1 0 C 1 1 2 1 2 0 Z M 5 5 L 6 5");
  const std::string doc = to_svg({{"p", p, {}}});
  const auto ds = oracles::attribute_values(doc, "d");
  REQUIRE(ds.size() == 2);
  CHECK(parse_path(ds[0]) == get_components(p)[0]);
  CHECK(parse_path(ds[1]) == get_components(p)[1]);
}

TEST_CASE("style and class names are escaped") {
  SvgStyle style;
  style.class_names = {"a<b"};
  style.attributes["stroke"] = "\"red\"";
  const std::string doc = to_svg({{"x y", fixtures::line({0, 0}, {1, 1}), style}});
  CHECK(oracles::XmlChecker(doc).well_formed());
  CHECK(sanitize_class_name("x y") == "x-y");
  CHECK(sanitize_class_name("1a").front() != '1');
}
