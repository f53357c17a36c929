#pragma once

#include <map>
#include <string>
#include <vector>

#include "softpath/path.hpp"

namespace softpath {

struct SvgStyle {
  std::vector<std::string> class_names;
  std::map<std::string, std::string> attributes;
};

struct NamedPath {
  std::string name;
  SoftPath path;
  SvgStyle style;
};

// SVG 1.1 document, one <path> per component, y axis pointing up.
std::string to_svg(const std::vector<NamedPath>& paths);

// Turns an arbitrary string into an XML NCName usable as a class name.
std::string sanitize_class_name(const std::string& name);

}  // namespace softpath
