#include "softpath/svg.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace softpath {

namespace {

std::string escape_attribute(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  bool empty() const { return x0 > x1; }
};

// Control-point bounds: conservative for cubics.
Bounds control_bounds(const std::vector<NamedPath>& paths) {
  Bounds b;
  for (const auto& np : paths) {
    for (const auto& c : np.path.components) {
      b.add(c.start);
      for (const auto& seg : c.segments) {
        if (const auto* cubic = std::get_if<CubicTo>(&seg)) {
          b.add(cubic->c1);
          b.add(cubic->c2);
        }
        b.add(end_point(seg));
      }
    }
  }
  return b;
}

}  // namespace

std::string sanitize_class_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '_' || c == '-' || c == '.') ? c : '-';
  }
  if (out.empty() || !(std::isalpha(static_cast<unsigned char>(out[0])) || out[0] == '_')) out.insert(0, "_");
  return out;
}

std::string to_svg(const std::vector<NamedPath>& paths) {
  std::string view = "0 0 1 1";
  const Bounds b = control_bounds(paths);
  if (!b.empty()) {
    const double w = b.x1 - b.x0;
    const double h = b.y1 - b.y0;
    double extent = std::max(w, h);
    if (extent == 0) extent = 1;
    const double m = 0.05 * extent;
    // The content is drawn under scale(1,-1), so model y maps to -y.
    view = format_number(b.x0 - m) + " " + format_number(-b.y1 - m) + " " + format_number(w + 2 * m) + " " +
           format_number(h + 2 * m);
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << view << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";
  for (const auto& np : paths) {
    const std::string name = sanitize_class_name(np.name);
    out << "<g class=\"spath-path " << name << "-path\">\n";
    std::map<std::string, std::string> attributes{{"fill", "none"}, {"stroke", "black"}, {"stroke-width", "0.4"}};
    for (const auto& [k, v] : np.style.attributes) attributes[k] = v;
    for (std::size_t i = 0; i < np.path.components.size(); ++i) {
      const std::string n = std::to_string(i + 1);
      std::string classes = "every-spath-component spath-component-" + n + " every-" + name + "-component " +
                            name + "-component-" + n;
      for (const auto& extra : np.style.class_names) classes += " " + sanitize_class_name(extra);
      out << "<path class=\"" << classes << "\" d=\"" << serialize_component(np.path.components[i], ' ') << "\"";
      for (const auto& [k, v] : attributes) out << " " << k << "=\"" << escape_attribute(v) << "\"";
      out << "/>\n";
    }
    out << "</g>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace softpath
