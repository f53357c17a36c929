#include "softpath/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "softpath/errors.hpp"

namespace softpath {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }

  void skip_separators() {
    while (!eof() && (std::isspace(static_cast<unsigned char>(peek())) || peek() == ',')) ++pos_;
  }

  void skip_spaces() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_number() {
    skip_separators();
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  double number(bool allow_pt_suffix = false) {
    skip_separators();
    const std::size_t begin = pos_;
    std::size_t i = pos_;
    auto digit = [&](std::size_t k) {
      return k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]));
    };
    if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
    bool mantissa = false;
    while (digit(i)) { ++i; mantissa = true; }
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      while (digit(i)) { ++i; mantissa = true; }
    }
    if (!mantissa) throw ParseError(begin, "expected a number");
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (digit(j)) {
        while (digit(j)) ++j;
        i = j;
      }
    }
    std::size_t first = begin;
    if (text_[first] == '+') ++first;
    double value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + first, text_.data() + i, value);
    if (ec != std::errc{} || ptr != text_.data() + i || !std::isfinite(value)) {
      throw ParseError(begin, "malformed number");
    }
    pos_ = i;
    if (allow_pt_suffix && text_.substr(pos_, 2) == "pt") pos_ += 2;
    return value;
  }

  bool flag() {
    skip_separators();
    const char c = peek();
    if (c != '0' && c != '1') throw ParseError(pos_, "expected an arc flag (0 or 1)");
    ++pos_;
    return c == '1';
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_command(char c) { return std::string_view("MmLlHhVvCcQqAaZz").find(c) != std::string_view::npos; }

class PathBuilder {
 public:
  void move_to(Point p) {
    path_.components.push_back(Component{p, {}, false});
    current_ = subpath_start_ = p;
  }

  void draw(Segment s, std::size_t offset) {
    if (path_.empty()) throw ParseError(offset, "path data must begin with a moveto");
    if (path_.components.back().closed) path_.components.push_back(Component{subpath_start_, {}, false});
    current_ = end_point(s);
    path_.components.back().segments.push_back(std::move(s));
  }

  void close(std::size_t offset) {
    if (path_.empty()) throw ParseError(offset, "path data must begin with a moveto");
    path_.components.back().closed = true;
    current_ = subpath_start_;
  }

  Point current() const { return current_; }
  SoftPath take() { return std::move(path_); }

 private:
  SoftPath path_;
  Point current_;
  Point subpath_start_;
};

double vector_angle_deg(double ux, double uy, double vx, double vy) {
  return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy) * 180.0 / std::numbers::pi;
}

// Endpoint arc parametrisation to cubics (SVG implementation notes F.6.5).
void append_arc(PathBuilder& builder, Point p1, double rx, double ry, double rotation_deg,
                bool large_arc, bool sweep, Point p2, std::size_t offset) {
  if (p1 == p2) return;
  rx = std::abs(rx);
  ry = std::abs(ry);
  if (rx == 0 || ry == 0) {
    builder.draw(LineTo{p2}, offset);
    return;
  }
  const double phi = degrees_to_radians(rotation_deg);
  const double cs = std::cos(phi);
  const double sn = std::sin(phi);
  const double hx = (p1.x - p2.x) / 2;
  const double hy = (p1.y - p2.y) / 2;
  const double x1p = cs * hx + sn * hy;
  const double y1p = -sn * hx + cs * hy;

  const double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
  if (lambda > 1) {
    const double s = std::sqrt(lambda);
    rx *= s;
    ry *= s;
  }
  const double rx2 = rx * rx;
  const double ry2 = ry * ry;
  const double num = rx2 * ry2 - rx2 * y1p * y1p - ry2 * x1p * x1p;
  const double den = rx2 * y1p * y1p + ry2 * x1p * x1p;
  double coef = den > 0 ? std::sqrt(std::max(0.0, num / den)) : 0.0;
  if (large_arc == sweep) coef = -coef;
  const double cxp = coef * rx * y1p / ry;
  const double cyp = -coef * ry * x1p / rx;
  const Point center{cs * cxp - sn * cyp + (p1.x + p2.x) / 2, sn * cxp + cs * cyp + (p1.y + p2.y) / 2};

  const double ux = (x1p - cxp) / rx;
  const double uy = (y1p - cyp) / ry;
  const double vx = (-x1p - cxp) / rx;
  const double vy = (-y1p - cyp) / ry;
  const double theta1 = vector_angle_deg(1, 0, ux, uy);
  double delta = std::fmod(vector_angle_deg(ux, uy, vx, vy), 360.0);
  if (!sweep && delta > 0) delta -= 360;
  if (sweep && delta < 0) delta += 360;

  auto pieces = arc_to_cubics(center, rx, ry, theta1, theta1 + delta, rotation_deg);
  if (pieces.empty()) return;
  pieces.back().to = p2;
  for (const auto& piece : pieces) builder.draw(CubicTo{piece.c1, piece.c2, piece.to}, offset);
}

}  // namespace

SoftPath parse_path(std::string_view input) {
  Scanner sc(input);
  PathBuilder builder;
  char cmd = 0;
  while (true) {
    sc.skip_separators();
    if (sc.eof()) break;
    const std::size_t offset = sc.pos();
    bool repeat = false;
    if (std::isalpha(static_cast<unsigned char>(sc.peek()))) {
      if (!is_command(sc.peek())) throw ParseError(offset, std::string("unknown command '") + sc.peek() + "'");
      cmd = sc.peek();
      sc.advance();
    } else if (cmd == 0 || cmd == 'Z' || cmd == 'z') {
      throw ParseError(offset, "expected a path command");
    } else {
      repeat = true;
    }
    const bool rel = std::islower(static_cast<unsigned char>(cmd));
    const Point cur = builder.current();
    auto point = [&]() {
      const double x = sc.number();
      const double y = sc.number();
      return rel ? Point{cur.x + x, cur.y + y} : Point{x, y};
    };

    switch (std::toupper(static_cast<unsigned char>(cmd))) {
      case 'M': {
        const Point p = point();
        if (repeat) builder.draw(LineTo{p}, offset);
        else builder.move_to(p);
        break;
      }
      case 'L':
        builder.draw(LineTo{point()}, offset);
        break;
      case 'H': {
        const double x = sc.number();
        builder.draw(LineTo{{rel ? cur.x + x : x, cur.y}}, offset);
        break;
      }
      case 'V': {
        const double y = sc.number();
        builder.draw(LineTo{{cur.x, rel ? cur.y + y : y}}, offset);
        break;
      }
      case 'C': {
        const Point c1 = point();
        const Point c2 = point();
        const Point to = point();
        builder.draw(CubicTo{c1, c2, to}, offset);
        break;
      }
      case 'Q': {
        const Point q = point();
        const Point to = point();
        builder.draw(CubicTo{cur + (q - cur) * (2.0 / 3.0), to + (q - to) * (2.0 / 3.0), to}, offset);
        break;
      }
      case 'A': {
        const double rx = sc.number();
        const double ry = sc.number();
        const double rotation = sc.number();
        const bool large = sc.flag();
        const bool sweep = sc.flag();
        const Point to = point();
        append_arc(builder, cur, rx, ry, rotation, large, sweep, to, offset);
        break;
      }
      case 'Z':
        builder.close(offset);
        break;
    }
  }
  return builder.take();
}

Transform2D parse_transform(std::string_view input) {
  Scanner sc(input);
  Transform2D result;
  while (true) {
    sc.skip_separators();
    if (sc.eof()) break;
    const std::size_t begin = sc.pos();
    std::string name;
    while (!sc.eof() && std::isalpha(static_cast<unsigned char>(sc.peek()))) {
      name += sc.peek();
      sc.advance();
    }
    if (name.empty()) throw ParseError(begin, "expected a transformation name");
    sc.skip_spaces();
    if (sc.peek() != '(') throw ParseError(sc.pos(), "expected '('");
    sc.advance();
    std::vector<double> args;
    while (true) {
      sc.skip_separators();
      if (sc.peek() == ')') {
        sc.advance();
        break;
      }
      if (sc.eof()) throw ParseError(sc.pos(), "unterminated argument list");
      args.push_back(sc.number(true));
    }
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        throw ParseError(begin, name + " takes " + std::to_string(n) + " argument(s)");
      }
    };
    Transform2D step;
    if (name == "shift") {
      arity(2);
      step = Transform2D::translation(args[0], args[1]);
    } else if (name == "rotate") {
      arity(1);
      step = Transform2D::rotation_degrees(args[0]);
    } else if (name == "scale") {
      arity(1);
      step = Transform2D::scaling(args[0], args[0]);
    } else if (name == "xscale") {
      arity(1);
      step = Transform2D::scaling(args[0], 1);
    } else if (name == "yscale") {
      arity(1);
      step = Transform2D::scaling(1, args[0]);
    } else {
      throw ParseError(begin, "unknown transformation '" + name + "'");
    }
    result = result.then(step);
  }
  return result;
}

}  // namespace softpath
