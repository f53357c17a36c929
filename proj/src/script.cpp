#include "softpath/script.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "softpath/edit.hpp"
#include "softpath/intersect.hpp"
#include "softpath/param.hpp"
#include "softpath/parser.hpp"
#include "softpath/svg.hpp"

namespace softpath {

namespace {

// A command that cannot run because an input path is missing or empty.
struct Skip {
  std::string reason;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (s.size() > 2 && s.substr(s.size() - 2) == "pt") s.remove_suffix(2);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<std::string> tokenize_command(std::string_view line) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '\\' && i + 1 < line.size() && (line[i + 1] == '"' || line[i + 1] == '\\')) {
        cur += line[++i];
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
      in_word = true;
    } else if (c == '#') {
      break;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (quoted) throw ScriptParseError(0, "unterminated quote");
  if (in_word) words.push_back(std::move(cur));
  return words;
}

std::vector<int> expand_index_list(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ScriptParseError(0, "unbalanced braces in index list");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<int> out;
  if (text.empty()) return out;
  std::vector<std::string_view> items;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    items.push_back(trim(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == "...") {
      if (out.empty() || i + 1 >= items.size()) throw ScriptParseError(0, "'...' needs a start and an end");
      const auto last = to_int(items[i + 1]);
      if (!last) throw ScriptParseError(0, "bad index '" + std::string(items[i + 1]) + "'");
      const int step = out.size() >= 2 && items[i - 2] != "..." ? out.back() - out[out.size() - 2] : 1;
      if (step == 0) throw ScriptParseError(0, "zero step in index list");
      for (int k = out.back() + step; step > 0 ? k <= *last : k >= *last; k += step) out.push_back(k);
      if (out.back() != *last) out.push_back(*last);
      ++i;
      continue;
    }
    const auto v = to_int(items[i]);
    if (!v) throw ScriptParseError(0, "bad index '" + std::string(items[i]) + "'");
    out.push_back(*v);
  }
  return out;
}

// Per-command view of the arguments and the interpreter state.
struct CommandContext {
  Interpreter& in;
  std::string verb;
  std::vector<std::string> args;
  std::map<std::string, std::string> flags;
  std::size_t line;
  Diagnostics diag;

  [[noreturn]] void fail(const std::string& msg) const { throw ScriptParseError(line, verb + ": " + msg); }

  void arity(std::size_t lo, std::size_t hi) const {
    if (args.size() < lo || args.size() > hi) {
      fail(lo == hi ? "expects " + std::to_string(lo) + " argument(s)"
                    : "expects " + std::to_string(lo) + " to " + std::to_string(hi) + " arguments");
    }
  }
  void arity(std::size_t n) const { arity(n, n); }

  bool flag(const std::string& name) const { return flags.count(name) != 0; }

  double number(std::size_t i) const {
    const auto v = to_number(args[i]);
    if (!v) fail("'" + args[i] + "' is not a number");
    return *v;
  }

  Point point(std::size_t i) const {
    std::string_view s = trim(args[i]);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    const std::size_t comma = s.find(',');
    const auto x = comma == std::string_view::npos ? std::nullopt : to_number(s.substr(0, comma));
    const auto y = comma == std::string_view::npos ? std::nullopt : to_number(s.substr(comma + 1));
    if (!x || !y) fail("'" + args[i] + "' is not a point (x,y)");
    return {*x, *y};
  }

  std::optional<IndexList> indices(std::size_t i) const {
    if (i >= args.size()) return std::nullopt;
    try {
      return expand_index_list(args[i]);
    } catch (const ScriptParseError& e) {
      fail(std::string(e.what()).substr(std::string("line 0: ").size()));
    }
  }

  const SoftPath& path(std::size_t i) const {
    if (!in.registry_.contains(args[i])) throw Skip{"unknown path '" + args[i] + "'"};
    return in.registry_.lookup(args[i]);
  }

  const SoftPath& nonempty(std::size_t i) const {
    const SoftPath& p = path(i);
    if (p.empty()) throw Skip{"path '" + args[i] + "' is empty"};
    return p;
  }

  void store(std::size_t i, SoftPath p) { in.registry_.store(args[i], std::move(p)); }
  std::ostream& out() { return in.out_; }

  std::filesystem::path input_file(const std::string& name) const {
    std::filesystem::path f(name);
    return f.is_absolute() ? f : in.base_dir_ / f;
  }
  std::filesystem::path output_file(const std::string& name) const {
    std::filesystem::path f(name);
    return f.is_absolute() ? f : in.out_dir_ / f;
  }
};

namespace {

using Handler = std::function<void(CommandContext&)>;

// Commands of the form `verb name`, replacing name with f(name).
Handler unary(SoftPath (*f)(const SoftPath&)) {
  return [f](CommandContext& c) {
    c.arity(1);
    c.store(0, f(c.nonempty(0)));
  };
}

Handler shorten_cmd(PathEnd where) {
  return [where](CommandContext& c) {
    c.arity(2);
    const double len = c.number(1);
    c.store(0, shorten(c.nonempty(0), where, len, &c.diag));
  };
}

Handler keep_cmd(bool start) {
  return [start](CommandContext& c) {
    c.arity(2);
    const double t = c.number(1);
    c.store(0, keep(c.nonempty(0), start ? KeepMode{KeepStart{t}} : KeepMode{KeepEnd{t}}));
  };
}

Handler close_cmd(CloseMode mode) {
  return [mode](CommandContext& c) {
    c.arity(1);
    c.store(0, close(c.nonempty(0), mode, &c.diag));
  };
}

const std::map<std::string, Handler>& commands() {
  static const std::map<std::string, Handler> table = {
      {"load",
       [](CommandContext& c) {
         c.arity(2);
         c.store(0, parse_path(c.args[1]));
       }},
      {"loadfile",
       [](CommandContext& c) {
         c.arity(2);
         const auto file = c.input_file(c.args[1]);
         std::ifstream in(file);
         if (!in) throw IoError("cannot read " + file.string());
         std::stringstream buf;
         buf << in.rdbuf();
         c.store(0, parse_path(buf.str()));
       }},
      {"clone",
       [](CommandContext& c) {
         c.arity(2);
         c.store(0, c.path(1));
       }},
      {"show",
       [](CommandContext& c) {
         c.arity(1);
         c.out() << serialize(c.path(0), &c.diag);
       }},
      {"reverse", unary(&reverse)},
      {"translate",
       [](CommandContext& c) {
         c.arity(3);
         const double dx = c.number(1);
         const double dy = c.number(2);
         c.store(0, translate(c.nonempty(0), dx, dy));
       }},
      {"transform",
       [](CommandContext& c) {
         c.arity(2);
         const Transform2D t = parse_transform(c.args[1]);
         c.store(0, transform(c.nonempty(0), t));
       }},
      {"span",
       [](CommandContext& c) {
         c.arity(3);
         const Point a = c.point(1);
         const Point b = c.point(2);
         c.store(0, span(c.nonempty(0), a, b));
       }},
      {"splitself", unary(&split_self)},
      {"splitwith",
       [](CommandContext& c) {
         c.arity(2);
         c.store(0, split_with(c.nonempty(0), c.path(1)));
       }},
      {"splitboth",
       [](CommandContext& c) {
         c.arity(2);
         auto [a, b] = split_both(c.nonempty(0), c.nonempty(1));
         c.store(0, std::move(a));
         c.store(1, std::move(b));
       }},
      {"replacelines", unary(&replace_lines)},
      {"components",
       [](CommandContext& c) {
         c.arity(1);
         const auto parts = get_components(c.path(0));
         std::string names;
         for (std::size_t i = 0; i < parts.size(); ++i) {
           const std::string name = "anonymous_" + std::to_string(i + 1);
           c.in.registry().store(name, parts[i]);
           names += (i ? "," : "") + name;
         }
         c.out() << names << '\n';
       }},
      {"gaps",
       [](CommandContext& c) {
         c.arity(2, 3);
         const GapSpec g{c.number(1), c.indices(2)};
         c.store(0, insert_gaps_components(c.nonempty(0), g, &c.diag));
       }},
      {"gapsseg",
       [](CommandContext& c) {
         c.arity(2, 3);
         const GapSpec g{c.number(1), c.indices(2)};
         c.store(0, insert_gaps_segments(c.nonempty(0), g, &c.diag));
       }},
      {"join",
       [](CommandContext& c) {
         c.arity(2);
         const auto idx = c.indices(1);
         c.store(0, join_components(c.nonempty(0), *idx, &c.diag));
       }},
      {"joinwith",
       [](CommandContext& c) {
         c.arity(2, 3);
         const auto idx = c.indices(2);
         c.store(0, join_with(c.nonempty(0), c.nonempty(1), idx, c.flag("upright"), &c.diag));
       }},
      {"joinwithcurve",
       [](CommandContext& c) {
         c.arity(1, 2);
         const auto idx = c.indices(1);
         c.store(0, join_with_curve(c.nonempty(0), idx, &c.diag));
       }},
      {"spotweld", unary(&spot_weld)},
      {"removeempty", unary(&remove_empty)},
      {"remove",
       [](CommandContext& c) {
         c.arity(2);
         const auto idx = c.indices(1);
         c.store(0, remove_components(c.nonempty(0), *idx, &c.diag));
       }},
      {"open", unary(&open)},
      {"close", close_cmd(ClosePlain{})},
      {"adjustclose", close_cmd(CloseAdjust{})},
      {"closewithcurve", close_cmd(CloseWithCurve{})},
      {"closewith",
       [](CommandContext& c) {
         c.arity(2);
         c.store(0, close(c.nonempty(0), CloseWith{c.nonempty(1)}, &c.diag));
       }},
      {"splice",
       [](CommandContext& c) {
         c.arity(3);
         c.store(0, splice(c.nonempty(0), c.nonempty(1), c.nonempty(2), &c.diag));
       }},
      {"shortenstart", shorten_cmd(PathEnd::Start)},
      {"shortenend", shorten_cmd(PathEnd::End)},
      {"shortenboth", shorten_cmd(PathEnd::Both)},
      {"splitat",
       [](CommandContext& c) {
         c.arity(2);
         const double t = c.number(1);
         c.store(0, split_at(c.nonempty(0), t));
       }},
      {"splitinto",
       [](CommandContext& c) {
         c.arity(4);
         const double t = c.number(3);
         auto [a, b] = split_into(c.nonempty(2), t);
         c.store(0, std::move(a));
         c.store(1, std::move(b));
       }},
      {"keepstart", keep_cmd(true)},
      {"keepend", keep_cmd(false)},
      {"keepmiddle",
       [](CommandContext& c) {
         c.arity(3);
         const double t1 = c.number(1);
         const double t2 = c.number(2);
         c.store(0, keep(c.nonempty(0), KeepMiddle{t1, t2}));
       }},
      {"append",
       [](CommandContext& c) {
         c.arity(2);
         AppendOptions opts;
         opts.reverse = c.flag("reverse");
         opts.move = c.flag("move");
         opts.weld = c.flag("weld");
         if (c.flag("transform")) opts.transform = parse_transform(c.flags.at("transform"));
         c.store(0, append(c.path(0), c.nonempty(1), opts, &c.diag));
       }},
      {"point",
       [](CommandContext& c) {
         c.arity(2);
         const double t = c.number(1);
         const PathLocation loc = locate(c.nonempty(0), t);
         c.out() << format_number(loc.point.x) << ' ' << format_number(loc.point.y) << '\n';
       }},
      {"frame",
       [](CommandContext& c) {
         c.arity(2);
         const double t = c.number(1);
         const Frame f = frame_at(c.nonempty(0), t, c.flag("upright"));
         c.out() << format_number(f.origin.x) << ' ' << format_number(f.origin.y) << ' '
                 << format_number(f.angle_rad) << '\n';
       }},
      {"knot",
       [](CommandContext& c) {
         c.arity(2, 3);
         const double gap = c.number(1);
         const auto idx = c.indices(2);
         c.store(0, concat(knot(c.nonempty(0), gap, idx, c.flag("draft"), &c.diag)));
       }},
      {"svg",
       [](CommandContext& c) {
         if (c.args.size() < 2) c.fail("expects one or more path names and a file name");
         std::vector<NamedPath> paths;
         for (std::size_t i = 0; i + 1 < c.args.size(); ++i) {
           if (!c.in.registry().contains(c.args[i])) {
             c.diag.warn("unknown path '" + c.args[i] + "' not exported");
             continue;
           }
           paths.push_back({c.args[i], c.in.registry().lookup(c.args[i]), {}});
         }
         const auto file = c.output_file(c.args.back());
         std::ofstream out(file, std::ios::binary);
         out << to_svg(paths);
         if (!out) throw IoError("cannot write " + file.string());
       }},
  };
  return table;
}

const std::map<std::string, bool> kFlags = {
    {"upright", false}, {"draft", false}, {"reverse", false}, {"move", false}, {"weld", false}, {"transform", true},
};

}  // namespace

Interpreter::Interpreter(std::filesystem::path out_dir, std::filesystem::path base_dir, std::ostream& out,
                         std::ostream& err)
    : out_dir_(std::move(out_dir)), base_dir_(std::move(base_dir)), out_(out), err_(err) {}

void Interpreter::execute(std::string_view line, std::size_t line_number) {
  std::vector<std::string> words;
  try {
    words = tokenize_command(line);
  } catch (const ScriptParseError& e) {
    throw ScriptParseError(line_number, "unterminated quote");
  }
  if (words.empty()) return;

  CommandContext ctx{*this, words[0], {}, {}, line_number, {}};
  for (std::size_t i = 1; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.size() > 2 && w.rfind("--", 0) == 0) {
      const std::string name = w.substr(2);
      auto it = kFlags.find(name);
      if (it == kFlags.end()) ctx.fail("unknown option '" + w + "'");
      if (it->second) {
        if (i + 1 >= words.size()) ctx.fail("option '" + w + "' needs a value");
        ctx.flags[name] = words[++i];
      } else {
        ctx.flags[name] = "";
      }
    } else {
      ctx.args.push_back(w);
    }
  }

  const auto& table = commands();
  auto it = table.find(ctx.verb);
  if (it == table.end()) throw ScriptParseError(line_number, "unknown command '" + ctx.verb + "'");

  auto report = [&](const std::string& msg) {
    err_ << "warning: line " << line_number << ": " << ctx.verb << ": " << msg << '\n';
    ++warning_count_;
  };
  try {
    it->second(ctx);
  } catch (const Skip& s) {
    report(s.reason);
  } catch (const ParseError& e) {
    throw ScriptParseError(line_number, ctx.verb + ": " + e.what());
  } catch (const ScriptParseError&) {
    throw;
  } catch (const Error& e) {
    report(e.what());
  }
  for (const auto& w : ctx.diag.warnings()) report(w);
}

int Interpreter::run(std::string_view script) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= script.size()) {
    const std::size_t nl = script.find('\n', pos);
    const std::string_view line = script.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_number;
    try {
      execute(line, line_number);
    } catch (const ScriptParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return 1;
    } catch (const IoError& e) {
      err_ << "error: line " << line_number << ": " << e.what() << '\n';
      return 2;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return 0;
}

}  // namespace softpath
