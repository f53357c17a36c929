#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "softpath/errors.hpp"
#include "softpath/path.hpp"

namespace softpath {

class ScriptParseError : public Error {
 public:
  ScriptParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Splits a script line into words; double quotes group, `#` starts a comment.
std::vector<std::string> tokenize_command(std::string_view line);

// Expands `1,3,...,9` style lists (arithmetic progressions via `...`).
std::vector<int> expand_index_list(std::string_view text);

// Interpreter over a named-path registry. Output of `show`, `point`, etc.
// goes to `out`; warnings go to `err`.
class Interpreter {
 public:
  Interpreter(std::filesystem::path out_dir, std::filesystem::path base_dir, std::ostream& out,
              std::ostream& err);

  // Throws ScriptParseError (bad verb, arity, numbers) and std::runtime_error
  // on I/O failure. Missing or empty paths only warn.
  void execute(std::string_view line, std::size_t line_number = 1);

  // Returns the process exit status: 0, 1 on parse error, 2 on I/O error.
  int run(std::string_view script);

  const Registry& registry() const { return registry_; }
  Registry& registry() { return registry_; }
  std::size_t warning_count() const { return warning_count_; }

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path base_dir_;
  std::ostream& out_;
  std::ostream& err_;
  Registry registry_;
  std::size_t warning_count_ = 0;

  friend struct CommandContext;
};

}  // namespace softpath
