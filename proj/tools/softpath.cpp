// softpath: run path-manipulation scripts or evaluate a single command.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "softpath/script.hpp"

int main(int argc, char** argv) {
  CLI::App app{"2D soft path manipulation toolkit"};
  app.require_subcommand(1);

  std::string script_file;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "Execute a script file, one command per line");
  run->add_option("script", script_file, "Script file")->required();
  run->add_option("--out", out_dir, "Directory for SVG output");

  std::string command;
  auto* eval = app.add_subcommand("eval", "Execute a single command");
  eval->add_option("command", command, "Command line")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    std::ifstream in(script_file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << script_file << '\n';
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const auto base = std::filesystem::path(script_file).parent_path();
    softpath::Interpreter interp(out_dir, base.empty() ? "." : base, std::cout, std::cerr);
    return interp.run(buf.str());
  }
  softpath::Interpreter interp(".", ".", std::cout, std::cerr);
  return interp.run(command);
}
