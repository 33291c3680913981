#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

#ifndef IDALC_PRESET_DIR
#define IDALC_PRESET_DIR "presets"
#endif

int main(int argc, char** argv) {
  CLI::App app{"idalc: idals, reflectors and two-chart gluing over polynomial rings"};
  idalc::Options opts;
  opts.preset_dir = IDALC_PRESET_DIR;
  std::string command;
  std::vector<std::string> args;
  app.add_option("command", command, "command to run")->required()->check(CLI::IsMember(idalc::kCommands));
  app.add_option("args", args, "names of workspace entries (or the demo name)");
  app.add_option("-w,--workspace", opts.workspaces, "JSON workspace file (repeatable)")->allow_extra_args(false);
  app.add_option("-p,--preset", opts.presets, "shipped preset workspace: p1, double-origin-line, double-origin-plane, line")->allow_extra_args(false);
  app.add_option("--preset-dir", opts.preset_dir, "directory holding the preset files");
  app.add_option("--n-max", opts.n_max, "largest idal power examined (1..64)");
  app.add_option("--degree-bound", opts.degree_bound, "degree window (0..50)");
  app.add_option("--trace", opts.trace, "detail level of chain reports (0..2)");
  app.add_option("--n", opts.n, "demo parameter");
  app.add_option("--m", opts.m, "second demo parameter");
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", opts.timings, "include wall-clock timings");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  auto out = idalc::run(command, args, opts);
  std::cout << idalc::render(out.report, opts.format);
  return out.exit_code;
}
