#pragma once

#include <string>
#include <vector>

#include "workspace.hpp"

namespace idalc {

struct Options {
  std::size_t n_max = 8;
  long degree_bound = 6;
  int trace = 0;
  bool timings = false;
  std::string format = "json";
  std::vector<std::string> workspaces;
  std::vector<std::string> presets;
  std::string preset_dir;
  long n = 0, m = 0;
};

struct Outcome {
  int exit_code = 0;  // 0 true, 2 computed false, 1 input or computation error
  Json report;
};

extern const std::vector<std::string> kCommands;

Outcome run(const std::string& command, const std::vector<std::string>& args, const Options& opts);
Outcome run(const std::string& command, const std::vector<std::string>& args, const Options& opts, Workspace& ws);
std::string render(const Json& report, const std::string& format);

}  // namespace idalc
