#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace kinfront::experiments {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class RunStatus { ok, checks_failed, runtime_error };

struct RunManifest {
  nlohmann::json config;
  std::string command;
  double wall_clock_seconds = 0.0;
  RunStatus status = RunStatus::ok;
  std::string failure;
  std::vector<Check> checks;
  std::vector<std::string> outputs;  // relative to the output directory
  nlohmann::json results = nlohmann::json::object();

  void add_check(std::string name, bool passed, std::string detail = {});
  bool all_passed() const;
  nlohmann::json to_json() const;
};

std::string to_string(RunStatus s);

/// Writes dir/manifest.json through a temporary file and rename.
void write_manifest_atomic(const RunManifest& manifest, const std::filesystem::path& dir);

}  // namespace kinfront::experiments
