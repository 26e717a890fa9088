#include "kinfront/experiments/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "kinfront/experiments/csv.hpp"

namespace kinfront::experiments {

void RunManifest::add_check(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

bool RunManifest::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::checks_failed: return "checks_failed";
    case RunStatus::runtime_error: return "runtime_error";
  }
  return "unknown";
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["artifact"] = kArtifactName;
  j["version"] = kArtifactVersion;
  j["command"] = command;
  j["config"] = config;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["status"] = to_string(status);
  if (!failure.empty()) j["failure"] = failure;
  nlohmann::json cs = nlohmann::json::array();
  int passed = 0;
  for (const Check& c : checks) {
    cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    passed += c.passed ? 1 : 0;
  }
  j["checks"] = cs;
  j["summary"] = {{"passed", passed}, {"failed", static_cast<int>(checks.size()) - passed}};
  j["outputs"] = outputs;
  j["results"] = results;
  return j;
}

void write_manifest_atomic(const RunManifest& manifest, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto final_path = dir / "manifest.json";
  const auto tmp_path = dir / "manifest.json.tmp";
  {
    std::ofstream out(tmp_path);
    if (!out) throw std::runtime_error("cannot write " + tmp_path.string());
    out << manifest.to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
}

}  // namespace kinfront::experiments
