#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinfront/experiments/manifest.hpp"

namespace kinfront::experiments {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  double seconds = 0.0;
  double time_budget = 0.0;  // seconds; 0 when the criterion has none
  std::vector<Check> checks;
  std::vector<std::string> outputs;

  void check(std::string name, bool ok, std::string detail = {});
};

struct AcceptanceOptions {
  /// Formula-level criteria only; simulation criteria are reported as skipped.
  bool quick = false;
  /// CSV outputs go here when non-empty.
  std::filesystem::path out_dir;
  std::uint64_t seed = 20240917;
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 10;

struct MonteCarloMoment {
  double mean = 0.0;
  double sigma = 0.0;  // standard error of the mean
};

/// Estimates the sphere average of n (v.w)^2 from uniformly sampled v
/// (normalised Gaussian vectors).
MonteCarloMoment monte_carlo_second_moment(std::span<const double> w, long samples,
                                           std::uint64_t seed);

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  6  1-D front simulation  (12.3 s)  14/14 checks"
std::string summary_line(const CriterionResult& r);
/// Failed checks, one per line, indented.
std::string failure_details(const CriterionResult& r);

}  // namespace kinfront::experiments
