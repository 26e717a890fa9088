#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kinfront::experiments {

/// Invalid command-line or config-file input (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every knob of every subcommand. Zero-valued grid fields mean "use the
/// subcommand default"; validate() fills them in.
struct ExperimentConfig {
  std::string command;

  int n = 1;
  double tau = 1.0;
  std::vector<double> tau_grid;
  double epsilon = -1.0;  // < 0: subcommand default
  double delta = 0.2;
  int dim = 1;

  int nx = 0;
  double cfl = 0.0;
  double t_end = 0.0;
  double half_width = 0.0;

  // integrals
  std::vector<double> s_values;
  double mu = 1.0;
  long mc_samples = 1000000;

  // hamiltonian
  double pmin = 0.0;
  double pmax = 5.0;
  int steps = 51;

  // hydro-limit
  std::vector<double> p_values;

  std::string nonlinearity = "logistic-plus";
  std::string reaction = "local";
  bool sweep = false;
  std::vector<double> sweep_deltas;
  int cells_per_delta = 20;
  int profiles = 4;
  bool snapshots = false;

  bool quick = false;
  std::string out_dir = "kinfront_out";
  std::string emit = "csv";
  std::uint64_t seed = 20240917;

  nlohmann::json to_json() const;
};

/// Checks all numeric parameters against module preconditions and fills in
/// subcommand defaults. Throws ConfigError. Allocates nothing.
void validate(ExperimentConfig& config);

}  // namespace kinfront::experiments
