#pragma once

// Subcommand implementations behind the ibmetric executable. Each command
// takes a fully resolved option struct and throws CliError on failure.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ibmetric/base_distances.hpp"
#include "ibmetric/integrated_ball.hpp"
#include "ibmetric/simulation.hpp"

namespace ibmetric::cli {

/// Parses "N:LO:HI" into N uniform values on [LO, HI].
std::vector<double> parse_eps_grid(const std::string& text);

/// Outlier list from per-parameter value lists (empty list = model default
/// value). Without any list the model's default outliers are used. A single
/// combination is repeated `n_outliers` times.
struct OutlierGrid {
  std::vector<double> h1, h2, w, p, t, h;
  std::size_t n_outliers = 4;
};
std::vector<OutlierParams> expand_outliers(ModelKind model, const OutlierGrid& grid);

struct SimulateOptions {
  ModelKind model = ModelKind::jump;
  OutlierGrid outliers;
  std::size_t n_base = 20;
  std::uint64_t seed = kDefaultMasterSeed;
  std::size_t grid_size = kDefaultGridSize;
  double bandwidth = kDefaultBandwidth;
  unsigned threads = 1;
  std::string out;
};
void cmd_simulate(const SimulateOptions& opt);

struct DistOptions {
  std::string in;
  std::string out;
  BaseDistance base;
  double epsilon = 0.0;
  double p = 2.0;
  double q = 2.0;
  unsigned threads = 1;
};
void cmd_dist(const DistOptions& opt);

struct ProfileOptions {
  std::string in;
  std::string out;
  std::string target;
  /// Cohort = curves whose label starts with this prefix, minus the target.
  std::string cohort_prefix;
  BaseDistance base;
  std::vector<double> epsilons = default_epsilon_grid();
  double p = 2.0;
  double q = 2.0;
  unsigned threads = 1;
};
void cmd_profile(const ProfileOptions& opt);

struct ReproduceOptions {
  ModelKind model = ModelKind::jump;
  OutlierGrid outliers;
  std::string out_dir;
  std::uint64_t seed = kDefaultMasterSeed;
  std::size_t n_base = 20;
  std::size_t grid_size = kDefaultGridSize;
  double bandwidth = kDefaultBandwidth;
  FrechetVariant variant = FrechetVariant::symmetric;
  std::vector<double> epsilons = default_epsilon_grid();
  double p = 2.0;
  double q = 2.0;
  unsigned threads = 1;
};
void cmd_reproduce(const ReproduceOptions& opt);

struct ConvergeOptions {
  std::string pair = "sine-shift";
  std::vector<std::size_t> sizes = {128, 256, 512, 1024, 2048, 4096};
  BaseDistance base;
  double epsilon = 0.3;
  double p = 2.0;
  double q = 2.0;
  WeightScheme weights = WeightScheme::uniform;
  unsigned threads = 1;
  std::string out;
};
void cmd_converge(const ConvergeOptions& opt);

/// Named analytic pairs for cmd_converge: "sine-shift" (sin 2pi t against
/// sin 2pi(t - 0.1)), "constant" (0 against 1), "identical" (sin 2pi t twice).
std::pair<FunctionRule, FunctionRule> analytic_pair(const std::string& name);

}  // namespace ibmetric::cli
