#pragma once

// Seeded simulation of the four outlier models: an exponential-covariance
// Gaussian process, a Nadaraya-Watson smoother, and base/outlier generators.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ibmetric/core.hpp"
#include "ibmetric/dataset.hpp"

namespace ibmetric {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of stream `index` under `master`: mix64(master ^ mix64(index)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct GPConfig {
  std::shared_ptr<const Grid> grid;
  std::uint64_t seed = 0;
  double jitter = 1e-10;
};

/// Centred process with covariance exp(-|s - t|) on a fixed grid. The
/// Cholesky factor is computed once; the diagonal jitter is raised tenfold
/// per failed attempt up to 1e-6, after which NumericFailure is thrown.
class GaussianProcess {
 public:
  explicit GaussianProcess(std::shared_ptr<const Grid> grid, double jitter = 1e-10);

  const std::shared_ptr<const Grid>& grid() const noexcept { return grid_; }
  double jitter_used() const noexcept { return jitter_; }

  /// L z with z drawn from std::normal_distribution over mt19937_64(seed).
  std::vector<double> sample(std::uint64_t seed) const;
  std::vector<double> sample(std::mt19937_64& rng) const;

 private:
  std::shared_ptr<const Grid> grid_;
  double jitter_;
  std::vector<double> lower_;  // packed rows of the lower factor
};

SampledFunction sample_gp(const GPConfig& cfg);

/// out_k = sum_j K_h(t_k - t_j) v_j / sum_j K_h(t_k - t_j), K_h(u) = exp(-u^2 / 2h^2).
std::vector<double> gaussian_smooth(std::span<const double> values, const Grid& grid,
                                    double bandwidth);

/// Linear interpolation through knots with increasing x; constant outside.
double interpolate_knots(std::span<const std::pair<double, double>> knots, double x);

inline constexpr std::size_t kDefaultGridSize = 201;
inline constexpr double kDefaultBandwidth = 0.02;
inline constexpr std::uint64_t kDefaultMasterSeed = 1729;

/// Shared state for generating curves on one grid.
class ModelContext {
 public:
  explicit ModelContext(std::shared_ptr<const Grid> grid, double bandwidth = kDefaultBandwidth);
  explicit ModelContext(std::size_t grid_size = kDefaultGridSize,
                        double bandwidth = kDefaultBandwidth);

  const std::shared_ptr<const Grid>& grid() const noexcept { return gp_.grid(); }
  const GaussianProcess& gp() const noexcept { return gp_; }
  double bandwidth() const noexcept { return bandwidth_; }

  /// Smoothed interpolant of (0,0), (P,6), (1,0).
  std::vector<double> peak_template(double peak) const;
  /// Smoothed interpolant of (0,2), (0.2,3), (1,0).
  const std::vector<double>& misalignment_template() const noexcept { return misaligned_; }

 private:
  GaussianProcess gp_;
  double bandwidth_;
  std::vector<double> misaligned_;
};

/// 4t + e(t), plus h1 on t > 0.7 for an outlier.
SampledFunction model1_curve(const ModelContext& ctx, bool is_outlier, double h1,
                             std::uint64_t seed);

/// 4t + e(t), plus h2 on |t - 0.5| <= w for an outlier.
SampledFunction model2_curve(const ModelContext& ctx, bool is_outlier, double h2, double w,
                             std::uint64_t seed);

/// S_P(t) + 0.9 e(t).
SampledFunction model3_curve(const ModelContext& ctx, double peak, std::uint64_t seed);

/// S(t) + 0.25 e(t) away from T, a linear spike to height H within 0.06 of T.
/// A base curve draws T ~ U[0.7, 0.85] then H ~ U[3, 4] from the seed's
/// stream before the noise; an outlier uses the given T and H.
SampledFunction model4_curve(const ModelContext& ctx, bool is_outlier, double t_peak,
                             double height, std::uint64_t seed);

enum class ModelKind { jump = 1, peak = 2, phase = 3, misalignment = 4 };

std::string to_string(ModelKind kind);
/// Accepts "1".."4" or jump / peak / phase / misalignment.
ModelKind parse_model_kind(const std::string& text);

struct JumpParams {
  double h1 = 2.0;
};
struct PeakParams {
  double h2 = 3.0;
  double w = 0.1;
};
struct PhaseParams {
  double p = 0.7;
};
struct MisalignmentParams {
  double t = 0.3;
  double h = 3.5;
};

using OutlierParams = std::variant<JumpParams, PeakParams, PhaseParams, MisalignmentParams>;

ModelKind kind_of(const OutlierParams& params);
std::string describe(const OutlierParams& params);

/// One curve: model, outlier flag, parameters (ignored for base curves) and
/// the seed of its random stream.
struct ModelSpec {
  ModelKind kind = ModelKind::jump;
  bool is_outlier = false;
  OutlierParams params = JumpParams{};
  std::uint64_t seed = 0;
};

SampledFunction generate_curve(const ModelContext& ctx, const ModelSpec& spec);

/// Four outliers per model on a uniform grid over each parameter range,
/// excluding the value that reproduces the base model.
std::vector<OutlierParams> default_outliers(ModelKind kind);

struct ExperimentConfig {
  ModelKind model = ModelKind::jump;
  std::size_t n_base = 20;
  std::vector<OutlierParams> outliers;  // empty means default_outliers(model)
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::size_t grid_size = kDefaultGridSize;
  double bandwidth = kDefaultBandwidth;
  unsigned threads = 1;
};

/// Base curve i uses derive_seed(master, i). Outlier k of models 1-2 reuses
/// the noise seed of base curve k mod n_base; outlier k of models 3-4 uses
/// derive_seed(master, n_base + k).
std::vector<ModelSpec> experiment_specs(const ExperimentConfig& cfg);

/// Labels base_01.., outlier_01..; base curves first.
Dataset generate_experiment(const ExperimentConfig& cfg);

}  // namespace ibmetric
