#pragma once

// Integrated ball distances: a p-power mean over window centres of a base
// distance between the two functions restricted to the window.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ibmetric/base_distances.hpp"
#include "ibmetric/core.hpp"

namespace ibmetric {

/// (sum_k w_k x_k^p)^(1/p), or max_k x_k when p is infinite. Sums run in
/// ascending index order.
double power_mean(std::span<const double> weights, std::span<const double> values, double p);

/// Weighted L_p distance of the pointwise Euclidean gaps on a shared grid.
double lp_distance(const SampledFunction& f, const SampledFunction& g, double p);

/// max_k ||f(t_k) - g(t_k)||.
double max_vertical_gap(const SampledFunction& f, const SampledFunction& g);

/// window_indices(grid, t_k, epsilon) for every grid point t_k.
std::vector<Window> ball_windows(const Grid& grid, double epsilon);

/// Base distance over the whole shared grid.
double global_distance(const SampledFunction& f, const SampledFunction& g, BaseDistance base,
                       double q);

double integrated_ball_distance(const SampledFunction& f, const SampledFunction& g,
                                BaseDistance base, const MetricConfig& cfg,
                                unsigned threads = 1);

struct ProfileResult {
  std::vector<double> epsilons;
  std::vector<double> distances;
  double p = 2.0;
  double q = 2.0;
  BaseDistance base;
  std::string first_label;
  std::string second_label;
};

/// 101 values k/100.
std::vector<double> default_epsilon_grid();

/// `count` values from lo to hi inclusive; a single value is lo.
std::vector<double> uniform_epsilon_grid(std::size_t count, double lo, double hi);

/// One integrated distance per epsilon. Windows shared between epsilons are
/// evaluated once.
ProfileResult epsilon_profile(const SampledFunction& f, const SampledFunction& g,
                              BaseDistance base, std::span<const double> epsilons, double p,
                              double q, unsigned threads = 1);

/// Pointwise mean over the cohort of epsilon_profile(target, member).
ProfileResult average_profile(const SampledFunction& target,
                              std::span<const SampledFunction> cohort, BaseDistance base,
                              std::span<const double> epsilons, double p, double q,
                              unsigned threads = 1);

/// Pointwise mean of epsilon_profile over all unordered cohort pairs.
std::vector<double> cohort_pairwise_mean(std::span<const SampledFunction> cohort,
                                         BaseDistance base, std::span<const double> epsilons,
                                         double p, double q, unsigned threads = 1);

/// Dense symmetric matrix, row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// One integrated distance per unordered pair; zero diagonal.
DistanceMatrix distance_matrix(std::span<const SampledFunction> functions, BaseDistance base,
                               const MetricConfig& cfg, unsigned threads = 1);

enum class WeightScheme { uniform, trapezoid };

struct ConvergenceReport {
  std::vector<std::size_t> grid_sizes;
  std::vector<double> values;
  std::vector<double> successive_deltas;
};

using FunctionRule = std::function<double(double)>;

/// Samples both rules on grids of each size and records the integrated
/// distance.
ConvergenceReport convergence_report(const FunctionRule& f_rule, const FunctionRule& g_rule,
                                     std::span<const std::size_t> grid_sizes, BaseDistance base,
                                     const MetricConfig& cfg,
                                     WeightScheme weights = WeightScheme::uniform,
                                     unsigned threads = 1);

}  // namespace ibmetric
