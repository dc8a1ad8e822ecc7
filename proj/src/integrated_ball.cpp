#include "ibmetric/integrated_ball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ibmetric/parallel.hpp"
#include "ibmetric/window_kernels.hpp"

namespace ibmetric {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

void require_shared(const SampledFunction& f, const SampledFunction& g) {
  require(share_grid(f, g), "functions must share grid and value dimension");
}

void check_order(double order, const char* message) { require(order >= 1.0, message); }

void check_epsilons(std::span<const double> epsilons) {
  require(!epsilons.empty(), "epsilon grid must be nonempty");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    require(std::isfinite(epsilons[k]) && epsilons[k] >= 0.0, "epsilon values must be >= 0");
    require(k == 0 || epsilons[k] > epsilons[k - 1], "epsilon grid must be increasing");
  }
}

std::vector<double> profile_values(const SampledFunction& f, const SampledFunction& g,
                                   BaseDistance base, std::span<const double> epsilons, double p,
                                   double q, unsigned threads) {
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<Window> windows;
  windows.reserve(n * epsilons.size());
  for (const double eps : epsilons) {
    const auto w = ball_windows(grid, eps);
    windows.insert(windows.end(), w.begin(), w.end());
  }
  const WindowDistanceEvaluator evaluator(f, g, base, q);
  const auto local = evaluator.evaluate(windows, threads);
  std::vector<double> out(epsilons.size());
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    out[e] = power_mean(grid.weights(), std::span<const double>(local).subspan(e * n, n), p);
  }
  return out;
}

}  // namespace

double power_mean(std::span<const double> weights, std::span<const double> values, double p) {
  require(weights.size() == values.size(), "power_mean: size mismatch");
  check_order(p, "power_mean: p must be >= 1");
  if (p == kInf) {
    double m = 0.0;
    for (const double v : values) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * values[k];
    return sum;
  }
  if (p == 2.0) {
    for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * (values[k] * values[k]);
    return std::sqrt(sum);
  }
  for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * std::pow(values[k], p);
  return std::pow(sum, 1.0 / p);
}

double lp_distance(const SampledFunction& f, const SampledFunction& g, double p) {
  require_shared(f, g);
  std::vector<double> gaps(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) gaps[k] = vertical_distance(f.value(k), g.value(k));
  return power_mean(f.grid().weights(), gaps, p);
}

double max_vertical_gap(const SampledFunction& f, const SampledFunction& g) {
  require_shared(f, g);
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    m = std::max(m, vertical_distance(f.value(k), g.value(k)));
  }
  return m;
}

std::vector<Window> ball_windows(const Grid& grid, double epsilon) {
  std::vector<Window> windows(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) windows[k] = window_indices(grid, grid[k], epsilon);
  return windows;
}

double global_distance(const SampledFunction& f, const SampledFunction& g, BaseDistance base,
                       double q) {
  require_shared(f, g);
  const Window all{0, f.size() - 1};
  if (base.kind == BaseDistance::Kind::hausdorff) return hausdorff_restricted(f, all, g, all, q);
  return frechet_windowed(f, all, g, all, q, base.variant);
}

double integrated_ball_distance(const SampledFunction& f, const SampledFunction& g,
                                BaseDistance base, const MetricConfig& cfg, unsigned threads) {
  cfg.validate();
  require_shared(f, g);
  const double eps[] = {cfg.epsilon};
  return profile_values(f, g, base, eps, cfg.p, cfg.q, threads).front();
}

std::vector<double> default_epsilon_grid() { return uniform_epsilon_grid(101, 0.0, 1.0); }

std::vector<double> uniform_epsilon_grid(std::size_t count, double lo, double hi) {
  require(count >= 1, "epsilon grid: count must be >= 1");
  require(std::isfinite(lo) && std::isfinite(hi) && 0.0 <= lo && lo <= hi,
          "epsilon grid: need 0 <= lo <= hi");
  require(count == 1 || lo < hi, "epsilon grid: need lo < hi for several values");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double denom = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = k + 1 == count ? hi : lo + (hi - lo) * (static_cast<double>(k) / denom);
  }
  return out;
}

ProfileResult epsilon_profile(const SampledFunction& f, const SampledFunction& g,
                              BaseDistance base, std::span<const double> epsilons, double p,
                              double q, unsigned threads) {
  require_shared(f, g);
  check_epsilons(epsilons);
  check_order(p, "profile: p must be >= 1");
  check_order(q, "profile: q must be >= 1");
  ProfileResult result;
  result.epsilons.assign(epsilons.begin(), epsilons.end());
  result.distances = profile_values(f, g, base, epsilons, p, q, threads);
  result.p = p;
  result.q = q;
  result.base = base;
  return result;
}

ProfileResult average_profile(const SampledFunction& target,
                              std::span<const SampledFunction> cohort, BaseDistance base,
                              std::span<const double> epsilons, double p, double q,
                              unsigned threads) {
  require(!cohort.empty(), "average_profile: cohort must be nonempty");
  check_epsilons(epsilons);
  check_order(p, "profile: p must be >= 1");
  check_order(q, "profile: q must be >= 1");
  for (const auto& member : cohort) require_shared(target, member);

  std::vector<std::vector<double>> rows(cohort.size());
  parallel_for(cohort.size(), threads, [&](std::size_t i) {
    rows[i] = profile_values(target, cohort[i], base, epsilons, p, q, 1);
  });

  ProfileResult result;
  result.epsilons.assign(epsilons.begin(), epsilons.end());
  result.distances.assign(epsilons.size(), 0.0);
  for (const auto& row : rows) {
    for (std::size_t e = 0; e < row.size(); ++e) result.distances[e] += row[e];
  }
  for (double& d : result.distances) d /= static_cast<double>(cohort.size());
  result.p = p;
  result.q = q;
  result.base = base;
  return result;
}

std::vector<double> cohort_pairwise_mean(std::span<const SampledFunction> cohort,
                                         BaseDistance base, std::span<const double> epsilons,
                                         double p, double q, unsigned threads) {
  require(cohort.size() >= 2, "cohort_pairwise_mean: need at least two curves");
  check_epsilons(epsilons);
  check_order(p, "profile: p must be >= 1");
  check_order(q, "profile: q must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    for (std::size_t j = i + 1; j < cohort.size(); ++j) {
      require_shared(cohort[i], cohort[j]);
      pairs.emplace_back(i, j);
    }
  }
  std::vector<std::vector<double>> rows(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    rows[k] = profile_values(cohort[pairs[k].first], cohort[pairs[k].second], base, epsilons, p,
                             q, 1);
  });
  std::vector<double> mean(epsilons.size(), 0.0);
  for (const auto& row : rows) {
    for (std::size_t e = 0; e < row.size(); ++e) mean[e] += row[e];
  }
  for (double& d : mean) d /= static_cast<double>(pairs.size());
  return mean;
}

DistanceMatrix distance_matrix(std::span<const SampledFunction> functions, BaseDistance base,
                               const MetricConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = i + 1; j < functions.size(); ++j) {
      require_shared(functions[i], functions[j]);
      pairs.emplace_back(i, j);
    }
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    values[k] =
        integrated_ball_distance(functions[pairs[k].first], functions[pairs[k].second], base, cfg);
  });
  DistanceMatrix matrix(functions.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    matrix.set(pairs[k].first, pairs[k].second, values[k]);
  }
  return matrix;
}

ConvergenceReport convergence_report(const FunctionRule& f_rule, const FunctionRule& g_rule,
                                     std::span<const std::size_t> grid_sizes, BaseDistance base,
                                     const MetricConfig& cfg, WeightScheme weights,
                                     unsigned threads) {
  cfg.validate();
  require(!grid_sizes.empty(), "convergence_report: need at least one grid size");
  for (std::size_t k = 0; k < grid_sizes.size(); ++k) {
    require(grid_sizes[k] >= 2, "convergence_report: grid sizes must be >= 2");
    require(k == 0 || grid_sizes[k] > grid_sizes[k - 1],
            "convergence_report: grid sizes must be increasing");
  }
  ConvergenceReport report;
  for (const std::size_t n : grid_sizes) {
    auto grid = std::make_shared<const Grid>(
        weights == WeightScheme::uniform ? make_uniform_grid(n) : make_trapezoid_grid(n));
    const auto f = SampledFunction::from_rule(grid, f_rule);
    const auto g = SampledFunction::from_rule(grid, g_rule);
    report.grid_sizes.push_back(n);
    report.values.push_back(integrated_ball_distance(f, g, base, cfg, threads));
  }
  for (std::size_t k = 1; k < report.values.size(); ++k) {
    report.successive_deltas.push_back(std::fabs(report.values[k] - report.values[k - 1]));
  }
  return report;
}

}  // namespace ibmetric
