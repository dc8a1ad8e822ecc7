#pragma once

// Sampled functional data on [0,1], windows over the sampling grid, and the
// order-q product metric on [0,1] x R^m.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ibmetric {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when a numerical routine (e.g. a Cholesky factorization) cannot
/// produce a result.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strictly increasing time points in [0,1] carrying a discrete probability
/// measure (one nonnegative weight per point, summing to one).
class Grid {
 public:
  Grid(std::vector<double> points, std::vector<double> weights);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t k) const noexcept { return points_[k]; }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }

  bool operator==(const Grid&) const = default;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// t_k = k/(n-1), weights 1/n.
Grid make_uniform_grid(std::size_t n);

/// Same points as make_uniform_grid, trapezoidal weights.
Grid make_trapezoid_grid(std::size_t n);

/// A function [0,1] -> R^m observed on a grid. Values are stored row-major,
/// `dim` entries per grid point. Immutable after construction.
class SampledFunction {
 public:
  SampledFunction(std::shared_ptr<const Grid> grid, std::vector<double> values,
                  std::size_t dim = 1);
  SampledFunction(const Grid& grid, std::vector<double> values, std::size_t dim = 1);

  /// Samples a scalar rule at every grid point.
  static SampledFunction from_rule(std::shared_ptr<const Grid> grid,
                                   const std::function<double(double)>& rule);

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_->size(); }
  std::size_t dim() const noexcept { return dim_; }
  double time(std::size_t k) const noexcept { return (*grid_)[k]; }
  std::span<const double> value(std::size_t k) const noexcept {
    return {values_.data() + k * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Linear interpolation between grid samples; exact at grid points and
  /// constant beyond the first/last sample.
  std::vector<double> evaluate(double t) const;

  bool operator==(const SampledFunction& other) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
  std::size_t dim_;
};

/// True when both functions live on the same grid (identical points and
/// weights) and have the same value dimension.
bool share_grid(const SampledFunction& f, const SampledFunction& g);

/// A point (t, v) on the graph of a function.
struct CurvePoint {
  CurvePoint(double t, std::vector<double> v);

  double t;
  std::vector<double> v;
};

/// Inclusive index range [lo, hi] into a grid.
struct Window {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo + 1; }
  bool valid_for(const Grid& grid) const noexcept { return lo <= hi && hi < grid.size(); }
  auto operator<=>(const Window&) const = default;
};

/// q is the order of the point metric, p the integration order (both may be
/// kInf), epsilon the ball radius.
struct MetricConfig {
  double q = 2.0;
  double p = 2.0;
  double epsilon = 0.0;

  void validate() const;
};

/// Smallest index range covering every grid point within epsilon of t. When
/// no point qualifies, the single nearest point (ties toward the lower index).
Window window_indices(const Grid& grid, double t, double epsilon);

/// Order-q metric on [0,1] x R^m with Euclidean distance on the values.
double point_distance(const CurvePoint& a, const CurvePoint& b, double q);

/// Euclidean norm of a - b.
inline double vertical_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() == 1) return std::fabs(a[0] - b[0]);
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

/// The q-metric split into a monotone surrogate `reduced` and a
/// nondecreasing map `finish` with finish(reduced(.)) == point_distance(.).
/// Min/max reductions run on reduced costs and call finish once.
class PointMetric {
 public:
  explicit PointMetric(double q);

  double order() const noexcept { return q_; }

  double reduced(double dt, std::span<const double> a, std::span<const double> b) const {
    switch (kind_) {
      case Kind::l2: {
        double sq = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          const double d = a[i] - b[i];
          sq += d * d;
        }
        return dt * dt + sq;
      }
      case Kind::l1:
        return std::fabs(dt) + vertical_distance(a, b);
      case Kind::linf:
        return std::max(std::fabs(dt), vertical_distance(a, b));
      case Kind::general:
        break;
    }
    return std::pow(std::fabs(dt), q_) + std::pow(vertical_distance(a, b), q_);
  }

  /// Lower bound on reduced(dt, ., .), nondecreasing in |dt|.
  double time_part(double dt) const {
    switch (kind_) {
      case Kind::l2:
        return dt * dt;
      case Kind::l1:
      case Kind::linf:
        return std::fabs(dt);
      case Kind::general:
        break;
    }
    return std::pow(std::fabs(dt), q_);
  }

  double finish(double reduced) const {
    switch (kind_) {
      case Kind::l2:
        return std::sqrt(reduced);
      case Kind::l1:
      case Kind::linf:
        return reduced;
      case Kind::general:
        break;
    }
    return std::pow(reduced, 1.0 / q_);
  }

 private:
  enum class Kind { l1, l2, linf, general };
  Kind kind_;
  double q_;
};

/// Parses a metric order: a real >= 1 or "inf".
double parse_order(const std::string& text);
std::string format_order(double order);

}  // namespace ibmetric
