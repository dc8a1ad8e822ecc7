#pragma once

// Hausdorff and discrete Frechet distances between (restricted) graphs of
// sampled functions.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ibmetric/core.hpp"

namespace ibmetric {

/// An ordered, nonempty run of graph points with nondecreasing times.
class PolyPoints {
 public:
  PolyPoints(std::vector<double> times, std::vector<double> values, std::size_t dim);
  explicit PolyPoints(const std::vector<CurvePoint>& points);

  std::size_t size() const noexcept { return times_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  double time(std::size_t i) const noexcept { return times_[i]; }
  std::span<const double> value(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  CurvePoint point(std::size_t i) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t dim_;
};

/// Coupling discipline used by the discrete Frechet distance.
///
/// `symmetric` is the classic coupling DP. `one_sided` minimizes over
/// nondecreasing index maps j(.) with j(0)=0 and j(last)=|Q|-1, charging the
/// Q points skipped by each step to the current P point.
enum class FrechetVariant { symmetric, one_sided };

std::string to_string(FrechetVariant variant);
FrechetVariant parse_frechet_variant(const std::string& text);

/// Which distance between restricted graphs the integrated metric is built on.
struct BaseDistance {
  enum class Kind { hausdorff, frechet };

  Kind kind = Kind::hausdorff;
  FrechetVariant variant = FrechetVariant::symmetric;

  static BaseDistance hausdorff() { return {Kind::hausdorff, FrechetVariant::symmetric}; }
  static BaseDistance frechet(FrechetVariant v = FrechetVariant::symmetric) {
    return {Kind::frechet, v};
  }
  bool operator==(const BaseDistance&) const = default;
};

std::string to_string(const BaseDistance& base);
BaseDistance parse_base_distance(const std::string& name,
                                 FrechetVariant variant = FrechetVariant::symmetric);

/// The graph samples of f on the grid indices of `window`.
PolyPoints window_samples(const SampledFunction& f, Window window);

/// max over P of min over Q of the q-metric.
double directed_hausdorff(const PolyPoints& from, const PolyPoints& to, double q);

/// Hausdorff distance between the graph samples of f on wf and of g on wg.
double hausdorff_restricted(const SampledFunction& f, Window wf, const SampledFunction& g,
                            Window wg, double q);

/// Samples of f(a + (b-a)s) at s_i = i/(m-1); each point keeps its original
/// time coordinate a + (b-a)s_i. Times within 1e-12 of a grid point are
/// moved onto it.
PolyPoints reparametrize(const SampledFunction& f, double a, double b, std::size_t m);

double discrete_frechet(const PolyPoints& p, const PolyPoints& q_points, double q,
                        FrechetVariant variant = FrechetVariant::symmetric);

/// Exhaustive minimum over every admissible coupling; sizes up to 8.
double brute_force_frechet(const PolyPoints& p, const PolyPoints& q_points, double q,
                           FrechetVariant variant = FrechetVariant::symmetric);

/// Frechet distance between f on [a,b] and g on [c,d] after mapping both
/// intervals onto [0,1]. `m == 0` picks max(points of either interval, 2).
double frechet_restricted(const SampledFunction& f, double a, double b, const SampledFunction& g,
                          double c, double d, double q, std::size_t m = 0,
                          FrechetVariant variant = FrechetVariant::symmetric);

/// Frechet distance computed directly on the window samples.
double frechet_windowed(const SampledFunction& f, Window wf, const SampledFunction& g, Window wg,
                        double q, FrechetVariant variant = FrechetVariant::symmetric);

}  // namespace ibmetric
