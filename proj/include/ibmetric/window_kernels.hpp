#pragma once

// Batched evaluation of a base distance over many windows of one pair of
// functions on a shared grid.
//
// Both kernels reduce exactly the same reduced costs as hausdorff_restricted /
// frechet_windowed and only skip work that provably cannot change a min or a
// max, so their results are bitwise equal to the direct routines.

#include <cstddef>
#include <span>
#include <vector>

#include "ibmetric/base_distances.hpp"
#include "ibmetric/core.hpp"

namespace ibmetric {

class WindowDistanceEvaluator {
 public:
  /// f and g must share a grid; both are held by reference.
  WindowDistanceEvaluator(const SampledFunction& f, const SampledFunction& g, BaseDistance base,
                          double q);

  /// Distance between f and g restricted to each window (same window for
  /// both). Duplicated windows are computed once.
  std::vector<double> evaluate(std::span<const Window> windows, unsigned threads = 1) const;

  double evaluate(Window window) const;

 private:
  double cost(std::size_t i, std::size_t j) const {
    return metric_.reduced(times_[j] - times_[i], f_.value(i), g_.value(j));
  }
  double cost_swapped(std::size_t i, std::size_t j) const {
    return metric_.reduced(times_[j] - times_[i], g_.value(i), f_.value(j));
  }

  template <bool Swapped>
  double directed_hausdorff_reduced(Window w, double floor) const;
  double hausdorff_reduced(Window w) const;

  double frechet_upper_bound(Window w) const;

  /// Runs one pruned DP anchored at (lo, lo) and writes the reduced distance
  /// of every window [lo, his[k]] into out[k].
  template <bool OneSided>
  void frechet_group(std::size_t lo, std::span<const std::size_t> his, double bound,
                     std::span<double> out) const;

  const SampledFunction& f_;
  const SampledFunction& g_;
  std::span<const double> times_;
  BaseDistance base_;
  PointMetric metric_;
};

}  // namespace ibmetric
