#include "ibmetric/window_kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "ibmetric/parallel.hpp"

namespace ibmetric {

WindowDistanceEvaluator::WindowDistanceEvaluator(const SampledFunction& f,
                                                 const SampledFunction& g, BaseDistance base,
                                                 double q)
    : f_(f), g_(g), times_(f.grid().points()), base_(base), metric_(q) {
  if (!share_grid(f, g)) {
    throw std::invalid_argument("window evaluator: functions must share grid and dimension");
  }
}

// sup over rows i of min over columns j, starting from `floor`. A row stops as
// soon as it finds a column at or below the running sup (it cannot raise the
// max), and a scan direction closes once the time offset alone reaches the
// row's best cost.
template <bool Swapped>
double WindowDistanceEvaluator::directed_hausdorff_reduced(Window w, double floor) const {
  const auto c = [this](std::size_t i, std::size_t j) {
    return Swapped ? cost_swapped(i, j) : cost(i, j);
  };
  double sup = floor;
  std::ptrdiff_t offset = 0;
  const auto lo = static_cast<std::ptrdiff_t>(w.lo);
  const auto hi = static_cast<std::ptrdiff_t>(w.hi);
  for (std::size_t i = w.lo; i <= w.hi; ++i) {
    double best = c(i, i);
    if (best <= sup) continue;
    std::size_t arg = i;
    const auto hint =
        static_cast<std::size_t>(std::clamp(static_cast<std::ptrdiff_t>(i) + offset, lo, hi));
    if (hint != i) {
      const double h = c(i, hint);
      if (h <= sup) continue;
      if (h < best) {
        best = h;
        arg = hint;
      }
    }
    const double ti = times_[i];
    bool left_open = i > w.lo;
    bool right_open = i < w.hi;
    for (std::size_t d = 1; (left_open || right_open) && best > sup; ++d) {
      if (left_open) {
        if (d > i - w.lo) {
          left_open = false;
        } else {
          const std::size_t j = i - d;
          if (metric_.time_part(times_[j] - ti) >= best) {
            left_open = false;
          } else if (const double v = c(i, j); v < best) {
            best = v;
            arg = j;
          }
        }
      }
      if (right_open) {
        if (d > w.hi - i) {
          right_open = false;
        } else {
          const std::size_t j = i + d;
          if (metric_.time_part(times_[j] - ti) >= best) {
            right_open = false;
          } else if (const double v = c(i, j); v < best) {
            best = v;
            arg = j;
          }
        }
      }
    }
    sup = std::max(sup, best);
    offset = static_cast<std::ptrdiff_t>(arg) - static_cast<std::ptrdiff_t>(i);
  }
  return sup;
}

double WindowDistanceEvaluator::hausdorff_reduced(Window w) const {
  const double forward = directed_hausdorff_reduced<false>(w, 0.0);
  return directed_hausdorff_reduced<true>(w, forward);
}

// Smallest of two coupling costs: the diagonal coupling and a greedy walk.
// Any admissible coupling bounds the optimum from above.
double WindowDistanceEvaluator::frechet_upper_bound(Window w) const {
  double diagonal = 0.0;
  for (std::size_t k = w.lo; k <= w.hi; ++k) diagonal = std::max(diagonal, cost(k, k));
  if (base_.variant == FrechetVariant::one_sided) return diagonal;

  std::size_t i = w.lo;
  std::size_t j = w.lo;
  double worst = cost(i, j);
  while (i < w.hi || j < w.hi) {
    double step = 0.0;
    if (i == w.hi) {
      step = cost(i, ++j);
    } else if (j == w.hi) {
      step = cost(++i, j);
    } else {
      const double cd = cost(i + 1, j + 1);
      const double cv = cost(i + 1, j);
      const double ch = cost(i, j + 1);
      if (cd <= cv && cd <= ch) {
        ++i;
        ++j;
        step = cd;
      } else if (cv <= ch) {
        ++i;
        step = cv;
      } else {
        ++j;
        step = ch;
      }
    }
    worst = std::max(worst, step);
    if (worst >= diagonal) return diagonal;
  }
  return std::min(worst, diagonal);
}

// Row-by-row DP over [lo, max hi]^2 where cells costing more than `bound`
// are blocked. Every optimal coupling of a window [lo, hi] in the group uses
// only cells at or below that window's own bound, so blocking cannot change
// the min-max value read at (hi, hi). Rows only visit the columns reachable
// from the previous row plus the horizontal run they extend.
template <bool OneSided>
void WindowDistanceEvaluator::frechet_group(std::size_t lo, std::span<const std::size_t> his,
                                            double bound, std::span<double> out) const {
  const std::size_t maxhi = his.back();
  const std::size_t span = maxhi - lo + 1;
  std::vector<double> prev(span, kInf);
  std::vector<double> cur(span, kInf);
  std::size_t cur_first = 0;
  std::size_t cur_last = 0;
  std::size_t prev_first = 0;
  std::size_t prev_last = 0;
  std::size_t next = 0;

  cur[0] = cost(lo, lo);
  if constexpr (!OneSided) {
    const double t0 = times_[lo];
    for (std::size_t j = 1; j < span; ++j) {
      if (metric_.time_part(times_[lo + j] - t0) > bound) break;
      const double c = cost(lo, lo + j);
      if (c > bound) break;
      cur[j] = std::max(c, cur[j - 1]);
      cur_last = j;
    }
  }
  if (his[next] == lo) out[next++] = cur[0];

  for (std::size_t i = lo + 1; i <= maxhi; ++i) {
    std::swap(prev, cur);
    std::swap(prev_first, cur_first);
    std::swap(prev_last, cur_last);
    std::fill(cur.begin() + static_cast<std::ptrdiff_t>(cur_first),
              cur.begin() + static_cast<std::ptrdiff_t>(cur_last + 1), kInf);

    const double ti = times_[i];
    const std::size_t diag = i - lo;
    bool any = false;
    double carry = kInf;  // symmetric: D[i][j-1]; one-sided: G[i][j-1]
    for (std::size_t j = prev_first; j < span; ++j) {
      if (j > prev_last + 1 && carry == kInf) break;
      const double up = prev[j];
      const double corner = j > 0 ? prev[j - 1] : kInf;
      const double via_run = std::min(corner, carry);
      if (via_run == kInf && up == kInf) {
        carry = kInf;
        continue;
      }
      if (metric_.time_part(times_[lo + j] - ti) > bound) {
        if (j > diag) break;
        carry = kInf;
        continue;
      }
      const double c = cost(i, lo + j);
      if (c > bound) {
        carry = kInf;
        continue;
      }
      double value;
      if constexpr (OneSided) {
        const double entered = via_run == kInf ? kInf : std::max(c, via_run);
        value = std::max(c, std::min(up, entered));
        carry = entered;
      } else {
        value = std::max(c, std::min(up, via_run));
        carry = value;
      }
      cur[j] = value;
      if (!any) {
        cur_first = j;
        any = true;
      }
      cur_last = j;
    }
    if (!any) throw std::logic_error("frechet kernel: coupling bound excluded every path");
    if (next < his.size() && his[next] == i) {
      if (cur[diag] == kInf) throw std::logic_error("frechet kernel: window end unreachable");
      out[next++] = cur[diag];
    }
  }
}

std::vector<double> WindowDistanceEvaluator::evaluate(std::span<const Window> windows,
                                                      unsigned threads) const {
  for (const auto& w : windows) {
    if (!w.valid_for(f_.grid())) throw std::invalid_argument("window outside the grid");
  }
  std::vector<Window> unique(windows.begin(), windows.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<double> reduced(unique.size());
  if (base_.kind == BaseDistance::Kind::hausdorff) {
    parallel_for(unique.size(), threads,
                 [&](std::size_t u) { reduced[u] = hausdorff_reduced(unique[u]); });
  } else {
    // Windows sharing a left edge share one DP pass.
    std::vector<std::size_t> starts;
    for (std::size_t u = 0; u < unique.size(); ++u) {
      if (u == 0 || unique[u].lo != unique[u - 1].lo) starts.push_back(u);
    }
    starts.push_back(unique.size());
    parallel_for(starts.size() - 1, threads, [&](std::size_t gi) {
      const std::size_t begin = starts[gi];
      const std::size_t end = starts[gi + 1];
      const std::size_t lo = unique[begin].lo;
      std::vector<std::size_t> his;
      his.reserve(end - begin);
      double bound = 0.0;
      for (std::size_t u = begin; u < end; ++u) {
        his.push_back(unique[u].hi);
        bound = std::max(bound, frechet_upper_bound(unique[u]));
      }
      std::span<double> out(reduced.data() + begin, end - begin);
      if (base_.variant == FrechetVariant::one_sided) {
        frechet_group<true>(lo, his, bound, out);
      } else {
        frechet_group<false>(lo, his, bound, out);
      }
    });
  }

  std::vector<double> result(windows.size());
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const auto it = std::lower_bound(unique.begin(), unique.end(), windows[k]);
    result[k] = metric_.finish(reduced[static_cast<std::size_t>(it - unique.begin())]);
  }
  return result;
}

double WindowDistanceEvaluator::evaluate(Window window) const {
  return evaluate(std::span<const Window>(&window, 1)).front();
}

}  // namespace ibmetric
