#include "ibmetric/base_distances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ibmetric {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

void check_pair(const PolyPoints& p, const PolyPoints& q) {
  require(p.dim() == q.dim(), "polyline pair: value dimensions differ");
}

// Reduced cost between p_i and q_j.
double cost(const PointMetric& metric, const PolyPoints& p, std::size_t i, const PolyPoints& q,
            std::size_t j) {
  return metric.reduced(q.time(j) - p.time(i), p.value(i), q.value(j));
}

double frechet_symmetric(const PolyPoints& p, const PolyPoints& q, const PointMetric& metric) {
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  std::vector<double> prev(m), cur(m);
  cur[0] = cost(metric, p, 0, q, 0);
  for (std::size_t j = 1; j < m; ++j) cur[j] = std::max(cost(metric, p, 0, q, j), cur[j - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    std::swap(prev, cur);
    cur[0] = std::max(cost(metric, p, i, q, 0), prev[0]);
    for (std::size_t j = 1; j < m; ++j) {
      const double reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = std::max(cost(metric, p, i, q, j), reach);
    }
  }
  return cur[m - 1];
}

// E[i][j]: best cost of P[0..i] with j(i) = j.
// G[i][j]: best cost of P[0..i] with j(i) = j and j(i-1) < j, i.e. the step
// into j charged the run (j(i-1), j] to P_i.
double frechet_one_sided(const PolyPoints& p, const PolyPoints& q, const PointMetric& metric) {
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  require(n >= 2 || m == 1,
          "one-sided Frechet: a single P point cannot reach the last of several Q points");
  std::vector<double> prev(m, kInf), cur(m, kInf);
  cur[0] = cost(metric, p, 0, q, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::swap(prev, cur);
    double run = kInf;  // G[i][j-1]
    for (std::size_t j = 0; j < m; ++j) {
      const double c = cost(metric, p, i, q, j);
      const double entered = j == 0 ? kInf : std::max(c, std::min(prev[j - 1], run));
      cur[j] = std::max(c, std::min(prev[j], entered));
      run = entered;
    }
  }
  return cur[m - 1];
}

}  // namespace

PolyPoints::PolyPoints(std::vector<double> times, std::vector<double> values, std::size_t dim)
    : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
  require(!times_.empty(), "polyline: at least one point required");
  require(dim_ >= 1 && values_.size() == times_.size() * dim_,
          "polyline: one value vector per point required");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    require(times_[i] >= times_[i - 1], "polyline: times must be nondecreasing");
  }
}

PolyPoints::PolyPoints(const std::vector<CurvePoint>& points) : dim_(0) {
  require(!points.empty(), "polyline: at least one point required");
  dim_ = points.front().v.size();
  times_.reserve(points.size());
  values_.reserve(points.size() * dim_);
  for (const auto& pt : points) {
    require(pt.v.size() == dim_, "polyline: mixed value dimensions");
    require(times_.empty() || pt.t >= times_.back(), "polyline: times must be nondecreasing");
    times_.push_back(pt.t);
    values_.insert(values_.end(), pt.v.begin(), pt.v.end());
  }
}

CurvePoint PolyPoints::point(std::size_t i) const {
  const auto v = value(i);
  return CurvePoint(times_[i], {v.begin(), v.end()});
}

std::string to_string(FrechetVariant variant) {
  return variant == FrechetVariant::symmetric ? "symmetric" : "one-sided";
}

FrechetVariant parse_frechet_variant(const std::string& text) {
  if (text == "symmetric") return FrechetVariant::symmetric;
  if (text == "one-sided" || text == "one_sided") return FrechetVariant::one_sided;
  throw std::invalid_argument("unknown Frechet variant: " + text);
}

std::string to_string(const BaseDistance& base) {
  return base.kind == BaseDistance::Kind::hausdorff ? "hausdorff" : "frechet";
}

BaseDistance parse_base_distance(const std::string& name, FrechetVariant variant) {
  if (name == "hausdorff") return BaseDistance::hausdorff();
  if (name == "frechet") return BaseDistance::frechet(variant);
  throw std::invalid_argument("unknown base distance: " + name);
}

PolyPoints window_samples(const SampledFunction& f, Window window) {
  require(window.valid_for(f.grid()), "window_samples: window outside the grid");
  const auto pts = f.grid().points();
  const auto vals = f.values();
  const std::size_t dim = f.dim();
  return PolyPoints(
      std::vector<double>(pts.begin() + static_cast<std::ptrdiff_t>(window.lo),
                          pts.begin() + static_cast<std::ptrdiff_t>(window.hi + 1)),
      std::vector<double>(vals.begin() + static_cast<std::ptrdiff_t>(window.lo * dim),
                          vals.begin() + static_cast<std::ptrdiff_t>((window.hi + 1) * dim)),
      dim);
}

double directed_hausdorff(const PolyPoints& from, const PolyPoints& to, double q) {
  check_pair(from, to);
  const PointMetric metric(q);
  double sup = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    double inf = kInf;
    for (std::size_t j = 0; j < to.size(); ++j) inf = std::min(inf, cost(metric, from, i, to, j));
    sup = std::max(sup, inf);
  }
  return metric.finish(sup);
}

double hausdorff_restricted(const SampledFunction& f, Window wf, const SampledFunction& g,
                            Window wg, double q) {
  require(f.dim() == g.dim(), "hausdorff_restricted: value dimensions differ");
  const auto p = window_samples(f, wf);
  const auto r = window_samples(g, wg);
  return std::max(directed_hausdorff(p, r, q), directed_hausdorff(r, p, q));
}

namespace {

// Sample times that miss a grid point only by rounding take the grid point
// itself, so reparametrizing onto the window's own points is exact.
constexpr double kSnapTolerance = 1e-12;

double snap_to_grid(const Grid& grid, double t) {
  const auto pts = grid.points();
  const auto it = std::lower_bound(pts.begin(), pts.end(), t);
  if (it != pts.end() && *it - t <= kSnapTolerance) return *it;
  if (it != pts.begin() && t - *(it - 1) <= kSnapTolerance) return *(it - 1);
  return t;
}

}  // namespace

PolyPoints reparametrize(const SampledFunction& f, double a, double b, std::size_t m) {
  require(std::isfinite(a) && std::isfinite(b) && 0.0 <= a && a <= b && b <= 1.0,
          "reparametrize: need 0 <= a <= b <= 1");
  require(m >= 2, "reparametrize: need at least two samples");
  std::vector<double> times(m);
  std::vector<double> values;
  values.reserve(m * f.dim());
  const double denom = static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = static_cast<double>(i) / denom;
    double t = i + 1 == m ? b : std::clamp(a + (b - a) * s, a, b);
    t = snap_to_grid(f.grid(), t);
    times[i] = t;
    const auto v = f.evaluate(t);
    values.insert(values.end(), v.begin(), v.end());
  }
  return PolyPoints(std::move(times), std::move(values), f.dim());
}

double discrete_frechet(const PolyPoints& p, const PolyPoints& q_points, double q,
                        FrechetVariant variant) {
  check_pair(p, q_points);
  const PointMetric metric(q);
  const double reduced = variant == FrechetVariant::symmetric
                             ? frechet_symmetric(p, q_points, metric)
                             : frechet_one_sided(p, q_points, metric);
  return metric.finish(reduced);
}

double brute_force_frechet(const PolyPoints& p, const PolyPoints& q_points, double q,
                           FrechetVariant variant) {
  check_pair(p, q_points);
  require(p.size() <= 8 && q_points.size() <= 8, "brute_force_frechet: at most 8 points each");
  const std::size_t n = p.size();
  const std::size_t m = q_points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = p.point(i);
    for (std::size_t j = 0; j < m; ++j) d[i][j] = point_distance(a, q_points.point(j), q);
  }

  double best = kInf;
  if (variant == FrechetVariant::symmetric) {
    // Every monotone lattice path (0,0) -> (n-1,m-1).
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                     double worst) {
      worst = std::max(worst, d[i][j]);
      if (i + 1 == n && j + 1 == m) {
        best = std::min(best, worst);
        return;
      }
      if (i + 1 < n) walk(i + 1, j, worst);
      if (j + 1 < m) walk(i, j + 1, worst);
      if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, worst);
    };
    walk(0, 0, 0.0);
    return best;
  }

  require(n >= 2 || m == 1,
          "one-sided Frechet: a single P point cannot reach the last of several Q points");
  // Every nondecreasing j(.) with j(0)=0, j(n-1)=m-1.
  std::vector<std::size_t> map(n, 0);
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) {
      if (map[n - 1] != m - 1) return;
      double worst = d[0][map[0]];
      for (std::size_t k = 1; k < n; ++k) {
        worst = std::max(worst, d[k][map[k]]);
        for (std::size_t jj = map[k - 1] + 1; jj <= map[k]; ++jj) worst = std::max(worst, d[k][jj]);
      }
      best = std::min(best, worst);
      return;
    }
    const std::size_t start = i == 0 ? 0 : map[i - 1];
    const std::size_t stop = i == 0 ? 0 : m - 1;
    for (std::size_t j = start; j <= stop; ++j) {
      map[i] = j;
      assign(i + 1);
    }
  };
  assign(0);
  return best;
}

double frechet_restricted(const SampledFunction& f, double a, double b, const SampledFunction& g,
                          double c, double d, double q, std::size_t m, FrechetVariant variant) {
  require(f.dim() == g.dim(), "frechet_restricted: value dimensions differ");
  require(0.0 <= a && a <= b && b <= 1.0, "frechet_restricted: need 0 <= a <= b <= 1");
  require(0.0 <= c && c <= d && d <= 1.0, "frechet_restricted: need 0 <= c <= d <= 1");
  if (m == 0) {
    const auto count = [](const Grid& grid, double lo, double hi) {
      const auto pts = grid.points();
      return static_cast<std::size_t>(std::upper_bound(pts.begin(), pts.end(), hi) -
                                      std::lower_bound(pts.begin(), pts.end(), lo));
    };
    m = std::max({count(f.grid(), a, b), count(g.grid(), c, d), std::size_t{2}});
  }
  return discrete_frechet(reparametrize(f, a, b, m), reparametrize(g, c, d, m), q, variant);
}

double frechet_windowed(const SampledFunction& f, Window wf, const SampledFunction& g, Window wg,
                        double q, FrechetVariant variant) {
  require(f.dim() == g.dim(), "frechet_windowed: value dimensions differ");
  return discrete_frechet(window_samples(f, wf), window_samples(g, wg), q, variant);
}

}  // namespace ibmetric
