#include "ibmetric/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ibmetric {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

std::vector<double> uniform_points(std::size_t n) {
  std::vector<double> points(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) points[k] = static_cast<double>(k) / denom;
  return points;
}

}  // namespace

Grid::Grid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  require(points_.size() >= 2, "grid: need at least two points");
  require(points_.size() == weights_.size(), "grid: one weight per point required");
  require(std::isfinite(points_.front()) && points_.front() >= 0.0,
          "grid: first point must lie in [0,1]");
  require(std::isfinite(points_.back()) && points_.back() <= 1.0,
          "grid: last point must lie in [0,1]");
  for (std::size_t k = 1; k < points_.size(); ++k) {
    require(points_[k] > points_[k - 1], "grid: points must be strictly increasing");
  }
  double total = 0.0;
  for (double w : weights_) {
    require(std::isfinite(w) && w >= 0.0, "grid: weights must be nonnegative");
    total += w;
  }
  require(std::fabs(total - 1.0) <= kWeightSumTolerance, "grid: weights must sum to one");
}

Grid make_uniform_grid(std::size_t n) {
  require(n >= 2, "make_uniform_grid: n must be at least 2");
  return Grid(uniform_points(n), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Grid make_trapezoid_grid(std::size_t n) {
  require(n >= 2, "make_trapezoid_grid: n must be at least 2");
  const double interior = 1.0 / static_cast<double>(n - 1);
  std::vector<double> weights(n, interior);
  weights.front() = 0.5 * interior;
  weights.back() = 0.5 * interior;
  return Grid(uniform_points(n), std::move(weights));
}

SampledFunction::SampledFunction(std::shared_ptr<const Grid> grid, std::vector<double> values,
                                 std::size_t dim)
    : grid_(std::move(grid)), values_(std::move(values)), dim_(dim) {
  require(grid_ != nullptr, "sampled function: missing grid");
  require(dim_ >= 1, "sampled function: dimension must be positive");
  require(values_.size() == grid_->size() * dim_,
          "sampled function: one value vector per grid point required");
  for (double v : values_) require(std::isfinite(v), "sampled function: values must be finite");
}

SampledFunction::SampledFunction(const Grid& grid, std::vector<double> values, std::size_t dim)
    : SampledFunction(std::make_shared<const Grid>(grid), std::move(values), dim) {}

SampledFunction SampledFunction::from_rule(std::shared_ptr<const Grid> grid,
                                           const std::function<double(double)>& rule) {
  require(grid != nullptr, "sampled function: missing grid");
  std::vector<double> values(grid->size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = rule((*grid)[k]);
  return SampledFunction(std::move(grid), std::move(values), 1);
}

std::vector<double> SampledFunction::evaluate(double t) const {
  const auto pts = grid_->points();
  require(std::isfinite(t), "evaluate: t must be finite");
  t = std::clamp(t, pts.front(), pts.back());
  auto it = std::upper_bound(pts.begin(), pts.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(pts.begin(), it)) - 1;
  const auto vk = value(k);
  if (pts[k] == t || k + 1 == pts.size()) return {vk.begin(), vk.end()};
  const auto vn = value(k + 1);
  const double w = (t - pts[k]) / (pts[k + 1] - pts[k]);
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (1.0 - w) * vk[i] + w * vn[i];
  return out;
}

bool SampledFunction::operator==(const SampledFunction& other) const {
  return dim_ == other.dim_ && *grid_ == *other.grid_ && values_ == other.values_;
}

bool share_grid(const SampledFunction& f, const SampledFunction& g) {
  if (f.dim() != g.dim()) return false;
  return f.grid_ptr() == g.grid_ptr() || f.grid() == g.grid();
}

CurvePoint::CurvePoint(double t_, std::vector<double> v_) : t(t_), v(std::move(v_)) {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "curve point: t must lie in [0,1]");
  require(!v.empty(), "curve point: empty value vector");
  for (double x : v) require(std::isfinite(x), "curve point: values must be finite");
}

void MetricConfig::validate() const {
  require(q >= 1.0, "metric config: q must be >= 1");
  require(p >= 1.0, "metric config: p must be >= 1");
  require(std::isfinite(epsilon) && epsilon >= 0.0, "metric config: epsilon must be >= 0");
}

Window window_indices(const Grid& grid, double t, double epsilon) {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "window_indices: t must lie in [0,1]");
  require(epsilon >= 0.0, "window_indices: epsilon must be nonnegative");
  const auto pts = grid.points();
  // |t_k - t| is monotone along the sorted grid, so the qualifying set is a
  // contiguous run; locate both ends by bisection.
  const auto first = std::partition_point(pts.begin(), pts.end(), [&](double tk) {
    return tk < t && (t - tk) > epsilon;
  });
  const auto past = std::partition_point(first, pts.end(), [&](double tk) {
    return !(tk > t && (tk - t) > epsilon);
  });
  if (first != past) {
    return {static_cast<std::size_t>(first - pts.begin()),
            static_cast<std::size_t>(past - pts.begin()) - 1};
  }
  // Empty ball: `first` is the first point to the right of t.
  const auto right = static_cast<std::size_t>(first - pts.begin());
  if (right == pts.size()) return {pts.size() - 1, pts.size() - 1};
  if (right == 0) return {0, 0};
  const double dl = t - pts[right - 1];
  const double dr = pts[right] - t;
  const std::size_t k = dl <= dr ? right - 1 : right;
  return {k, k};
}

PointMetric::PointMetric(double q) : q_(q) {
  require(q >= 1.0, "point metric: q must be >= 1");
  if (q == 1.0) {
    kind_ = Kind::l1;
  } else if (q == 2.0) {
    kind_ = Kind::l2;
  } else if (std::isinf(q)) {
    kind_ = Kind::linf;
  } else {
    kind_ = Kind::general;
  }
}

double point_distance(const CurvePoint& a, const CurvePoint& b, double q) {
  require(a.v.size() == b.v.size(), "point_distance: dimension mismatch");
  const PointMetric metric(q);
  return metric.finish(metric.reduced(b.t - a.t, a.v, b.v));
}

double parse_order(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInf;
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !(value >= 1.0)) {
    throw std::invalid_argument("order must be a real >= 1 or 'inf': " + text);
  }
  return value;
}

std::string format_order(double order) {
  if (std::isinf(order)) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << order;
  return out.str();
}

}  // namespace ibmetric
