#include "ibmetric/simulation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "ibmetric/parallel.hpp"

namespace ibmetric {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Slack for closed indicator bounds evaluated at grid points.
constexpr double kEdgeSlack = 1e-12;
constexpr double kMaxJitter = 1e-6;

// Linear interpolation of grid samples at x, constant outside the grid.
double interpolate_grid(const Grid& grid, std::span<const double> values, double x) {
  const auto pts = grid.points();
  if (x <= pts.front()) return values.front();
  if (x >= pts.back()) return values.back();
  const auto it = std::upper_bound(pts.begin(), pts.end(), x);
  const auto k = static_cast<std::size_t>(it - pts.begin());
  const double w = (x - pts[k - 1]) / (pts[k] - pts[k - 1]);
  return (1.0 - w) * values[k - 1] + w * values[k];
}

std::vector<double> smoothed_polyline(const Grid& grid,
                                      std::span<const std::pair<double, double>> knots,
                                      double bandwidth) {
  std::vector<double> raw(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) raw[k] = interpolate_knots(knots, grid[k]);
  return gaussian_smooth(raw, grid, bandwidth);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index));
}

GaussianProcess::GaussianProcess(std::shared_ptr<const Grid> grid, double jitter)
    : grid_(std::move(grid)), jitter_(jitter) {
  require(grid_ != nullptr, "gaussian process: grid required");
  require(std::isfinite(jitter) && jitter >= 0.0, "gaussian process: jitter must be >= 0");
  const std::size_t n = grid_->size();
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::exp(-std::fabs((*grid_)[i] - (*grid_)[j]));
    }
  }
  for (;;) {
    Eigen::MatrixXd jittered = cov;
    jittered.diagonal().array() += jitter_;
    const Eigen::LLT<Eigen::MatrixXd> llt(jittered);
    bool ok = llt.info() == Eigen::Success;
    if (ok) {
      const Eigen::MatrixXd lower = llt.matrixL();
      ok = lower.allFinite() && (lower.diagonal().array() > 0.0).all();
      if (ok) {
        lower_.reserve(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j <= i; ++j) {
            lower_.push_back(lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
          }
        }
        return;
      }
    }
    const double next = jitter_ == 0.0 ? 1e-10 : jitter_ * 10.0;
    if (next > kMaxJitter * (1.0 + 1e-9)) {
      throw NumericFailure("gaussian process: covariance factorization failed");
    }
    jitter_ = next;
  }
}

std::vector<double> GaussianProcess::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return sample(rng);
}

std::vector<double> GaussianProcess::sample(std::mt19937_64& rng) const {
  const std::size_t n = grid_->size();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(n);
  for (double& v : z) v = normal(rng);
  std::vector<double> out(n);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += lower_[offset + j] * z[j];
    out[i] = acc;
    offset += i + 1;
  }
  return out;
}

SampledFunction sample_gp(const GPConfig& cfg) {
  const GaussianProcess gp(cfg.grid, cfg.jitter);
  return SampledFunction(cfg.grid, gp.sample(cfg.seed));
}

std::vector<double> gaussian_smooth(std::span<const double> values, const Grid& grid,
                                    double bandwidth) {
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "gaussian_smooth: bandwidth must be > 0");
  require(values.size() == grid.size(), "gaussian_smooth: one value per grid point required");
  const double scale = 1.0 / (2.0 * bandwidth * bandwidth);
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double u = grid[k] - grid[j];
      const double w = std::exp(-u * u * scale);
      num += w * values[j];
      den += w;
    }
    out[k] = num / den;
  }
  return out;
}

double interpolate_knots(std::span<const std::pair<double, double>> knots, double x) {
  require(!knots.empty(), "interpolate_knots: need at least one knot");
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const auto& [x1, y1] = knots[k];
    if (x <= x1) {
      const auto& [x0, y0] = knots[k - 1];
      if (x == x1) return y1;
      const double w = (x - x0) / (x1 - x0);
      return (1.0 - w) * y0 + w * y1;
    }
  }
  return knots.back().second;
}

ModelContext::ModelContext(std::shared_ptr<const Grid> grid, double bandwidth)
    : gp_(std::move(grid)), bandwidth_(bandwidth) {
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "model context: bandwidth must be > 0");
  const std::pair<double, double> knots[] = {{0.0, 2.0}, {0.2, 3.0}, {1.0, 0.0}};
  misaligned_ = smoothed_polyline(*gp_.grid(), knots, bandwidth_);
}

ModelContext::ModelContext(std::size_t grid_size, double bandwidth)
    : ModelContext(std::make_shared<const Grid>(make_uniform_grid(grid_size)), bandwidth) {}

std::vector<double> ModelContext::peak_template(double peak) const {
  require(0.0 < peak && peak < 1.0, "peak template: location must lie in (0, 1)");
  const std::pair<double, double> knots[] = {{0.0, 0.0}, {peak, 6.0}, {1.0, 0.0}};
  return smoothed_polyline(*grid(), knots, bandwidth_);
}

SampledFunction model1_curve(const ModelContext& ctx, bool is_outlier, double h1,
                             std::uint64_t seed) {
  const Grid& grid = *ctx.grid();
  auto values = ctx.gp().sample(seed);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double jump = is_outlier && grid[k] > 0.7 ? h1 : 0.0;
    values[k] = 4.0 * grid[k] + jump + values[k];
  }
  return SampledFunction(ctx.grid(), std::move(values));
}

SampledFunction model2_curve(const ModelContext& ctx, bool is_outlier, double h2, double w,
                             std::uint64_t seed) {
  require(w >= 0.0, "model 2: width must be >= 0");
  const Grid& grid = *ctx.grid();
  auto values = ctx.gp().sample(seed);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool inside = std::fabs(grid[k] - 0.5) <= w + kEdgeSlack;
    const double bump = is_outlier && inside ? h2 : 0.0;
    values[k] = 4.0 * grid[k] + bump + values[k];
  }
  return SampledFunction(ctx.grid(), std::move(values));
}

SampledFunction model3_curve(const ModelContext& ctx, double peak, std::uint64_t seed) {
  auto values = ctx.peak_template(peak);
  const auto noise = ctx.gp().sample(seed);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += 0.9 * noise[k];
  return SampledFunction(ctx.grid(), std::move(values));
}

SampledFunction model4_curve(const ModelContext& ctx, bool is_outlier, double t_peak,
                             double height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (!is_outlier) {
    t_peak = std::uniform_real_distribution<double>(0.7, 0.85)(rng);
    height = std::uniform_real_distribution<double>(3.0, 4.0)(rng);
  }
  require(0.06 <= t_peak && t_peak <= 0.94, "model 4: peak time must leave room for the spike");
  const Grid& grid = *ctx.grid();
  const auto noise = ctx.gp().sample(rng);
  const auto& smooth = ctx.misalignment_template();
  std::vector<double> outside(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) outside[k] = smooth[k] + 0.25 * noise[k];

  constexpr double half = 0.06;
  const std::pair<double, double> knots[] = {
      {t_peak - half, interpolate_grid(grid, outside, t_peak - half)},
      {t_peak, height},
      {t_peak + half, interpolate_grid(grid, outside, t_peak + half)}};
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = std::fabs(grid[k] - t_peak) <= half + kEdgeSlack
                    ? interpolate_knots(knots, grid[k])
                    : outside[k];
  }
  return SampledFunction(ctx.grid(), std::move(values));
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::jump:
      return "jump";
    case ModelKind::peak:
      return "peak";
    case ModelKind::phase:
      return "phase";
    case ModelKind::misalignment:
      return "misalignment";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "1" || text == "jump") return ModelKind::jump;
  if (text == "2" || text == "peak") return ModelKind::peak;
  if (text == "3" || text == "phase") return ModelKind::phase;
  if (text == "4" || text == "misalignment") return ModelKind::misalignment;
  throw std::invalid_argument("unknown model: " + text);
}

ModelKind kind_of(const OutlierParams& params) {
  return static_cast<ModelKind>(params.index() + 1);
}

std::string describe(const OutlierParams& params) {
  struct Visitor {
    std::string operator()(const JumpParams& p) const { return "H1=" + format_number(p.h1); }
    std::string operator()(const PeakParams& p) const {
      return "H2=" + format_number(p.h2) + ",W=" + format_number(p.w);
    }
    std::string operator()(const PhaseParams& p) const { return "P=" + format_number(p.p); }
    std::string operator()(const MisalignmentParams& p) const {
      return "T=" + format_number(p.t) + ",H=" + format_number(p.h);
    }
  };
  return std::visit(Visitor{}, params);
}

SampledFunction generate_curve(const ModelContext& ctx, const ModelSpec& spec) {
  if (spec.is_outlier && kind_of(spec.params) != spec.kind) {
    throw std::invalid_argument("generate_curve: outlier parameters do not match the model");
  }
  switch (spec.kind) {
    case ModelKind::jump: {
      const double h1 = spec.is_outlier ? std::get<JumpParams>(spec.params).h1 : 0.0;
      return model1_curve(ctx, spec.is_outlier, h1, spec.seed);
    }
    case ModelKind::peak: {
      const auto p = spec.is_outlier ? std::get<PeakParams>(spec.params) : PeakParams{};
      return model2_curve(ctx, spec.is_outlier, p.h2, p.w, spec.seed);
    }
    case ModelKind::phase: {
      const double peak = spec.is_outlier ? std::get<PhaseParams>(spec.params).p : 0.3;
      return model3_curve(ctx, peak, spec.seed);
    }
    case ModelKind::misalignment: {
      const auto p =
          spec.is_outlier ? std::get<MisalignmentParams>(spec.params) : MisalignmentParams{};
      return model4_curve(ctx, spec.is_outlier, p.t, p.h, spec.seed);
    }
  }
  throw std::invalid_argument("generate_curve: unknown model");
}

std::vector<OutlierParams> default_outliers(ModelKind kind) {
  switch (kind) {
    case ModelKind::jump:
      return {JumpParams{0.5}, JumpParams{1.0}, JumpParams{1.5}, JumpParams{2.0}};
    case ModelKind::peak:
      return {PeakParams{3.0, 0.05}, PeakParams{3.0, 0.1}, PeakParams{3.0, 0.15},
              PeakParams{3.0, 0.2}};
    case ModelKind::phase:
      return {PhaseParams{0.4}, PhaseParams{0.5}, PhaseParams{0.6}, PhaseParams{0.7}};
    case ModelKind::misalignment:
      return {MisalignmentParams{0.3, 3.5}, MisalignmentParams{0.425, 3.5},
              MisalignmentParams{0.55, 3.5}, MisalignmentParams{0.675, 3.5}};
  }
  throw std::invalid_argument("default_outliers: unknown model");
}

std::vector<ModelSpec> experiment_specs(const ExperimentConfig& cfg) {
  require(cfg.n_base >= 2, "experiment: need at least two base curves");
  const auto outliers = cfg.outliers.empty() ? default_outliers(cfg.model) : cfg.outliers;
  std::vector<ModelSpec> specs;
  specs.reserve(cfg.n_base + outliers.size());
  for (std::size_t i = 0; i < cfg.n_base; ++i) {
    specs.push_back({cfg.model, false, default_outliers(cfg.model).front(),
                     derive_seed(cfg.master_seed, i)});
  }
  const bool shared_noise = cfg.model == ModelKind::jump || cfg.model == ModelKind::peak;
  for (std::size_t k = 0; k < outliers.size(); ++k) {
    require(kind_of(outliers[k]) == cfg.model, "experiment: outlier parameters of another model");
    const std::uint64_t seed = shared_noise ? specs[k % cfg.n_base].seed
                                            : derive_seed(cfg.master_seed, cfg.n_base + k);
    specs.push_back({cfg.model, true, outliers[k], seed});
  }
  return specs;
}

Dataset generate_experiment(const ExperimentConfig& cfg) {
  const auto specs = experiment_specs(cfg);
  const ModelContext ctx(cfg.grid_size, cfg.bandwidth);
  std::vector<std::optional<SampledFunction>> curves(specs.size());
  parallel_for(specs.size(), cfg.threads,
               [&](std::size_t i) { curves[i].emplace(generate_curve(ctx, specs[i])); });

  Dataset data;
  data.n_base = cfg.n_base;
  char label[32];
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i < cfg.n_base) {
      std::snprintf(label, sizeof label, "base_%02zu", i + 1);
    } else {
      std::snprintf(label, sizeof label, "outlier_%02zu", i - cfg.n_base + 1);
    }
    data.labels.emplace_back(label);
    data.curves.push_back(std::move(*curves[i]));
  }
  return data;
}

}  // namespace ibmetric
