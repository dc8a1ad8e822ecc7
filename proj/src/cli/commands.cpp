#include "ibmetric/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ibmetric/cli/csv_io.hpp"
#include "json.hpp"

namespace ibmetric::cli {

namespace {

using Json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitIo, "cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw CliError(kExitIo, "write failed: " + path);
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitIo, "cannot open for reading: " + path);
  return read_dataset_csv(in);
}

void require_common_dim(const Dataset& data) {
  for (const auto& c : data.curves) {
    if (c.dim() != data.curves.front().dim()) {
      throw CliError(kExitGrid, "curves have different value dimensions");
    }
  }
}

Json order_json(double order) {
  if (order == kInf) return "inf";
  return order;
}

Json profile_json(const BaseDistance& base, double p, double q, const std::string& target,
                  const std::vector<double>& epsilons, const std::vector<double>& target_vs_cohort,
                  const std::vector<double>& pairwise, std::size_t cohort_size) {
  Json j;
  j["base"] = to_string(base);
  if (base.kind == BaseDistance::Kind::frechet) j["frechet_variant"] = to_string(base.variant);
  j["p"] = order_json(p);
  j["q"] = order_json(q);
  j["target"] = target;
  j["cohort_size"] = cohort_size;
  j["epsilons"] = epsilons;
  j["target_vs_cohort"] = target_vs_cohort;
  j["cohort_pairwise_mean"] = pairwise;
  return j;
}

void check_range(const std::vector<double>& values, double lo, double hi, const char* name) {
  for (const double v : values) {
    if (!(lo <= v && v <= hi)) {
      std::ostringstream msg;
      msg << name << " must lie in [" << lo << ", " << hi << "]";
      throw CliError(kExitUsage, msg.str());
    }
  }
}

std::vector<double> or_default(const std::vector<double>& values, double fallback) {
  return values.empty() ? std::vector<double>{fallback} : values;
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw CliError(kExitUsage, "eps grid must be N:LO:HI");
  const std::string parts[] = {text.substr(0, first), text.substr(first + 1, second - first - 1),
                               text.substr(second + 1)};
  std::size_t count = 0;
  double lo = 0.0;
  double hi = 0.0;
  const auto parse = [&](const std::string& s, auto& value) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw CliError(kExitUsage, "eps grid must be N:LO:HI, got " + text);
    }
  };
  parse(parts[0], count);
  parse(parts[1], lo);
  parse(parts[2], hi);
  try {
    return uniform_epsilon_grid(count, lo, hi);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
}

std::vector<OutlierParams> expand_outliers(ModelKind model, const OutlierGrid& grid) {
  const auto reject = [&](const std::vector<double>& v, const char* name) {
    if (!v.empty()) {
      throw CliError(kExitUsage, std::string(name) + " does not apply to model " + to_string(model));
    }
  };
  std::vector<OutlierParams> out;
  bool any = false;
  switch (model) {
    case ModelKind::jump:
      reject(grid.h2, "--h2");
      reject(grid.w, "--w");
      reject(grid.p, "--peak");
      reject(grid.t, "--t");
      reject(grid.h, "--height");
      any = !grid.h1.empty();
      check_range(grid.h1, 0.0, 2.0, "H1");
      for (const double h1 : grid.h1) out.push_back(JumpParams{h1});
      break;
    case ModelKind::peak:
      reject(grid.h1, "--h1");
      reject(grid.p, "--peak");
      reject(grid.t, "--t");
      reject(grid.h, "--height");
      any = !grid.h2.empty() || !grid.w.empty();
      check_range(grid.h2, 0.5, 3.0, "H2");
      check_range(grid.w, 0.0, 0.2, "W");
      for (const double h2 : or_default(grid.h2, PeakParams{}.h2)) {
        for (const double w : or_default(grid.w, PeakParams{}.w)) out.push_back(PeakParams{h2, w});
      }
      break;
    case ModelKind::phase:
      reject(grid.h1, "--h1");
      reject(grid.h2, "--h2");
      reject(grid.w, "--w");
      reject(grid.t, "--t");
      reject(grid.h, "--height");
      any = !grid.p.empty();
      check_range(grid.p, 0.3, 0.7, "P");
      for (const double p : grid.p) out.push_back(PhaseParams{p});
      break;
    case ModelKind::misalignment:
      reject(grid.h1, "--h1");
      reject(grid.h2, "--h2");
      reject(grid.w, "--w");
      reject(grid.p, "--peak");
      any = !grid.t.empty() || !grid.h.empty();
      check_range(grid.t, 0.3, 0.8, "T");
      check_range(grid.h, 0.0, 10.0, "H");
      for (const double t : or_default(grid.t, MisalignmentParams{}.t)) {
        for (const double h : or_default(grid.h, MisalignmentParams{}.h)) {
          out.push_back(MisalignmentParams{t, h});
        }
      }
      break;
  }
  if (!any) return default_outliers(model);
  if (out.size() == 1) out.assign(grid.n_outliers, out.front());
  if (out.empty()) throw CliError(kExitUsage, "no outliers requested");
  return out;
}

void cmd_simulate(const SimulateOptions& opt) {
  ExperimentConfig cfg;
  cfg.model = opt.model;
  cfg.n_base = opt.n_base;
  cfg.outliers = expand_outliers(opt.model, opt.outliers);
  cfg.master_seed = opt.seed;
  cfg.grid_size = opt.grid_size;
  cfg.bandwidth = opt.bandwidth;
  cfg.threads = opt.threads;
  const auto data = generate_experiment(cfg);
  std::ostringstream text;
  write_dataset_csv(text, data);
  write_text(opt.out, text.str());
}

void cmd_dist(const DistOptions& opt) {
  const auto data = read_dataset_file(opt.in);
  if (data.size() < 2) throw CliError(kExitParse, "need at least two curves");
  require_common_dim(data);
  const MetricConfig cfg{opt.q, opt.p, opt.epsilon};
  const auto matrix = distance_matrix(data.curves, opt.base, cfg, opt.threads);
  std::ostringstream text;
  write_matrix_csv(text, data.labels, matrix);
  write_text(opt.out, text.str());
}

void cmd_profile(const ProfileOptions& opt) {
  const auto data = read_dataset_file(opt.in);
  require_common_dim(data);
  const auto target = data.index_of(opt.target);
  if (!target) throw CliError(kExitLabel, "unknown label: " + opt.target);
  std::vector<SampledFunction> cohort;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i != *target && data.labels[i].starts_with(opt.cohort_prefix)) {
      cohort.push_back(data.curves[i]);
    }
  }
  if (cohort.empty()) throw CliError(kExitLabel, "cohort is empty");
  const auto avg = average_profile(data.curves[*target], cohort, opt.base, opt.epsilons, opt.p,
                                   opt.q, opt.threads);
  std::vector<double> pairwise;
  if (cohort.size() >= 2) {
    pairwise = cohort_pairwise_mean(cohort, opt.base, opt.epsilons, opt.p, opt.q, opt.threads);
  }
  const auto j = profile_json(opt.base, opt.p, opt.q, opt.target, opt.epsilons, avg.distances,
                              pairwise, cohort.size());
  write_text(opt.out, j.dump(2) + "\n");
}

void cmd_reproduce(const ReproduceOptions& opt) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec || !fs::is_directory(opt.out_dir)) {
    throw CliError(kExitIo, "cannot create output directory: " + opt.out_dir);
  }
  const fs::path dir(opt.out_dir);

  ExperimentConfig cfg;
  cfg.model = opt.model;
  cfg.n_base = opt.n_base;
  cfg.outliers = expand_outliers(opt.model, opt.outliers);
  cfg.master_seed = opt.seed;
  cfg.grid_size = opt.grid_size;
  cfg.bandwidth = opt.bandwidth;
  cfg.threads = opt.threads;
  const auto data = generate_experiment(cfg);
  {
    std::ostringstream text;
    write_dataset_csv(text, data);
    write_text((dir / "dataset.csv").string(), text.str());
  }

  const std::span<const SampledFunction> cohort(data.curves.data(), data.n_base);
  Json manifest;
  manifest["model"] = to_string(opt.model);
  manifest["master_seed"] = opt.seed;
  manifest["n_base"] = opt.n_base;
  manifest["grid_size"] = opt.grid_size;
  manifest["bandwidth"] = opt.bandwidth;
  manifest["p"] = order_json(opt.p);
  manifest["q"] = order_json(opt.q);
  manifest["epsilon_count"] = opt.epsilons.size();
  manifest["dataset"] = "dataset.csv";
  Json outliers = Json::array();
  for (std::size_t k = 0; k < cfg.outliers.size(); ++k) {
    outliers.push_back({{"label", data.labels[data.n_base + k]},
                        {"params", describe(cfg.outliers[k])}});
  }
  manifest["outliers"] = outliers;

  Json profiles = Json::array();
  for (const auto base : {BaseDistance::hausdorff(), BaseDistance::frechet(opt.variant)}) {
    const auto pairwise = cohort_pairwise_mean(cohort, base, opt.epsilons, opt.p, opt.q, opt.threads);
    for (std::size_t k = 0; k < cfg.outliers.size(); ++k) {
      const std::size_t index = data.n_base + k;
      const auto& label = data.labels[index];
      const auto avg = average_profile(data.curves[index], cohort, base, opt.epsilons, opt.p,
                                       opt.q, opt.threads);
      auto j = profile_json(base, opt.p, opt.q, label, opt.epsilons, avg.distances, pairwise,
                            cohort.size());
      j["model"] = to_string(opt.model);
      j["outlier_params"] = describe(cfg.outliers[k]);
      const std::string file = to_string(base) + "_" + label + ".json";
      write_text((dir / file).string(), j.dump(2) + "\n");
      profiles.push_back({{"base", to_string(base)}, {"target", label}, {"file", file}});
    }
  }
  manifest["profiles"] = profiles;
  write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

std::pair<FunctionRule, FunctionRule> analytic_pair(const std::string& name) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (name == "sine-shift") {
    return {[](double t) { return std::sin(two_pi * t); },
            [](double t) { return std::sin(two_pi * (t - 0.1)); }};
  }
  if (name == "constant") {
    return {[](double) { return 0.0; }, [](double) { return 1.0; }};
  }
  if (name == "identical") {
    return {[](double t) { return std::sin(two_pi * t); },
            [](double t) { return std::sin(two_pi * t); }};
  }
  throw CliError(kExitUsage, "unknown analytic pair: " + name);
}

void cmd_converge(const ConvergeOptions& opt) {
  const auto [f, g] = analytic_pair(opt.pair);
  const MetricConfig cfg{opt.q, opt.p, opt.epsilon};
  const auto report = convergence_report(f, g, opt.sizes, opt.base, cfg, opt.weights, opt.threads);
  Json j;
  j["pair"] = opt.pair;
  j["base"] = to_string(opt.base);
  if (opt.base.kind == BaseDistance::Kind::frechet) j["frechet_variant"] = to_string(opt.base.variant);
  j["epsilon"] = opt.epsilon;
  j["p"] = order_json(opt.p);
  j["q"] = order_json(opt.q);
  j["weights"] = opt.weights == WeightScheme::uniform ? "uniform" : "trapezoid";
  j["grid_sizes"] = report.grid_sizes;
  j["values"] = report.values;
  j["successive_deltas"] = report.successive_deltas;
  write_text(opt.out, j.dump(2) + "\n");
}

}  // namespace ibmetric::cli
