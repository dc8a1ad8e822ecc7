// ibmetric: simulate datasets, compute integrated ball distances and
// profiles, reproduce the outlier experiments, run grid-refinement checks.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ibmetric/cli/commands.hpp"
#include "ibmetric/cli/csv_io.hpp"
#include "ibmetric/parallel.hpp"

namespace {

using namespace ibmetric;
using namespace ibmetric::cli;

struct Shared {
  std::string base = "hausdorff";
  std::string variant = "symmetric";
  std::string p = "2";
  std::string q = "2";
  std::string eps_grid;
  int threads = -1;
};

void add_metric_flags(CLI::App* cmd, Shared& s, bool with_base) {
  if (with_base) {
    cmd->add_option("--base", s.base, "Base distance")
        ->check(CLI::IsMember({"hausdorff", "frechet"}))
        ->capture_default_str();
  }
  cmd->add_option("--frechet-variant", s.variant, "Frechet coupling")
      ->check(CLI::IsMember({"symmetric", "one-sided"}))
      ->capture_default_str();
  cmd->add_option("--p", s.p, "Integration order (>= 1 or inf)")->capture_default_str();
  cmd->add_option("--q", s.q, "Point metric order (>= 1 or inf)")->capture_default_str();
}

void add_threads(CLI::App* cmd, Shared& s) {
  cmd->add_option("--threads", s.threads,
                  "Worker threads (0 = all cores; default $IBMETRIC_THREADS or all cores)");
}

unsigned resolve(const Shared& s) {
  if (s.threads >= 0) return resolve_threads(static_cast<unsigned>(s.threads));
  if (const char* env = std::getenv("IBMETRIC_THREADS")) {
    unsigned value = 0;
    const std::string text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw CliError(kExitUsage, "IBMETRIC_THREADS must be a nonnegative integer");
    }
    return resolve_threads(value);
  }
  return resolve_threads(0);
}

double order(const std::string& text) {
  try {
    return parse_order(text);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
}

BaseDistance base_of(const Shared& s) {
  return parse_base_distance(s.base, parse_frechet_variant(s.variant));
}

void add_outlier_flags(CLI::App* cmd, OutlierGrid& g, std::string& model) {
  cmd->add_option("--model", model, "Model: 1-4 or jump/peak/phase/misalignment")->required();
  cmd->add_option("--h1", g.h1, "Jump heights (model 1)");
  cmd->add_option("--h2", g.h2, "Peak heights (model 2)");
  cmd->add_option("--w", g.w, "Peak half-widths (model 2)");
  cmd->add_option("--peak", g.p, "Peak locations P (model 3)");
  cmd->add_option("--t", g.t, "Spike times T (model 4)");
  cmd->add_option("--height", g.h, "Spike heights H (model 4)");
  cmd->add_option("--n-outliers", g.n_outliers, "Copies of a single parameter combination")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated ball distances between sampled functions"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  Shared shared;
  std::string model = "1";

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a labelled dataset as wide CSV");
  add_outlier_flags(simulate, sim.outliers, model);
  simulate->add_option("--n-base", sim.n_base, "Base curves")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--grid-size", sim.grid_size, "Grid points")->capture_default_str();
  simulate->add_option("--bandwidth", sim.bandwidth, "Smoother bandwidth")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output CSV")->required();
  add_threads(simulate, shared);

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "Pairwise distance matrix of a dataset");
  dist_cmd->add_option("--in", dist.in, "Input CSV")->required();
  dist_cmd->add_option("--out", dist.out, "Output matrix CSV")->required();
  dist_cmd->add_option("--epsilon", dist.epsilon, "Ball radius")->capture_default_str();
  add_metric_flags(dist_cmd, shared, true);
  add_threads(dist_cmd, shared);

  ProfileOptions prof;
  auto* profile = app.add_subcommand("profile", "Averaged epsilon profile of one curve");
  profile->add_option("--in", prof.in, "Input CSV")->required();
  profile->add_option("--out", prof.out, "Output JSON")->required();
  profile->add_option("--target", prof.target, "Target label")->required();
  profile->add_option("--cohort-prefix", prof.cohort_prefix,
                      "Only curves whose label starts with this prefix form the cohort");
  profile->add_option("--eps-grid", shared.eps_grid, "Epsilon grid N:LO:HI (default 101:0:1)");
  add_metric_flags(profile, shared, true);
  add_threads(profile, shared);

  ReproduceOptions rep;
  std::string rep_model = "1";
  auto* reproduce = app.add_subcommand("reproduce", "Run one simulated outlier experiment");
  add_outlier_flags(reproduce, rep.outliers, rep_model);
  reproduce->add_option("--out", rep.out_dir, "Output directory")->required();
  reproduce->add_option("--seed", rep.seed, "Master seed")->capture_default_str();
  reproduce->add_option("--n-base", rep.n_base, "Base curves")->capture_default_str();
  reproduce->add_option("--grid-size", rep.grid_size, "Grid points")->capture_default_str();
  reproduce->add_option("--bandwidth", rep.bandwidth, "Smoother bandwidth")->capture_default_str();
  reproduce->add_option("--eps-grid", shared.eps_grid, "Epsilon grid N:LO:HI (default 101:0:1)");
  add_metric_flags(reproduce, shared, false);
  add_threads(reproduce, shared);

  ConvergeOptions conv;
  std::string weights = "uniform";
  auto* converge = app.add_subcommand("converge", "Integrated distance under grid refinement");
  converge->add_option("--pair", conv.pair, "sine-shift, constant or identical")
      ->capture_default_str();
  converge->add_option("--sizes", conv.sizes, "Increasing grid sizes");
  converge->add_option("--epsilon", conv.epsilon, "Ball radius")->capture_default_str();
  converge->add_option("--weights", weights, "Grid weights")
      ->check(CLI::IsMember({"uniform", "trapezoid"}))
      ->capture_default_str();
  converge->add_option("--out", conv.out, "Output JSON")->required();
  add_metric_flags(converge, shared, true);
  add_threads(converge, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const unsigned threads = resolve(shared);
    if (simulate->parsed()) {
      sim.model = parse_model_kind(model);
      sim.threads = threads;
      cmd_simulate(sim);
    } else if (dist_cmd->parsed()) {
      dist.base = base_of(shared);
      dist.p = order(shared.p);
      dist.q = order(shared.q);
      dist.threads = threads;
      cmd_dist(dist);
    } else if (profile->parsed()) {
      prof.base = base_of(shared);
      prof.p = order(shared.p);
      prof.q = order(shared.q);
      if (!shared.eps_grid.empty()) prof.epsilons = parse_eps_grid(shared.eps_grid);
      prof.threads = threads;
      cmd_profile(prof);
    } else if (reproduce->parsed()) {
      rep.model = parse_model_kind(rep_model);
      rep.variant = parse_frechet_variant(shared.variant);
      rep.p = order(shared.p);
      rep.q = order(shared.q);
      if (!shared.eps_grid.empty()) rep.epsilons = parse_eps_grid(shared.eps_grid);
      rep.threads = threads;
      cmd_reproduce(rep);
    } else if (converge->parsed()) {
      conv.base = base_of(shared);
      conv.p = order(shared.p);
      conv.q = order(shared.q);
      conv.weights = weights == "uniform" ? WeightScheme::uniform : WeightScheme::trapezoid;
      conv.threads = threads;
      cmd_converge(conv);
    }
  } catch (const CliError& e) {
    std::cerr << "ibmetric: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "ibmetric: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
