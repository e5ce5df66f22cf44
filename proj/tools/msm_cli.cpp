#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msm/experiments.hpp"
#include "msm/io.hpp"
#include "msm/quadrature.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitQuadrature = 3;

struct CommonArgs {
  std::vector<double> alphas;
  std::vector<std::size_t> n_values;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  std::string mode = "redraw";
  std::string source;
  std::string out = ".";
  double tol = 1e-6;
  std::string preset;
  unsigned threads = 0;
  bool dump_weights = false;
  bool dump_graphs = false;
  // tail-compare
  std::size_t samples = 0;
  // annealed-curve
  double a_min = 1e-4;
  double a_max = 1e3;
  std::size_t points = 60;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--alpha", args.alphas, "tail exponent(s) in (0, 1)")->delimiter(',');
  cmd->add_option("--n", args.n_values, "network sizes, comma separated")->delimiter(',');
  cmd->add_option("--reps", args.reps, "realizations per n")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--mode", args.mode, "redraw | fixed")->check(CLI::IsMember({"redraw", "fixed"}));
  cmd->add_option("--source", args.source, "pareto | stable")
      ->check(CLI::IsMember({"pareto", "stable"}));
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--tol", args.tol, "absolute quadrature tolerance");
  cmd->add_option("--preset", args.preset, "paper")->check(CLI::IsMember({"paper"}));
  cmd->add_option("--threads", args.threads, "worker threads (0: all cores)");
  cmd->add_flag("--dump-weights", args.dump_weights, "write every weight vector");
  cmd->add_flag("--dump-graphs", args.dump_graphs, "write every edge list");
}

const std::vector<double> kPresetAlphas = {0.3, 0.5, 0.7};
const std::vector<std::size_t> kPresetSizes = {100, 1000, 10000};

msm::RunOptions run_options(const CommonArgs& args, const std::filesystem::path& out) {
  msm::RunOptions o;
  o.out_dir = out;
  o.tol = args.tol;
  o.threads = args.threads;
  o.dump_weights = args.dump_weights;
  o.dump_graphs = args.dump_graphs;
  return o;
}

msm::ExperimentManifest base_manifest(const CommonArgs& args, double alpha,
                                      std::vector<std::size_t> n_values) {
  msm::ExperimentManifest m;
  m.alpha = alpha;
  m.n_values = std::move(n_values);
  m.realizations = args.reps;
  m.mode = msm::parse_sampling_mode(args.mode);
  m.source = args.source.empty() ? msm::WeightSource::Pareto
                                 : msm::parse_weight_source(args.source);
  m.seed = args.seed;
  return m;
}

double single_alpha(const std::vector<double>& alphas) {
  if (alphas.size() != 1) throw std::invalid_argument("this subcommand takes exactly one --alpha");
  return alphas.front();
}

void report(const msm::ExperimentManifest& m, const std::filesystem::path& out) {
  for (const auto& o : m.outputs) std::cout << (out / o.path).string() << '\n';
  std::cout << (out / "manifest.json").string() << '\n';
}

void clustering_function(CommonArgs args) {
  const bool use_preset = args.preset == "paper";
  if (args.reps == 0) args.reps = use_preset ? 10 : 1;
  if (args.alphas.empty()) args.alphas = use_preset ? kPresetAlphas : std::vector<double>{0.5};
  if (args.n_values.empty()) {
    if (!use_preset) throw std::invalid_argument("--n is required");
    args.n_values = kPresetSizes;
  }
  const bool grid = args.alphas.size() * args.n_values.size() > 1;
  for (double alpha : args.alphas) {
    for (std::size_t n : args.n_values) {
      std::filesystem::path out = args.out;
      if (grid) out /= "alpha" + msm::format_real(alpha) + "_n" + std::to_string(n);
      auto m = msm::run_clustering_function(base_manifest(args, alpha, {n}),
                                            run_options(args, out));
      report(m, out);
    }
  }
}

void avg_clustering(CommonArgs args) {
  const bool use_preset = args.preset == "paper";
  if (args.reps == 0) args.reps = use_preset ? 10 : 2;
  if (args.alphas.empty()) args.alphas = {0.5};
  if (args.n_values.empty()) {
    if (!use_preset) throw std::invalid_argument("--n is required");
    args.n_values = kPresetSizes;
  }
  auto m = msm::run_average_clustering_sweep(
      base_manifest(args, single_alpha(args.alphas), args.n_values), run_options(args, args.out));
  report(m, args.out);
}

void degree_fractions(CommonArgs args) {
  const bool use_preset = args.preset == "paper";
  if (args.reps == 0) args.reps = use_preset ? 10 : 2;
  if (args.alphas.empty()) args.alphas = {0.5};
  if (args.n_values.empty()) {
    if (!use_preset) throw std::invalid_argument("--n is required");
    args.n_values = kPresetSizes;
  }
  msm::RunOptions opts = run_options(args, args.out);
  if (args.source.empty()) {
    opts.sources = {msm::WeightSource::Pareto, msm::WeightSource::Stable};
  } else {
    opts.sources = {msm::parse_weight_source(args.source)};
  }
  auto m = msm::run_degree_fractions_sweep(
      base_manifest(args, single_alpha(args.alphas), args.n_values), opts);
  report(m, args.out);
}

void tail_compare(CommonArgs args) {
  if (args.reps == 0) args.reps = 1;
  if (args.alphas.empty()) args.alphas = kPresetAlphas;
  msm::RunOptions opts = run_options(args, args.out);
  opts.tail_alphas = args.alphas;
  if (args.samples > 0) opts.tail_samples = args.samples;
  auto m = msm::run_tail_comparison(base_manifest(args, args.alphas.front(), {}), opts);
  report(m, args.out);
}

void annealed_curve(CommonArgs args) {
  if (args.reps == 0) args.reps = 1;
  if (args.alphas.empty()) args.alphas = kPresetAlphas;
  msm::RunOptions opts = run_options(args, args.out);
  opts.curve_alphas = args.alphas;
  opts.a_min = args.a_min;
  opts.a_max = args.a_max;
  opts.curve_points = args.points;
  auto m = msm::run_annealed_curve(base_manifest(args, args.alphas.front(), {}), opts);
  report(m, args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-scale model simulations and annealed clustering theory"};
  app.set_version_flag("--version", std::string(msm::version()));
  app.require_subcommand(1);

  CommonArgs args;
  auto* cf = app.add_subcommand("clustering-function", "empirical C(k) profiles and the annealed curve");
  auto* avg = app.add_subcommand("avg-clustering", "average clustering and r01 sweep over n");
  auto* df = app.add_subcommand("degree-fractions", "r0 / r1: empirical, exact and approximate");
  auto* tc = app.add_subcommand("tail-compare", "Pareto vs one-sided stable tail CCDFs");
  auto* ac = app.add_subcommand("annealed-curve", "annealed clustering function on a log grid");
  for (auto* cmd : {cf, avg, df, tc, ac}) add_common(cmd, args);
  tc->add_option("--samples", args.samples, "samples per law (default 1e6, at least 1e5)");
  ac->add_option("--a-min", args.a_min, "smallest reduced degree");
  ac->add_option("--a-max", args.a_max, "largest reduced degree");
  ac->add_option("--points", args.points, "grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*cf) clustering_function(args);
    if (*avg) avg_clustering(args);
    if (*df) degree_fractions(args);
    if (*tc) tail_compare(args);
    if (*ac) annealed_curve(args);
  } catch (const msm::QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << " (best estimate "
              << e.best_estimate().value << " +- " << e.best_estimate().abs_error << ")\n";
    return kExitQuadrature;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
