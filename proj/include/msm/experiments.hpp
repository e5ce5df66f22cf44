#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/clustering.hpp"
#include "msm/degree_fractions.hpp"
#include "msm/graph.hpp"
#include "msm/rng.hpp"
#include "msm/weights.hpp"

namespace msm {

std::string_view version();

enum class ExperimentKind {
  ClusteringFunction,
  AverageClusteringSweep,
  DegreeFractionsSweep,
  TailComparison,
  AnnealedCurveOnly,
};

// RedrawWeights: fresh weights for every realization.
// FixedWeights: one weight vector per n, only the graph is redrawn.
enum class SamplingMode { RedrawWeights, FixedWeights };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view text);

struct OutputRecord {
  std::string path;  // relative to the output directory
  std::string kind;
};

struct ExperimentManifest {
  ExperimentKind experiment = ExperimentKind::ClusteringFunction;
  double alpha = 0.5;
  std::vector<std::size_t> n_values;
  std::size_t realizations = 1;
  SamplingMode mode = SamplingMode::RedrawWeights;
  WeightSource source = WeightSource::Pareto;
  std::uint64_t seed = 1;
  std::vector<OutputRecord> outputs;
};

// Throws std::invalid_argument.
void validate(const ExperimentManifest& manifest);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  double tol = 1e-6;
  unsigned threads = 0;  // 0: hardware concurrency
  bool dump_weights = false;
  bool dump_graphs = false;
  // degree-fractions: sources to run (empty: manifest.source)
  std::vector<WeightSource> sources;
  // tail-compare
  std::size_t tail_samples = 1'000'000;
  std::vector<double> tail_alphas;  // empty: manifest.alpha
  std::size_t ccdf_points = 200;
  // annealed-curve
  double a_min = 1e-4;
  double a_max = 1e3;
  std::size_t curve_points = 60;
  std::vector<double> curve_alphas;  // empty: manifest.alpha
};

struct RealizationStreams {
  std::uint64_t seed;  // identifies the realization; goes in the seed column
  RngStream weights;
  RngStream graph;
};

RealizationStreams realization_streams(std::uint64_t seed, std::size_t n, std::size_t rep,
                                       SamplingMode mode, WeightSource source);

struct RealizationRecord {
  std::size_t n = 0;
  std::size_t rep = 0;
  double alpha = 0.5;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::RedrawWeights;
  WeightSource source = WeightSource::Pareto;

  DegreeFractions empirical;
  std::optional<DegreeFractions> exact;
  DegreeFractions approx;
  std::size_t approx_skipped = 0;
  bool approx_clamped = false;

  std::optional<double> c_excl;
  std::optional<double> c_incl;
  std::optional<double> global;
  std::size_t edges = 0;
  double s_n = 0.0;
  ClusteringProfile profile;

  std::optional<WeightVector> weights;
  std::optional<Graph> graph;
};

struct SimulationOptions {
  bool exact = true;  // O(n^2) conditional fractions
  bool keep_weights = false;
  bool keep_graph = false;
  unsigned graph_threads = 1;
};

RealizationRecord simulate_realization(double alpha, WeightSource source, SamplingMode mode,
                                       std::uint64_t seed, std::size_t n, std::size_t rep,
                                       const SimulationOptions& options = {});

// All (n, rep) pairs of the manifest on a pool of `threads` workers, returned in
// (n, rep) order.
std::vector<RealizationRecord> simulate_all(const ExperimentManifest& manifest,
                                            const SimulationOptions& options,
                                            unsigned threads);

struct MetricSummary {
  std::size_t n = 0;
  SamplingMode mode = SamplingMode::RedrawWeights;
  std::string metric;
  std::optional<double> mean;
  std::optional<double> std;  // needs two defined values
  std::size_t count = 0;
};

// Rows grouped by n (ascending), then metric in a fixed order.
std::vector<MetricSummary> summarize(const std::vector<RealizationRecord>& records);

std::string realizations_csv(const std::vector<RealizationRecord>& records);
std::string summary_csv(const std::vector<MetricSummary>& rows, double alpha,
                        WeightSource source);

struct TailRow {
  double alpha = 0.5;
  double x = 0.0;
  double ccdf_pareto = 0.0;
  double ccdf_stable = 0.0;
};

struct TailSummary {
  double alpha = 0.5;
  std::size_t samples = 0;
  double w99 = 0.0;  // empirical 99th percentile of the Pareto sample
  double ccdf_pareto = 0.0;
  double ccdf_stable = 0.0;
  double ratio = 0.0;  // stable / Pareto at w99
};

struct TailComparison {
  std::vector<TailRow> rows;
  std::vector<TailSummary> summary;
};

// Fraction of `sorted` strictly above x.
double empirical_ccdf(const std::vector<double>& sorted, double x);

TailComparison compare_tails(const std::vector<double>& alphas, std::size_t samples,
                             std::size_t grid_points, const RngStream& stream);

// Runners write into options.out_dir (created if needed) and return the manifest
// with its output registry filled. manifest.json is written last, or with
// status "failed" and the partial registry when an error interrupts the run.
ExperimentManifest run_clustering_function(ExperimentManifest manifest, const RunOptions& options);
ExperimentManifest run_average_clustering_sweep(ExperimentManifest manifest,
                                                const RunOptions& options);
ExperimentManifest run_degree_fractions_sweep(ExperimentManifest manifest,
                                              const RunOptions& options);
ExperimentManifest run_tail_comparison(ExperimentManifest manifest, const RunOptions& options);
ExperimentManifest run_annealed_curve(ExperimentManifest manifest, const RunOptions& options);

ExperimentManifest run_experiment(ExperimentManifest manifest, const RunOptions& options);

}  // namespace msm
