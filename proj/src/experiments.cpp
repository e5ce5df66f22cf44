#include "msm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "msm/annealed.hpp"
#include "msm/io.hpp"

#ifndef MSM_VERSION
#define MSM_VERSION "0.1.0"
#endif

namespace msm {

std::string_view version() { return MSM_VERSION; }

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ClusteringFunction: return "clustering-function";
    case ExperimentKind::AverageClusteringSweep: return "avg-clustering";
    case ExperimentKind::DegreeFractionsSweep: return "degree-fractions";
    case ExperimentKind::TailComparison: return "tail-compare";
    case ExperimentKind::AnnealedCurveOnly: return "annealed-curve";
  }
  return "unknown";
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::RedrawWeights ? "redraw" : "fixed";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "redraw") return SamplingMode::RedrawWeights;
  if (text == "fixed") return SamplingMode::FixedWeights;
  throw std::invalid_argument("unknown sampling mode '" + std::string(text) + "'");
}

void validate(const ExperimentManifest& m) {
  if (!(m.alpha > 0.0 && m.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (m.realizations < 1) throw std::invalid_argument("realizations must be at least 1");
  const bool needs_n = m.experiment == ExperimentKind::ClusteringFunction ||
                       m.experiment == ExperimentKind::AverageClusteringSweep ||
                       m.experiment == ExperimentKind::DegreeFractionsSweep;
  if (!needs_n) return;
  if (m.n_values.empty()) throw std::invalid_argument("at least one n is required");
  for (std::size_t i = 0; i < m.n_values.size(); ++i) {
    if (m.n_values[i] < 2) throw std::invalid_argument("every n must be at least 2");
    if (m.n_values[i] > std::numeric_limits<NodeId>::max()) {
      throw std::invalid_argument("n too large for 32-bit node ids");
    }
    if (i > 0 && !(m.n_values[i] > m.n_values[i - 1])) {
      throw std::invalid_argument("n values must be strictly ascending");
    }
  }
  if (m.experiment == ExperimentKind::ClusteringFunction && m.n_values.size() != 1) {
    throw std::invalid_argument("clustering-function takes a single n per run");
  }
}

RealizationStreams realization_streams(std::uint64_t seed, std::size_t n, std::size_t rep,
                                       SamplingMode mode, WeightSource source) {
  const RngStream per_n = RngStream(seed).substream(n);
  const RngStream realization = per_n.substream(rep);
  const RngStream weight_root =
      mode == SamplingMode::FixedWeights ? per_n : realization;
  return {realization.key(), weight_root.substream("weights").substream(to_string(source)),
          realization.substream("graph")};
}

RealizationRecord simulate_realization(double alpha, WeightSource source, SamplingMode mode,
                                       std::uint64_t seed, std::size_t n, std::size_t rep,
                                       const SimulationOptions& options) {
  const RealizationStreams streams = realization_streams(seed, n, rep, mode, source);
  RealizationRecord rec;
  rec.n = n;
  rec.rep = rep;
  rec.alpha = alpha;
  rec.seed = streams.seed;
  rec.mode = mode;
  rec.source = source;

  WeightVector weights = sample_weights(source, alpha, n, streams.weights);
  Graph graph = sample_graph(weights, streams.graph, options.graph_threads);
  const auto nodes = node_clustering(graph);
  rec.c_excl = average_clustering(nodes, LowDegreeConvention::Exclude);
  rec.c_incl = average_clustering(nodes, LowDegreeConvention::Zero);
  rec.global = global_clustering(nodes);
  rec.profile = empirical_clustering_function(nodes);
  rec.edges = graph.num_edges();
  rec.empirical = empirical_fractions(graph);
  if (options.exact) rec.exact = exact_conditional_fractions(weights);
  const RescaledWeights rescaled = rescaled_quantities(weights);
  rec.s_n = rescaled.s_n;
  const GammaApproxFractions approx = approx_fractions(rescaled, alpha);
  rec.approx = approx.fractions;
  rec.approx_skipped = approx.skipped_terms;
  rec.approx_clamped = approx.clamped;
  if (options.keep_weights) rec.weights = std::move(weights);
  if (options.keep_graph) rec.graph = std::move(graph);
  return rec;
}

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

std::string alpha_tag(double alpha) { return format_real(alpha); }

}  // namespace

std::vector<RealizationRecord> simulate_all(const ExperimentManifest& manifest,
                                            const SimulationOptions& options,
                                            unsigned threads) {
  validate(manifest);
  const std::size_t reps = manifest.realizations;
  std::vector<RealizationRecord> out(manifest.n_values.size() * reps);
  parallel_for(out.size(), threads, [&](std::size_t task) {
    const std::size_t n = manifest.n_values[task / reps];
    out[task] = simulate_realization(manifest.alpha, manifest.source, manifest.mode,
                                     manifest.seed, n, task % reps, options);
  });
  return out;
}

std::vector<MetricSummary> summarize(const std::vector<RealizationRecord>& records) {
  using Getter = std::optional<double> (*)(const RealizationRecord&);
  struct Metric {
    const char* name;
    Getter get;
  };
  static const Metric metrics[] = {
      {"c_excl", [](const RealizationRecord& r) { return r.c_excl; }},
      {"c_incl", [](const RealizationRecord& r) { return r.c_incl; }},
      {"one_minus_r01_emp",
       [](const RealizationRecord& r) -> std::optional<double> { return 1.0 - r.empirical.r01; }},
      {"one_minus_r01_exact",
       [](const RealizationRecord& r) -> std::optional<double> {
         if (!r.exact) return std::nullopt;
         return 1.0 - r.exact->r01;
       }},
      {"one_minus_r01_approx",
       [](const RealizationRecord& r) -> std::optional<double> { return 1.0 - r.approx.r01; }},
      {"r0_emp", [](const RealizationRecord& r) -> std::optional<double> { return r.empirical.r0; }},
      {"r0_exact",
       [](const RealizationRecord& r) -> std::optional<double> {
         if (!r.exact) return std::nullopt;
         return r.exact->r0;
       }},
      {"r0_approx", [](const RealizationRecord& r) -> std::optional<double> { return r.approx.r0; }},
      {"r1_emp", [](const RealizationRecord& r) -> std::optional<double> { return r.empirical.r1; }},
      {"r1_exact",
       [](const RealizationRecord& r) -> std::optional<double> {
         if (!r.exact) return std::nullopt;
         return r.exact->r1;
       }},
      {"r1_approx", [](const RealizationRecord& r) -> std::optional<double> { return r.approx.r1; }},
  };

  std::vector<std::size_t> ns;
  for (const auto& r : records) ns.push_back(r.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<MetricSummary> rows;
  for (std::size_t n : ns) {
    for (const Metric& m : metrics) {
      std::vector<double> values;
      SamplingMode mode = SamplingMode::RedrawWeights;
      for (const auto& r : records) {
        if (r.n != n) continue;
        mode = r.mode;
        if (auto v = m.get(r)) values.push_back(*v);
      }
      MetricSummary row;
      row.n = n;
      row.mode = mode;
      row.metric = m.name;
      row.count = values.size();
      if (values.size() == 1) row.mean = values[0];
      if (values.size() >= 2) {
        const SampleStats s = self_averaging_stats(values);
        row.mean = s.mean;
        row.std = s.std;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string realizations_csv(const std::vector<RealizationRecord>& records) {
  CsvWriter csv({"n", "alpha", "seed", "mode", "r0_emp", "r1_emp", "r0_exact", "r1_exact",
                 "r0_approx", "r1_approx", "c_excl", "c_incl"});
  for (const auto& r : records) {
    std::optional<double> r0x;
    std::optional<double> r1x;
    if (r.exact) {
      r0x = r.exact->r0;
      r1x = r.exact->r1;
    }
    csv.row({std::to_string(r.n), format_real(r.alpha), std::to_string(r.seed),
             std::string(to_string(r.mode)), format_real(r.empirical.r0),
             format_real(r.empirical.r1), format_real(r0x), format_real(r1x),
             format_real(r.approx.r0), format_real(r.approx.r1), format_real(r.c_excl),
             format_real(r.c_incl)});
  }
  return csv.text();
}

std::string summary_csv(const std::vector<MetricSummary>& rows, double alpha,
                        WeightSource source) {
  CsvWriter csv({"n", "alpha", "mode", "source", "metric", "mean", "std", "count"});
  for (const auto& row : rows) {
    csv.row({std::to_string(row.n), format_real(alpha), std::string(to_string(row.mode)),
             std::string(to_string(source)), row.metric, format_real(row.mean),
             format_real(row.std), std::to_string(row.count)});
  }
  return csv.text();
}

double empirical_ccdf(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return 0.0;
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

TailComparison compare_tails(const std::vector<double>& alphas, std::size_t samples,
                             std::size_t grid_points, const RngStream& stream) {
  if (samples < 100) throw std::invalid_argument("compare_tails: need at least 100 samples");
  if (grid_points < 2) throw std::invalid_argument("compare_tails: need at least 2 grid points");
  TailComparison out;
  for (double alpha : alphas) {
    validate_alpha(alpha, "compare_tails");
    const RngStream per_alpha = stream.substream(std::bit_cast<std::uint64_t>(alpha));
    std::vector<double> pareto = sample_pareto(alpha, samples, per_alpha.substream("pareto")).values;
    std::vector<double> stable =
        sample_weights(WeightSource::Stable, alpha, samples, per_alpha.substream("stable")).values;
    std::sort(pareto.begin(), pareto.end());
    std::sort(stable.begin(), stable.end());

    const double hi = std::max(pareto.back(), stable.back());
    std::vector<double> grid = log_grid(0.1, std::max(hi, 1.0), grid_points);
    grid.push_back(std::nextafter(1.0, 0.0));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (double x : grid) {
      out.rows.push_back({alpha, x, empirical_ccdf(pareto, x), empirical_ccdf(stable, x)});
    }

    TailSummary s;
    s.alpha = alpha;
    s.samples = samples;
    const auto idx = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(samples))) - 1;
    s.w99 = pareto[idx];
    s.ccdf_pareto = empirical_ccdf(pareto, s.w99);
    s.ccdf_stable = empirical_ccdf(stable, s.w99);
    s.ratio = s.ccdf_stable / s.ccdf_pareto;
    out.summary.push_back(s);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

void register_and_write(ExperimentManifest& manifest, const RunOptions& options,
                        const std::string& name, const std::string& kind,
                        const std::string& text) {
  manifest.outputs.push_back({name, kind});
  write_text_file(options.out_dir / name, text);
}

void write_manifest(const ExperimentManifest& m, const RunOptions& options, double runtime,
                    const std::string& status, const std::string& error) {
  nlohmann::ordered_json j;
  j["experiment"] = std::string(to_string(m.experiment));
  j["alpha"] = m.alpha;
  j["n_values"] = m.n_values;
  j["realizations"] = m.realizations;
  j["mode"] = std::string(to_string(m.mode));
  j["source"] = std::string(to_string(m.source));
  j["seed"] = m.seed;
  j["tol"] = options.tol;
  if (m.experiment == ExperimentKind::DegreeFractionsSweep) {
    auto& sources = j["sources"] = nlohmann::ordered_json::array();
    for (auto s : options.sources) sources.push_back(std::string(to_string(s)));
  }
  if (m.experiment == ExperimentKind::TailComparison) {
    j["tail_samples"] = options.tail_samples;
    j["tail_alphas"] = options.tail_alphas;
  }
  if (m.experiment == ExperimentKind::AnnealedCurveOnly) {
    j["a_min"] = options.a_min;
    j["a_max"] = options.a_max;
    j["points"] = options.curve_points;
    j["curve_alphas"] = options.curve_alphas;
  }
  j["version"] = std::string(version());
  j["runtime_seconds"] = runtime;
  j["status"] = status;
  if (!error.empty()) j["error"] = error;
  auto& outputs = j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"path", o.path}, {"kind", o.kind}});
  write_text_file(options.out_dir / "manifest.json", j.dump(2) + "\n");
}

template <class Body>
ExperimentManifest guarded_run(ExperimentManifest manifest, const RunOptions& options,
                               Body body) {
  validate(manifest);
  manifest.outputs.clear();
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  try {
    body(manifest);
  } catch (const std::exception& e) {
    try {
      write_manifest(manifest, options, elapsed(), "failed", e.what());
    } catch (...) {
    }
    throw;
  }
  write_manifest(manifest, options, elapsed(), "complete", "");
  return manifest;
}

void dump_realization(ExperimentManifest& manifest, const RunOptions& options,
                      const RealizationRecord& rec) {
  const std::string stem = "n" + std::to_string(rec.n) + "_" +
                           std::string(to_string(rec.source)) + "_r" + std::to_string(rec.rep);
  if (rec.weights) {
    register_and_write(manifest, options, "weights_" + stem + ".csv", "weights",
                       weights_csv(*rec.weights));
  }
  if (rec.graph) {
    register_and_write(manifest, options, "edges_" + stem + ".csv", "edge-list",
                       edge_list_csv(*rec.graph));
    register_and_write(manifest, options, "edges_" + stem + ".json", "edge-list-sidecar",
                       graph_sidecar_json({rec.n, rec.alpha, rec.seed, rec.source, rec.s_n}));
  }
}

SimulationOptions simulation_options(const RunOptions& options, bool exact) {
  SimulationOptions sim;
  sim.exact = exact;
  sim.keep_weights = options.dump_weights;
  sim.keep_graph = options.dump_graphs;
  return sim;
}

}  // namespace

ExperimentManifest run_clustering_function(ExperimentManifest manifest,
                                           const RunOptions& options) {
  manifest.experiment = ExperimentKind::ClusteringFunction;
  return guarded_run(std::move(manifest), options, [&](ExperimentManifest& m) {
    const auto records = simulate_all(m, simulation_options(options, false), options.threads);
    const std::size_t n = m.n_values.front();
    const std::string cell = "n" + std::to_string(n) + "_alpha" + alpha_tag(m.alpha);
    std::size_t k_max = 2;
    for (const auto& rec : records) {
      if (!rec.profile.empty()) k_max = std::max(k_max, rec.profile.per_degree.rbegin()->first);
      register_and_write(m, options, "profile_" + cell + "_r" + std::to_string(rec.rep) + ".csv",
                         "profile", profile_csv(rec.profile));
      dump_realization(m, options, rec);
    }
    const double a_max = std::max(1.0, reduced_degree(k_max, n));
    const auto grid = curve_grid(2, n, a_max, options.curve_points);
    register_and_write(m, options, "curve_" + cell + ".csv", "curve",
                       curve_csv(annealed_curve(grid, m.alpha, options.tol)));
  });
}

ExperimentManifest run_average_clustering_sweep(ExperimentManifest manifest,
                                                const RunOptions& options) {
  manifest.experiment = ExperimentKind::AverageClusteringSweep;
  return guarded_run(std::move(manifest), options, [&](ExperimentManifest& m) {
    const auto records = simulate_all(m, simulation_options(options, true), options.threads);
    register_and_write(m, options, "realizations.csv", "realizations", realizations_csv(records));
    register_and_write(m, options, "summary.csv", "summary",
                       summary_csv(summarize(records), m.alpha, m.source));
    for (const auto& rec : records) dump_realization(m, options, rec);
  });
}

ExperimentManifest run_degree_fractions_sweep(ExperimentManifest manifest,
                                              const RunOptions& options) {
  manifest.experiment = ExperimentKind::DegreeFractionsSweep;
  RunOptions opts = options;
  if (opts.sources.empty()) opts.sources = {manifest.source};
  return guarded_run(std::move(manifest), opts, [&](ExperimentManifest& m) {
    for (WeightSource source : opts.sources) {
      ExperimentManifest per_source = m;
      per_source.source = source;
      const auto records =
          simulate_all(per_source, simulation_options(opts, true), opts.threads);
      register_and_write(m, opts, "fractions_" + std::string(to_string(source)) + ".csv",
                         "fractions", realizations_csv(records));
      for (const auto& rec : records) dump_realization(m, opts, rec);
    }
  });
}

ExperimentManifest run_tail_comparison(ExperimentManifest manifest, const RunOptions& options) {
  manifest.experiment = ExperimentKind::TailComparison;
  if (options.tail_samples < 100'000) {
    throw std::invalid_argument("tail-compare needs at least 1e5 samples");
  }
  RunOptions opts = options;
  if (opts.tail_alphas.empty()) opts.tail_alphas = {manifest.alpha};
  return guarded_run(std::move(manifest), opts, [&](ExperimentManifest& m) {
    const TailComparison tails =
        compare_tails(opts.tail_alphas, opts.tail_samples, opts.ccdf_points,
                      RngStream(m.seed).substream("tails"));
    CsvWriter ccdf({"alpha", "x", "ccdf_pareto", "ccdf_stable"});
    for (const auto& r : tails.rows) {
      ccdf.row({format_real(r.alpha), format_real(r.x), format_real(r.ccdf_pareto),
                format_real(r.ccdf_stable)});
    }
    register_and_write(m, opts, "tail_ccdf.csv", "ccdf", ccdf.text());
    CsvWriter summary({"alpha", "samples", "w99", "ccdf_pareto", "ccdf_stable", "ratio"});
    for (const auto& s : tails.summary) {
      summary.row({format_real(s.alpha), std::to_string(s.samples), format_real(s.w99),
                   format_real(s.ccdf_pareto), format_real(s.ccdf_stable), format_real(s.ratio)});
    }
    register_and_write(m, opts, "tail_summary.csv", "tail-summary", summary.text());
  });
}

ExperimentManifest run_annealed_curve(ExperimentManifest manifest, const RunOptions& options) {
  manifest.experiment = ExperimentKind::AnnealedCurveOnly;
  RunOptions opts = options;
  if (opts.curve_alphas.empty()) opts.curve_alphas = {manifest.alpha};
  return guarded_run(std::move(manifest), opts, [&](ExperimentManifest& m) {
    const auto grid = log_grid(opts.a_min, opts.a_max, opts.curve_points);
    for (double alpha : opts.curve_alphas) {
      register_and_write(m, opts, "curve_alpha" + alpha_tag(alpha) + ".csv", "curve",
                         curve_csv(annealed_curve(grid, alpha, opts.tol)));
    }
  });
}

ExperimentManifest run_experiment(ExperimentManifest manifest, const RunOptions& options) {
  switch (manifest.experiment) {
    case ExperimentKind::ClusteringFunction: return run_clustering_function(std::move(manifest), options);
    case ExperimentKind::AverageClusteringSweep:
      return run_average_clustering_sweep(std::move(manifest), options);
    case ExperimentKind::DegreeFractionsSweep:
      return run_degree_fractions_sweep(std::move(manifest), options);
    case ExperimentKind::TailComparison: return run_tail_comparison(std::move(manifest), options);
    case ExperimentKind::AnnealedCurveOnly: return run_annealed_curve(std::move(manifest), options);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace msm
