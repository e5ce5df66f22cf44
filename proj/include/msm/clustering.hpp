#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "msm/graph.hpp"

namespace msm {

// How nodes of degree 0 or 1 enter node averages: left out (their C_v is
// undefined) or counted with C_v = 0.
enum class LowDegreeConvention { Exclude, Zero };

struct NodeClustering {
  NodeId node = 0;
  std::size_t degree = 0;
  std::uint64_t triangles = 0;
  std::optional<double> c;  // empty when degree < 2
};

struct DegreeBin {
  std::size_t count = 0;  // N_k
  double mean_c = 0.0;    // C(k)
};

// Empirical clustering function C(k) for k >= 2. Degrees 0 and 1 never appear.
struct ClusteringProfile {
  std::size_t n = 0;
  std::map<std::size_t, DegreeBin> per_degree;

  bool empty() const noexcept { return per_degree.empty(); }
};

// Triangles through every node, found by intersecting sorted neighbor lists
// once per edge and crediting all three corners.
std::vector<std::uint64_t> triangle_counts(const Graph& graph);
std::uint64_t triangle_count(const Graph& graph, NodeId v);

std::vector<NodeClustering> node_clustering(const Graph& graph);

std::optional<double> local_clustering(const Graph& graph, NodeId v,
                                       LowDegreeConvention convention);

ClusteringProfile empirical_clustering_function(const Graph& graph);
ClusteringProfile empirical_clustering_function(std::span<const NodeClustering> nodes);

// Node-averaged local clustering; empty when no node qualifies.
std::optional<double> average_clustering(const Graph& graph,
                                         LowDegreeConvention convention);
std::optional<double> average_clustering(std::span<const NodeClustering> nodes,
                                         LowDegreeConvention convention);

// 3 * triangles / wedges; empty when the graph has no wedge.
std::optional<double> global_clustering(const Graph& graph);
std::optional<double> global_clustering(std::span<const NodeClustering> nodes);

double reduced_degree(std::size_t k, std::size_t n);

}  // namespace msm
