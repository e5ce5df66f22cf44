#include "msm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace msm {
namespace {

double wedges(std::size_t degree) {
  return 0.5 * static_cast<double>(degree) * static_cast<double>(degree - 1);
}

}  // namespace

std::vector<std::uint64_t> triangle_counts(const Graph& graph) {
  std::vector<std::uint64_t> tri(graph.num_nodes(), 0);
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const auto nu = graph.neighbors(u);
    // Only oriented edges u < v, and only third corners w > v, so each
    // triangle u < v < w is found exactly once.
    auto v_it = std::upper_bound(nu.begin(), nu.end(), u);
    for (; v_it != nu.end(); ++v_it) {
      const NodeId v = *v_it;
      const auto nv = graph.neighbors(v);
      auto a = std::upper_bound(v_it, nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++tri[u];
          ++tri[v];
          ++tri[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return tri;
}

std::uint64_t triangle_count(const Graph& graph, NodeId v) {
  if (v >= graph.num_nodes()) throw std::out_of_range("triangle_count: node out of range");
  const auto nv = graph.neighbors(v);
  std::uint64_t count = 0;
  for (auto it = nv.begin(); it != nv.end(); ++it) {
    const auto nu = graph.neighbors(*it);
    auto a = std::next(it);
    auto b = std::upper_bound(nu.begin(), nu.end(), *it);
    while (a != nv.end() && b != nu.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++count;
        ++a;
        ++b;
      }
    }
  }
  return count;
}

std::vector<NodeClustering> node_clustering(const Graph& graph) {
  const auto tri = triangle_counts(graph);
  std::vector<NodeClustering> out(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    NodeClustering& nc = out[v];
    nc.node = v;
    nc.degree = graph.degree(v);
    nc.triangles = tri[v];
    if (nc.degree >= 2) nc.c = static_cast<double>(tri[v]) / wedges(nc.degree);
  }
  return out;
}

std::optional<double> local_clustering(const Graph& graph, NodeId v,
                                       LowDegreeConvention convention) {
  const std::size_t d = graph.degree(v);
  if (d < 2) {
    if (convention == LowDegreeConvention::Zero) return 0.0;
    return std::nullopt;
  }
  return static_cast<double>(triangle_count(graph, v)) / wedges(d);
}

ClusteringProfile empirical_clustering_function(std::span<const NodeClustering> nodes) {
  ClusteringProfile profile;
  profile.n = nodes.size();
  std::map<std::size_t, double> sums;
  for (const NodeClustering& nc : nodes) {
    if (!nc.c) continue;
    DegreeBin& bin = profile.per_degree[nc.degree];
    ++bin.count;
    sums[nc.degree] += *nc.c;
  }
  for (auto& [k, bin] : profile.per_degree) {
    bin.mean_c = sums[k] / static_cast<double>(bin.count);
  }
  return profile;
}

ClusteringProfile empirical_clustering_function(const Graph& graph) {
  return empirical_clustering_function(node_clustering(graph));
}

std::optional<double> average_clustering(std::span<const NodeClustering> nodes,
                                         LowDegreeConvention convention) {
  double sum = 0.0;
  std::size_t defined = 0;
  for (const NodeClustering& nc : nodes) {
    if (nc.c) {
      sum += *nc.c;
      ++defined;
    }
  }
  if (convention == LowDegreeConvention::Exclude) {
    if (defined == 0) return std::nullopt;
    return sum / static_cast<double>(defined);
  }
  if (nodes.empty()) return std::nullopt;
  return sum / static_cast<double>(nodes.size());
}

std::optional<double> average_clustering(const Graph& graph,
                                         LowDegreeConvention convention) {
  return average_clustering(node_clustering(graph), convention);
}

std::optional<double> global_clustering(std::span<const NodeClustering> nodes) {
  // Every triangle is credited to its three corners, so the per-node sum is
  // already 3 x (number of triangles).
  double closed = 0.0;
  double open = 0.0;
  for (const NodeClustering& nc : nodes) {
    closed += static_cast<double>(nc.triangles);
    if (nc.degree >= 2) open += wedges(nc.degree);
  }
  if (open == 0.0) return std::nullopt;
  return closed / open;
}

std::optional<double> global_clustering(const Graph& graph) {
  return global_clustering(node_clustering(graph));
}

double reduced_degree(std::size_t k, std::size_t n) {
  if (n < 1) throw std::domain_error("reduced_degree: n must be at least 1");
  return static_cast<double>(k) / std::sqrt(static_cast<double>(n));
}

}  // namespace msm
