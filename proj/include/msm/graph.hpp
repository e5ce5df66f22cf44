#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "msm/rng.hpp"
#include "msm/weights.hpp"

namespace msm {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph in compressed sparse row form. Every neighbor list is
// sorted ascending, which the triangle counter relies on. Immutable once built.
class Graph {
 public:
  Graph() = default;
  // Edges may come in any order and orientation; self-loops, duplicates and
  // out-of-range endpoints are rejected with std::invalid_argument.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Edge list with u < v, ordered lexicographically.
  std::vector<Edge> edges() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

// n^(-1/alpha); the sparse scaling that keeps the mean degree logarithmic.
double delta_n(std::size_t n, double alpha);

// 1 - exp(-delta * w_i * w_j), accurate for tiny products.
double connection_probability(double w_i, double w_j, double delta);

// Bernoulli draw for every unordered pair {i, j}. The uniform for a pair is
// stream.uniform_at(i * n + j) (i < j), so the result depends only on the
// weights, delta and stream key, not on `threads`.
Graph sample_graph(std::span<const double> weights, double delta,
                   const RngStream& stream, unsigned threads = 1);
Graph sample_graph(const WeightVector& weights, const RngStream& stream,
                   unsigned threads = 1);

std::vector<std::size_t> degree_sequence(const Graph& graph);

}  // namespace msm
