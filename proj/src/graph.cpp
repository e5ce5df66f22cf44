#include "msm/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace msm {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) throw std::invalid_argument("Graph: endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("Graph: duplicate edge");
  }

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];

  // Lexicographic edge order fills every list in ascending order: partners
  // below a node arrive (sorted) before the node's own row.
  adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

double delta_n(std::size_t n, double alpha) {
  if (n < 1) throw std::domain_error("delta_n: n must be at least 1");
  return std::pow(static_cast<double>(n), -1.0 / alpha);
}

double connection_probability(double w_i, double w_j, double delta) {
  return -std::expm1(-delta * w_i * w_j);
}

Graph sample_graph(std::span<const double> weights, double delta,
                   const RngStream& stream, unsigned threads) {
  const std::size_t n = weights.size();
  if (n < 2) return Graph(n, {});

  constexpr std::size_t kRowsPerChunk = 64;
  const std::size_t chunks = (n + kRowsPerChunk - 1) / kRowsPerChunk;
  std::vector<std::vector<Edge>> found(chunks);

  auto sample_rows = [&](std::size_t chunk) {
    std::vector<Edge>& local = found[chunk];
    const std::size_t first = chunk * kRowsPerChunk;
    const std::size_t last = std::min(n, first + kRowsPerChunk);
    for (std::size_t i = first; i < last; ++i) {
      const double scaled = delta * weights[i];
      const std::uint64_t row = static_cast<std::uint64_t>(i) * n;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double x = scaled * weights[j];
        const double u = stream.uniform_at(row + j);
        // p = 1 - e^(-x) <= x, so u >= x already decides "no edge".
        if (u < x && u < -std::expm1(-x)) {
          local.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
        }
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) sample_rows(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) sample_rows(c);
      });
    }
  }

  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& f : found) total += f.size();
  edges.reserve(total);
  for (const auto& f : found) edges.insert(edges.end(), f.begin(), f.end());
  return Graph(n, std::move(edges));
}

Graph sample_graph(const WeightVector& weights, const RngStream& stream,
                   unsigned threads) {
  return sample_graph(weights.values, delta_n(weights.size(), weights.alpha),
                      stream, threads);
}

std::vector<std::size_t> degree_sequence(const Graph& graph) {
  std::vector<std::size_t> out(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) out[v] = graph.degree(v);
  return out;
}

}  // namespace msm
