#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msm/annealed.hpp"
#include "msm/clustering.hpp"
#include "msm/graph.hpp"
#include "msm/weights.hpp"

namespace msm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal form that parses back to the same double.
std::string format_real(double x);
// Empty cell for a missing value.
std::string format_real(const std::optional<double>& x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& text() const noexcept { return text_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable read_csv(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string weights_csv(const WeightVector& weights);
std::string edge_list_csv(const Graph& graph);
std::string profile_csv(const ClusteringProfile& profile);
std::string curve_csv(const AnnealedCurve& curve);

struct GraphSidecar {
  std::size_t n = 0;
  double alpha = 0.5;
  std::uint64_t seed = 0;
  WeightSource source = WeightSource::Pareto;
  double s_n = 0.0;
};
std::string graph_sidecar_json(const GraphSidecar& sidecar);

}  // namespace msm
