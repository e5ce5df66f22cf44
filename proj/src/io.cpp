#include "msm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace msm {

std::string format_real(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_real(const std::optional<double>& x) {
  return x ? format_real(*x) : std::string();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvWriter::save(const std::filesystem::path& path) const { write_text_file(path, text_); }

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv: no column '" + name + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty csv " + path.string());
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    cells.resize(table.header.size());
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string weights_csv(const WeightVector& weights) {
  CsvWriter csv({"w"});
  for (double w : weights.values) csv.row({format_real(w)});
  return csv.text();
}

std::string edge_list_csv(const Graph& graph) {
  CsvWriter csv({"u", "v"});
  for (const Edge& e : graph.edges()) csv.row({std::to_string(e.u), std::to_string(e.v)});
  return csv.text();
}

std::string profile_csv(const ClusteringProfile& profile) {
  CsvWriter csv({"k", "a", "N_k", "C_k"});
  for (const auto& [k, bin] : profile.per_degree) {
    csv.row({std::to_string(k), format_real(reduced_degree(k, profile.n)),
             std::to_string(bin.count), format_real(bin.mean_c)});
  }
  return csv.text();
}

std::string curve_csv(const AnnealedCurve& curve) {
  CsvWriter csv({"a", "c_bar", "c_hub", "quad_error", "alpha"});
  for (const CurvePoint& p : curve.points) {
    csv.row({format_real(p.a), format_real(p.c_bar), format_real(p.c_hub),
             format_real(p.quad_error), format_real(curve.alpha)});
  }
  return csv.text();
}

std::string graph_sidecar_json(const GraphSidecar& sidecar) {
  nlohmann::ordered_json j;
  j["n"] = sidecar.n;
  j["alpha"] = sidecar.alpha;
  j["seed"] = sidecar.seed;
  j["source"] = std::string(to_string(sidecar.source));
  j["s_n"] = sidecar.s_n;
  return j.dump(2) + "\n";
}

}  // namespace msm
