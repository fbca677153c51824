#include "densecf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "densecf/error.hpp"
#include "densecf/evaluation.hpp"

namespace densecf {

namespace fs = std::filesystem;

std::vector<Graph> GraphDataset::graph_values() const {
  std::vector<Graph> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(g.graph);
  return out;
}

std::vector<Label> GraphDataset::labels() const {
  std::vector<Label> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(g.label);
  return out;
}

void GraphDataset::validate() const {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].graph.node_count() != node_count())
      fail(ErrorKind::Format, "graph " + std::to_string(i) + " has " +
                                  std::to_string(graphs[i].graph.node_count()) + " nodes, dataset has " +
                                  std::to_string(node_count()));
    if (graphs[i].label != 0 && graphs[i].label != 1)
      fail(ErrorKind::Format, "graph " + std::to_string(i) + " has non-binary label " +
                                  std::to_string(graphs[i].label));
  }
  if (partition) partition->require_covers(node_count());
}

std::vector<std::string> default_node_ids(std::size_t node_count) {
  std::vector<std::string> ids;
  ids.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) ids.push_back(std::to_string(v));
  return ids;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const fs::path& path, std::size_t line) { return path.string() + ":" + std::to_string(line); }

std::unordered_map<std::string, Node> index_of(const std::vector<std::string>& node_ids) {
  std::unordered_map<std::string, Node> idx;
  for (std::size_t v = 0; v < node_ids.size(); ++v)
    if (!idx.emplace(node_ids[v], static_cast<Node>(v)).second)
      fail(ErrorKind::Format, "duplicate node id '" + node_ids[v] + "'");
  return idx;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

}  // namespace

Eigen::MatrixXd read_correlation_csv(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    std::size_t field = 0;
    while (std::getline(ss, cell, ',')) {
      ++field;
      const std::string t = trim(cell);
      double value = 0;
      auto res = std::from_chars(t.data(), t.data() + t.size(), value);
      if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        fail(ErrorKind::Parse, where(path, line_no) + ": field " + std::to_string(field) +
                                   " is not a number: '" + t + "'");
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorKind::Parse, where(path, line_no) + ": expected " + std::to_string(rows.front().size()) +
                                 " fields, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto cols = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(n, cols);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Graph threshold_correlations(const Eigen::MatrixXd& matrix, double percentile) {
  if (matrix.rows() != matrix.cols())
    fail(ErrorKind::Format, "correlation matrix is " + std::to_string(matrix.rows()) + "x" +
                                std::to_string(matrix.cols()) + ", not square");
  const auto n = matrix.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-9)
        fail(ErrorKind::Format, "correlation matrix is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
  Graph g(static_cast<std::size_t>(n));
  if (n < 2) return g;
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) upper.push_back(matrix(i, j));
  const double t = percentile_linear(upper, percentile);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (matrix(i, j) > t) g.add_edge(static_cast<Node>(i), static_cast<Node>(j));
  return g;
}

GraphDataset ingest_correlations(const fs::path& index, double percentile, std::string name) {
  if (!(percentile >= 0.0 && percentile <= 100.0))
    fail(ErrorKind::InvalidParameter, "percentile must lie in [0, 100]");
  auto in = open_in(index);
  GraphDataset ds;
  ds.name = name.empty() ? index.parent_path().filename().string() : std::move(name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (line_no == 1 && t.rfind("file,label", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(t);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
    if (cells.size() < 2 || cells.size() > 3)
      fail(ErrorKind::Parse, where(index, line_no) + ": expected 'file,label[,name]'");
    if (cells[1] != "0" && cells[1] != "1")
      fail(ErrorKind::Parse, where(index, line_no) + ": field 2 must be 0 or 1, got '" + cells[1] + "'");
    const auto matrix = read_correlation_csv(index.parent_path() / cells[0]);
    if (ds.node_ids.empty()) ds.node_ids = default_node_ids(static_cast<std::size_t>(matrix.rows()));
    if (static_cast<std::size_t>(matrix.rows()) != ds.node_count())
      fail(ErrorKind::Format, where(index, line_no) + ": " + cells[0] + " is " + std::to_string(matrix.rows()) +
                                  "x" + std::to_string(matrix.cols()) + ", expected " +
                                  std::to_string(ds.node_count()) + " nodes");
    ds.graphs.push_back({threshold_correlations(matrix, percentile), cells[1] == "1" ? 1 : 0,
                         cells.size() == 3 ? cells[2] : fs::path(cells[0]).stem().string()});
  }
  ds.validate();
  return ds;
}

Graph read_edge_list(const fs::path& path, const std::vector<std::string>& node_ids) {
  const auto idx = index_of(node_ids);
  auto in = open_in(path);
  Graph g(node_ids.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream ss(t);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra))
      fail(ErrorKind::Parse, where(path, line_no) + ": expected 'u v', got '" + t + "'");
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end()) fail(ErrorKind::Parse, where(path, line_no) + ": unknown node id '" + a + "'");
    if (ib == idx.end()) fail(ErrorKind::Parse, where(path, line_no) + ": unknown node id '" + b + "'");
    if (ia->second == ib->second) fail(ErrorKind::Parse, where(path, line_no) + ": self-loop on '" + a + "'");
    g.add_edge(ia->second, ib->second);
  }
  return g;
}

void write_edge_list(const fs::path& path, const Graph& g, const std::vector<std::string>& node_ids) {
  auto out = open_out(path);
  for (const Edge& e : g.edges()) out << node_ids[e.u] << ' ' << node_ids[e.v] << '\n';
}

RegionPartition read_partition_csv(const fs::path& path, const std::vector<std::string>& node_ids) {
  const auto idx = index_of(node_ids);
  auto in = open_in(path);
  std::map<Node, std::string> assignment;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (line_no == 1 && t == "node_id,region_name") continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      fail(ErrorKind::Parse, where(path, line_no) + ": expected 'node_id,region_name'");
    const std::string id = trim(t.substr(0, comma));
    const std::string region = trim(t.substr(comma + 1));
    auto it = idx.find(id);
    if (it == idx.end()) fail(ErrorKind::Parse, where(path, line_no) + ": unknown node id '" + id + "'");
    if (region.empty()) fail(ErrorKind::Parse, where(path, line_no) + ": empty region name");
    if (!assignment.emplace(it->second, region).second)
      fail(ErrorKind::Parse, where(path, line_no) + ": node '" + id + "' assigned twice");
  }
  return RegionPartition::from_assignment(node_ids.size(), assignment);
}

void write_partition_csv(const fs::path& path, const RegionPartition& partition,
                         const std::vector<std::string>& node_ids) {
  auto out = open_out(path);
  out << "node_id,region_name\n";
  for (Node v = 0; v < partition.node_count(); ++v) out << node_ids[v] << ',' << partition.region_of(v) << '\n';
}

void save_dataset(const GraphDataset& dataset, const fs::path& directory) {
  dataset.validate();
  for (const auto& id : dataset.node_ids)
    if (id.empty() || id.find_first_of(" \t\r\n,") != std::string::npos)
      fail(ErrorKind::Format, "node id '" + id + "' is empty or contains whitespace or a comma");
  fs::create_directories(directory / "graphs");

  nlohmann::json graphs = nlohmann::json::array();
  for (std::size_t i = 0; i < dataset.graphs.size(); ++i) {
    char file[32];
    std::snprintf(file, sizeof file, "graphs/%04zu.edges", i);
    write_edge_list(directory / file, dataset.graphs[i].graph, dataset.node_ids);
    graphs.push_back({{"name", dataset.graphs[i].name}, {"file", file}, {"label", dataset.graphs[i].label}});
  }
  nlohmann::json manifest = {
      {"format", "densecf-dataset"},
      {"version", kDatasetFormatVersion},
      {"name", dataset.name},
      {"node_ids", dataset.node_ids},
      {"graphs", graphs},
      {"partition", nullptr},
  };
  if (dataset.partition) {
    write_partition_csv(directory / "partition.csv", *dataset.partition, dataset.node_ids);
    manifest["partition"] = "partition.csv";
  }
  auto out = open_out(directory / "dataset.json");
  out << manifest.dump(1) << '\n';
}

GraphDataset load_dataset(const fs::path& path) {
  const fs::path manifest_path = fs::is_directory(path) ? path / "dataset.json" : path;
  const fs::path base = manifest_path.parent_path();
  auto in = open_in(manifest_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (trim(buffer.str()).empty()) return {};

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, manifest_path.string() + ": " + e.what());
  }
  GraphDataset ds;
  try {
    if (j.at("format").get<std::string>() != "densecf-dataset")
      fail(ErrorKind::Parse, manifest_path.string() + ": not a densecf-dataset manifest");
    if (j.at("version").get<int>() != kDatasetFormatVersion)
      fail(ErrorKind::Parse, manifest_path.string() + ": unsupported version " + j.at("version").dump());
    ds.name = j.value("name", std::string{});
    ds.node_ids = j.at("node_ids").get<std::vector<std::string>>();
    const auto& graphs = j.at("graphs");
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto& entry = graphs[i];
      LabeledGraph lg;
      lg.name = entry.value("name", std::to_string(i));
      lg.label = entry.at("label").get<Label>();
      lg.graph = read_edge_list(base / entry.at("file").get<std::string>(), ds.node_ids);
      ds.graphs.push_back(std::move(lg));
    }
    if (j.contains("partition") && !j["partition"].is_null())
      ds.partition = read_partition_csv(base / j["partition"].get<std::string>(), ds.node_ids);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, manifest_path.string() + ": " + e.what());
  }
  ds.validate();
  return ds;
}

}  // namespace densecf
