// densecf: command-line front end.
//
//   densecf synth     --subgroups 1 --nodes 60 --out-dir data/1sg
//   densecf ingest    --index aut/index.csv --percentile 90 --out-dir data/aut
//   densecf train     --dataset data/aut --out-dir runs/train
//   densecf explain   --dataset data/1sg --whitebox --method cli --instance 3 --out-dir runs/x
//   densecf benchmark --dataset data/1sg --whitebox --method cli --method dat --out-dir runs/b
//   densecf report    --records runs/b/records.csv --format csv --out-dir runs/r
//   densecf replay    runs/b/run_manifest.json
//
// Exit codes: 0 success (a counterfactual that was not found is still a
// success), 1 usage or configuration error, 2 data error, 3 internal error.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "densecf/dataset.hpp"
#include "densecf/error.hpp"
#include "densecf/evaluation.hpp"
#include "densecf/kernels.hpp"
#include "densecf/runner.hpp"
#include "densecf/spectral.hpp"

namespace fs = std::filesystem;
using namespace densecf;

namespace {

struct Options {
  // shared
  std::string dataset;
  std::string model;
  bool whitebox = false;
  std::string partition;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out_dir = ".";
  std::string format = "json";
  // search
  std::vector<std::string> methods;
  std::vector<std::string> instances;
  std::size_t max_iters = 0;
  std::size_t budget_b = kDefaultCliqueBudget;
  std::string ranking = "triangles";
  std::size_t edg_iters = kDefaultEdgeFlipIterations;
  // train
  std::size_t folds = 5;
  std::vector<std::size_t> grid_neighbors{1, 3, 5, 7};
  std::vector<std::size_t> grid_eigs{5, 10, 15, 20};
  // synth
  std::size_t subgroups = 1;
  std::size_t nodes = 60;
  std::size_t graphs = 0;
  std::size_t subgroup_size = 0;
  std::size_t cliques = 0;
  std::size_t attachment = 0;
  std::size_t extra_edges = 5;
  double cross_probability = 0.7;
  // ingest / report
  std::string index;
  double percentile = 90.0;
  std::string name;
  std::string records;
  std::string manifest;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) fail(ErrorKind::Internal, "sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(std::string_view bytes) { EVP_DigestUpdate(ctx_, bytes.data(), bytes.size()); }
  void update_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read " + path.string());
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) update({buf, static_cast<std::size_t>(in.gcount())});
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return s.str();
  }

 private:
  EVP_MD_CTX* ctx_;
};

// A file hashes its bytes; a directory hashes every regular file below it in
// path order, each prefixed by its relative path.
std::string hash_input(const fs::path& path) {
  Sha256 h;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const auto rel = fs::relative(f, path).generic_string();
      h.update(rel);
      h.update(std::string_view("\0", 1));
      h.update_file(f);
    }
  } else {
    h.update_file(path);
  }
  return h.hex();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  spdlog::info("wrote {}", path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

class Run {
 public:
  Run(std::string command, std::vector<std::string> argv, const Options& o)
      : command_(std::move(command)), argv_(std::move(argv)), opts_(o), started_(utc_now()) {}

  void input(const std::string& role, const std::string& path) {
    if (!path.empty()) inputs_[role] = {{"path", path}, {"sha256", hash_input(path)}};
  }
  void config(const std::string& key, nlohmann::json value) { config_[key] = std::move(value); }
  void output(const fs::path& p) { outputs_.push_back(p.filename().string()); }

  void finish() {
    nlohmann::json m = {
        {"format", "densecf-run-manifest"},
        {"version", 1},
        {"toolkit_version", kToolkitVersion},
        {"command", command_},
        {"argv", argv_},
        {"seed", opts_.seed},
        {"config", config_},
        {"inputs", inputs_},
        {"outputs", outputs_},
        {"started_at", started_},
        {"finished_at", utc_now()},
    };
    write_json(fs::path(opts_.out_dir) / "run_manifest.json", m);
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  const Options& opts_;
  std::string started_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::object();
  std::vector<std::string> outputs_;
};

GraphDataset load_with_partition(const Options& o) {
  if (o.dataset.empty()) fail(ErrorKind::Configuration, "--dataset is required");
  GraphDataset ds = load_dataset(o.dataset);
  if (!o.partition.empty()) ds.partition = read_partition_csv(o.partition, ds.node_ids);
  if (ds.size() == 0) fail(ErrorKind::Format, "dataset " + o.dataset + " has no graphs");
  return ds;
}

std::shared_ptr<const GraphClassifier> make_classifier(const Options& o, const GraphDataset& ds) {
  if (o.whitebox == !o.model.empty()) fail(ErrorKind::Configuration, "give exactly one of --model or --whitebox");
  if (o.whitebox) {
    if (!ds.partition) fail(ErrorKind::Configuration, "--whitebox needs a partition with regions S0 and S1");
    return std::make_shared<WhiteboxClassifier>(WhiteboxClassifier::from_partition(*ds.partition));
  }
  SFKnnModel model = load_model(o.model);
  if (model.node_count != 0 && model.node_count != ds.node_count())
    fail(ErrorKind::Configuration, "model was trained on " + std::to_string(model.node_count) +
                                       "-node graphs, dataset has " + std::to_string(ds.node_count()));
  return std::make_shared<KnnClassifier>(std::move(model));
}

RunConfig run_config(const Options& o) {
  RunConfig c;
  if (o.max_iters > 0) c.max_iterations = o.max_iters;
  c.clique_budget = o.budget_b;
  c.ranking = parse_ranking(o.ranking);
  c.edg_max_iterations = o.edg_iters;
  c.seed = o.seed;
  return c;
}

nlohmann::json run_config_json(const RunConfig& c) {
  return {{"max_iterations", c.max_iterations ? nlohmann::json(*c.max_iterations) : nlohmann::json(nullptr)},
          {"clique_budget", c.clique_budget},
          {"ranking", to_string(c.ranking)},
          {"edg_max_iterations", c.edg_max_iterations},
          {"seed", c.seed}};
}

std::size_t resolve_instance(const GraphDataset& ds, const std::string& sel) {
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), idx);
  if (ec == std::errc() && ptr == sel.data() + sel.size()) {
    if (idx >= ds.size())
      fail(ErrorKind::InvalidParameter, "instance " + sel + " out of range (dataset has " + std::to_string(ds.size()) +
                                            " graphs)");
    return idx;
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds.graphs[i].name == sel) return i;
  fail(ErrorKind::InvalidParameter, "no graph named '" + sel + "'");
}

void cmd_synth(const Options& o, Run& run) {
  SyntheticSpec s = o.subgroups == 2 ? SyntheticSpec::two_subgroups(o.nodes) : SyntheticSpec::one_subgroup(o.nodes);
  if (o.subgroups != 1 && o.subgroups != 2) fail(ErrorKind::Spec, "--subgroups must be 1 or 2");
  if (o.graphs) s.graphs = o.graphs;
  if (o.subgroup_size) s.subgroup_size = o.subgroup_size;
  if (o.cliques) s.cliques = o.cliques;
  s.attachment = o.attachment ? o.attachment : s.subgroup_size;
  s.extra_edges = o.extra_edges;
  s.cross_probability = o.cross_probability;
  s.seed = o.seed;
  auto ds = generate_synthetic(s);
  if (!o.name.empty()) ds.name = o.name;
  save_dataset(ds, o.out_dir);
  run.config("spec", {{"node_count", s.node_count},
                      {"graphs", s.graphs},
                      {"subgroups", s.subgroups},
                      {"subgroup_size", s.subgroup_size},
                      {"cliques", s.cliques},
                      {"attachment", s.attachment},
                      {"extra_edges", s.extra_edges},
                      {"cross_probability", s.cross_probability},
                      {"seed", s.seed}});
  run.output("dataset.json");
  spdlog::info("generated {} graphs on {} nodes", ds.size(), ds.node_count());
}

void cmd_ingest(const Options& o, Run& run) {
  if (o.index.empty()) fail(ErrorKind::Configuration, "--index is required");
  run.input("index", o.index);
  auto ds = ingest_correlations(o.index, o.percentile, o.name);
  if (!o.partition.empty()) {
    run.input("partition", o.partition);
    ds.partition = read_partition_csv(o.partition, ds.node_ids);
  }
  save_dataset(ds, o.out_dir);
  run.config("percentile", o.percentile);
  run.config("name", ds.name);
  run.output("dataset.json");
  std::size_t edges = 0;
  for (const auto& g : ds.graphs) edges += g.graph.edge_count();
  spdlog::info("ingested {} graphs on {} nodes, {} edges in total", ds.size(), ds.node_count(), edges);
}

void cmd_train(const Options& o, Run& run) {
  const auto ds = load_with_partition(o);
  run.input("dataset", o.dataset);
  const auto graphs = ds.graph_values();
  const auto labels = ds.labels();
  ParameterGrid grid{o.grid_neighbors, o.grid_eigs};
  auto result = train_sf_knn(graphs, labels, grid, o.folds, o.seed);
  result.model.node_count = ds.node_count();
  const fs::path out(o.out_dir);
  save_model(result.model, out / "model.json");
  write_json(out / "train_report.json", to_json(result.report));
  run.config("folds", o.folds);
  run.config("grid", {{"n_neighbors", o.grid_neighbors}, {"n_eigs", o.grid_eigs}});
  run.output("model.json");
  run.output("train_report.json");
  spdlog::info("cv accuracy {:.4f}, f1 {:.4f} (n_neighbors={}, n_eigs={})", result.report.accuracy, result.report.f1,
               result.report.n_neighbors, result.report.n_eigs);
}

void cmd_explain(const Options& o, Run& run) {
  const auto ds = load_with_partition(o);
  run.input("dataset", o.dataset);
  run.input("model", o.model);
  run.input("partition", o.partition);
  const auto classifier = make_classifier(o, ds);
  if (o.methods.size() != 1) fail(ErrorKind::Configuration, "explain takes exactly one --method");
  const Method method = parse_method(o.methods.front());
  const std::size_t instance = resolve_instance(ds, o.instances.empty() ? "0" : o.instances.front());
  const RunConfig cfg = run_config(o);
  if (cfg.ranking == RankingStrategy::Regional && !ds.partition)
    fail(ErrorKind::Configuration, "--ranking regional needs a partition");

  Oracle oracle(classifier);
  const auto pool = ds.graph_values();
  const auto result = run_method(method, oracle, ds, pool, instance, cfg);

  const fs::path out(o.out_dir);
  write_json(out / "result.json", result_to_json(result, ds, instance));
  run.output("result.json");
  std::ostringstream edits;
  write_edits_csv(edits, result.edits, ds.node_ids);
  write_text(out / "edits.csv", edits.str());
  run.output("edits.csv");
  if (ds.partition && result.found) {
    std::ostringstream regions;
    write_region_csv(regions, region_change_summary(ds.graphs[instance].graph, *result.counterfactual, *ds.partition));
    write_text(out / "regions.csv", regions.str());
    run.output("regions.csv");
  }
  run.config("method", to_string(method));
  run.config("instance", instance);
  run.config("classifier", classifier->name());
  run.config("search", run_config_json(cfg));
  if (result.found)
    spdlog::info("{}: found, d={} I={} C={}", to_string(method), *result.distance, result.iterations,
                 result.oracle_calls);
  else
    spdlog::info("{}: not found ({}), I={} C={}", to_string(method), result.diagnostic, result.iterations,
                 result.oracle_calls);
}

void cmd_benchmark(const Options& o, Run& run) {
  const auto ds = load_with_partition(o);
  run.input("dataset", o.dataset);
  run.input("model", o.model);
  run.input("partition", o.partition);
  const auto classifier = make_classifier(o, ds);
  std::vector<Method> methods;
  if (o.methods.empty()) {
    for (Method m : all_methods())
      if (ds.partition || !needs_partition(m)) methods.push_back(m);
  } else {
    for (const auto& m : o.methods) methods.push_back(parse_method(m));
  }
  std::vector<std::size_t> instances;
  if (o.instances.empty()) {
    for (std::size_t i = 0; i < ds.size(); ++i) instances.push_back(i);
  } else {
    for (const auto& s : o.instances) instances.push_back(resolve_instance(ds, s));
  }
  const RunConfig cfg = run_config(o);
  if (cfg.ranking == RankingStrategy::Regional && !ds.partition)
    fail(ErrorKind::Configuration, "--ranking regional needs a partition");

  const auto outcome = run_benchmark(classifier, ds, methods, instances, cfg, o.workers);
  const fs::path out(o.out_dir);
  std::ostringstream csv;
  write_records_csv(csv, outcome.summaries);
  write_text(out / "records.csv", csv.str());
  auto agg = aggregate_json(outcome.summaries);
  write_json(out / "aggregate.json", agg);
  run.output("records.csv");
  run.output("aggregate.json");

  std::vector<std::string> names;
  for (Method m : methods) names.push_back(to_string(m));
  run.config("methods", names);
  run.config("instances", instances);
  run.config("classifier", classifier->name());
  run.config("search", run_config_json(cfg));
  run.config("workers", o.workers > 0 ? o.workers : kernels::max_threads());
  for (const auto& m : agg["methods"])
    spdlog::info("{}: flip rate {}/{}", m["method"].get<std::string>(), m["flip_rate"]["class0"].dump(),
                 m["flip_rate"]["class1"].dump());
}

void cmd_report(const Options& o, Run& run) {
  if (o.records.empty()) fail(ErrorKind::Configuration, "--records is required");
  run.input("records", o.records);
  std::ifstream in(o.records);
  if (!in) fail(ErrorKind::Io, "cannot read " + o.records);
  const auto summaries = read_records_csv(in);
  const fs::path out(o.out_dir);
  if (o.format == "csv") {
    std::ostringstream csv;
    write_aggregate_csv(csv, summaries);
    write_text(out / "aggregate.csv", csv.str());
    run.output("aggregate.csv");
  } else {
    write_json(out / "aggregate.json", aggregate_json(summaries));
    run.output("aggregate.json");
  }
  run.config("format", o.format);
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("densecf");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^[%l]%$ %v");
  const char* env = std::getenv("DENSECF_LOG");
  spdlog::set_level(env && *env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

int run_cli(std::vector<std::string> args);

int dispatch(CLI::App& app, const std::string& command, const Options& o, std::vector<std::string> argv) {
  Run run(command, std::move(argv), o);
  fs::create_directories(o.out_dir);
  if (command == "synth") cmd_synth(o, run);
  else if (command == "ingest") cmd_ingest(o, run);
  else if (command == "train") cmd_train(o, run);
  else if (command == "explain") cmd_explain(o, run);
  else if (command == "benchmark") cmd_benchmark(o, run);
  else if (command == "report") cmd_report(o, run);
  else {
    std::cerr << app.help();
    return 1;
  }
  run.finish();
  return 0;
}

int replay(const Options& o, const std::string& out_override) {
  std::ifstream in(o.manifest);
  if (!in) fail(ErrorKind::Io, "cannot read " + o.manifest);
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, o.manifest + ": " + e.what());
  }
  if (m.value("format", "") != "densecf-run-manifest") fail(ErrorKind::Parse, o.manifest + ": not a run manifest");
  auto args = m.at("argv").get<std::vector<std::string>>();
  if (!out_override.empty()) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--out-dir") ++i;
      else if (args[i].rfind("--out-dir=", 0) != 0) kept.push_back(args[i]);
    }
    kept.push_back("--out-dir");
    kept.push_back(out_override);
    args = std::move(kept);
  }
  spdlog::info("replaying {}", m.at("command").get<std::string>());
  return run_cli(std::move(args));
}

int run_cli(std::vector<std::string> args) {
  Options o;
  CLI::App app{"Density-based counterfactual explanations for graph classifiers", "densecf"};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed for every random stream")->capture_default_str();
    sub->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--dataset", o.dataset, "Dataset directory or manifest")->required();
    sub->add_option("--partition", o.partition, "Partition CSV (node_id,region_name) overriding the dataset's");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "Trained SF-KNN model");
    sub->add_flag("--whitebox", o.whitebox, "Use the triangle white-box classifier over regions S0/S1");
    sub->add_option("--method", o.methods, "tri, cli, rcli, edg, dat, dat+bw or rcli+bw");
    sub->add_option("--instance", o.instances, "Graph index or name");
    sub->add_option("--max-iters", o.max_iters, "Iteration cap for tri/cli/rcli (0 = method default)");
    sub->add_option("--budget-b", o.budget_b, "Clique budget b")->capture_default_str();
    sub->add_option("--ranking", o.ranking, "triangles, eigenvector or regional")->capture_default_str();
    sub->add_option("--edg-iters", o.edg_iters, "Iteration cap for edg")->capture_default_str();
  };

  auto* synth = app.add_subcommand("synth", "Generate a 1SG/2SG synthetic dataset");
  add_common(synth);
  synth->add_option("--subgroups", o.subgroups, "1 or 2")->capture_default_str();
  synth->add_option("--nodes", o.nodes, "|V|")->capture_default_str();
  synth->add_option("--graphs", o.graphs, "N (default 100 for 1SG, 200 for 2SG)");
  synth->add_option("--subgroup-size", o.subgroup_size, "SG (default |V|/4 or |V|/8)");
  synth->add_option("--cliques", o.cliques, "c (default 10 or 20)");
  synth->add_option("--attachment", o.attachment, "m (default SG)");
  synth->add_option("--extra-edges", o.extra_edges, "p")->capture_default_str();
  synth->add_option("--cross-probability", o.cross_probability, "q")->capture_default_str();
  synth->add_option("--name", o.name, "Dataset name");

  auto* ingest = app.add_subcommand("ingest", "Threshold correlation matrices into a dataset");
  add_common(ingest);
  ingest->add_option("--index", o.index, "CSV listing file,label[,name]")->required();
  ingest->add_option("--percentile", o.percentile, "Threshold percentile")->capture_default_str();
  ingest->add_option("--partition", o.partition, "Partition CSV (node_id,region_name)");
  ingest->add_option("--name", o.name, "Dataset name");

  auto* train = app.add_subcommand("train", "Cross-validate and fit an SF-KNN classifier");
  add_common(train);
  add_data(train);
  train->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
  train->add_option("--n-neighbors", o.grid_neighbors, "Grid values for n_neighbors");
  train->add_option("--n-eigs", o.grid_eigs, "Grid values for n_eigs");

  auto* explain = app.add_subcommand("explain", "Search a counterfactual for one graph");
  add_common(explain);
  add_data(explain);
  add_search(explain);

  auto* bench = app.add_subcommand("benchmark", "Run methods over dataset instances");
  add_common(bench);
  add_data(bench);
  add_search(bench);
  bench->add_option("--workers", o.workers, "Worker threads (0 = all CPUs)")->capture_default_str();

  auto* report = app.add_subcommand("report", "Aggregate a records CSV");
  add_common(report);
  report->add_option("--records", o.records, "records.csv from benchmark")->required();
  report->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::string replay_out;
  auto* rep = app.add_subcommand("replay", "Re-run the command recorded in a run manifest");
  rep->add_option("manifest", o.manifest, "run_manifest.json")->required();
  rep->add_option("--out-dir", replay_out, "Write outputs here instead of the recorded directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*rep) return replay(o, replay_out);
  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<std::string> recorded{command};
  recorded.insert(recorded.end(), args.begin() + 1, args.end());
  return dispatch(app, command, o, recorded);
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_cli(std::move(args));
  } catch (const Error& e) {
    std::cerr << "densecf: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "densecf: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "densecf: internal error: " << e.what() << "\n";
    return 3;
  }
}
