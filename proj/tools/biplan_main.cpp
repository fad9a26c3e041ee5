#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "biplan/domains.hpp"
#include "biplan/experiment.hpp"
#include "biplan/goldens.hpp"
#include "biplan/json_io.hpp"

namespace fs = std::filesystem;
using namespace biplan;

namespace {

int cmd_gen(const std::string& domain, int count, std::uint64_t seed, int n, double rho,
            bool directed, int path_nodes, const std::string& functions,
            const std::string& statements_file, const std::string& out_path) {
  ExperimentConfig config;
  config.trials = count;
  config.base_seed = seed;
  if (domain == "graph") {
    config.domain = DomainKind::graph;
    config.graph_params.n = n;
    config.graph_params.rho = rho;
    config.graph_params.directed = directed;
    config.graph_params.required_path_nodes = path_nodes;
  } else if (domain == "array") {
    config.domain = DomainKind::array;
    if (!functions.empty()) {
      config.array_params.function_set.clear();
      std::istringstream stream(functions);
      std::string token;
      while (std::getline(stream, token, ',')) {
        const auto f = array_fn_from_name(token);
        if (!f) throw ConfigError("unknown array function: " + token);
        config.array_params.function_set.push_back(*f);
      }
    }
  } else if (domain == "blocks") {
    config.domain = DomainKind::blocks;
    config.statements_file = statements_file;
  } else {
    throw ConfigError("unknown domain: " + domain);
  }

  std::vector<std::string> statements;
  if (config.domain == DomainKind::blocks && !config.statements_file.empty()) {
    statements = load_statements(config.statements_file);
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ConfigError("cannot write " + out_path);
    out = &file;
  }
  for (int trial = 0; trial < count; ++trial) {
    const Problem problem = problem_for_trial(config, trial, statements);
    *out << to_json(problem).dump() << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int workers_override) {
  ExperimentConfig config = load_config(config_path);
  if (workers_override > 0) config.workers = workers_override;
  fs::create_directories(out_dir);
  const std::string archive = (fs::path(out_dir) / "archive.jsonl").string();
  const RunResult result = run_experiment(config, archive);
  write_success_csv(result.report, (fs::path(out_dir) / "success.csv").string(), config.wilson);
  write_bins_csv(result.report, (fs::path(out_dir) / "bins.csv").string());
  write_bins_svg(result.report, (fs::path(out_dir) / "success_vs_difficulty.svg").string());
  std::cout << report_text(result.report);
  std::cout << "archive: " << archive << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::vector<int>& m_values) {
  const ExperimentConfig config = load_config(config_path);
  fs::create_directories(out_dir);
  const auto points = attempt_sweep(config, m_values);
  write_sweep_csv(points, (fs::path(out_dir) / "sweep.csv").string());
  write_sweep_svg(points, (fs::path(out_dir) / "success_vs_attempts.svg").string(), false);
  write_sweep_svg(points, (fs::path(out_dir) / "diversity_vs_attempts.svg").string(), true);
  for (const auto& point : points) {
    std::cout << "M=" << point.max_attempts << " " << to_string(point.strategy) << " "
              << format_rate(point.p, point.se) << " diversity=" << point.diversity << "\n";
  }
  return 0;
}

int cmd_analyze(const std::string& archive_path, const std::string& out_dir,
                const std::vector<double>& bin_edges, bool wilson) {
  const auto records = load_archive(archive_path);
  const ExperimentReport report = analyze(records, bin_edges);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_success_csv(report, (fs::path(out_dir) / "success.csv").string(), wilson);
    write_bins_csv(report, (fs::path(out_dir) / "bins.csv").string());
    write_bins_svg(report, (fs::path(out_dir) / "success_vs_difficulty.svg").string());
  }
  std::cout << report_text(report);
  return 0;
}

int cmd_golden(const std::string& dir, bool check) {
  fs::create_directories(dir);
  int failures = 0;
  for (const auto& item : golden_prompts()) {
    const fs::path path = fs::path(dir) / (item.name + ".txt");
    if (check) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      const bool ok = in.good() && buffer.str() == item.text;
      std::cout << (ok ? "ok      " : "MISMATCH") << "  " << path.string() << "\n";
      if (!ok) ++failures;
    } else {
      std::ofstream out(path, std::ios::binary);
      out << item.text;
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bidirectional planning harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "emit a problem set as JSONL");
  std::string gen_domain = "graph";
  int gen_count = 10;
  std::uint64_t gen_seed = 1234;
  int gen_n = 12;
  double gen_rho = 0.2;
  bool gen_directed = false;
  int gen_path_nodes = 5;
  std::string gen_functions;
  std::string gen_statements;
  std::string gen_out;
  gen->add_option("--domain", gen_domain, "graph | array | blocks");
  gen->add_option("--count", gen_count, "number of problems");
  gen->add_option("--seed", gen_seed, "base seed");
  gen->add_option("--n", gen_n, "graph: node count");
  gen->add_option("--rho", gen_rho, "graph: edge probability");
  gen->add_flag("--directed", gen_directed, "graph: directed edges");
  gen->add_option("--path-nodes", gen_path_nodes, "graph: required shortest-path nodes");
  gen->add_option("--functions", gen_functions, "array: comma-separated function set");
  gen->add_option("--statements", gen_statements, "blocks: PlanBench statements file");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string run_config;
  std::string run_out = "out";
  int run_workers = 0;
  run->add_option("--config", run_config, "config file")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_option("--workers", run_workers, "override worker count");

  auto* sweep = app.add_subcommand("sweep", "success vs attempts M");
  std::string sweep_config;
  std::string sweep_out = "out";
  std::vector<int> sweep_m{1, 2, 3, 4, 5, 6};
  sweep->add_option("--config", sweep_config, "config file")->required();
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--m", sweep_m, "attempt counts");

  auto* analyze_cmd = app.add_subcommand("analyze", "recompute reports from an archive");
  std::string analyze_archive;
  std::string analyze_out;
  std::vector<double> analyze_edges;
  bool analyze_wilson = false;
  analyze_cmd->add_option("archive", analyze_archive, "JSONL archive")->required();
  analyze_cmd->add_option("--out", analyze_out, "output directory");
  analyze_cmd->add_option("--bin-edges", analyze_edges, "custom bin edges");
  analyze_cmd->add_flag("--wilson", analyze_wilson, "add Wilson 95% interval columns");

  auto* golden = app.add_subcommand("golden", "regenerate or verify prompt goldens");
  std::string golden_dir = "tests/golden";
  bool golden_check = false;
  golden->add_option("--dir", golden_dir, "golden directory");
  golden->add_flag("--check", golden_check, "verify instead of regenerate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_domain, gen_count, gen_seed, gen_n, gen_rho, gen_directed, gen_path_nodes,
                     gen_functions, gen_statements, gen_out);
    }
    if (run->parsed()) return cmd_run(run_config, run_out, run_workers);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, sweep_m);
    if (analyze_cmd->parsed()) {
      return cmd_analyze(analyze_archive, analyze_out, analyze_edges, analyze_wilson);
    }
    if (golden->parsed()) return cmd_golden(golden_dir, golden_check);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
