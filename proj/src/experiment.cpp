#include "biplan/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "biplan/domains.hpp"
#include "biplan/rng.hpp"

namespace biplan {

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(token));
      token.clear();
    } else {
      token += c;
    }
  }
  const std::string last = trim(token);
  if (!last.empty()) out.push_back(last);
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("expected a boolean for " + key + ", got '" + value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    return std::stod(value);
  } catch (...) {
    throw ConfigError("expected a number for " + key + ", got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    return std::stoll(value);
  } catch (...) {
    throw ConfigError("expected an integer for " + key + ", got '" + value + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  config.array_params.function_set = {ArrayFn::cut, ArrayFn::repeat, ArrayFn::shift_left,
                                      ArrayFn::shift_right};
  bool strategies_set = false;

  std::string section;
  std::istringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (section == "domain") {
      if (key == "kind") {
        if (value == "graph") config.domain = DomainKind::graph;
        else if (value == "array") config.domain = DomainKind::array;
        else if (value == "blocks") config.domain = DomainKind::blocks;
        else throw ConfigError("unknown domain kind: " + value);
      } else if (key == "n") config.graph_params.n = static_cast<int>(parse_int(value, key));
      else if (key == "rho") config.graph_params.rho = parse_double(value, key);
      else if (key == "directed") config.graph_params.directed = parse_bool(value, key);
      else if (key == "required_path_nodes")
        config.graph_params.required_path_nodes = static_cast<int>(parse_int(value, key));
      else if (key == "max_rejections") {
        config.graph_params.max_rejections = static_cast<int>(parse_int(value, key));
        config.array_params.max_rejections = config.graph_params.max_rejections;
      } else if (key == "functions") {
        config.array_params.function_set.clear();
        for (const auto& name : split_list(value)) {
          const auto f = array_fn_from_name(name);
          if (!f) throw ConfigError("unknown array function: " + name);
          config.array_params.function_set.push_back(*f);
        }
      } else if (key == "init_length")
        config.array_params.init_length = static_cast<int>(parse_int(value, key));
      else if (key == "plan_length")
        config.array_params.plan_length = static_cast<int>(parse_int(value, key));
      else if (key == "value_min")
        config.array_params.value_min = static_cast<int>(parse_int(value, key));
      else if (key == "value_max")
        config.array_params.value_max = static_cast<int>(parse_int(value, key));
      else if (key == "statements_file") config.statements_file = value;
      else throw ConfigError("unknown [domain] key: " + key);
    } else if (section == "run") {
      if (key == "trials") config.trials = static_cast<int>(parse_int(value, key));
      else if (key == "base_seed") config.base_seed = static_cast<std::uint64_t>(parse_int(value, key));
      else if (key == "workers") config.workers = static_cast<int>(parse_int(value, key));
      else if (key == "paired") config.paired = parse_bool(value, key);
      else if (key == "max_attempts" || key == "m")
        config.max_attempts = static_cast<int>(parse_int(value, key));
      else if (key == "direction_coin_seed")
        config.direction_coin_seed = static_cast<std::uint64_t>(parse_int(value, key));
      else throw ConfigError("unknown [run] key: " + key);
    } else if (section == "strategies") {
      if (key == "list") {
        config.strategies.clear();
        for (const auto& name : split_list(value)) {
          const auto s = strategy_from_string(name);
          if (!s) throw ConfigError("unknown strategy: " + name);
          config.strategies.push_back(*s);
        }
        strategies_set = true;
      } else {
        throw ConfigError("unknown [strategies] key: " + key);
      }
    } else if (section == "temperatures") {
      if (key == "first") config.first_temperature = parse_double(value, key);
      else if (key == "later") config.later_temperature = parse_double(value, key);
      else throw ConfigError("unknown [temperatures] key: " + key);
    } else if (section == "analysis") {
      if (key == "bin_edges") {
        config.bin_edges.clear();
        for (const auto& edge : split_list(value)) config.bin_edges.push_back(parse_double(edge, key));
      } else if (key == "wilson") config.wilson = parse_bool(value, key);
      else throw ConfigError("unknown [analysis] key: " + key);
    } else if (section == "backend") {
      if (key == "type") config.backend_type = value;
      else if (key == "eps_forward") config.sim_params.eps_forward = parse_double(value, key);
      else if (key == "backward_bias") config.sim_params.backward_bias = parse_double(value, key);
      else if (key == "temp_gain") config.sim_params.temp_gain = parse_double(value, key);
      else if (key == "verify_noise") config.sim_params.verify_noise = parse_double(value, key);
      else if (key == "flip_overhead") config.sim_params.flip_overhead = parse_double(value, key);
      else if (key == "reason_match_undirected")
        config.sim_params.reason_match_undirected = parse_double(value, key);
      else if (key == "base_url") config.http_config.base_url = value;
      else if (key == "model") config.http_config.model_id = value;
      else if (key == "api_key_env") config.http_config.api_key_env = value;
      else if (key == "system_message") config.http_config.system_message = value;
      else if (key == "max_tokens")
        config.http_config.max_tokens = static_cast<int>(parse_int(value, key));
      else if (key == "rate_limit_per_minute")
        config.http_config.rate_limit_per_minute = parse_double(value, key);
      else if (key == "timeout_seconds")
        config.http_config.timeout_seconds = static_cast<int>(parse_int(value, key));
      else if (key == "max_retries")
        config.http_config.max_retries = static_cast<int>(parse_int(value, key));
      else throw ConfigError("unknown [backend] key: " + key);
    } else {
      throw ConfigError("unknown section: [" + section + "]");
    }
  }

  if (config.trials <= 0) throw ConfigError("trials must be positive");
  if (config.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  if (config.workers < 1) throw ConfigError("workers must be >= 1");
  if (!strategies_set && config.strategies.empty()) throw ConfigError("no strategies configured");
  if (config.backend_type != "simulated" && config.backend_type != "http")
    throw ConfigError("unknown backend type: " + config.backend_type);
  if (config.backend_type == "http" && config.http_config.base_url.empty())
    throw ConfigError("http backend requires base_url");
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::unique_ptr<Backend> make_backend(const ExperimentConfig& config) {
  if (config.backend_type == "http") return std::make_unique<HttpBackend>(config.http_config);
  return std::make_unique<SimulatedPlanner>(config.sim_params);
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

Json record_to_json(const TrialRecord& record) {
  const DomainKind kind = record.problem.domain_kind;
  Json j;
  j["trial"] = record.trial;
  j["strategy"] = to_string(record.strategy);
  j["problem_seed"] = record.problem_seed;
  j["trial_seed"] = record.trial_seed;
  j["backend"] = record.backend_id;
  j["strategy_config"] = Json{
      {"strategy", to_string(record.strategy_config.strategy)},
      {"max_attempts", record.strategy_config.max_attempts},
      {"first_temperature", record.strategy_config.first_temperature},
      {"later_temperature",
       record.strategy_config.later_temperature
           ? Json(*record.strategy_config.later_temperature)
           : Json(nullptr)},
      {"direction_coin_seed", record.strategy_config.direction_coin_seed}};
  j["problem"] = to_json(record.problem);

  Json outcome;
  outcome["search_cost"] = to_json(record.outcome.search_cost);
  Json candidates = Json::array();
  for (const auto& c : record.outcome.candidates) {
    Json cj;
    cj["attempt"] = c.attempt;
    cj["frame"] = to_string(c.sampled_frame);
    cj["direction"] = to_string(c.sampled_direction);
    cj["plan"] = to_json(c.plan, kind);
    cj["gt_valid"] = c.gt_valid;
    if (c.gt_optimal) cj["gt_optimal"] = *c.gt_optimal;
    candidates.push_back(cj);
  }
  outcome["candidates"] = candidates;
  outcome["chosen"] = record.outcome.chosen ? to_json(*record.outcome.chosen, kind) : Json(nullptr);
  outcome["chosen_candidate"] =
      record.outcome.chosen_candidate ? Json(*record.outcome.chosen_candidate) : Json(nullptr);
  outcome["self_verified_correct"] = record.outcome.self_verified_correct;
  outcome["ground_truth"] = to_json(record.outcome.ground_truth);
  outcome["parse_failures"] = record.outcome.parse_failures;
  outcome["reasoned_frame"] =
      record.outcome.reasoned_frame ? Json(to_string(*record.outcome.reasoned_frame)) : Json(nullptr);
  Json transcripts = Json::array();
  for (const auto& t : record.outcome.transcripts) {
    transcripts.push_back(Json{{"attempt", t.attempt},
                               {"kind", to_string(t.kind)},
                               {"direction", to_string(t.direction)},
                               {"frame", to_string(t.frame)},
                               {"temperature", t.temperature},
                               {"prompt", t.prompt},
                               {"response", t.response},
                               {"parse_ok", t.parse_ok}});
  }
  outcome["transcripts"] = transcripts;
  j["outcome"] = outcome;

  j["success"] = record.success;
  j["verification_error"] = record.verification_error;
  j["unique_candidates"] = record.unique_candidates;
  return j;
}

std::optional<TrialRecord> record_from_json(const Json& j) {
  try {
    TrialRecord record;
    record.trial = j.at("trial").get<int>();
    const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!strategy) return std::nullopt;
    record.strategy = *strategy;
    record.problem_seed = j.at("problem_seed").get<std::uint64_t>();
    record.trial_seed = j.at("trial_seed").get<std::uint64_t>();
    record.backend_id = j.at("backend").get<std::string>();
    record.success = j.at("success").get<bool>();
    record.verification_error = j.at("verification_error").get<bool>();
    record.unique_candidates = j.at("unique_candidates").get<int>();
    const Json& cost = j.at("outcome").at("search_cost");
    record.outcome.search_cost.forward_steps = cost.at("forward_steps").get<int>();
    record.outcome.search_cost.backward_steps = cost.at("backward_steps").get<int>();
    record.outcome.search_cost.difference = cost.at("difference").get<int>();
    const Json& reasoned = j.at("outcome").at("reasoned_frame");
    if (!reasoned.is_null()) {
      record.outcome.reasoned_frame =
          reasoned.get<std::string>() == "flipped" ? Frame::flipped : Frame::original;
    }
    if (const auto problem = problem_from_json(j.at("problem"))) record.problem = *problem;
    return record;
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

std::pair<double, double> success_rate_with_se(int successes, int n) {
  if (n <= 0) throw EmptyInput("success_rate_with_se: no records");
  const double p = static_cast<double>(successes) / n;
  const double se = std::sqrt(p * (1.0 - p) / n);
  return {p, se};
}

std::pair<double, double> wilson_interval(int successes, int n) {
  if (n <= 0) throw EmptyInput("wilson_interval: no records");
  const double z = 1.959963984540054;  // 95%
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

std::string format_rate(double p, double se) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.1f±%.1f%%", p * 100.0, se * 100.0);
  return buffer;
}

std::vector<double> default_bin_edges(int min_difference, int max_difference) {
  // Width-5 bins centered at multiples of 5, covering the observed range.
  const double width = 5.0;
  double lo = std::floor((min_difference + width / 2) / width) * width - width / 2;
  if (lo > min_difference) lo -= width;
  std::vector<double> edges{lo};
  while (edges.back() <= max_difference) edges.push_back(edges.back() + width);
  return edges;
}

std::vector<BinStat> bin_by_cost_difference(const std::vector<std::pair<int, bool>>& samples,
                                            const std::vector<double>& edges) {
  if (edges.size() < 2) throw UnsortedEdges("need at least two bin edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i - 1] < edges[i])) throw UnsortedEdges("bin edges must be strictly ascending");
  }
  std::vector<BinStat> bins(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    bins[i].lo = edges[i];
    bins[i].hi = edges[i + 1];
  }
  for (const auto& [difference, success] : samples) {
    for (auto& bin : bins) {
      if (difference >= bin.lo && difference < bin.hi) {
        ++bin.n;
        if (success) ++bin.successes;
        break;
      }
    }
  }
  for (auto& bin : bins) {
    if (bin.n > 0) {
      const auto [p, se] = success_rate_with_se(bin.successes, bin.n);
      bin.p = p;
      bin.se = se;
    }
  }
  return bins;
}

double diversity(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw EmptyInput("diversity: no records");
  double total = 0.0;
  for (const auto& record : records) total += record.unique_candidates;
  return total / static_cast<double>(records.size());
}

double verification_error_rate(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw EmptyInput("verification_error_rate: no records");
  int errors = 0;
  for (const auto& record : records) errors += record.verification_error ? 1 : 0;
  return static_cast<double>(errors) / static_cast<double>(records.size());
}

ExperimentReport analyze(const std::vector<TrialRecord>& records,
                         const std::vector<double>& bin_edges_or_empty) {
  if (records.empty()) throw EmptyInput("analyze: no records");
  ExperimentReport report;
  report.backend_id = records.front().backend_id;

  int min_diff = records.front().outcome.search_cost.difference;
  int max_diff = min_diff;
  std::vector<StrategyKind> order;
  std::map<std::string, std::vector<const TrialRecord*>> by_strategy;
  for (const auto& record : records) {
    min_diff = std::min(min_diff, record.outcome.search_cost.difference);
    max_diff = std::max(max_diff, record.outcome.search_cost.difference);
    const std::string key = to_string(record.strategy);
    if (!by_strategy.count(key)) order.push_back(record.strategy);
    by_strategy[key].push_back(&record);
  }
  report.bin_edges =
      bin_edges_or_empty.empty() ? default_bin_edges(min_diff, max_diff) : bin_edges_or_empty;

  for (StrategyKind strategy : order) {
    const auto& group = by_strategy[to_string(strategy)];
    StrategyReport sr;
    sr.strategy = strategy;
    sr.n = static_cast<int>(group.size());
    std::vector<std::pair<int, bool>> samples;
    double unique_total = 0.0;
    int errors = 0;
    int reasoned = 0;
    int reason_matches = 0;
    for (const TrialRecord* record : group) {
      if (record->success) ++sr.successes;
      samples.emplace_back(record->outcome.search_cost.difference, record->success);
      unique_total += record->unique_candidates;
      errors += record->verification_error ? 1 : 0;
      if (record->outcome.reasoned_frame) {
        ++reasoned;
        const Frame cheaper = record->outcome.search_cost.difference <= 0 ? Frame::original
                                                                          : Frame::flipped;
        if (*record->outcome.reasoned_frame == cheaper) ++reason_matches;
      }
    }
    const auto [p, se] = success_rate_with_se(sr.successes, sr.n);
    sr.p = p;
    sr.se = se;
    sr.diversity = unique_total / sr.n;
    sr.verification_error_rate = static_cast<double>(errors) / sr.n;
    sr.bins = bin_by_cost_difference(samples, report.bin_edges);
    if (reasoned > 0) sr.reason_match_rate = static_cast<double>(reason_matches) / reasoned;
    report.strategies.push_back(std::move(sr));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

std::vector<std::string> load_statements(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open statements file: " + path);
  std::vector<std::string> statements;
  std::string line;
  std::string current;
  auto flush = [&]() {
    const std::string text = trim(current);
    if (!text.empty()) statements.push_back(text);
    current.clear();
  };
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current += "\n";
      current += line;
    }
  }
  flush();
  if (statements.empty()) throw ConfigError("statements file is empty: " + path);
  return statements;
}

Problem problem_for_trial(const ExperimentConfig& config, int trial,
                          const std::vector<std::string>& statements) {
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial);
  switch (config.domain) {
    case DomainKind::graph:
      return generate_graph_problem(config.graph_params, seed);
    case DomainKind::array:
      return generate_array_problem(config.array_params, seed);
    case DomainKind::blocks: {
      if (statements.empty()) return generate_blocks_problem(seed);
      Problem problem = import_planbench(statements[trial % statements.size()]);
      problem.seed = seed;
      return problem;
    }
  }
  throw ConfigError("unknown domain");
}

namespace {

TrialRecord run_one(const ExperimentConfig& config, Backend& backend,
                    const std::vector<std::string>& statements, int trial, StrategyKind strategy) {
  TrialRecord record;
  record.trial = trial;
  record.strategy = strategy;
  record.problem_seed = config.base_seed + static_cast<std::uint64_t>(trial);
  record.backend_id = backend.id();
  record.problem = problem_for_trial(config, trial, statements);
  // Unpaired mode draws a distinct instance stream per strategy.
  if (!config.paired) {
    std::uint64_t offset = 0;
    for (std::size_t i = 0; i < config.strategies.size(); ++i) {
      if (config.strategies[i] == strategy) offset = (i + 1) * 1000003ull;
    }
    ExperimentConfig shifted = config;
    shifted.base_seed = config.base_seed + offset;
    record.problem_seed = shifted.base_seed + static_cast<std::uint64_t>(trial);
    record.problem = problem_for_trial(shifted, trial, statements);
  }
  record.trial_seed = mix_seed(record.problem_seed, 0xB1);

  record.strategy_config.strategy = strategy;
  record.strategy_config.max_attempts = config.max_attempts;
  record.strategy_config.first_temperature = config.first_temperature;
  record.strategy_config.later_temperature = config.later_temperature;
  record.strategy_config.direction_coin_seed = config.direction_coin_seed;

  record.outcome = run_strategy(record.problem, record.strategy_config, backend, record.trial_seed);
  record.success = outcome_success(record.problem, record.outcome);

  std::set<std::string> unique;
  bool any_correct = false;
  for (const auto& candidate : record.outcome.candidates) {
    unique.insert(plan_key(candidate.plan));
    if (candidate_correct(record.problem, candidate)) any_correct = true;
  }
  record.unique_candidates = static_cast<int>(unique.size());
  // A verification error is a wrong adoption or a missed correct candidate.
  record.verification_error =
      record.outcome.chosen ? !record.success : any_correct;
  return record;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const std::string& archive_path) {
  std::vector<std::string> statements;
  if (config.domain == DomainKind::blocks && !config.statements_file.empty()) {
    statements = load_statements(config.statements_file);
  }
  const auto backend = make_backend(config);

  // Already-archived (trial, strategy) pairs are kept and skipped.
  std::set<std::pair<int, std::string>> done;
  std::vector<TrialRecord> records;
  if (!archive_path.empty()) {
    std::ifstream in(archive_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (trim(line).empty()) continue;
      Json j;
      try {
        j = Json::parse(line);
      } catch (const Json::exception&) {
        throw ConfigError("archive contains a malformed line");
      }
      const auto record = record_from_json(j);
      if (!record) throw ConfigError("archive contains an unreadable record");
      done.emplace(record->trial, to_string(record->strategy));
      records.push_back(*record);
    }
  }

  struct Task {
    int trial;
    StrategyKind strategy;
  };
  std::vector<Task> tasks;
  for (int trial = 0; trial < config.trials; ++trial) {
    for (StrategyKind strategy : config.strategies) {
      if (done.count({trial, std::string(to_string(strategy))})) continue;
      tasks.push_back(Task{trial, strategy});
    }
  }

  std::ofstream out;
  if (!archive_path.empty()) {
    out.open(archive_path, std::ios::app);
    if (!out) throw ConfigError("cannot open archive for writing: " + archive_path);
  }

  // Ordered commit: futures are consumed in submission order, so the archive
  // bytes do not depend on the worker count.
  std::deque<std::future<TrialRecord>> window;
  std::size_t next_task = 0;
  auto launch = [&]() {
    const Task task = tasks[next_task++];
    window.push_back(std::async(std::launch::async, [&, task]() {
      return run_one(config, *backend, statements, task.trial, task.strategy);
    }));
  };
  auto commit = [&]() {
    TrialRecord record = window.front().get();
    window.pop_front();
    if (out.is_open()) {
      out << record_to_json(record).dump() << "\n";
      out.flush();
    }
    records.push_back(std::move(record));
  };

  while (next_task < tasks.size() || !window.empty()) {
    while (next_task < tasks.size() && static_cast<int>(window.size()) < config.workers) launch();
    commit();
  }

  std::sort(records.begin(), records.end(), [&](const TrialRecord& a, const TrialRecord& b) {
    if (a.trial != b.trial) return a.trial < b.trial;
    auto index_of = [&](StrategyKind s) {
      for (std::size_t i = 0; i < config.strategies.size(); ++i) {
        if (config.strategies[i] == s) return i;
      }
      return config.strategies.size();
    };
    return index_of(a.strategy) < index_of(b.strategy);
  });

  RunResult result;
  result.report = analyze(records, config.bin_edges);
  result.report.base_seed = config.base_seed;
  result.report.trials = config.trials;
  result.report.paired = config.paired;
  result.records = std::move(records);
  return result;
}

std::vector<SweepPoint> attempt_sweep(const ExperimentConfig& config,
                                      const std::vector<int>& m_values) {
  if (m_values.empty()) throw ConfigError("attempt_sweep: no M values");
  std::vector<SweepPoint> points;
  for (int m : m_values) {
    ExperimentConfig sweep_config = config;
    sweep_config.max_attempts = m;
    const RunResult result = run_experiment(sweep_config, "");
    for (const auto& sr : result.report.strategies) {
      SweepPoint point;
      point.max_attempts = m;
      point.strategy = sr.strategy;
      point.n = sr.n;
      point.p = sr.p;
      point.se = sr.se;
      point.diversity = sr.diversity;
      points.push_back(point);
    }
  }
  return points;
}

std::vector<TrialRecord> load_archive(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open archive: " + path);
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception&) {
      throw ConfigError("archive contains a malformed line");
    }
    const auto record = record_from_json(j);
    if (!record) throw ConfigError("archive contains an unreadable record");
    records.push_back(*record);
  }
  if (records.empty()) throw EmptyInput("archive is empty: " + path);
  return records;
}

}  // namespace biplan
