#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <vector>

#include "rumorsim/config.hpp"
#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/evaluation.hpp"
#include "rumorsim/gated_diffusion.hpp"
#include "rumorsim/graph.hpp"
#include "rumorsim/similarity_cache.hpp"
#include "rumorsim/simulator.hpp"

namespace rumorsim::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

/// Graph, profiles and optional rumor/decisions for one config.
struct Dataset {
  RunConfig cfg;
  BuildStats edge_stats;
  SocialGraph graph;
  ProfileMap profiles;
  RumorContent rumor;
  std::optional<DecisionTable> decisions;
};

RunConfig load_config(const fs::path& path, const std::map<std::string, std::string>& overrides) {
  KeyValues kv = load_key_values(path);
  for (const auto& [key, value] : overrides) kv[key] = value;
  return RunConfig::from_key_values(kv, fs::absolute(path).parent_path());
}

Dataset load_dataset(RunConfig cfg) {
  Dataset d;
  EdgeLoad edges = load_edges(cfg.edges_path);
  d.edge_stats = edges.stats;
  d.profiles = load_users(cfg.users_path);
  d.graph = with_profile_nodes(edges.graph, d.profiles);
  if (cfg.rumor_path) d.rumor = load_rumor(*cfg.rumor_path);
  if (cfg.decisions_path) d.decisions = DecisionTable::load(*cfg.decisions_path);
  d.cfg = std::move(cfg);
  return d;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

void write_json(const ordered_json& doc, const fs::path& path) {
  auto out = csv::open_output(path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json echo = ordered_json::object();
  for (const auto& [k, v] : cfg.to_key_values()) echo[k] = v;
  return echo;
}

ordered_json ids_json(const std::vector<UserId>& ids) {
  ordered_json arr = ordered_json::array();
  for (UserId u : ids) arr.push_back(u);
  return arr;
}

int cmd_simulate(const fs::path& config, const std::map<std::string, std::string>& overrides,
                 std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Dataset d = load_dataset(load_config(config, overrides));
  const DecisionTable* decisions = d.decisions ? &*d.decisions : nullptr;
  const TrialSet trials = run_trials(d.cfg.sim, d.graph, d.profiles, d.rumor, decisions);

  ensure_dir(d.cfg.output_dir);
  write_trace_csv(trials.traces, d.cfg.output_dir / "trace.csv");
  write_curve_csv(trials.mean_curve, d.cfg.output_dir / "curve.csv");

  ordered_json summary;
  summary["config"] = config_echo(d.cfg);
  summary["nodes"] = d.graph.node_count();
  summary["edges"] = d.graph.edge_count();
  summary["edge_rows"] = d.edge_stats.rows;
  summary["duplicate_edges"] = d.edge_stats.duplicates;
  summary["self_loops"] = d.edge_stats.self_loops;
  ordered_json per_trial = ordered_json::array();
  for (const auto& tr : trials.traces) {
    per_trial.push_back({{"trial", tr.trial},
                         {"final_diffusers", tr.steps.back().diffusers},
                         {"clamped_wakeups", tr.clamped_wakeups},
                         {"missing_profiles", ids_json(tr.missing_profiles)}});
  }
  summary["trials"] = per_trial;
  summary["mean_final_diffusers"] = trials.mean_curve.back();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  summary["runtime_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  write_json(summary, d.cfg.output_dir / "summary.json");

  out << "simulated " << trials.traces.size() << " trial(s) over " << d.graph.node_count()
      << " nodes; mean final diffusers " << csv::format_double(trials.mean_curve.back())
      << "; outputs in " << d.cfg.output_dir.string() << "\n";
  return kExitOk;
}

ordered_json report_json(const EvalReport& r) {
  return {{"metric", r.metric},       {"threshold", r.threshold}, {"tp", r.true_pos},
          {"tn", r.true_neg},         {"fp", r.false_pos},        {"fn", r.false_neg},
          {"accuracy", r.accuracy},   {"predicted_count", r.predicted_count}};
}

int cmd_evaluate(const fs::path& config, const std::map<std::string, std::string>& overrides,
                 std::ostream& out) {
  Dataset d = load_dataset(load_config(config, overrides));
  const auto& sim = d.cfg.sim;
  if (!is_gated(sim.model)) {
    throw ConfigError("evaluate needs a gated model, got '" + std::string(model_name(sim.model)) +
                      "'");
  }
  if (sim.initials.empty()) throw ConfigError("evaluate needs at least one initial diffuser");

  std::vector<EvalReport> rows;
  if (d.decisions) {
    const DiffuserSet set = diffuse(d.graph, EdgeGate::precomputed(*d.decisions), sim.initials);
    EvalReport r = evaluate(set, d.profiles);
    r.metric = "precomputed";
    rows.push_back(std::move(r));
  } else {
    const auto algorithm = sim.model == ModelKind::GatedUserContent ? GatedAlgorithm::UserContent
                                                                    : GatedAlgorithm::UserUser;
    rows = metric_sweep(d.graph, d.profiles, d.rumor, sim.initials, d.cfg.metrics,
                        sim.gate.threshold, algorithm);
  }
  std::sort(rows.begin(), rows.end(),
            [](const EvalReport& a, const EvalReport& b) { return a.metric < b.metric; });

  ordered_json doc = ordered_json::array();
  for (const auto& r : rows) doc.push_back(report_json(r));
  ensure_dir(d.cfg.output_dir);
  write_json(doc, d.cfg.output_dir / "eval.json");
  for (const auto& r : rows) {
    out << r.metric << ": accuracy " << csv::format_double(r.accuracy) << " (" << r.predicted_count
        << " predicted)\n";
  }
  return kExitOk;
}

int cmd_similarity(const fs::path& config, const std::map<std::string, std::string>& overrides,
                   std::ostream& out, std::ostream& err) {
  Dataset d = load_dataset(load_config(config, overrides));
  const auto rows = compute_similarity_rows(d.graph, d.profiles);
  if (rows.size() != d.graph.edge_count()) {
    err << "warning: " << d.graph.edge_count() - rows.size()
        << " edge(s) skipped for missing profiles\n";
  }
  ensure_dir(d.cfg.output_dir);
  write_similarity_cache(rows, d.cfg.output_dir / "sims.csv");
  out << "wrote " << rows.size() << " similarity rows\n";
  return kExitOk;
}

int cmd_validate(const fs::path& config, const std::map<std::string, std::string>& overrides,
                 std::ostream& out) {
  Dataset d = load_dataset(load_config(config, overrides));
  const ValidationReport report = validate(d.graph, d.profiles);
  std::size_t late = 0;
  for (const auto& [id, p] : d.profiles) late += p.created_at > d.cfg.sim.max_time ? 1 : 0;
  ordered_json doc;
  doc["nodes"] = d.graph.node_count();
  doc["edges"] = d.graph.edge_count();
  doc["profiles"] = d.profiles.size();
  doc["duplicate_edges"] = d.edge_stats.duplicates;
  doc["self_loops"] = d.edge_stats.self_loops;
  doc["created_after_max_time"] = late;
  doc["missing_profiles"] = ids_json(report.missing_profiles);
  doc["empty_topics"] = ids_json(report.empty_topics);
  doc["isolated_nodes"] = ids_json(report.isolated_nodes);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_export(const fs::path& trace_path, const fs::path& out_dir,
               const std::optional<fs::path>& summary_path, std::uint64_t trial,
               std::ostream& out) {
  const fs::path summary_file = summary_path ? *summary_path : trace_path.parent_path() / "summary.json";
  std::ifstream in(summary_file);
  if (!in) throw IoError("cannot open run summary '" + summary_file.string() + "'");
  ordered_json summary;
  try {
    summary = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed run summary '" + summary_file.string() + "': " + e.what());
  }
  if (!summary.contains("config") || !summary["config"].is_object()) {
    throw ConfigError("run summary '" + summary_file.string() + "' has no config echo");
  }
  KeyValues kv;
  for (const auto& [k, v] : summary["config"].items()) kv[k] = v.get<std::string>();
  const RunConfig cfg = RunConfig::from_key_values(kv, summary_file.parent_path());
  if (trial >= cfg.sim.trials) {
    throw ConfigError("trial " + std::to_string(trial) + " not in run of " +
                      std::to_string(cfg.sim.trials) + " trial(s)");
  }

  const Dataset d = load_dataset(cfg);
  const auto rows = read_trace_csv(trace_path);
  const DiffusionTrace trace = trace_from_rows(rows, trial, cfg.sim.model, d.graph,
                                               cfg.sim.initials, cfg.sim.max_time);
  export_frames(trace, d.graph, out_dir);
  out << "exported " << trace.steps.size() << " frame(s) to " << out_dir.string() << "\n";
  return kExitOk;
}

/// `--<key>` for every config key; values override the file.
void add_override_options(CLI::App* cmd, std::map<std::string, std::string>& overrides) {
  for (const auto& key : config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "override config key '" + key + "'");
  }
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rumor diffusion simulation and evaluation", "rumorsim"};
  app.require_subcommand(1);

  std::string config;
  std::map<std::string, std::string> overrides;

  auto* simulate = app.add_subcommand("simulate", "run all trials; write trace.csv, curve.csv, summary.json");
  auto* evaluate = app.add_subcommand("evaluate", "score gated predictions against observed labels; write eval.json");
  auto* similarity = app.add_subcommand("similarity", "write the pairwise sims.csv cache");
  auto* validate = app.add_subcommand("validate", "report dataset consistency problems");
  for (auto* cmd : {simulate, evaluate, similarity, validate}) {
    cmd->add_option("config", config, "key = value config file")->required();
    add_override_options(cmd, overrides);
  }

  auto* export_cmd = app.add_subcommand("export", "write DOT frames and curve.csv from a trace");
  std::string trace_path;
  std::string out_dir;
  std::string summary_path;
  std::uint64_t trial = 0;
  export_cmd->add_option("trace", trace_path, "trace.csv written by simulate")->required();
  export_cmd->add_option("out_dir", out_dir, "directory for frames")->required();
  export_cmd->add_option("--summary", summary_path, "summary.json of the run (default: next to trace)");
  export_cmd->add_option("--trial", trial, "trial to export");

  std::vector<std::string> argv_storage{"rumorsim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config, overrides, out);
    if (evaluate->parsed()) return cmd_evaluate(config, overrides, out);
    if (similarity->parsed()) return cmd_similarity(config, overrides, out, err);
    if (validate->parsed()) return cmd_validate(config, overrides, out);
    if (export_cmd->parsed()) {
      std::optional<fs::path> summary;
      if (!summary_path.empty()) summary = summary_path;
      return cmd_export(trace_path, out_dir, summary, trial, out);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace rumorsim::cli
