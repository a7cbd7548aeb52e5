#include "rumorsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

const std::vector<std::string> kKnownKeys = {
    "max_time",     "trials",   "seed",       "model",      "metric",     "threshold",
    "evaluation_policy", "beta", "gamma",     "theta",      "ic_default_p", "initials",
    "edges_path",   "users_path", "rumor_path", "decisions_path", "output_dir", "metrics",
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

const std::vector<std::string>& config_keys() { return kKnownKeys; }

KeyValues parse_key_values(std::string_view text, const std::string& source) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (!kv.emplace(key, value).second) {
      throw ParseError(source, line_no, "duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), path.string());
}

std::vector<UserId> parse_id_list(std::string_view text) {
  std::vector<UserId> ids;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string item = trim(text.substr(0, comma));
    if (!item.empty()) ids.push_back(to_u64("initials", item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return ids;
}

std::vector<MetricKind> parse_metric_list(std::string_view text) {
  std::vector<MetricKind> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(parse_metric(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

RunConfig RunConfig::from_key_values(const KeyValues& kv, const std::filesystem::path& base_dir) {
  for (const auto& [key, value] : kv) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) throw ConfigError("unknown config key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  SimulationConfig& sim = cfg.sim;
  if (auto v = get("max_time")) sim.max_time = to_u64("max_time", *v);
  if (auto v = get("trials")) sim.trials = to_u64("trials", *v);
  if (auto v = get("seed")) sim.master_seed = to_u64("seed", *v);
  if (auto v = get("model")) sim.model = parse_model(*v);
  if (auto v = get("metric")) sim.gate.metric = parse_metric(*v);
  if (auto v = get("threshold")) sim.gate.threshold = to_double("threshold", *v);
  if (auto v = get("evaluation_policy")) sim.policy = parse_policy(*v);
  if (auto v = get("beta")) sim.sir.beta = to_double("beta", *v);
  if (auto v = get("gamma")) sim.sir.gamma = to_double("gamma", *v);
  if (auto v = get("theta")) sim.tipping.theta = to_double("theta", *v);
  if (auto v = get("ic_default_p")) sim.ic_default_p = to_double("ic_default_p", *v);
  if (auto v = get("initials")) sim.initials = parse_id_list(*v);

  const std::string* edges = get("edges_path");
  if (!edges) throw ConfigError("missing required key 'edges_path'");
  cfg.edges_path = resolve(base_dir, *edges);
  const std::string* users = get("users_path");
  if (!users) throw ConfigError("missing required key 'users_path'");
  cfg.users_path = resolve(base_dir, *users);
  if (auto v = get("rumor_path")) cfg.rumor_path = resolve(base_dir, *v);
  if (auto v = get("decisions_path")) cfg.decisions_path = resolve(base_dir, *v);
  if (auto v = get("output_dir")) cfg.output_dir = resolve(base_dir, *v);

  if (auto v = get("metrics")) {
    cfg.metrics = parse_metric_list(*v);
  } else {
    cfg.metrics = {MetricKind::Cosine, MetricKind::JaccardSet, MetricKind::Dice,
                   MetricKind::Average};
  }
  if (cfg.metrics.empty()) throw ConfigError("metrics must name at least one metric");
  if (sim.model == ModelKind::GatedUserContent && !cfg.rumor_path && !cfg.decisions_path) {
    throw ConfigError("model gated_user_content needs rumor_path");
  }
  sim.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  const KeyValues kv = load_key_values(path);
  return from_key_values(kv, std::filesystem::absolute(path).parent_path());
}

KeyValues RunConfig::to_key_values() const {
  KeyValues kv;
  kv["max_time"] = std::to_string(sim.max_time);
  kv["trials"] = std::to_string(sim.trials);
  kv["seed"] = std::to_string(sim.master_seed);
  kv["model"] = std::string(model_name(sim.model));
  kv["metric"] = std::string(metric_name(sim.gate.metric));
  kv["threshold"] = csv::format_double(sim.gate.threshold);
  kv["evaluation_policy"] = std::string(policy_name(sim.policy));
  kv["beta"] = csv::format_double(sim.sir.beta);
  kv["gamma"] = csv::format_double(sim.sir.gamma);
  kv["theta"] = csv::format_double(sim.tipping.theta);
  kv["ic_default_p"] = csv::format_double(sim.ic_default_p);
  std::string ids;
  for (std::size_t i = 0; i < sim.initials.size(); ++i) {
    if (i) ids += ',';
    ids += std::to_string(sim.initials[i]);
  }
  kv["initials"] = ids;
  kv["edges_path"] = edges_path.string();
  kv["users_path"] = users_path.string();
  if (rumor_path) kv["rumor_path"] = rumor_path->string();
  if (decisions_path) kv["decisions_path"] = decisions_path->string();
  kv["output_dir"] = output_dir.string();
  std::string names;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (i) names += ',';
    names += metric_name(metrics[i]);
  }
  kv["metrics"] = names;
  return kv;
}

}  // namespace rumorsim
