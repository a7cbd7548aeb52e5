#include "rumorsim/simulator.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

constexpr std::array kModels = {ModelKind::GatedUserUser, ModelKind::GatedUserContent,
                                ModelKind::Sir, ModelKind::Tipping,
                                ModelKind::IndependentCascade};

constexpr std::array kStates = {AgentState::NonDiffuser, AgentState::Diffuser,
                                AgentState::Susceptible, AgentState::Infected,
                                AgentState::Recovered,   AgentState::NotAdopted,
                                AgentState::Adopted};

AgentState from_sir(SirState s) {
  switch (s) {
    case SirState::Susceptible: return AgentState::Susceptible;
    case SirState::Infected: return AgentState::Infected;
    case SirState::Recovered: return AgentState::Recovered;
  }
  return AgentState::Susceptible;
}

SirState to_sir(AgentState s) {
  if (s == AgentState::Infected) return SirState::Infected;
  if (s == AgentState::Recovered) return SirState::Recovered;
  return SirState::Susceptible;
}

std::size_t count_diffusers(const std::vector<AgentState>& states) {
  return static_cast<std::size_t>(std::count_if(states.begin(), states.end(), counts_as_diffuser));
}

/// Appends a step record with every index whose state differs.
void record_step(const SocialGraph& g, const std::vector<AgentState>& before,
                 const std::vector<AgentState>& after, DiffusionTrace& trace) {
  StepRecord rec;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (before[i] != after[i]) rec.changes.push_back({g.id_at(i), after[i]});
  }
  rec.diffusers = count_diffusers(after);
  trace.steps.push_back(std::move(rec));
}

EdgeGate make_gate(const SimulationConfig& cfg, const ProfileMap& profiles,
                   const RumorContent& rumor, const DecisionTable* decisions) {
  if (decisions) return EdgeGate::precomputed(*decisions);
  if (cfg.model == ModelKind::GatedUserContent) {
    return EdgeGate::user_content(profiles, rumor, cfg.gate);
  }
  return EdgeGate::user_user(profiles, cfg.gate);
}

void run_gated(const SimulationConfig& cfg, const SocialGraph& g, const ProfileMap& profiles,
               const EdgeGate& gate, DiffusionTrace& trace) {
  const std::size_t n = g.node_count();
  std::vector<AgentState> states = trace.initial;

  // Wake-up step per sleeping agent; agents without a profile never wake.
  std::vector<std::vector<std::size_t>> wake(cfg.max_time + 1);
  std::set<UserId> missing;
  for (std::size_t i = 0; i < n; ++i) {
    if (states[i] == AgentState::Diffuser) continue;
    const auto it = profiles.find(g.id_at(i));
    if (it == profiles.end()) {
      missing.insert(g.id_at(i));
      continue;
    }
    if (it->second.created_at > cfg.max_time) {
      ++trace.clamped_wakeups;
      continue;
    }
    wake[it->second.created_at].push_back(i);
  }
  trace.missing_profiles.assign(missing.begin(), missing.end());

  auto evaluate = [&](std::size_t v) {
    const UserId to = g.id_at(v);
    for (std::size_t u : g.in_indices(v)) {
      if (states[u] == AgentState::Diffuser && gate.passes(g.id_at(u), to)) {
        states[v] = AgentState::Diffuser;
        return true;
      }
    }
    return false;
  };

  std::size_t diffusers = count_diffusers(states);
  std::vector<std::size_t> awake;  // EveryStep: woken and still undecided, ascending
  for (std::uint64_t t = 0; t <= cfg.max_time; ++t) {
    StepRecord rec;
    if (cfg.policy == EvaluationPolicy::Once) {
      for (std::size_t v : wake[t]) {
        if (evaluate(v)) rec.changes.push_back({g.id_at(v), AgentState::Diffuser});
      }
    } else {
      std::vector<std::size_t> merged;
      merged.reserve(awake.size() + wake[t].size());
      std::merge(awake.begin(), awake.end(), wake[t].begin(), wake[t].end(),
                 std::back_inserter(merged));
      awake.clear();
      for (std::size_t v : merged) {
        if (evaluate(v)) {
          rec.changes.push_back({g.id_at(v), AgentState::Diffuser});
        } else {
          awake.push_back(v);
        }
      }
    }
    diffusers += rec.changes.size();
    rec.diffusers = diffusers;
    trace.steps.push_back(std::move(rec));
  }
  trace.final_states = std::move(states);
}

void run_classical(const SimulationConfig& cfg, const SocialGraph& g, RngStream& rng,
                   DiffusionTrace& trace) {
  std::vector<AgentState> states = trace.initial;
  if (cfg.model == ModelKind::Tipping) {
    TippingStates cur(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      cur[i] = states[i] == AgentState::Adopted ? TippingState::Adopted : TippingState::NotAdopted;
    }
    for (std::uint64_t t = 0; t <= cfg.max_time; ++t) {
      cur = tipping_step(g, cur, cfg.tipping);
      std::vector<AgentState> next(states.size());
      for (std::size_t i = 0; i < cur.size(); ++i) {
        next[i] = cur[i] == TippingState::Adopted ? AgentState::Adopted : AgentState::NotAdopted;
      }
      record_step(g, states, next, trace);
      states = std::move(next);
    }
  } else {
    SirStates cur(states.size());
    std::transform(states.begin(), states.end(), cur.begin(), to_sir);
    const EdgeProbability probs(cfg.ic_default_p);
    EdgeSet attempted;
    for (std::uint64_t t = 0; t <= cfg.max_time; ++t) {
      if (cfg.model == ModelKind::Sir) {
        cur = sir_step(g, cur, cfg.sir, rng);
      } else {
        auto res = ic_step(g, cur, probs, attempted, rng);
        cur = std::move(res.states);
        attempted = std::move(res.attempted);
      }
      std::vector<AgentState> next(states.size());
      std::transform(cur.begin(), cur.end(), next.begin(), from_sir);
      record_step(g, states, next, trace);
      states = std::move(next);
    }
  }
  trace.final_states = std::move(states);
}

}  // namespace

std::string_view model_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::GatedUserUser: return "gated_user_user";
    case ModelKind::GatedUserContent: return "gated_user_content";
    case ModelKind::Sir: return "sir";
    case ModelKind::Tipping: return "tipping";
    case ModelKind::IndependentCascade: return "ic";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  const std::string norm = normalize_label(name);
  for (auto kind : kModels) {
    if (model_name(kind) == norm) return kind;
  }
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

bool is_gated(ModelKind kind) noexcept {
  return kind == ModelKind::GatedUserUser || kind == ModelKind::GatedUserContent;
}

std::string_view policy_name(EvaluationPolicy policy) noexcept {
  return policy == EvaluationPolicy::Once ? "once" : "every-step";
}

EvaluationPolicy parse_policy(std::string_view name) {
  const std::string norm = normalize_label(name);
  if (norm == "once") return EvaluationPolicy::Once;
  if (norm == "every-step" || norm == "every_step") return EvaluationPolicy::EveryStep;
  throw ConfigError("unknown evaluation_policy '" + std::string(name) + "'");
}

void SimulationConfig::validate() const {
  if (max_time < 1) throw ConfigError("max_time must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  gate.validate();
  sir.validate();
  tipping.validate();
  if (!(ic_default_p >= 0.0 && ic_default_p <= 1.0)) {
    throw ConfigError("ic_default_p must lie in [0,1]");
  }
}

std::string_view state_name(AgentState s) noexcept {
  switch (s) {
    case AgentState::NonDiffuser: return "non_diffuser";
    case AgentState::Diffuser: return "diffuser";
    case AgentState::Susceptible: return "susceptible";
    case AgentState::Infected: return "infected";
    case AgentState::Recovered: return "recovered";
    case AgentState::NotAdopted: return "not_adopted";
    case AgentState::Adopted: return "adopted";
  }
  return "unknown";
}

AgentState parse_state(std::string_view name) {
  for (auto s : kStates) {
    if (state_name(s) == name) return s;
  }
  throw ConfigError("unknown agent state '" + std::string(name) + "'");
}

bool counts_as_diffuser(AgentState s) noexcept {
  return s == AgentState::Diffuser || s == AgentState::Infected || s == AgentState::Recovered ||
         s == AgentState::Adopted;
}

AgentState resting_state(ModelKind model) noexcept {
  switch (model) {
    case ModelKind::GatedUserUser:
    case ModelKind::GatedUserContent: return AgentState::NonDiffuser;
    case ModelKind::Tipping: return AgentState::NotAdopted;
    case ModelKind::Sir:
    case ModelKind::IndependentCascade: return AgentState::Susceptible;
  }
  return AgentState::NonDiffuser;
}

AgentState seeded_state(ModelKind model) noexcept {
  switch (model) {
    case ModelKind::GatedUserUser:
    case ModelKind::GatedUserContent: return AgentState::Diffuser;
    case ModelKind::Tipping: return AgentState::Adopted;
    case ModelKind::Sir:
    case ModelKind::IndependentCascade: return AgentState::Infected;
  }
  return AgentState::Diffuser;
}

std::vector<AgentState> DiffusionTrace::states_after(std::size_t step) const {
  std::vector<AgentState> states = initial;
  const std::size_t last = std::min(step + 1, steps.size());
  for (std::size_t t = 0; t < last; ++t) {
    for (const auto& c : steps[t].changes) {
      const auto it = std::lower_bound(nodes.begin(), nodes.end(), c.user);
      states[static_cast<std::size_t>(it - nodes.begin())] = c.state;
    }
  }
  return states;
}

std::vector<UserId> DiffusionTrace::final_diffusers() const {
  std::vector<UserId> out;
  for (std::size_t i = 0; i < final_states.size(); ++i) {
    if (counts_as_diffuser(final_states[i])) out.push_back(nodes[i]);
  }
  return out;
}

std::vector<AgentState> initial_states(const SocialGraph& g, ModelKind model,
                                       std::span<const UserId> initials) {
  std::vector<AgentState> states(g.node_count(), resting_state(model));
  for (UserId u : initials) {
    const auto idx = g.find_index(u);
    if (!idx) throw ConfigError("initial diffuser " + std::to_string(u) + " is not in the graph");
    states[*idx] = seeded_state(model);
  }
  return states;
}

DiffusionTrace run_simulation(const SimulationConfig& cfg, const SocialGraph& g,
                              const ProfileMap& profiles, const RumorContent& rumor,
                              std::uint64_t trial, const DecisionTable* decisions) {
  cfg.validate();
  DiffusionTrace trace;
  trace.trial = trial;
  trace.model = cfg.model;
  trace.nodes = g.nodes();
  trace.initial = initial_states(g, cfg.model, cfg.initials);
  trace.steps.reserve(cfg.max_time + 1);
  if (is_gated(cfg.model)) {
    const EdgeGate gate = make_gate(cfg, profiles, rumor, decisions);
    run_gated(cfg, g, profiles, gate, trace);
  } else {
    RngStream rng = RngStream::for_trial(cfg.master_seed, trial);
    run_classical(cfg, g, rng, trace);
  }
  return trace;
}

TrialSet run_trials(const SimulationConfig& cfg, const SocialGraph& g, const ProfileMap& profiles,
                    const RumorContent& rumor, const DecisionTable* decisions) {
  cfg.validate();
  TrialSet out;
  out.traces.reserve(cfg.trials);
  for (std::uint64_t k = 0; k < cfg.trials; ++k) {
    out.traces.push_back(run_simulation(cfg, g, profiles, rumor, k, decisions));
  }
  out.mean_curve.assign(cfg.max_time + 1, 0.0);
  for (std::size_t t = 0; t < out.mean_curve.size(); ++t) {
    double sum = 0.0;
    for (const auto& tr : out.traces) sum += static_cast<double>(tr.steps[t].diffusers);
    out.mean_curve[t] = sum / static_cast<double>(out.traces.size());
  }
  return out;
}

void write_trace_csv(std::span<const DiffusionTrace> traces, const std::filesystem::path& path) {
  auto out = csv::open_output(path);
  out << "trial,step,user_id,new_state\n";
  for (const auto& tr : traces) {
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
      for (const auto& c : tr.steps[t].changes) {
        out << tr.trial << ',' << t << ',' << c.user << ',' << state_name(c.state) << '\n';
      }
    }
  }
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  csv::Reader reader(path);
  reader.expect_header("trial,step,user_id,new_state");
  std::vector<TraceRow> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 4) {
      throw ParseError(reader.source(), reader.line(),
                       "expected 4 fields, got " + std::to_string(fields.size()));
    }
    TraceRow row;
    row.trial = csv::parse_u64(fields[0], reader.source(), reader.line(), "trial");
    row.step = csv::parse_u64(fields[1], reader.source(), reader.line(), "step");
    row.user = csv::parse_u64(fields[2], reader.source(), reader.line(), "user_id");
    try {
      row.state = parse_state(fields[3]);
    } catch (const ConfigError& e) {
      throw ParseError(reader.source(), reader.line(), e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

DiffusionTrace trace_from_rows(std::span<const TraceRow> rows, std::uint64_t trial,
                               ModelKind model, const SocialGraph& g,
                               std::span<const UserId> initials, std::uint64_t max_time) {
  DiffusionTrace trace;
  trace.trial = trial;
  trace.model = model;
  trace.nodes = g.nodes();
  trace.initial = initial_states(g, model, initials);
  trace.steps.resize(max_time + 1);
  std::vector<AgentState> states = trace.initial;
  for (const auto& row : rows) {
    if (row.trial != trial) continue;
    if (row.step > max_time) {
      throw ConfigError("trace step " + std::to_string(row.step) + " exceeds max_time " +
                        std::to_string(max_time));
    }
    const auto idx = g.find_index(row.user);
    if (!idx) throw ConfigError("trace names user " + std::to_string(row.user) + " not in graph");
    trace.steps[row.step].changes.push_back({row.user, row.state});
  }
  for (auto& step : trace.steps) {
    for (const auto& c : step.changes) states[*g.find_index(c.user)] = c.state;
    step.diffusers = count_diffusers(states);
  }
  trace.final_states = std::move(states);
  return trace;
}

void write_curve_csv(std::span<const double> curve, const std::filesystem::path& path) {
  auto out = csv::open_output(path);
  out << "step,diffusers\n";
  for (std::size_t t = 0; t < curve.size(); ++t) {
    out << t << ',' << csv::format_double(curve[t]) << '\n';
  }
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

void export_frames(const DiffusionTrace& trace, const SocialGraph& g,
                   const std::filesystem::path& out_dir) {
  if (trace.nodes != g.nodes()) throw ConfigError("trace and graph cover different node sets");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory '" + out_dir.string() + "'");
  }

  std::vector<AgentState> states = trace.initial;
  std::vector<double> curve;
  curve.reserve(trace.steps.size());
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    for (const auto& c : trace.steps[t].changes) states[g.index_of(c.user)] = c.state;
    curve.push_back(static_cast<double>(trace.steps[t].diffusers));

    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu", t);
    std::ostringstream dot;
    dot << "digraph " << name << " {\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      dot << "  " << g.id_at(i) << " [color=" << (counts_as_diffuser(states[i]) ? "red" : "blue")
          << ", state=" << state_name(states[i]) << "];\n";
    }
    for (const auto& e : g.edges()) dot << "  " << e.from << " -> " << e.to << ";\n";
    dot << "}\n";

    auto out = csv::open_output(out_dir / (std::string(name) + ".dot"));
    out << dot.str();
    if (!out) throw IoError("write failure in '" + out_dir.string() + "'");
  }
  write_curve_csv(curve, out_dir / "curve.csv");
}

}  // namespace rumorsim
