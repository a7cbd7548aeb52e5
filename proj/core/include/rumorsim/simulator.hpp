#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumorsim/diffusion_models.hpp"
#include "rumorsim/gated_diffusion.hpp"
#include "rumorsim/graph.hpp"

namespace rumorsim {

enum class ModelKind { GatedUserUser, GatedUserContent, Sir, Tipping, IndependentCascade };

std::string_view model_name(ModelKind kind) noexcept;
ModelKind parse_model(std::string_view name);

bool is_gated(ModelKind kind) noexcept;

/// When a sleeping agent evaluates its rule.
enum class EvaluationPolicy {
  Once,       // only at its created_at step
  EveryStep,  // at created_at and every later step until it becomes a diffuser
};

std::string_view policy_name(EvaluationPolicy policy) noexcept;
EvaluationPolicy parse_policy(std::string_view name);

struct SimulationConfig {
  std::uint64_t max_time = 1296;
  std::uint64_t trials = 2;
  std::uint64_t master_seed = 0;
  ModelKind model = ModelKind::GatedUserUser;
  SimilarityGate gate;
  EvaluationPolicy policy = EvaluationPolicy::Once;
  SirParams sir{0.1, 0.05};
  TippingParams tipping;
  double ic_default_p = 0.1;
  std::vector<UserId> initials;

  void validate() const;
};

enum class AgentState : std::uint8_t {
  NonDiffuser,
  Diffuser,
  Susceptible,
  Infected,
  Recovered,
  NotAdopted,
  Adopted,
};

std::string_view state_name(AgentState s) noexcept;
AgentState parse_state(std::string_view name);

/// Diffuser, Infected, Recovered and Adopted all count toward the curve.
bool counts_as_diffuser(AgentState s) noexcept;

/// State every node starts in under `model`, before initials are seeded.
AgentState resting_state(ModelKind model) noexcept;
AgentState seeded_state(ModelKind model) noexcept;

struct StateChange {
  UserId user = 0;
  AgentState state = AgentState::NonDiffuser;

  friend bool operator==(const StateChange&, const StateChange&) = default;
};

struct StepRecord {
  std::vector<StateChange> changes;
  std::size_t diffusers = 0;  // after the step
};

/// Delta log of one run. steps[t] holds the changes made during step t, for
/// t in [0, max_time].
struct DiffusionTrace {
  std::uint64_t trial = 0;
  ModelKind model = ModelKind::GatedUserUser;
  std::vector<UserId> nodes;          // sorted, matches the graph
  std::vector<AgentState> initial;    // by node index
  std::vector<StepRecord> steps;
  std::vector<AgentState> final_states;
  std::size_t clamped_wakeups = 0;    // created_at beyond max_time
  std::vector<UserId> missing_profiles;

  /// Full state after `step` rebuilt from the deltas.
  std::vector<AgentState> states_after(std::size_t step) const;
  std::vector<UserId> final_diffusers() const;
};

/// Builds the initial state vector for `model` with `initials` seeded.
/// Throws ConfigError for an initial id absent from the graph.
std::vector<AgentState> initial_states(const SocialGraph& g, ModelKind model,
                                       std::span<const UserId> initials);

/// One trial. Gated models wake each agent at its created_at; agents woken
/// in the same step run in ascending id order and see each other's changes
/// immediately. Classical models step every node on every tick.
///
/// `decisions`, when given, replaces live similarity for gated models.
DiffusionTrace run_simulation(const SimulationConfig& cfg, const SocialGraph& g,
                              const ProfileMap& profiles, const RumorContent& rumor,
                              std::uint64_t trial = 0, const DecisionTable* decisions = nullptr);

struct TrialSet {
  std::vector<DiffusionTrace> traces;
  std::vector<double> mean_curve;  // per-step mean diffuser count
};

TrialSet run_trials(const SimulationConfig& cfg, const SocialGraph& g, const ProfileMap& profiles,
                    const RumorContent& rumor, const DecisionTable* decisions = nullptr);

struct TraceRow {
  std::uint64_t trial = 0;
  std::uint64_t step = 0;
  UserId user = 0;
  AgentState state = AgentState::NonDiffuser;
};

/// `trial,step,user_id,new_state`, one row per change.
void write_trace_csv(std::span<const DiffusionTrace> traces, const std::filesystem::path& path);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// Rebuilds a trace for one trial from csv rows and the run's initial state.
DiffusionTrace trace_from_rows(std::span<const TraceRow> rows, std::uint64_t trial,
                               ModelKind model, const SocialGraph& g,
                               std::span<const UserId> initials, std::uint64_t max_time);

/// `step,diffusers` with one row per step.
void write_curve_csv(std::span<const double> curve, const std::filesystem::path& path);

/// frame_NNNN.dot per step (diffusers red, others blue) plus curve.csv.
/// Throws IoError if the directory cannot be created or written.
void export_frames(const DiffusionTrace& trace, const SocialGraph& g,
                   const std::filesystem::path& out_dir);

}  // namespace rumorsim
