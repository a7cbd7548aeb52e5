#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "rumorsim/graph.hpp"
#include "rumorsim/rng.hpp"

namespace rumorsim {

// States are stored densely, indexed by SocialGraph node index. A state vector
// whose size differs from node_count() is a ConfigError.

enum class SirState : std::uint8_t { Susceptible, Infected, Recovered };
enum class TippingState : std::uint8_t { NotAdopted, Adopted };

using SirStates = std::vector<SirState>;
using TippingStates = std::vector<TippingState>;

struct SirParams {
  double beta = 0.0;   // per-contact infection probability
  double gamma = 0.0;  // per-step recovery probability

  void validate() const;
};

struct TippingParams {
  double theta = 0.5;

  void validate() const;
};

/// Per-edge activation probabilities with a default for unlisted edges.
class EdgeProbability {
 public:
  explicit EdgeProbability(double default_p = 0.0);

  void set(Edge e, double p);
  double at(Edge e) const;
  double default_probability() const noexcept { return default_p_; }

 private:
  double default_p_;
  std::map<Edge, double> overrides_;
};

/// Synchronous SIR update. A susceptible node draws one uniform per infected
/// in-neighbor and is infected if any draw falls below beta. Nodes infected at
/// the start of the step then recover with probability gamma. Draws are
/// consumed in ascending node order, in-neighbors ascending.
SirStates sir_step(const SocialGraph& g, const SirStates& states, const SirParams& params,
                   RngStream& rng);

/// Synchronous linear-threshold update. A node adopts when at least one
/// in-neighbor has adopted and the adopted fraction of its in-neighbors is
/// >= theta. Adoption is irreversible.
TippingStates tipping_step(const SocialGraph& g, const TippingStates& states,
                           const TippingParams& params);

using EdgeSet = std::set<Edge>;

struct IcStepResult {
  SirStates states;
  EdgeSet attempted;
};

/// Independent cascade step. Every node infected at step start tries each
/// out-edge not yet attempted exactly once and then recovers.
IcStepResult ic_step(const SocialGraph& g, const SirStates& states, const EdgeProbability& probs,
                     const EdgeSet& attempted, RngStream& rng);

enum class AgentKind : std::uint8_t { Regular, Forceful };

struct BeliefState {
  std::map<UserId, double> beliefs;
  std::map<UserId, AgentKind> kinds;  // absent means Regular
  double epsilon = 0.25;              // weight a regular agent keeps facing a forceful one

  AgentKind kind(UserId u) const;
};

/// Pairwise exchange between i and j.
///
///   regular/regular:   both move to the average
///   regular/forceful:  the regular side moves to eps*x_self + (1-eps)*x_other,
///                      the forceful side keeps its belief
///   forceful/forceful: unchanged
BeliefState belief_exchange(const BeliefState& state, UserId i, UserId j);

struct BeliefRun {
  BeliefState state;
  std::vector<double> mean_trace;  // mean belief after each round
};

/// `iterations` rounds, each applying belief_exchange to the endpoints of one
/// uniformly chosen edge.
BeliefRun run_belief_process(const SocialGraph& g, const BeliefState& init,
                             std::uint64_t iterations, RngStream& rng);

}  // namespace rumorsim
