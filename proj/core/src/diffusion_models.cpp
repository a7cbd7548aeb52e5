#include "rumorsim/diffusion_models.hpp"

#include <algorithm>
#include <string>

#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void require_probability(double p, const char* name) {
  if (!is_probability(p)) {
    throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(p));
  }
}

template <typename States>
void require_states(const SocialGraph& g, const States& states) {
  if (states.size() != g.node_count()) {
    throw ConfigError("state vector covers " + std::to_string(states.size()) + " nodes, graph has " +
                      std::to_string(g.node_count()));
  }
}

double mean_belief(const BeliefState& s) {
  if (s.beliefs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [id, x] : s.beliefs) sum += x;
  return sum / static_cast<double>(s.beliefs.size());
}

}  // namespace

void SirParams::validate() const {
  require_probability(beta, "beta");
  require_probability(gamma, "gamma");
}

void TippingParams::validate() const { require_probability(theta, "theta"); }

EdgeProbability::EdgeProbability(double default_p) : default_p_(default_p) {
  require_probability(default_p, "default edge probability");
}

void EdgeProbability::set(Edge e, double p) {
  require_probability(p, "edge probability");
  overrides_[e] = p;
}

double EdgeProbability::at(Edge e) const {
  const auto it = overrides_.find(e);
  return it == overrides_.end() ? default_p_ : it->second;
}

SirStates sir_step(const SocialGraph& g, const SirStates& states, const SirParams& params,
                   RngStream& rng) {
  params.validate();
  require_states(g, states);
  SirStates next = states;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    switch (states[v]) {
      case SirState::Susceptible: {
        bool hit = false;
        for (std::size_t u : g.in_indices(v)) {
          if (states[u] != SirState::Infected) continue;
          if (rng.uniform() < params.beta) hit = true;
        }
        if (hit) next[v] = SirState::Infected;
        break;
      }
      case SirState::Infected:
        if (rng.uniform() < params.gamma) next[v] = SirState::Recovered;
        break;
      case SirState::Recovered:
        break;
    }
  }
  return next;
}

TippingStates tipping_step(const SocialGraph& g, const TippingStates& states,
                           const TippingParams& params) {
  params.validate();
  require_states(g, states);
  TippingStates next = states;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (states[v] == TippingState::Adopted) continue;
    const auto in = g.in_indices(v);
    std::size_t adopted = 0;
    for (std::size_t u : in) adopted += states[u] == TippingState::Adopted ? 1 : 0;
    if (adopted == 0) continue;
    const double fraction = static_cast<double>(adopted) / static_cast<double>(in.size());
    if (fraction >= params.theta) next[v] = TippingState::Adopted;
  }
  return next;
}

IcStepResult ic_step(const SocialGraph& g, const SirStates& states, const EdgeProbability& probs,
                     const EdgeSet& attempted, RngStream& rng) {
  require_states(g, states);
  IcStepResult out{states, attempted};
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    if (states[u] != SirState::Infected) continue;
    const UserId from = g.id_at(u);
    for (std::size_t v : g.out_indices(u)) {
      const Edge e{from, g.id_at(v)};
      if (!out.attempted.insert(e).second) continue;
      const double p = probs.at(e);
      require_probability(p, "edge probability");
      if (rng.uniform() < p && out.states[v] == SirState::Susceptible) {
        out.states[v] = SirState::Infected;
      }
    }
    out.states[u] = SirState::Recovered;
  }
  return out;
}

AgentKind BeliefState::kind(UserId u) const {
  const auto it = kinds.find(u);
  return it == kinds.end() ? AgentKind::Regular : it->second;
}

BeliefState belief_exchange(const BeliefState& state, UserId i, UserId j) {
  if (i == j) throw ConfigError("belief exchange needs two distinct users");
  require_probability(state.epsilon, "epsilon");
  const auto it_i = state.beliefs.find(i);
  const auto it_j = state.beliefs.find(j);
  if (it_i == state.beliefs.end()) throw NotFoundError("no belief for user " + std::to_string(i));
  if (it_j == state.beliefs.end()) throw NotFoundError("no belief for user " + std::to_string(j));

  BeliefState next = state;
  const double xi = it_i->second;
  const double xj = it_j->second;
  const AgentKind ki = state.kind(i);
  const AgentKind kj = state.kind(j);
  const double eps = state.epsilon;
  if (ki == AgentKind::Regular && kj == AgentKind::Regular) {
    const double avg = (xi + xj) / 2.0;
    next.beliefs[i] = avg;
    next.beliefs[j] = avg;
  } else if (ki == AgentKind::Regular) {
    next.beliefs[i] = std::clamp(eps * xi + (1.0 - eps) * xj, 0.0, 1.0);
  } else if (kj == AgentKind::Regular) {
    next.beliefs[j] = std::clamp(eps * xj + (1.0 - eps) * xi, 0.0, 1.0);
  }
  return next;
}

BeliefRun run_belief_process(const SocialGraph& g, const BeliefState& init,
                             std::uint64_t iterations, RngStream& rng) {
  if (iterations > 0 && g.edge_count() == 0) {
    throw ConfigError("belief process needs at least one edge");
  }
  for (UserId u : g.nodes()) {
    if (!init.beliefs.contains(u)) throw NotFoundError("no belief for user " + std::to_string(u));
  }
  for (const auto& [u, x] : init.beliefs) {
    if (!is_probability(x)) throw ConfigError("belief of user " + std::to_string(u) + " outside [0,1]");
  }
  BeliefRun run{init, {}};
  run.mean_trace.reserve(iterations);
  for (std::uint64_t r = 0; r < iterations; ++r) {
    const Edge& e = g.edges()[rng.uniform_index(g.edge_count())];
    run.state = belief_exchange(run.state, e.from, e.to);
    run.mean_trace.push_back(mean_belief(run.state));
  }
  return run;
}

}  // namespace rumorsim
