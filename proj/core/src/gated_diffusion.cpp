#include "rumorsim/gated_diffusion.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/rng.hpp"

namespace rumorsim {

void SimilarityGate::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("gate threshold must lie in [0,1], got " + std::to_string(threshold));
  }
}

bool DecisionTable::passes(Edge e) const {
  const auto it = decisions_.find(e);
  return it != decisions_.end() && it->second;
}

DecisionTable DecisionTable::load(const std::filesystem::path& path) {
  csv::Reader reader(path);
  reader.expect_header("from_user_id,to_user_id,pass");
  DecisionTable table;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 3) {
      throw ParseError(reader.source(), reader.line(),
                       "expected 3 fields, got " + std::to_string(fields.size()));
    }
    const Edge e{csv::parse_u64(fields[0], reader.source(), reader.line(), "from_user_id"),
                 csv::parse_u64(fields[1], reader.source(), reader.line(), "to_user_id")};
    const auto pass = csv::parse_u64(fields[2], reader.source(), reader.line(), "pass");
    if (pass > 1) throw ParseError(reader.source(), reader.line(), "pass must be 0 or 1");
    table.set(e, pass == 1);
  }
  return table;
}

void DecisionTable::write(const std::filesystem::path& path) const {
  auto out = csv::open_output(path);
  out << "from_user_id,to_user_id,pass\n";
  for (const auto& [e, pass] : decisions_) {
    out << e.from << ',' << e.to << ',' << (pass ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

EdgeGate EdgeGate::user_user(const ProfileMap& profiles, SimilarityGate gate) {
  gate.validate();
  EdgeGate g;
  g.mode_ = GateMode::UserUser;
  g.gate_ = gate;
  g.profiles_ = &profiles;
  return g;
}

EdgeGate EdgeGate::user_content(const ProfileMap& profiles, const RumorContent& rumor,
                                SimilarityGate gate) {
  gate.validate();
  EdgeGate g;
  g.mode_ = GateMode::UserContent;
  g.gate_ = gate;
  g.profiles_ = &profiles;
  g.rumor_ = &rumor;
  return g;
}

EdgeGate EdgeGate::precomputed(DecisionTable table) {
  EdgeGate g;
  g.mode_ = GateMode::Precomputed;
  g.table_ = std::move(table);
  return g;
}

std::optional<double> EdgeGate::score(UserId from, UserId to) const {
  switch (mode_) {
    case GateMode::Precomputed:
      return table_.passes({from, to}) ? 1.0 : 0.0;
    case GateMode::UserUser: {
      const auto a = profiles_->find(from);
      const auto b = profiles_->find(to);
      if (a == profiles_->end() || b == profiles_->end()) return std::nullopt;
      return rumorsim::score(gate_.metric, a->second.topics, b->second.topics);
    }
    case GateMode::UserContent: {
      const auto b = profiles_->find(to);
      if (b == profiles_->end()) return std::nullopt;
      return rumorsim::score(gate_.metric, b->second.topics, rumor_->topics);
    }
  }
  return std::nullopt;
}

bool EdgeGate::passes(UserId from, UserId to) const {
  if (mode_ == GateMode::Precomputed) return table_.passes({from, to});
  return score(from, to).value_or(0.0) >= gate_.threshold;
}

bool DiffuserSet::contains(UserId u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

DiffuserSet diffuse(const SocialGraph& g, const EdgeGate& gate, std::span<const UserId> initials,
                    const DiffuseOptions& options) {
  const ProfileMap* profiles = gate.profiles();
  std::vector<UserId> seeds(initials.begin(), initials.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (UserId u : seeds) {
    if (!g.contains(u)) {
      throw ConfigError("initial diffuser " + std::to_string(u) + " is not in the graph");
    }
    if (profiles && !profiles->contains(u)) {
      throw ConfigError("initial diffuser " + std::to_string(u) + " has no profile");
    }
  }

  std::optional<RngStream> rng;
  if (options.shuffle_seed) {
    rng.emplace(*options.shuffle_seed);
    for (std::size_t i = seeds.size(); i > 1; --i) {
      std::swap(seeds[i - 1], seeds[rng->uniform_index(i)]);
    }
  }

  DiffuserSet out;
  std::vector<bool> in_set(g.node_count(), false);
  std::deque<std::size_t> work;
  for (UserId u : seeds) {
    const std::size_t idx = g.index_of(u);
    in_set[idx] = true;
    out.insertion_log.push_back(u);
    work.push_back(idx);
  }

  std::set<UserId> missing;
  std::vector<std::size_t> neighbors;
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop_front();
    const UserId from = g.id_at(i);
    const auto out_idx = g.out_indices(i);
    neighbors.assign(out_idx.begin(), out_idx.end());
    if (rng) {
      for (std::size_t k = neighbors.size(); k > 1; --k) {
        std::swap(neighbors[k - 1], neighbors[rng->uniform_index(k)]);
      }
    }
    for (std::size_t j : neighbors) {
      if (in_set[j]) continue;
      const UserId to = g.id_at(j);
      if (profiles && !profiles->contains(to)) missing.insert(to);
      if (gate.passes(from, to)) {
        in_set[j] = true;
        out.insertion_log.push_back(to);
        work.push_back(j);
      }
    }
  }

  out.members = out.insertion_log;
  std::sort(out.members.begin(), out.members.end());
  out.missing_profiles.assign(missing.begin(), missing.end());
  return out;
}

DiffuserSet diffuse_user_user(const SocialGraph& g, const ProfileMap& profiles,
                              std::span<const UserId> initials, const SimilarityGate& gate) {
  return diffuse(g, EdgeGate::user_user(profiles, gate), initials);
}

DiffuserSet diffuse_user_content(const SocialGraph& g, const ProfileMap& profiles,
                                 const RumorContent& rumor, std::span<const UserId> initials,
                                 const SimilarityGate& gate) {
  return diffuse(g, EdgeGate::user_content(profiles, rumor, gate), initials);
}

std::vector<Edge> filtered_edge_set(const SocialGraph& g, const EdgeGate& gate) {
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (gate.passes(e.from, e.to)) out.push_back(e);
  }
  return out;
}

}  // namespace rumorsim
