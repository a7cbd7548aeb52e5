#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rumorsim/similarity.hpp"

namespace rumorsim {

/// Opaque user identifier. No contiguity is assumed.
using UserId = std::uint64_t;

/// Directed edge: information flows from `from` to `to` (`to` follows `from`).
struct Edge {
  UserId from = 0;
  UserId to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct BuildStats {
  std::size_t rows = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// Immutable directed social graph.
///
/// Nodes are stored sorted ascending, so every node has a dense index in
/// [0, node_count()). Adjacency is kept in CSR form in both directions with
/// ascending neighbor order. Edges are sorted by (from, to); an edge's index
/// is its position in that order.
class SocialGraph {
 public:
  SocialGraph() = default;

  /// Drops self-loops and duplicate edges. `extra_nodes` are added even when
  /// they have no incident edge.
  static SocialGraph build(std::vector<Edge> edges, std::span<const UserId> extra_nodes = {},
                           BuildStats* stats = nullptr);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<UserId>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool contains(UserId u) const;
  std::optional<std::size_t> find_index(UserId u) const;
  /// Throws NotFoundError for an unknown id.
  std::size_t index_of(UserId u) const;
  UserId id_at(std::size_t index) const { return nodes_[index]; }

  /// Sorted followers of `u`. Throws NotFoundError for an unknown id.
  std::span<const UserId> out_neighbors(UserId u) const;
  /// Sorted users that `u` follows. Throws NotFoundError for an unknown id.
  std::span<const UserId> in_neighbors(UserId u) const;

  std::span<const std::size_t> out_indices(std::size_t index) const;
  std::span<const std::size_t> in_indices(std::size_t index) const;

  /// Index into edges() of the first out-edge of node `index`.
  std::size_t out_edge_offset(std::size_t index) const { return out_offsets_[index]; }

  bool has_edge(UserId from, UserId to) const;

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<UserId> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> out_targets_;
  std::vector<UserId> out_ids_;
  std::vector<std::size_t> in_offsets_;
  std::vector<std::size_t> in_sources_;
  std::vector<UserId> in_ids_;
};

inline std::span<const UserId> out_neighbors(const SocialGraph& g, UserId u) {
  return g.out_neighbors(u);
}

struct EdgeLoad {
  SocialGraph graph;
  BuildStats stats;
};

/// Reads `from_user_id,to_user_id`. Throws IoError if the file cannot be
/// opened and ParseError (with the line number) on a malformed row.
EdgeLoad load_edges(const std::filesystem::path& path);

void write_edges(const SocialGraph& g, const std::filesystem::path& path);

struct UserProfile {
  UserId id = 0;
  TopicSet topics;
  std::uint64_t created_at = 0;
  bool observed_diffuser = false;
};

using ProfileMap = std::map<UserId, UserProfile>;

/// Reads `user_id,topics,created_at,is_diffuser`. Duplicate ids, bad
/// timestamps and labels outside {0,1,true,false} are ParseErrors.
ProfileMap load_users(const std::filesystem::path& path);

void write_users(const ProfileMap& profiles, const std::filesystem::path& path);

struct RumorContent {
  TopicSet topics;
};

/// One topic label per line.
RumorContent load_rumor(const std::filesystem::path& path);

/// Same graph plus every profiled user as a (possibly isolated) node.
SocialGraph with_profile_nodes(const SocialGraph& g, const ProfileMap& profiles);

struct ValidationReport {
  std::vector<UserId> missing_profiles;
  std::vector<UserId> empty_topics;
  std::vector<UserId> isolated_nodes;

  bool clean() const noexcept {
    return missing_profiles.empty() && empty_topics.empty() && isolated_nodes.empty();
  }
};

ValidationReport validate(const SocialGraph& g, const ProfileMap& profiles);

}  // namespace rumorsim
