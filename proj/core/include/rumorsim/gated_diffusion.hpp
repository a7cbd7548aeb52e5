#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rumorsim/graph.hpp"
#include "rumorsim/similarity.hpp"

namespace rumorsim {

/// Hard threshold on a similarity metric: passes iff score >= threshold.
struct SimilarityGate {
  MetricKind metric = MetricKind::Cosine;
  double threshold = 0.5;

  void validate() const;
};

/// Precomputed per-edge pass/fail decisions. Edges without an entry fail.
class DecisionTable {
 public:
  void set(Edge e, bool pass) { decisions_[e] = pass; }
  bool passes(Edge e) const;
  std::size_t size() const noexcept { return decisions_.size(); }

  /// Reads `from_user_id,to_user_id,pass` with pass in {0,1}.
  static DecisionTable load(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

 private:
  std::map<Edge, bool> decisions_;
};

enum class GateMode { UserUser, UserContent, Precomputed };

/// Admission test for a diffusion step along an edge.
///
/// User-user gates compare the sender's profile with the candidate's;
/// user-content gates compare the candidate's profile with the rumor. The gate
/// keeps references to the profiles and rumor, which must outlive it.
class EdgeGate {
 public:
  static EdgeGate user_user(const ProfileMap& profiles, SimilarityGate gate);
  static EdgeGate user_content(const ProfileMap& profiles, const RumorContent& rumor,
                               SimilarityGate gate);
  static EdgeGate precomputed(DecisionTable table);

  GateMode mode() const noexcept { return mode_; }
  const SimilarityGate& gate() const noexcept { return gate_; }
  /// Null for precomputed gates.
  const ProfileMap* profiles() const noexcept { return profiles_; }

  /// Similarity behind the decision; nullopt when a needed profile is
  /// missing. Precomputed gates report 1 or 0.
  std::optional<double> score(UserId from, UserId to) const;

  /// A missing profile scores 0.
  bool passes(UserId from, UserId to) const;

 private:
  EdgeGate() = default;

  GateMode mode_ = GateMode::UserUser;
  SimilarityGate gate_;
  const ProfileMap* profiles_ = nullptr;
  const RumorContent* rumor_ = nullptr;
  DecisionTable table_;
};

struct DiffuserSet {
  std::vector<UserId> members;        // sorted
  std::vector<UserId> insertion_log;  // initials first, then admission order
  std::vector<UserId> missing_profiles;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(UserId u) const;
};

struct DiffuseOptions {
  /// Shuffles the initial work-list and each neighbor list. Only the
  /// insertion log depends on it; the member set does not.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Work-list fixpoint: every diffuser offers the rumor to each of its
/// followers; a follower joins when the gate passes. Throws ConfigError when
/// an initial user is missing from the graph, or from the profiles when the
/// gate needs them.
DiffuserSet diffuse(const SocialGraph& g, const EdgeGate& gate, std::span<const UserId> initials,
                    const DiffuseOptions& options = {});

DiffuserSet diffuse_user_user(const SocialGraph& g, const ProfileMap& profiles,
                              std::span<const UserId> initials, const SimilarityGate& gate);

DiffuserSet diffuse_user_content(const SocialGraph& g, const ProfileMap& profiles,
                                 const RumorContent& rumor, std::span<const UserId> initials,
                                 const SimilarityGate& gate);

/// Edges of `g` that pass the gate, in graph edge order.
std::vector<Edge> filtered_edge_set(const SocialGraph& g, const EdgeGate& gate);

}  // namespace rumorsim
