#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "rumorsim/graph.hpp"

namespace rumorsim {

/// Precomputed user-user similarities for one edge.
struct SimilarityRow {
  Edge edge;
  double cosine = 0.0;
  double jaccard = 0.0;
  double dice = 0.0;
  double average = 0.0;
};

/// One row per graph edge whose endpoints both have profiles, in edge order.
std::vector<SimilarityRow> compute_similarity_rows(const SocialGraph& g,
                                                   const ProfileMap& profiles);

/// `from_user_id,to_user_id,cosine,jaccard,dice,average`
void write_similarity_cache(std::span<const SimilarityRow> rows, const std::filesystem::path& path);
std::vector<SimilarityRow> read_similarity_cache(const std::filesystem::path& path);

}  // namespace rumorsim
