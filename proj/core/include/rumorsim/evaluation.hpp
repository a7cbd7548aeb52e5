#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rumorsim/gated_diffusion.hpp"
#include "rumorsim/graph.hpp"
#include "rumorsim/simulator.hpp"

namespace rumorsim {

/// Confusion counts of a predicted diffuser set against observed labels.
struct EvalReport {
  std::string metric;
  double threshold = 0.0;
  std::size_t true_pos = 0;
  std::size_t true_neg = 0;
  std::size_t false_pos = 0;
  std::size_t false_neg = 0;
  std::size_t predicted_count = 0;
  double accuracy = 0.0;  // (TP + TN) / total
  double error = 1.0;     // 1 - accuracy

  std::size_t total() const noexcept { return true_pos + true_neg + false_pos + false_neg; }

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Every profiled user is a labeled node. Predicted users without a profile
/// are not counted. Throws ConfigError when there are no profiles.
EvalReport evaluate(std::span<const UserId> predicted, const ProfileMap& profiles);
EvalReport evaluate(const DiffuserSet& predicted, const ProfileMap& profiles);

enum class GatedAlgorithm { UserUser, UserContent };

/// Runs the gated algorithm once per metric at threshold `tau` and evaluates
/// each. Rows are ordered by accuracy descending, then metric name.
std::vector<EvalReport> metric_sweep(const SocialGraph& g, const ProfileMap& profiles,
                                     const RumorContent& rumor, std::span<const UserId> initials,
                                     std::span<const MetricKind> metrics, double tau,
                                     GatedAlgorithm algorithm = GatedAlgorithm::UserUser);

/// (step, diffuser count) for every step of the trace.
std::vector<std::pair<std::size_t, std::size_t>> diffusion_curve(const DiffusionTrace& trace);

}  // namespace rumorsim
