#include "rumorsim/evaluation.hpp"

#include <algorithm>

#include "rumorsim/error.hpp"

namespace rumorsim {

EvalReport evaluate(std::span<const UserId> predicted, const ProfileMap& profiles) {
  if (profiles.empty()) throw ConfigError("evaluation needs at least one labeled user");
  std::vector<UserId> pred(predicted.begin(), predicted.end());
  std::sort(pred.begin(), pred.end());
  pred.erase(std::unique(pred.begin(), pred.end()), pred.end());

  EvalReport r;
  r.predicted_count = pred.size();
  for (const auto& [id, p] : profiles) {
    const bool hit = std::binary_search(pred.begin(), pred.end(), id);
    if (hit && p.observed_diffuser) {
      ++r.true_pos;
    } else if (hit) {
      ++r.false_pos;
    } else if (p.observed_diffuser) {
      ++r.false_neg;
    } else {
      ++r.true_neg;
    }
  }
  r.accuracy = static_cast<double>(r.true_pos + r.true_neg) / static_cast<double>(r.total());
  r.error = 1.0 - r.accuracy;
  return r;
}

EvalReport evaluate(const DiffuserSet& predicted, const ProfileMap& profiles) {
  return evaluate(std::span<const UserId>(predicted.members), profiles);
}

std::vector<EvalReport> metric_sweep(const SocialGraph& g, const ProfileMap& profiles,
                                     const RumorContent& rumor, std::span<const UserId> initials,
                                     std::span<const MetricKind> metrics, double tau,
                                     GatedAlgorithm algorithm) {
  if (metrics.empty()) throw ConfigError("metric sweep needs at least one metric");
  std::vector<EvalReport> rows;
  rows.reserve(metrics.size());
  for (MetricKind m : metrics) {
    const SimilarityGate gate{m, tau};
    const DiffuserSet set = algorithm == GatedAlgorithm::UserUser
                                ? diffuse_user_user(g, profiles, initials, gate)
                                : diffuse_user_content(g, profiles, rumor, initials, gate);
    EvalReport r = evaluate(set, profiles);
    r.metric = std::string(metric_name(m));
    r.threshold = tau;
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const EvalReport& a, const EvalReport& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    return a.metric < b.metric;
  });
  return rows;
}

std::vector<std::pair<std::size_t, std::size_t>> diffusion_curve(const DiffusionTrace& trace) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(trace.steps.size());
  for (std::size_t t = 0; t < trace.steps.size(); ++t) out.emplace_back(t, trace.steps[t].diffusers);
  return out;
}

}  // namespace rumorsim
