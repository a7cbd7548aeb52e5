#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rumorsim {

/// Normalized set of topic labels: lowercased, trimmed, no empties, no
/// duplicates. Labels are kept sorted so iteration is deterministic.
class TopicSet {
 public:
  TopicSet() = default;
  TopicSet(std::initializer_list<std::string_view> labels);

  /// Normalizes and inserts; returns false if the label was empty or present.
  bool insert(std::string_view label);

  bool contains(std::string_view label) const;
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Sorted labels joined by ", ".
  std::string canonical() const;

  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  friend bool operator==(const TopicSet&, const TopicSet&) = default;

 private:
  std::vector<std::string> labels_;
};

std::string normalize_label(std::string_view raw);

/// Splits on commas, trims, lowercases, drops empties and deduplicates.
TopicSet tokenize_topics(std::string_view raw);

/// Labels with aligned non-negative weights.
struct TermVector {
  std::vector<std::string> vocabulary;
  std::vector<double> weights;
};

/// Binary (0/1) vectors of both sets over their sorted union vocabulary.
std::pair<TermVector, TermVector> binary_vectors(const TopicSet& a, const TopicSet& b);

std::size_t intersection_size(const TopicSet& a, const TopicSet& b);

enum class MetricKind {
  Cosine,
  Pearson,
  JaccardSet,
  JaccardVector,
  Dice,
  Levenshtein,
  // Mean of Cosine, JaccardSet and Dice.
  Average,
};

enum class JaccardVariant { Set, Vector };

std::string_view metric_name(MetricKind kind) noexcept;

/// Accepts the names produced by metric_name plus "jaccard" for JaccardSet.
/// Throws ConfigError on anything else.
MetricKind parse_metric(std::string_view name);

double cosine(const TopicSet& a, const TopicSet& b);
/// 0 when either vector has zero norm. Throws ConfigError on length mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

/// Cosine of the mean-centered vectors. Requires a common vocabulary and at
/// least two components; throws UndefinedCorrelation on zero variance.
double pearson(const TermVector& a, const TermVector& b);
double pearson(std::span<const double> a, std::span<const double> b);

double jaccard(const TopicSet& a, const TopicSet& b,
               JaccardVariant variant = JaccardVariant::Set);
/// Tanimoto form a.b / (|a|^2 + |b|^2 - a.b); equals set Jaccard on 0/1 vectors.
double jaccard(std::span<const double> a, std::span<const double> b);

double dice(const TopicSet& a, const TopicSet& b);

struct EditResult {
  std::size_t distance = 0;
  double similarity = 1.0;
};

/// Unit-cost insert/delete/substitute edit distance over bytes.
/// similarity = 1 - distance / max(|s1|, |s2|), and 1 for two empty strings.
EditResult levenshtein(std::string_view s1, std::string_view s2);

/// Uniform dispatch used by the similarity gate. Levenshtein compares the
/// canonical strings and returns the similarity, not the distance.
double score(MetricKind metric, const TopicSet& a, const TopicSet& b);

}  // namespace rumorsim
