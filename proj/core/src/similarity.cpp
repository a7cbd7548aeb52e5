#include "rumorsim/similarity.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>

#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* what) {
  if (a.size() != b.size()) {
    throw ConfigError(std::string(what) + ": vectors differ in length (" +
                      std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

std::string normalize_label(std::string_view raw) {
  std::string out(trim(raw));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

TopicSet::TopicSet(std::initializer_list<std::string_view> labels) {
  for (auto label : labels) insert(label);
}

bool TopicSet::insert(std::string_view label) {
  std::string norm = normalize_label(label);
  if (norm.empty()) return false;
  auto it = std::lower_bound(labels_.begin(), labels_.end(), norm);
  if (it != labels_.end() && *it == norm) return false;
  labels_.insert(it, std::move(norm));
  return true;
}

bool TopicSet::contains(std::string_view label) const {
  const std::string norm = normalize_label(label);
  return std::binary_search(labels_.begin(), labels_.end(), norm);
}

std::string TopicSet::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ", ";
    out += labels_[i];
  }
  return out;
}

TopicSet tokenize_topics(std::string_view raw) {
  TopicSet set;
  while (true) {
    const auto comma = raw.find(',');
    set.insert(raw.substr(0, comma));
    if (comma == std::string_view::npos) break;
    raw.remove_prefix(comma + 1);
  }
  return set;
}

std::size_t intersection_size(const TopicSet& a, const TopicSet& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::pair<TermVector, TermVector> binary_vectors(const TopicSet& a, const TopicSet& b) {
  TermVector va;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(va.vocabulary));
  TermVector vb{va.vocabulary, {}};
  va.weights.reserve(va.vocabulary.size());
  vb.weights.reserve(va.vocabulary.size());
  for (const auto& label : va.vocabulary) {
    va.weights.push_back(std::binary_search(a.begin(), a.end(), label) ? 1.0 : 0.0);
    vb.weights.push_back(std::binary_search(b.begin(), b.end(), label) ? 1.0 : 0.0);
  }
  return {std::move(va), std::move(vb)};
}

std::string_view metric_name(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::Cosine: return "cosine";
    case MetricKind::Pearson: return "pearson";
    case MetricKind::JaccardSet: return "jaccard";
    case MetricKind::JaccardVector: return "jaccard_vector";
    case MetricKind::Dice: return "dice";
    case MetricKind::Levenshtein: return "levenshtein";
    case MetricKind::Average: return "average";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view name) {
  static constexpr std::array kAll = {
      MetricKind::Cosine, MetricKind::Pearson,     MetricKind::JaccardSet, MetricKind::JaccardVector,
      MetricKind::Dice,   MetricKind::Levenshtein, MetricKind::Average,
  };
  const std::string norm = normalize_label(name);
  if (norm == "jaccard_set") return MetricKind::JaccardSet;
  for (auto kind : kAll) {
    if (metric_name(kind) == norm) return kind;
  }
  throw ConfigError("unknown similarity metric '" + std::string(name) + "'");
}

// Binary vectors: a.b = |a n b| and |a|^2 = |a|.
double cosine(const TopicSet& a, const TopicSet& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto common = static_cast<double>(intersection_size(a, b));
  return common / std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double cosine(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "cosine");
  const double na = dot(a, a);
  const double nb = dot(b, b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / std::sqrt(na * nb), -1.0, 1.0);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "pearson");
  if (a.size() < 2) {
    throw UndefinedCorrelation("pearson: need at least two components, got " +
                               std::to_string(a.size()));
  }
  const auto n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  std::vector<double> ca(a.size());
  std::vector<double> cb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[i] = a[i] - mean_a;
    cb[i] = b[i] - mean_b;
  }
  const double va = dot(ca, ca);
  const double vb = dot(cb, cb);
  if (va == 0.0 || vb == 0.0) throw UndefinedCorrelation("pearson: zero variance");
  return std::clamp(dot(ca, cb) / std::sqrt(va * vb), -1.0, 1.0);
}

double pearson(const TermVector& a, const TermVector& b) {
  if (a.vocabulary != b.vocabulary) throw ConfigError("pearson: vocabularies differ");
  return pearson(std::span<const double>(a.weights), std::span<const double>(b.weights));
}

double jaccard(const TopicSet& a, const TopicSet& b, JaccardVariant variant) {
  if (variant == JaccardVariant::Vector) {
    const auto [va, vb] = binary_vectors(a, b);
    return jaccard(std::span<const double>(va.weights), std::span<const double>(vb.weights));
  }
  const std::size_t common = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double jaccard(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "jaccard");
  const double ab = dot(a, b);
  const double denom = dot(a, a) + dot(b, b) - ab;
  if (denom <= 0.0) return 0.0;
  return ab / denom;
}

double dice(const TopicSet& a, const TopicSet& b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 0.0;
  return 2.0 * static_cast<double>(intersection_size(a, b)) / static_cast<double>(total);
}

EditResult levenshtein(std::string_view s1, std::string_view s2) {
  if (s1.size() < s2.size()) std::swap(s1, s2);
  // Single row over the shorter string.
  std::vector<std::size_t> row(s2.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= s1.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= s2.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t subst = diag + (s1[i - 1] == s2[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, subst});
      diag = up;
    }
  }
  EditResult result;
  result.distance = row.back();
  const std::size_t longest = std::max(s1.size(), s2.size());
  result.similarity =
      longest == 0 ? 1.0
                   : 1.0 - static_cast<double>(result.distance) / static_cast<double>(longest);
  return result;
}

double score(MetricKind metric, const TopicSet& a, const TopicSet& b) {
  switch (metric) {
    case MetricKind::Cosine: return cosine(a, b);
    case MetricKind::Pearson: {
      const auto [va, vb] = binary_vectors(a, b);
      return pearson(va, vb);
    }
    case MetricKind::JaccardSet: return jaccard(a, b, JaccardVariant::Set);
    case MetricKind::JaccardVector: return jaccard(a, b, JaccardVariant::Vector);
    case MetricKind::Dice: return dice(a, b);
    case MetricKind::Levenshtein: return levenshtein(a.canonical(), b.canonical()).similarity;
    case MetricKind::Average:
      return (cosine(a, b) + jaccard(a, b, JaccardVariant::Set) + dice(a, b)) / 3.0;
  }
  throw ConfigError("invalid metric");
}

}  // namespace rumorsim
