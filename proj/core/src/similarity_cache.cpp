#include "rumorsim/similarity_cache.hpp"

#include <charconv>

#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

double parse_score(const std::string& field, const csv::Reader& reader) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(reader.source(), reader.line(), "invalid score '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<SimilarityRow> compute_similarity_rows(const SocialGraph& g,
                                                   const ProfileMap& profiles) {
  std::vector<SimilarityRow> rows;
  rows.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto a = profiles.find(e.from);
    const auto b = profiles.find(e.to);
    if (a == profiles.end() || b == profiles.end()) continue;
    const TopicSet& ta = a->second.topics;
    const TopicSet& tb = b->second.topics;
    rows.push_back({e, score(MetricKind::Cosine, ta, tb), score(MetricKind::JaccardSet, ta, tb),
                    score(MetricKind::Dice, ta, tb), score(MetricKind::Average, ta, tb)});
  }
  return rows;
}

void write_similarity_cache(std::span<const SimilarityRow> rows,
                            const std::filesystem::path& path) {
  auto out = csv::open_output(path);
  out << "from_user_id,to_user_id,cosine,jaccard,dice,average\n";
  for (const auto& r : rows) {
    out << r.edge.from << ',' << r.edge.to << ',' << csv::format_double(r.cosine) << ','
        << csv::format_double(r.jaccard) << ',' << csv::format_double(r.dice) << ','
        << csv::format_double(r.average) << '\n';
  }
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::vector<SimilarityRow> read_similarity_cache(const std::filesystem::path& path) {
  csv::Reader reader(path);
  reader.expect_header("from_user_id,to_user_id,cosine,jaccard,dice,average");
  std::vector<SimilarityRow> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    if (f.size() != 6) {
      throw ParseError(reader.source(), reader.line(),
                       "expected 6 fields, got " + std::to_string(f.size()));
    }
    SimilarityRow r;
    r.edge = {csv::parse_u64(f[0], reader.source(), reader.line(), "from_user_id"),
              csv::parse_u64(f[1], reader.source(), reader.line(), "to_user_id")};
    r.cosine = parse_score(f[2], reader);
    r.jaccard = parse_score(f[3], reader);
    r.dice = parse_score(f[4], reader);
    r.average = parse_score(f[5], reader);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace rumorsim
