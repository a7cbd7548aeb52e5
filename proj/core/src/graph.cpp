#include "rumorsim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "rumorsim/csv.hpp"
#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
               const std::vector<UserId>& nodes, std::vector<std::size_t>& offsets,
               std::vector<std::size_t>& targets, std::vector<UserId>& ids) {
  offsets.assign(n + 1, 0);
  for (const auto& [src, dst] : pairs) ++offsets[src + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(pairs.size());
  ids.resize(pairs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // `pairs` arrives sorted by (src, dst), so each row ends up ascending.
  for (const auto& [src, dst] : pairs) {
    const std::size_t slot = cursor[src]++;
    targets[slot] = dst;
    ids[slot] = nodes[dst];
  }
}

bool parse_bool(std::string_view raw, bool& out) {
  std::string v = normalize_label(raw);
  if (v == "1" || v == "true") {
    out = true;
    return true;
  }
  if (v == "0" || v == "false") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

SocialGraph SocialGraph::build(std::vector<Edge> edges, std::span<const UserId> extra_nodes,
                               BuildStats* stats) {
  BuildStats local;
  local.rows = edges.size();
  const auto loops = std::remove_if(edges.begin(), edges.end(),
                                    [](const Edge& e) { return e.from == e.to; });
  local.self_loops = static_cast<std::size_t>(edges.end() - loops);
  edges.erase(loops, edges.end());
  std::sort(edges.begin(), edges.end());
  const auto dups = std::unique(edges.begin(), edges.end());
  local.duplicates = static_cast<std::size_t>(edges.end() - dups);
  edges.erase(dups, edges.end());
  if (stats) *stats = local;

  SocialGraph g;
  g.nodes_.reserve(edges.size() * 2 + extra_nodes.size());
  for (const auto& e : edges) {
    g.nodes_.push_back(e.from);
    g.nodes_.push_back(e.to);
  }
  g.nodes_.insert(g.nodes_.end(), extra_nodes.begin(), extra_nodes.end());
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());
  g.edges_ = std::move(edges);

  const std::size_t n = g.nodes_.size();
  std::vector<std::pair<std::size_t, std::size_t>> fwd;
  fwd.reserve(g.edges_.size());
  for (const auto& e : g.edges_) fwd.emplace_back(g.index_of(e.from), g.index_of(e.to));
  std::vector<std::pair<std::size_t, std::size_t>> rev;
  rev.reserve(fwd.size());
  for (const auto& [s, d] : fwd) rev.emplace_back(d, s);
  std::sort(rev.begin(), rev.end());

  build_csr(n, fwd, g.nodes_, g.out_offsets_, g.out_targets_, g.out_ids_);
  build_csr(n, rev, g.nodes_, g.in_offsets_, g.in_sources_, g.in_ids_);
  return g;
}

std::optional<std::size_t> SocialGraph::find_index(UserId u) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), u);
  if (it == nodes_.end() || *it != u) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool SocialGraph::contains(UserId u) const { return find_index(u).has_value(); }

std::size_t SocialGraph::index_of(UserId u) const {
  if (auto idx = find_index(u)) return *idx;
  throw NotFoundError("user " + std::to_string(u) + " is not in the graph");
}

std::span<const UserId> SocialGraph::out_neighbors(UserId u) const {
  const std::size_t i = index_of(u);
  return std::span<const UserId>(out_ids_).subspan(out_offsets_[i],
                                                    out_offsets_[i + 1] - out_offsets_[i]);
}

std::span<const UserId> SocialGraph::in_neighbors(UserId u) const {
  const std::size_t i = index_of(u);
  return std::span<const UserId>(in_ids_).subspan(in_offsets_[i],
                                                   in_offsets_[i + 1] - in_offsets_[i]);
}

std::span<const std::size_t> SocialGraph::out_indices(std::size_t index) const {
  return std::span<const std::size_t>(out_targets_)
      .subspan(out_offsets_[index], out_offsets_[index + 1] - out_offsets_[index]);
}

std::span<const std::size_t> SocialGraph::in_indices(std::size_t index) const {
  return std::span<const std::size_t>(in_sources_)
      .subspan(in_offsets_[index], in_offsets_[index + 1] - in_offsets_[index]);
}

bool SocialGraph::has_edge(UserId from, UserId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

EdgeLoad load_edges(const std::filesystem::path& path) {
  csv::Reader reader(path);
  reader.expect_header("from_user_id,to_user_id");
  std::vector<Edge> edges;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 2) {
      throw ParseError(reader.source(), reader.line(),
                       "expected 2 fields, got " + std::to_string(fields.size()));
    }
    edges.push_back({csv::parse_u64(fields[0], reader.source(), reader.line(), "from_user_id"),
                     csv::parse_u64(fields[1], reader.source(), reader.line(), "to_user_id")});
  }
  EdgeLoad out;
  out.graph = SocialGraph::build(std::move(edges), {}, &out.stats);
  return out;
}

void write_edges(const SocialGraph& g, const std::filesystem::path& path) {
  auto out = csv::open_output(path);
  out << "from_user_id,to_user_id\n";
  for (const auto& e : g.edges()) out << e.from << ',' << e.to << '\n';
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

ProfileMap load_users(const std::filesystem::path& path) {
  csv::Reader reader(path);
  reader.expect_header("user_id,topics,created_at,is_diffuser");
  ProfileMap profiles;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 4) {
      throw ParseError(reader.source(), reader.line(),
                       "expected 4 fields, got " + std::to_string(fields.size()));
    }
    UserProfile p;
    p.id = csv::parse_u64(fields[0], reader.source(), reader.line(), "user_id");
    p.topics = tokenize_topics(fields[1]);
    p.created_at = csv::parse_u64(fields[2], reader.source(), reader.line(), "created_at");
    if (!parse_bool(fields[3], p.observed_diffuser)) {
      throw ParseError(reader.source(), reader.line(),
                       "is_diffuser must be one of 0,1,true,false; got '" + fields[3] + "'");
    }
    const UserId id = p.id;
    if (!profiles.emplace(id, std::move(p)).second) {
      throw ParseError(reader.source(), reader.line(), "duplicate user_id " + std::to_string(id));
    }
  }
  return profiles;
}

void write_users(const ProfileMap& profiles, const std::filesystem::path& path) {
  auto out = csv::open_output(path);
  out << "user_id,topics,created_at,is_diffuser\n";
  for (const auto& [id, p] : profiles) {
    out << id << ',' << csv::quote(p.topics.canonical()) << ',' << p.created_at << ','
        << (p.observed_diffuser ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

RumorContent load_rumor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  RumorContent rumor;
  std::string line;
  while (std::getline(in, line)) rumor.topics.insert(line);
  return rumor;
}

SocialGraph with_profile_nodes(const SocialGraph& g, const ProfileMap& profiles) {
  std::vector<UserId> extra;
  extra.reserve(profiles.size());
  for (const auto& [id, p] : profiles) extra.push_back(id);
  return SocialGraph::build(g.edges(), extra);
}

ValidationReport validate(const SocialGraph& g, const ProfileMap& profiles) {
  ValidationReport report;
  std::set<UserId> missing;
  for (const auto& e : g.edges()) {
    if (!profiles.contains(e.from)) missing.insert(e.from);
    if (!profiles.contains(e.to)) missing.insert(e.to);
  }
  report.missing_profiles.assign(missing.begin(), missing.end());
  for (const auto& [id, p] : profiles) {
    if (p.topics.empty()) report.empty_topics.push_back(id);
  }
  std::set<UserId> isolated;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.out_indices(i).empty() && g.in_indices(i).empty()) isolated.insert(g.id_at(i));
  }
  for (const auto& [id, p] : profiles) {
    if (!g.contains(id)) isolated.insert(id);
  }
  report.isolated_nodes.assign(isolated.begin(), isolated.end());
  return report;
}

}  // namespace rumorsim
