#include "rnaudit/graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "rnaudit/diversity.hpp"
#include "rnaudit/error.hpp"

namespace rnaudit {

namespace {

struct RawEdge {
  NodeIndex src;
  NodeIndex dst;
  std::uint32_t rank;
};

}  // namespace

RecommendationNetwork RecommendationNetwork::build(std::vector<ItemRecord> items,
                                                   std::vector<RecEdge> edges) {
  if (items.empty()) {
    throw AuditError(Errc::kEmptyItems, "network needs at least one item");
  }
  for (auto& item : items) {
    if (item.id.empty()) {
      throw AuditError(Errc::kInvalidArgument, "item id must be non-empty");
    }
    std::sort(item.genres.begin(), item.genres.end());
    item.genres.erase(std::unique(item.genres.begin(), item.genres.end()),
                      item.genres.end());
    if (item.genres.empty()) {
      throw AuditError(Errc::kEmptyGenres, "item '" + item.id + "' has no genres");
    }
  }
  std::sort(items.begin(), items.end(),
            [](const ItemRecord& a, const ItemRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].id == items[i - 1].id) {
      throw AuditError(Errc::kDuplicateItemId, "duplicate item id '" + items[i].id + "'");
    }
  }

  RecommendationNetwork rn;
  rn.items_ = std::move(items);
  const std::size_t n = rn.items_.size();
  rn.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rn.index_.emplace(rn.items_[i].id, static_cast<NodeIndex>(i));
  }

  std::vector<RawEdge> raw;
  raw.reserve(edges.size());
  for (const auto& e : edges) {
    auto s = rn.find(e.src);
    auto d = rn.find(e.dst);
    if (!s || !d) {
      throw AuditError(Errc::kUnknownEndpoint,
                       "edge " + e.src + " -> " + e.dst + " references an unknown item");
    }
    if (*s == *d) {
      throw AuditError(Errc::kSelfLoop, "self-loop on '" + e.src + "'");
    }
    if (e.rank == 0) {
      throw AuditError(Errc::kNonPositiveRank, "edge " + e.src + " -> " + e.dst + " has rank 0");
    }
    raw.push_back({*s, *d, e.rank});
  }
  edges.clear();

  // Collapse duplicate (src, dst) pairs to the lowest rank.
  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
    return std::tie(a.src, a.dst, a.rank) < std::tie(b.src, b.dst, b.rank);
  });
  raw.erase(std::unique(raw.begin(), raw.end(),
                        [](const RawEdge& a, const RawEdge& b) {
                          return a.src == b.src && a.dst == b.dst;
                        }),
            raw.end());
  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
    return std::tie(a.src, a.rank) < std::tie(b.src, b.rank);
  });
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].src == raw[i - 1].src && raw[i].rank == raw[i - 1].rank) {
      throw AuditError(Errc::kDuplicateRank,
                       "item '" + rn.items_[raw[i].src].id + "' has two edges at rank " +
                           std::to_string(raw[i].rank));
    }
  }

  rn.out_offsets_.assign(n + 1, 0);
  rn.in_offsets_.assign(n + 1, 0);
  for (const auto& e : raw) {
    ++rn.out_offsets_[e.src + 1];
    ++rn.in_offsets_[e.dst + 1];
  }
  std::partial_sum(rn.out_offsets_.begin(), rn.out_offsets_.end(), rn.out_offsets_.begin());
  std::partial_sum(rn.in_offsets_.begin(), rn.in_offsets_.end(), rn.in_offsets_.begin());

  rn.out_edges_.reserve(raw.size());
  for (const auto& e : raw) rn.out_edges_.push_back({e.dst, e.rank, 1.0});

  // raw is ordered by src, so each in-list comes out in ascending source order.
  rn.in_sources_.resize(raw.size());
  std::vector<std::size_t> cursor(rn.in_offsets_.begin(), rn.in_offsets_.end() - 1);
  for (const auto& e : raw) rn.in_sources_[cursor[e.dst]++] = e.src;

  for (const auto& item : rn.items_) {
    rn.genre_labels_.insert(rn.genre_labels_.end(), item.genres.begin(), item.genres.end());
  }
  std::sort(rn.genre_labels_.begin(), rn.genre_labels_.end());
  rn.genre_labels_.erase(std::unique(rn.genre_labels_.begin(), rn.genre_labels_.end()),
                         rn.genre_labels_.end());
  rn.genre_offsets_.reserve(n + 1);
  rn.genre_offsets_.push_back(0);
  for (const auto& item : rn.items_) {
    // item.genres is sorted, so the mapped indices are sorted too.
    for (const auto& g : item.genres) {
      auto it = std::lower_bound(rn.genre_labels_.begin(), rn.genre_labels_.end(), g);
      rn.genre_ids_.push_back(static_cast<GenreIndex>(it - rn.genre_labels_.begin()));
    }
    rn.genre_offsets_.push_back(rn.genre_ids_.size());
  }
  return rn;
}

std::optional<NodeIndex> RecommendationNetwork::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex RecommendationNetwork::index_of(std::string_view id) const {
  auto v = find(id);
  if (!v) throw AuditError(Errc::kUnknownItem, "unknown item '" + std::string(id) + "'");
  return *v;
}

RecommendationNetwork RecommendationNetwork::with_weights(EdgeWeighting scheme) const {
  RecommendationNetwork out = *this;
  out.weighting_ = scheme;
  for (NodeIndex v = 0; v < node_count(); ++v) {
    for (std::size_t k = out_offsets_[v]; k < out_offsets_[v + 1]; ++k) {
      auto& e = out.out_edges_[k];
      switch (scheme) {
        case EdgeWeighting::kUnweighted: e.weight = 1.0; break;
        case EdgeWeighting::kSimilarity: e.weight = node_div(*this, v, e.target); break;
        case EdgeWeighting::kRank: e.weight = 1.0 / static_cast<double>(e.rank); break;
      }
    }
  }
  return out;
}

std::vector<RecEdge> RecommendationNetwork::edge_list() const {
  std::vector<RecEdge> out;
  out.reserve(edge_count());
  for (NodeIndex v = 0; v < node_count(); ++v) {
    for (const auto& e : out_edges(v)) {
      out.push_back({items_[v].id, items_[e.target].id, e.rank, e.weight});
    }
  }
  return out;
}

DegreeStats degree_stats(const RecommendationNetwork& rn) {
  DegreeStats s;
  s.nodes = rn.node_count();
  s.edges = rn.edge_count();
  s.avg_degree = s.nodes == 0 ? 0.0 : static_cast<double>(s.edges) / static_cast<double>(s.nodes);
  for (NodeIndex v = 0; v < rn.node_count(); ++v) {
    for (const auto& e : rn.out_edges(v)) {
      auto back = rn.in_sources(v);
      // v -> t is reciprocated when t is among v's in-sources.
      if (std::binary_search(back.begin(), back.end(), e.target)) ++s.reciprocating_edges;
    }
  }
  s.reciprocating_pct = s.edges == 0 ? 0.0
                                     : 100.0 * static_cast<double>(s.reciprocating_edges) /
                                           static_cast<double>(s.edges);
  return s;
}

std::vector<std::pair<std::string, std::uint32_t>> ranked_out_neighbors(
    const RecommendationNetwork& rn, std::string_view id) {
  NodeIndex v = rn.index_of(id);
  std::vector<std::pair<std::string, std::uint32_t>> out;
  for (const auto& e : rn.out_edges(v)) out.emplace_back(rn.item(e.target).id, e.rank);
  return out;
}

}  // namespace rnaudit
