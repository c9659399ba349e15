#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rnaudit {

using NodeIndex = std::uint32_t;
using GenreIndex = std::uint32_t;

/// Node attributes of a recommendation network. Genres are kept sorted and
/// unique once the record has passed through build_network.
struct ItemRecord {
  std::string id;
  std::string title;
  std::vector<std::string> genres;

  friend bool operator==(const ItemRecord&, const ItemRecord&) = default;
};

/// "dst appears at slot `rank` of src's recommendation list".
struct RecEdge {
  std::string src;
  std::string dst;
  std::uint32_t rank = 1;
  std::optional<double> weight;

  friend bool operator==(const RecEdge&, const RecEdge&) = default;
};

enum class EdgeWeighting { kUnweighted, kSimilarity, kRank };

struct OutEdge {
  NodeIndex target;
  std::uint32_t rank;
  double weight;

  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

struct DegreeStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double avg_degree = 0.0;
  std::size_t reciprocating_edges = 0;
  double reciprocating_pct = 0.0;

  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

/// Immutable directed recommendation network in compressed adjacency form.
///
/// Nodes are indexed in ascending ItemId order, so two networks built from the
/// same records in any input order are identical. Out-edges of every node are
/// sorted by rank; the in-adjacency lists source nodes in ascending index order.
class RecommendationNetwork {
 public:
  /// Builds a network. Duplicate (src, dst) pairs collapse to their lowest
  /// rank. Throws AuditError with kEmptyItems, kDuplicateItemId, kEmptyGenres,
  /// kUnknownEndpoint, kSelfLoop or kDuplicateRank.
  static RecommendationNetwork build(std::vector<ItemRecord> items,
                                    std::vector<RecEdge> edges);

  std::size_t node_count() const { return items_.size(); }
  std::size_t edge_count() const { return out_edges_.size(); }

  const ItemRecord& item(NodeIndex v) const { return items_[v]; }
  std::span<const ItemRecord> items() const { return items_; }

  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws kUnknownItem.
  NodeIndex index_of(std::string_view id) const;

  std::span<const OutEdge> out_edges(NodeIndex v) const {
    return {out_edges_.data() + out_offsets_[v],
            out_edges_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeIndex> in_sources(NodeIndex v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeIndex v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  std::size_t in_degree(NodeIndex v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  /// Sorted list of every genre label present in the network.
  std::span<const std::string> genre_labels() const { return genre_labels_; }
  /// Sorted genre indices of node v (indices into genre_labels()).
  std::span<const GenreIndex> genres(NodeIndex v) const {
    return {genre_ids_.data() + genre_offsets_[v],
            genre_ids_.data() + genre_offsets_[v + 1]};
  }

  EdgeWeighting weighting() const { return weighting_; }

  /// Returns a copy whose edge weights follow the given scheme.
  RecommendationNetwork with_weights(EdgeWeighting scheme) const;

  /// Edge list in node order, rank order; weights included.
  std::vector<RecEdge> edge_list() const;

  friend bool operator==(const RecommendationNetwork&,
                         const RecommendationNetwork&) = default;

 private:
  std::vector<ItemRecord> items_;
  std::vector<std::size_t> out_offsets_;
  std::vector<OutEdge> out_edges_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeIndex> in_sources_;
  std::vector<std::string> genre_labels_;
  std::vector<std::size_t> genre_offsets_;
  std::vector<GenreIndex> genre_ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  EdgeWeighting weighting_ = EdgeWeighting::kUnweighted;
};

/// Node/edge counts, average out-degree and reciprocity.
DegreeStats degree_stats(const RecommendationNetwork& rn);

/// Out-neighbours of `id` with their ranks, ascending by rank.
std::vector<std::pair<std::string, std::uint32_t>> ranked_out_neighbors(
    const RecommendationNetwork& rn, std::string_view id);

inline RecommendationNetwork build_network(std::vector<ItemRecord> items,
                                           std::vector<RecEdge> edges) {
  return RecommendationNetwork::build(std::move(items), std::move(edges));
}

inline RecommendationNetwork materialize_weights(const RecommendationNetwork& rn,
                                                 EdgeWeighting scheme) {
  return rn.with_weights(scheme);
}

}  // namespace rnaudit
