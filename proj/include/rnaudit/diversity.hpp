#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rnaudit/graph.hpp"

namespace rnaudit {

using GenreSet = std::set<std::string>;

/// |A ∩ B| / |A ∪ B|. Throws kEmptyGenreSet if either set is empty.
double jaccard_sim(const GenreSet& a, const GenreSet& b);
/// 1 - jaccard_sim(a, b).
double genre_div(const GenreSet& a, const GenreSet& b);

/// Same measures over sorted, duplicate-free genre index lists.
double jaccard_sim_sorted(std::span<const GenreIndex> a,
                          std::span<const GenreIndex> b);
inline double genre_div_sorted(std::span<const GenreIndex> a,
                               std::span<const GenreIndex> b) {
  return 1.0 - jaccard_sim_sorted(a, b);
}

/// div(u, v) on the genre sets of two nodes.
inline double node_div(const RecommendationNetwork& rn, NodeIndex u,
                       NodeIndex v) {
  return genre_div_sorted(rn.genres(u), rn.genres(v));
}

// Per-node measures. Nodes are addressed by index; the id overloads throw
// kUnknownItem. std::nullopt marks a measure that is undefined for the node.

/// -log2((indeg + 1) / (|V| + 1)).
double long_tail_novelty(const RecommendationNetwork& rn, NodeIndex v);
double long_tail_novelty(const RecommendationNetwork& rn, std::string_view id);

/// Mean div(v, j) over out-neighbours j. Undefined for dangling nodes.
std::optional<double> source_list_diversity(const RecommendationNetwork& rn,
                                            NodeIndex v);
std::optional<double> source_list_diversity(const RecommendationNetwork& rn,
                                            std::string_view id);

/// Mean div(j, k) over unordered pairs of distinct out-neighbours.
/// Undefined for out-degree < 2.
std::optional<double> intra_list_diversity(const RecommendationNetwork& rn,
                                           NodeIndex v);
std::optional<double> intra_list_diversity(const RecommendationNetwork& rn,
                                           std::string_view id);

/// Mean over out-neighbours j of novelty(j) * div(v, j). Undefined for
/// dangling nodes.
std::optional<double> avg_unexpectedness(const RecommendationNetwork& rn,
                                         NodeIndex v);
std::optional<double> avg_unexpectedness(const RecommendationNetwork& rn,
                                         std::string_view id);

struct DiversityReport {
  // Network means over the nodes where each measure is defined.
  std::optional<double> intra_list;
  std::optional<double> long_tail_novelty;
  std::optional<double> avg_unexpectedness;
  std::optional<double> source_list;

  // Indexed by NodeIndex.
  std::vector<std::optional<double>> per_node_intra_list;
  std::vector<double> per_node_novelty;
  std::vector<std::optional<double>> per_node_unexpectedness;
  std::vector<std::optional<double>> per_node_source_list;
};

DiversityReport diversity_report(const RecommendationNetwork& rn,
                                 unsigned threads = 1);

}  // namespace rnaudit
