#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rnaudit/graph.hpp"

namespace rnaudit {

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  std::uint32_t max_iter = 200;
  unsigned threads = 1;
};

struct PageRankVector {
  std::vector<double> scores;  // indexed by NodeIndex
  double damping = 0.0;
  std::uint32_t iterations = 0;
  double residual = 0.0;  // L1 change of the final iteration
};

/// Power iteration on the teleporting chain: uniform teleport, dangling mass
/// spread uniformly. Stops at L1 residual < tol or after max_iter sweeps;
/// hitting max_iter is reported through `residual`, not thrown.
PageRankVector pagerank(const RecommendationNetwork& rn, const PageRankOptions& opts = {});

/// Min-max scaling to [0, 1]. A constant input maps to all zeros.
std::vector<double> normalize_centrality(std::span<const double> values);

enum class BinScheme { kGenre, kInDegree, kPageRank };

std::string_view bin_scheme_name(BinScheme scheme);
std::optional<BinScheme> parse_bin_scheme(std::string_view name);

struct BinWeight {
  std::uint32_t bin;
  double weight;
};

/// Assignment of every node to a weighted set of bins (weights sum to 1).
struct Binning {
  BinScheme scheme = BinScheme::kGenre;
  std::vector<std::string> labels;
  std::vector<std::size_t> offsets;  // node v owns entries[offsets[v], offsets[v+1])
  std::vector<BinWeight> entries;

  std::size_t bin_count() const { return labels.size(); }
  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const BinWeight> of(NodeIndex v) const {
    return {entries.data() + offsets[v], entries.data() + offsets[v + 1]};
  }

  /// Binning from a single bin index per node.
  static Binning single(BinScheme scheme, std::vector<std::string> labels,
                        std::span<const std::uint32_t> bin_of_node);
};

/// Popularity bin for an already-normalised centrality: [0, 0.2] bottom,
/// (0.2, 0.4] middle, above 0.4 top.
std::uint32_t popularity_bin(double normalized);

/// GENRE splits a node evenly over its genres. INDEGREE and PAGERANK need
/// normalised centrality values (kMissingCentrality otherwise).
Binning assign_bins(const RecommendationNetwork& rn, BinScheme scheme,
                    std::optional<std::span<const double>> centrality = std::nullopt);

/// Computes the centrality a popularity scheme needs, normalises it and bins.
Binning popularity_binning(const RecommendationNetwork& rn, BinScheme scheme,
                           const PageRankOptions& opts = {});

/// Row-major m x m edge-mass matrix.
struct ContingencyMatrix {
  std::vector<std::string> labels;
  std::vector<double> entries;
  std::vector<double> row_sums;  // a_i
  std::vector<double> col_sums;  // b_j

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }

  /// Builds a matrix from explicit entries and fills the marginals.
  static ContingencyMatrix from_entries(std::vector<std::string> labels,
                                        std::vector<double> entries);
};

/// Each edge (u, v) adds w_u(g) * w_v(h) to cell (g, h); the result is
/// divided by the edge count. An edgeless network yields the zero matrix.
ContingencyMatrix contingency(const RecommendationNetwork& rn, const Binning& binning);

/// Each row divided by its sum; zero rows stay zero. Row-major.
std::vector<double> row_normalized(const ContingencyMatrix& cm);

/// (sum e_ii - sum a_i b_i) / (1 - sum a_i b_i). Throws kDegenerateBinning
/// when fewer than two bins carry mass.
double assortativity(const ContingencyMatrix& cm);

/// Heatmap-ready table: header and first column hold the bin labels, six
/// fractional digits.
void write_contingency(std::ostream& out, const ContingencyMatrix& cm, bool row_normalize);

}  // namespace rnaudit
