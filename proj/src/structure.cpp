#include "rnaudit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rnaudit/error.hpp"
#include "rnaudit/format.hpp"
#include "rnaudit/parallel.hpp"

namespace rnaudit {

namespace {

constexpr std::size_t kBlock = 4096;

const std::vector<std::string>& popularity_labels() {
  static const std::vector<std::string> labels{"bottom", "middle", "top"};
  return labels;
}

}  // namespace

PageRankVector pagerank(const RecommendationNetwork& rn, const PageRankOptions& opts) {
  const std::size_t n = rn.node_count();
  if (n == 0) throw AuditError(Errc::kEmptyItems, "pagerank of an empty network");
  if (!(opts.damping > 0.0 && opts.damping < 1.0)) {
    throw AuditError(Errc::kInvalidArgument, "damping must lie in (0, 1)");
  }
  if (!(opts.tol > 0.0) || opts.max_iter == 0) {
    throw AuditError(Errc::kInvalidArgument, "tol must be > 0 and max_iter >= 1");
  }

  const double d = opts.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;

  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  std::vector<double> share(n);  // rank[u] / outdeg(u)
  std::vector<double> block_dangling(blocks);
  std::vector<double> block_delta(blocks);

  PageRankVector out;
  out.damping = d;
  out.residual = 0.0;
  for (std::uint32_t it = 0; it < opts.max_iter; ++it) {
    parallel_blocks(n, kBlock, opts.threads, [&](std::size_t b, std::size_t e) {
      double dangling = 0.0;
      for (std::size_t u = b; u < e; ++u) {
        std::size_t deg = rn.out_degree(static_cast<NodeIndex>(u));
        if (deg == 0) {
          dangling += rank[u];
          share[u] = 0.0;
        } else {
          share[u] = rank[u] / static_cast<double>(deg);
        }
      }
      block_dangling[b / kBlock] = dangling;
    });
    double dangling = 0.0;
    for (double x : block_dangling) dangling += x;
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;

    parallel_blocks(n, kBlock, opts.threads, [&](std::size_t b, std::size_t e) {
      double delta = 0.0;
      for (std::size_t v = b; v < e; ++v) {
        double in = 0.0;
        for (NodeIndex u : rn.in_sources(static_cast<NodeIndex>(v))) in += share[u];
        next[v] = base + d * in;
        delta += std::abs(next[v] - rank[v]);
      }
      block_delta[b / kBlock] = delta;
    });
    double residual = 0.0;
    for (double x : block_delta) residual += x;

    // Renormalise so rounding never lets the mass drift away from 1.
    double total = 0.0;
    for (double x : next) total += x;
    for (double& x : next) x /= total;

    rank.swap(next);
    out.iterations = it + 1;
    out.residual = residual;
    if (residual < opts.tol) break;
  }
  out.scores = std::move(rank);
  return out;
}

std::vector<double> normalize_centrality(std::span<const double> values) {
  if (values.empty()) throw AuditError(Errc::kInvalidArgument, "no values to normalise");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(values.size(), 0.0);
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - min) / range;
  return out;
}

std::string_view bin_scheme_name(BinScheme scheme) {
  switch (scheme) {
    case BinScheme::kGenre: return "genre";
    case BinScheme::kInDegree: return "indegree";
    case BinScheme::kPageRank: return "pagerank";
  }
  return "unknown";
}

std::optional<BinScheme> parse_bin_scheme(std::string_view name) {
  if (name == "genre") return BinScheme::kGenre;
  if (name == "indegree") return BinScheme::kInDegree;
  if (name == "pagerank") return BinScheme::kPageRank;
  return std::nullopt;
}

Binning Binning::single(BinScheme scheme, std::vector<std::string> labels,
                        std::span<const std::uint32_t> bin_of_node) {
  Binning b;
  b.scheme = scheme;
  b.labels = std::move(labels);
  b.offsets.reserve(bin_of_node.size() + 1);
  b.offsets.push_back(0);
  b.entries.reserve(bin_of_node.size());
  for (std::uint32_t bin : bin_of_node) {
    if (bin >= b.labels.size()) throw AuditError(Errc::kInvalidArgument, "bin index out of range");
    b.entries.push_back({bin, 1.0});
    b.offsets.push_back(b.entries.size());
  }
  return b;
}

std::uint32_t popularity_bin(double normalized) {
  if (normalized <= 0.2) return 0;
  if (normalized <= 0.4) return 1;
  return 2;
}

Binning assign_bins(const RecommendationNetwork& rn, BinScheme scheme,
                    std::optional<std::span<const double>> centrality) {
  const std::size_t n = rn.node_count();
  if (scheme == BinScheme::kGenre) {
    Binning b;
    b.scheme = scheme;
    b.labels.assign(rn.genre_labels().begin(), rn.genre_labels().end());
    b.offsets.reserve(n + 1);
    b.offsets.push_back(0);
    for (NodeIndex v = 0; v < n; ++v) {
      auto genres = rn.genres(v);
      const double w = 1.0 / static_cast<double>(genres.size());
      for (GenreIndex g : genres) b.entries.push_back({g, w});
      b.offsets.push_back(b.entries.size());
    }
    return b;
  }
  if (!centrality) {
    throw AuditError(Errc::kMissingCentrality,
                     std::string(bin_scheme_name(scheme)) + " binning needs centrality values");
  }
  if (centrality->size() != n) {
    throw AuditError(Errc::kInvalidArgument, "centrality vector does not match node count");
  }
  std::vector<std::uint32_t> bins(n);
  for (std::size_t v = 0; v < n; ++v) bins[v] = popularity_bin((*centrality)[v]);
  return Binning::single(scheme, popularity_labels(), bins);
}

Binning popularity_binning(const RecommendationNetwork& rn, BinScheme scheme,
                           const PageRankOptions& opts) {
  std::vector<double> raw(rn.node_count());
  switch (scheme) {
    case BinScheme::kGenre:
      return assign_bins(rn, scheme);
    case BinScheme::kInDegree:
      for (NodeIndex v = 0; v < rn.node_count(); ++v) {
        raw[v] = static_cast<double>(rn.in_degree(v));
      }
      break;
    case BinScheme::kPageRank:
      raw = pagerank(rn, opts).scores;
      break;
  }
  auto normalized = normalize_centrality(raw);
  return assign_bins(rn, scheme, std::span<const double>(normalized));
}

ContingencyMatrix ContingencyMatrix::from_entries(std::vector<std::string> labels,
                                                  std::vector<double> entries) {
  const std::size_t m = labels.size();
  if (entries.size() != m * m) {
    throw AuditError(Errc::kInvalidArgument, "contingency entries must be m x m");
  }
  ContingencyMatrix cm;
  cm.labels = std::move(labels);
  cm.entries = std::move(entries);
  cm.row_sums.assign(m, 0.0);
  cm.col_sums.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      cm.row_sums[i] += cm.entries[i * m + j];
      cm.col_sums[j] += cm.entries[i * m + j];
    }
  }
  return cm;
}

ContingencyMatrix contingency(const RecommendationNetwork& rn, const Binning& binning) {
  if (binning.node_count() != rn.node_count()) {
    throw AuditError(Errc::kInvalidArgument, "binning does not cover every node");
  }
  const std::size_t m = binning.bin_count();
  std::vector<double> mass(m * m, 0.0);
  for (NodeIndex u = 0; u < rn.node_count(); ++u) {
    auto from = binning.of(u);
    for (const auto& e : rn.out_edges(u)) {
      for (const auto& g : from) {
        for (const auto& h : binning.of(e.target)) {
          mass[g.bin * m + h.bin] += g.weight * h.weight;
        }
      }
    }
  }
  if (rn.edge_count() > 0) {
    const double edges = static_cast<double>(rn.edge_count());
    for (double& x : mass) x /= edges;
  }
  return ContingencyMatrix::from_entries(binning.labels, std::move(mass));
}

std::vector<double> row_normalized(const ContingencyMatrix& cm) {
  const std::size_t m = cm.size();
  std::vector<double> out(cm.entries);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = cm.row_sums[i];
    if (a <= 0.0) {
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(i * m),
                out.begin() + static_cast<std::ptrdiff_t>((i + 1) * m), 0.0);
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] /= a;
  }
  return out;
}

double assortativity(const ContingencyMatrix& cm) {
  const std::size_t m = cm.size();
  std::size_t occupied = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cm.row_sums[i] > 0.0 || cm.col_sums[i] > 0.0) ++occupied;
  }
  double trace = 0.0;
  double expected = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    trace += cm.at(i, i);
    expected += cm.row_sums[i] * cm.col_sums[i];
  }
  const double denom = 1.0 - expected;
  if (occupied < 2 || denom == 0.0) {
    throw AuditError(Errc::kDegenerateBinning,
                     "assortativity is undefined: fewer than two occupied bins");
  }
  return (trace - expected) / denom;
}

void write_contingency(std::ostream& out, const ContingencyMatrix& cm, bool row_normalize) {
  const std::size_t m = cm.size();
  const std::vector<double> values = row_normalize ? row_normalized(cm) : cm.entries;
  out << "bin";
  for (const auto& label : cm.labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < m; ++i) {
    out << cm.labels[i];
    for (std::size_t j = 0; j < m; ++j) out << ',' << fixed6(values[i * m + j]);
    out << '\n';
  }
}

}  // namespace rnaudit
