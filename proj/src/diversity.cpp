#include "rnaudit/diversity.hpp"

#include <cmath>

#include "rnaudit/error.hpp"
#include "rnaudit/parallel.hpp"

namespace rnaudit {

namespace {

std::optional<double> mean_of_defined(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace

double jaccard_sim(const GenreSet& a, const GenreSet& b) {
  if (a.empty() || b.empty()) {
    throw AuditError(Errc::kEmptyGenreSet, "jaccard similarity of an empty genre set");
  }
  std::size_t common = 0;
  for (const auto& g : a) common += b.count(g);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double genre_div(const GenreSet& a, const GenreSet& b) { return 1.0 - jaccard_sim(a, b); }

double jaccard_sim_sorted(std::span<const GenreIndex> a, std::span<const GenreIndex> b) {
  if (a.empty() || b.empty()) {
    throw AuditError(Errc::kEmptyGenreSet, "jaccard similarity of an empty genre set");
  }
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double long_tail_novelty(const RecommendationNetwork& rn, NodeIndex v) {
  const double indeg = static_cast<double>(rn.in_degree(v));
  const double n = static_cast<double>(rn.node_count());
  return -std::log2((indeg + 1.0) / (n + 1.0));
}

double long_tail_novelty(const RecommendationNetwork& rn, std::string_view id) {
  return long_tail_novelty(rn, rn.index_of(id));
}

std::optional<double> source_list_diversity(const RecommendationNetwork& rn, NodeIndex v) {
  auto out = rn.out_edges(v);
  if (out.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& e : out) sum += node_div(rn, v, e.target);
  return sum / static_cast<double>(out.size());
}

std::optional<double> source_list_diversity(const RecommendationNetwork& rn,
                                            std::string_view id) {
  return source_list_diversity(rn, rn.index_of(id));
}

std::optional<double> intra_list_diversity(const RecommendationNetwork& rn, NodeIndex v) {
  auto out = rn.out_edges(v);
  if (out.size() < 2) return std::nullopt;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      sum += node_div(rn, out[i].target, out[j].target);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

std::optional<double> intra_list_diversity(const RecommendationNetwork& rn,
                                           std::string_view id) {
  return intra_list_diversity(rn, rn.index_of(id));
}

std::optional<double> avg_unexpectedness(const RecommendationNetwork& rn, NodeIndex v) {
  auto out = rn.out_edges(v);
  if (out.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& e : out) sum += long_tail_novelty(rn, e.target) * node_div(rn, v, e.target);
  return sum / static_cast<double>(out.size());
}

std::optional<double> avg_unexpectedness(const RecommendationNetwork& rn,
                                         std::string_view id) {
  return avg_unexpectedness(rn, rn.index_of(id));
}

DiversityReport diversity_report(const RecommendationNetwork& rn, unsigned threads) {
  const std::size_t n = rn.node_count();
  DiversityReport r;
  r.per_node_intra_list.resize(n);
  r.per_node_novelty.resize(n);
  r.per_node_unexpectedness.resize(n);
  r.per_node_source_list.resize(n);
  parallel_blocks(n, 1024, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto v = static_cast<NodeIndex>(i);
      r.per_node_intra_list[i] = intra_list_diversity(rn, v);
      r.per_node_novelty[i] = long_tail_novelty(rn, v);
      r.per_node_unexpectedness[i] = avg_unexpectedness(rn, v);
      r.per_node_source_list[i] = source_list_diversity(rn, v);
    }
  });
  r.intra_list = mean_of_defined(r.per_node_intra_list);
  r.avg_unexpectedness = mean_of_defined(r.per_node_unexpectedness);
  r.source_list = mean_of_defined(r.per_node_source_list);
  double novelty_sum = 0.0;
  for (double x : r.per_node_novelty) novelty_sum += x;
  r.long_tail_novelty = n == 0 ? std::nullopt
                               : std::optional<double>(novelty_sum / static_cast<double>(n));
  return r;
}

}  // namespace rnaudit
