#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rnaudit/graph.hpp"

namespace rnaudit {

struct SynthConfig {
  std::uint32_t num_nodes = 1000;
  std::vector<std::string> genre_labels{"action", "comedy", "drama", "horror"};
  std::vector<double> genre_probs{0.25, 0.25, 0.25, 0.25};
  double multi_genre_prob = 0.0;  // chance of a second, distinct genre
  std::uint32_t out_degree = 8;
  double p_same = 0.5;           // per-slot chance of a genre-sharing target
  double popularity_skew = 0.0;  // target weight (in-degree + 1)^skew
  std::uint64_t seed = 1;
};

struct SynthStats {
  std::size_t fallback_slots = 0;  // slots whose preferred pool was exhausted
  std::size_t max_in_degree = 0;
};

struct SynthDataset {
  std::vector<ItemRecord> items;
  std::vector<RecEdge> edges;
  SynthStats stats;
};

/// Seeded generator with per-slot genre homophily: each of a node's
/// out_degree slots picks, with probability p_same, a target sharing at least
/// one genre and otherwise a target sharing none. Targets are drawn with
/// weight (in-degree so far + 1)^popularity_skew. Throws kInfeasibleConfig
/// (out_degree >= num_nodes) or kInvalidArgument.
SynthDataset generate(const SynthConfig& cfg);

/// Writes both files in the ingest format. Throws kIo.
void write_dataset(const SynthDataset& data, const std::filesystem::path& nodes_path,
                   const std::filesystem::path& edges_path);

}  // namespace rnaudit
