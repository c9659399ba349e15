#include "rnaudit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "rnaudit/error.hpp"
#include "rnaudit/ingest.hpp"
#include "rnaudit/random.hpp"

namespace rnaudit {

namespace {

constexpr int kMaxRejections = 64;

/// Prefix-sum tree over non-negative weights with weighted sampling.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0), values_(n, 0.0) {}

  void set(std::size_t i, double w) {
    const double delta = w - values_[i];
    values_[i] = w;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const {
    double s = 0.0;
    for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  /// Position whose cumulative interval contains `target` in [0, total()).
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    // Rounding can walk past the last positive weight; clamp to a valid slot.
    return std::min(pos, values_.size() - 1);
  }

  double value(std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> tree_;
  std::vector<double> values_;
};

/// A set of candidate nodes with popularity weights.
struct Pool {
  std::vector<NodeIndex> members;
  Fenwick weights{0};
};

void validate(const SynthConfig& cfg) {
  const auto bad = [](const std::string& why) { throw AuditError(Errc::kInvalidArgument, why); };
  if (cfg.num_nodes == 0) bad("num_nodes must be >= 1");
  if (cfg.genre_labels.empty()) bad("at least one genre label is required");
  if (cfg.genre_probs.size() != cfg.genre_labels.size()) {
    bad("genre_probs must have one entry per genre label");
  }
  auto labels = cfg.genre_labels;
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) bad("duplicate genre label");
  for (const auto& l : labels) {
    if (l.empty()) bad("empty genre label");
  }
  double sum = 0.0;
  for (double p : cfg.genre_probs) {
    if (!(p >= 0.0)) bad("genre_probs must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) bad("genre_probs must sum to 1");
  if (!(cfg.multi_genre_prob >= 0.0 && cfg.multi_genre_prob <= 1.0)) {
    bad("multi_genre_prob must lie in [0, 1]");
  }
  if (!(cfg.p_same >= 0.0 && cfg.p_same <= 1.0)) bad("p_same must lie in [0, 1]");
  if (!(cfg.popularity_skew >= 0.0)) bad("popularity_skew must be >= 0");
  if (cfg.out_degree >= cfg.num_nodes) {
    throw AuditError(Errc::kInfeasibleConfig,
                     "out_degree " + std::to_string(cfg.out_degree) +
                         " needs more than num_nodes " + std::to_string(cfg.num_nodes) +
                         " items");
  }
}

std::size_t pick_categorical(Rng& rng, const std::vector<double>& probs) {
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  double u = uniform01(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  return last;
}

class Generator {
 public:
  explicit Generator(const SynthConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  SynthDataset run() {
    assign_genres();
    build_pools();
    SynthDataset out;
    out.items = make_items();
    for (NodeIndex src = 0; src < cfg_.num_nodes; ++src) {
      chosen_.clear();
      for (std::uint32_t slot = 0; slot < cfg_.out_degree; ++slot) {
        NodeIndex dst = pick_target(src, out.stats);
        chosen_.push_back(dst);
        out.edges.push_back({out.items[src].id, out.items[dst].id, slot + 1, std::nullopt});
        bump(dst);
      }
    }
    out.stats.max_in_degree =
        indegree_.empty() ? 0 : *std::max_element(indegree_.begin(), indegree_.end());
    return out;
  }

 private:
  void assign_genres() {
    const std::size_t m = cfg_.genre_labels.size();
    genres_.resize(cfg_.num_nodes);
    for (auto& g : genres_) {
      const std::size_t first = pick_categorical(rng_, cfg_.genre_probs);
      g.push_back(static_cast<GenreIndex>(first));
      if (m > 1 && uniform01(rng_) < cfg_.multi_genre_prob) {
        auto rest = cfg_.genre_probs;
        rest[first] = 0.0;
        if (std::accumulate(rest.begin(), rest.end(), 0.0) > 0.0) {
          g.push_back(static_cast<GenreIndex>(pick_categorical(rng_, rest)));
          std::sort(g.begin(), g.end());
        }
      }
    }
  }

  void build_pools() {
    const std::size_t n = cfg_.num_nodes;
    indegree_.assign(n, 0);
    global_.members.resize(n);
    std::iota(global_.members.begin(), global_.members.end(), NodeIndex{0});
    global_.weights = Fenwick(n);
    for (std::size_t v = 0; v < n; ++v) global_.weights.set(v, 1.0);

    by_genre_.assign(cfg_.genre_labels.size(), Pool{});
    slot_in_pool_.resize(n);
    for (NodeIndex v = 0; v < n; ++v) {
      for (GenreIndex g : genres_[v]) {
        slot_in_pool_[v].push_back(by_genre_[g].members.size());
        by_genre_[g].members.push_back(v);
      }
    }
    for (auto& pool : by_genre_) {
      pool.weights = Fenwick(pool.members.size());
      for (std::size_t i = 0; i < pool.members.size(); ++i) pool.weights.set(i, 1.0);
    }
  }

  std::vector<ItemRecord> make_items() const {
    const std::size_t width = std::to_string(cfg_.num_nodes - 1).size();
    std::vector<ItemRecord> items(cfg_.num_nodes);
    for (std::size_t v = 0; v < items.size(); ++v) {
      std::string digits = std::to_string(v);
      items[v].id = "item" + std::string(width - digits.size(), '0') + digits;
      items[v].title = "Synthetic item " + digits;
      for (GenreIndex g : genres_[v]) items[v].genres.push_back(cfg_.genre_labels[g]);
      std::sort(items[v].genres.begin(), items[v].genres.end());
    }
    return items;
  }

  double weight_for(std::size_t indeg) const {
    if (cfg_.popularity_skew == 0.0) return 1.0;
    return std::pow(static_cast<double>(indeg) + 1.0, cfg_.popularity_skew);
  }

  void bump(NodeIndex v) {
    const double w = weight_for(++indegree_[v]);
    global_.weights.set(v, w);
    for (std::size_t k = 0; k < genres_[v].size(); ++k) {
      by_genre_[genres_[v][k]].weights.set(slot_in_pool_[v][k], w);
    }
  }

  bool shares_genre(NodeIndex a, NodeIndex b) const {
    for (GenreIndex x : genres_[a]) {
      for (GenreIndex y : genres_[b]) {
        if (x == y) return true;
      }
    }
    return false;
  }

  bool taken(NodeIndex src, NodeIndex v) const {
    return v == src || std::find(chosen_.begin(), chosen_.end(), v) != chosen_.end();
  }

  NodeIndex sample(const Pool& pool) {
    if (cfg_.popularity_skew == 0.0) {
      return pool.members[uniform_index(rng_, pool.members.size())];
    }
    return pool.members[pool.weights.find(uniform01(rng_) * pool.weights.total())];
  }

  /// Exact weighted draw over the eligible nodes of the global pool.
  template <typename Eligible>
  std::optional<NodeIndex> sample_exact(Eligible&& eligible) {
    std::vector<NodeIndex> cand;
    std::vector<double> weights;
    for (NodeIndex v = 0; v < cfg_.num_nodes; ++v) {
      if (eligible(v)) {
        cand.push_back(v);
        weights.push_back(global_.weights.value(v));
      }
    }
    if (cand.empty()) return std::nullopt;
    return cand[pick_categorical(rng_, weights)];
  }

  NodeIndex pick_target(NodeIndex src, SynthStats& stats) {
    const bool want_same = uniform01(rng_) < cfg_.p_same;
    const auto& src_genres = genres_[src];
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      NodeIndex v;
      if (want_same) {
        GenreIndex g = src_genres[uniform_index(rng_, src_genres.size())];
        v = sample(by_genre_[g]);
      } else {
        v = sample(global_);
        if (shares_genre(src, v)) continue;
      }
      if (!taken(src, v)) return v;
    }
    auto found = sample_exact([&](NodeIndex v) {
      return !taken(src, v) && shares_genre(src, v) == want_same;
    });
    if (found) return *found;
    ++stats.fallback_slots;
    return *sample_exact([&](NodeIndex v) { return !taken(src, v); });
  }

  const SynthConfig& cfg_;
  Rng rng_;
  std::vector<std::vector<GenreIndex>> genres_;
  std::vector<std::size_t> indegree_;
  Pool global_;
  std::vector<Pool> by_genre_;
  std::vector<std::vector<std::size_t>> slot_in_pool_;
  std::vector<NodeIndex> chosen_;
};

}  // namespace

SynthDataset generate(const SynthConfig& cfg) {
  validate(cfg);
  return Generator(cfg).run();
}

void write_dataset(const SynthDataset& data, const std::filesystem::path& nodes_path,
                   const std::filesystem::path& edges_path) {
  std::ofstream nodes(nodes_path, std::ios::binary);
  if (!nodes) throw AuditError(Errc::kIo, "cannot write '" + nodes_path.string() + "'");
  write_nodes(nodes, data.items);
  std::ofstream edges(edges_path, std::ios::binary);
  if (!edges) throw AuditError(Errc::kIo, "cannot write '" + edges_path.string() + "'");
  write_edges(edges, data.edges);
  nodes.close();
  edges.close();
  if (!nodes || !edges) throw AuditError(Errc::kIo, "failed writing dataset files");
}

}  // namespace rnaudit
