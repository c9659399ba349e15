#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rnaudit/graph.hpp"
#include "rnaudit/random.hpp"
#include "rnaudit/structure.hpp"

namespace rnaudit {

/// How a simulated user picks the next item. A stochastic surfer teleports
/// with probability `teleport` and otherwise clicks a uniformly chosen
/// recommendation; the top-one surfer always clicks the rank-1 slot.
struct SurferPolicy {
  enum class Kind { kStochastic, kTopOne };

  Kind kind = Kind::kStochastic;
  double teleport = 0.0;

  static SurferPolicy stochastic(double tp);
  static SurferPolicy top_one() { return {Kind::kTopOne, 0.0}; }

  /// "0.0*" for the top-one surfer, otherwise the teleport probability.
  std::string label() const;

  friend bool operator==(const SurferPolicy&, const SurferPolicy&) = default;
};

/// The twelve-point grid: top-one surfer, then t_p = 0.0, 0.1, ..., 1.0.
std::vector<SurferPolicy> default_policy_grid();
/// t_p = 0.0, 0.1, ..., 1.0.
std::vector<double> default_tp_grid();

enum class StepKind : std::uint8_t { kStart, kFollow, kTeleport, kDangling };

std::string_view step_kind_name(StepKind kind);

struct WalkConfig {
  std::string start;
  SurferPolicy policy;
  std::uint32_t steps = 1;
  std::uint64_t seed = 0;
};

/// steps + 1 visited nodes, the first being the start.
struct WalkTrace {
  std::vector<NodeIndex> nodes;
  std::vector<StepKind> kinds;

  friend bool operator==(const WalkTrace&, const WalkTrace&) = default;
};

/// Escape target of the top-one surfer at a dangling node. A fixed function
/// of the node, so top-one walks never depend on the seed.
NodeIndex top_one_escape(const RecommendationNetwork& rn, NodeIndex v);

/// Core walk loop: calls visit(node, kind) for the start and every step.
/// Dangling nodes fall back to a uniform jump (recorded as kDangling).
template <typename Visit>
void run_walk(const RecommendationNetwork& rn, NodeIndex start, const SurferPolicy& policy,
              std::uint32_t steps, std::uint64_t seed, Visit&& visit) {
  const std::uint64_t n = rn.node_count();
  Rng rng(seed);
  NodeIndex cur = start;
  visit(cur, StepKind::kStart);
  for (std::uint32_t s = 0; s < steps; ++s) {
    auto out = rn.out_edges(cur);
    StepKind kind;
    if (policy.kind == SurferPolicy::Kind::kTopOne) {
      if (out.empty()) {
        cur = top_one_escape(rn, cur);
        kind = StepKind::kDangling;
      } else {
        cur = out.front().target;
        kind = StepKind::kFollow;
      }
    } else if (policy.teleport > 0.0 && uniform01(rng) < policy.teleport) {
      cur = static_cast<NodeIndex>(uniform_index(rng, n));
      kind = StepKind::kTeleport;
    } else if (out.empty()) {
      cur = static_cast<NodeIndex>(uniform_index(rng, n));
      kind = StepKind::kDangling;
    } else {
      cur = out[uniform_index(rng, out.size())].target;
      kind = StepKind::kFollow;
    }
    visit(cur, kind);
  }
}

/// Throws kUnknownItem for an absent start, kInvalidArgument for steps == 0.
WalkTrace simulate_walk(const RecommendationNetwork& rn, const WalkConfig& cfg);

struct ObservedDistribution {
  std::vector<std::string> labels;
  std::vector<double> mass;  // sums to 1
};

/// Each visit adds the node's weighted bin assignment; the total is divided
/// by the number of visits.
ObservedDistribution observed_distribution(const WalkTrace& trace, const Binning& binning);

/// Base-2 Shannon entropy; zero-mass terms contribute nothing.
double entropy(std::span<const double> p);
inline double entropy(const ObservedDistribution& d) { return entropy(d.mass); }

/// sum p_i log2(p_i / max(q_i, eps)). kUnitMismatch on length mismatch.
double kl_divergence(std::span<const double> p, std::span<const double> q, double eps = 1e-12);

struct SweepOptions {
  unsigned threads = 1;
  /// Walk start nodes; every node of the network when unset.
  std::optional<std::vector<NodeIndex>> starts;
};

struct SweepPoint {
  std::string policy;
  std::uint32_t steps = 0;
  double mean_entropy = 0.0;
  double stddev = 0.0;  // population standard deviation over walks
  std::size_t num_walks = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// One walk per start node per policy; per-walk seeds derive from
/// (seed, start id, policy index).
std::vector<SweepPoint> entropy_sweep(const RecommendationNetwork& rn, const Binning& binning,
                                      std::span<const SurferPolicy> policies,
                                      std::uint32_t steps, std::uint64_t seed,
                                      const SweepOptions& opts = {});

/// Same as entropy_sweep with a fixed stochastic policy and varying length.
std::vector<SweepPoint> walk_length_sweep(const RecommendationNetwork& rn,
                                          const Binning& binning, double tp,
                                          std::span<const std::uint32_t> lengths,
                                          std::uint64_t seed, const SweepOptions& opts = {});

/// policy,steps,mean_entropy,stddev,num_walks
void write_sweep(std::ostream& out, std::span<const SweepPoint> points);

/// One "id,tag" line per visit, tag in {start, follow, teleport, dangling}.
void write_trace(std::ostream& out, const RecommendationNetwork& rn, const WalkTrace& trace);

}  // namespace rnaudit
