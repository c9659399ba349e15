#include "rnaudit/walker.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "rnaudit/error.hpp"
#include "rnaudit/format.hpp"
#include "rnaudit/parallel.hpp"

namespace rnaudit {

namespace {

// Walks are short relative to scheduling overhead; small blocks balance well.
constexpr std::size_t kWalkBlock = 16;

std::vector<NodeIndex> resolve_starts(const RecommendationNetwork& rn, const SweepOptions& opts) {
  if (opts.starts) {
    for (NodeIndex v : *opts.starts) {
      if (v >= rn.node_count()) throw AuditError(Errc::kUnknownItem, "start index out of range");
    }
    return *opts.starts;
  }
  std::vector<NodeIndex> all(rn.node_count());
  std::iota(all.begin(), all.end(), NodeIndex{0});
  return all;
}

double walk_entropy(const RecommendationNetwork& rn, const Binning& binning, NodeIndex start,
                    const SurferPolicy& policy, std::uint32_t steps, std::uint64_t seed,
                    std::vector<double>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0.0);
  run_walk(rn, start, policy, steps, seed, [&](NodeIndex v, StepKind) {
    for (const auto& bw : binning.of(v)) scratch[bw.bin] += bw.weight;
  });
  const double visits = static_cast<double>(steps) + 1.0;
  for (double& x : scratch) x /= visits;
  return entropy(scratch);
}

template <typename SeedFn>
SweepPoint sweep_point(const RecommendationNetwork& rn, const Binning& binning,
                       std::span<const NodeIndex> starts, const SurferPolicy& policy,
                       std::uint32_t steps, SeedFn seed_for, unsigned threads) {
  std::vector<double> values(starts.size());
  parallel_blocks(starts.size(), kWalkBlock, threads, [&](std::size_t b, std::size_t e) {
    std::vector<double> scratch(binning.bin_count());
    for (std::size_t i = b; i < e; ++i) {
      values[i] = walk_entropy(rn, binning, starts[i], policy, steps, seed_for(starts[i]), scratch);
    }
  });
  SweepPoint p;
  p.policy = policy.label();
  p.steps = steps;
  p.num_walks = values.size();
  if (values.empty()) return p;
  double sum = 0.0;
  for (double x : values) sum += x;
  p.mean_entropy = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double x : values) sq += (x - p.mean_entropy) * (x - p.mean_entropy);
  p.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return p;
}

void check_binning(const RecommendationNetwork& rn, const Binning& binning) {
  if (binning.node_count() != rn.node_count()) {
    throw AuditError(Errc::kInvalidArgument, "binning does not cover every node");
  }
}

}  // namespace

SurferPolicy SurferPolicy::stochastic(double tp) {
  if (!(tp >= 0.0 && tp <= 1.0)) {
    throw AuditError(Errc::kInvalidArgument, "teleport probability must lie in [0, 1]");
  }
  return {Kind::kStochastic, tp};
}

std::string SurferPolicy::label() const {
  return kind == Kind::kTopOne ? std::string("0.0*") : short_decimal(teleport);
}

std::vector<double> default_tp_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

std::vector<SurferPolicy> default_policy_grid() {
  std::vector<SurferPolicy> grid{SurferPolicy::top_one()};
  for (double tp : default_tp_grid()) grid.push_back(SurferPolicy::stochastic(tp));
  return grid;
}

std::string_view step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::kStart: return "start";
    case StepKind::kFollow: return "follow";
    case StepKind::kTeleport: return "teleport";
    case StepKind::kDangling: return "dangling";
  }
  return "unknown";
}

NodeIndex top_one_escape(const RecommendationNetwork& rn, NodeIndex v) {
  return static_cast<NodeIndex>(mix64(hash_id(rn.item(v).id)) % rn.node_count());
}

WalkTrace simulate_walk(const RecommendationNetwork& rn, const WalkConfig& cfg) {
  if (cfg.steps == 0) throw AuditError(Errc::kInvalidArgument, "walk needs at least one step");
  const NodeIndex start = rn.index_of(cfg.start);
  WalkTrace trace;
  trace.nodes.reserve(cfg.steps + 1);
  trace.kinds.reserve(cfg.steps + 1);
  run_walk(rn, start, cfg.policy, cfg.steps, cfg.seed, [&](NodeIndex v, StepKind k) {
    trace.nodes.push_back(v);
    trace.kinds.push_back(k);
  });
  return trace;
}

ObservedDistribution observed_distribution(const WalkTrace& trace, const Binning& binning) {
  ObservedDistribution d;
  d.labels = binning.labels;
  d.mass.assign(binning.bin_count(), 0.0);
  if (trace.nodes.empty()) return d;
  for (NodeIndex v : trace.nodes) {
    if (v >= binning.node_count()) {
      throw AuditError(Errc::kInvalidArgument, "trace node not covered by binning");
    }
    for (const auto& bw : binning.of(v)) d.mass[bw.bin] += bw.weight;
  }
  const double visits = static_cast<double>(trace.nodes.size());
  for (double& x : d.mass) x /= visits;
  return d;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q, double eps) {
  if (p.size() != q.size()) {
    throw AuditError(Errc::kUnitMismatch, "distributions have different label sets");
  }
  if (!(eps > 0.0)) throw AuditError(Errc::kInvalidArgument, "eps must be > 0");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * std::log2(p[i] / std::max(q[i], eps));
  }
  return d;
}

std::vector<SweepPoint> entropy_sweep(const RecommendationNetwork& rn, const Binning& binning,
                                      std::span<const SurferPolicy> policies,
                                      std::uint32_t steps, std::uint64_t seed,
                                      const SweepOptions& opts) {
  if (steps == 0) throw AuditError(Errc::kInvalidArgument, "walk needs at least one step");
  check_binning(rn, binning);
  const auto starts = resolve_starts(rn, opts);
  std::vector<SweepPoint> out;
  out.reserve(policies.size());
  for (std::size_t p = 0; p < policies.size(); ++p) {
    auto seed_for = [&](NodeIndex v) { return derive_seed(seed, hash_id(rn.item(v).id), p); };
    out.push_back(sweep_point(rn, binning, starts, policies[p], steps, seed_for, opts.threads));
  }
  return out;
}

std::vector<SweepPoint> walk_length_sweep(const RecommendationNetwork& rn,
                                          const Binning& binning, double tp,
                                          std::span<const std::uint32_t> lengths,
                                          std::uint64_t seed, const SweepOptions& opts) {
  check_binning(rn, binning);
  const auto policy = SurferPolicy::stochastic(tp);
  const auto starts = resolve_starts(rn, opts);
  std::vector<SweepPoint> out;
  out.reserve(lengths.size());
  for (std::size_t l = 0; l < lengths.size(); ++l) {
    if (lengths[l] == 0) throw AuditError(Errc::kInvalidArgument, "walk needs at least one step");
    auto seed_for = [&](NodeIndex v) { return derive_seed(seed, hash_id(rn.item(v).id), l); };
    out.push_back(sweep_point(rn, binning, starts, policy, lengths[l], seed_for, opts.threads));
  }
  return out;
}

void write_sweep(std::ostream& out, std::span<const SweepPoint> points) {
  out << "policy,steps,mean_entropy,stddev,num_walks\n";
  for (const auto& p : points) {
    out << p.policy << ',' << p.steps << ',' << fixed6(p.mean_entropy) << ','
        << fixed6(p.stddev) << ',' << p.num_walks << '\n';
  }
}

void write_trace(std::ostream& out, const RecommendationNetwork& rn, const WalkTrace& trace) {
  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    out << rn.item(trace.nodes[i]).id << ',' << step_kind_name(trace.kinds[i]) << '\n';
  }
}

}  // namespace rnaudit
