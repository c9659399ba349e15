#include "rnaudit/segregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "rnaudit/error.hpp"
#include "rnaudit/format.hpp"
#include "rnaudit/parallel.hpp"
#include "rnaudit/random.hpp"

namespace rnaudit {

ExposureVector ExposureVector::from(std::vector<double> mass) {
  ExposureVector a;
  a.total = std::accumulate(mass.begin(), mass.end(), 0.0);
  a.mass = std::move(mass);
  return a;
}

InformationUniverse build_universe(const RecommendationNetwork& rn) {
  InformationUniverse u;
  u.units.assign(rn.genre_labels().begin(), rn.genre_labels().end());
  u.sources.assign(u.units.size(), 0.0);
  for (NodeIndex v = 0; v < rn.node_count(); ++v) {
    auto genres = rn.genres(v);
    const double w = 1.0 / static_cast<double>(genres.size());
    for (GenreIndex g : genres) u.sources[g] += w;
  }
  u.total = static_cast<double>(rn.node_count());
  return u;
}

ExposureVector group_exposure(const RecommendationNetwork& rn, const GroupSpec& group,
                              const InformationUniverse& universe, std::uint64_t group_seed) {
  if (group.members == 0) throw AuditError(Errc::kInvalidArgument, "group needs a member");
  if (group.steps == 0) throw AuditError(Errc::kInvalidArgument, "walk needs at least one step");
  if (universe.units.size() != rn.genre_labels().size()) {
    throw AuditError(Errc::kUnitMismatch, "universe was not built from this network");
  }
  const NodeIndex start = rn.index_of(group.start);
  std::vector<double> mass(universe.units.size(), 0.0);
  for (std::uint32_t m = 0; m < group.members; ++m) {
    run_walk(rn, start, group.policy, group.steps, derive_seed(group_seed, m),
             [&](NodeIndex v, StepKind) {
               auto genres = rn.genres(v);
               const double w = 1.0 / static_cast<double>(genres.size());
               for (GenreIndex g : genres) mass[g] += w;
             });
  }
  for (double& x : mass) x /= static_cast<double>(group.members);
  return ExposureVector::from(std::move(mass));
}

double evenness(const ExposureVector& a) {
  if (!(a.total > 0.0)) throw AuditError(Errc::kZeroExposure, "evenness of zero exposure");
  const std::size_t m = a.mass.size();
  double diff = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) diff += std::abs(a.mass[i] - a.mass[j]);
  }
  return 1.0 - diff / (2.0 * static_cast<double>(m) * a.total);
}

double concentration(const ExposureVector& a, const InformationUniverse& universe) {
  if (!(a.total > 0.0)) throw AuditError(Errc::kZeroExposure, "concentration of zero exposure");
  if (!(universe.total > 0.0)) {
    throw AuditError(Errc::kZeroExposure, "concentration over an empty universe");
  }
  if (a.mass.size() != universe.sources.size()) {
    throw AuditError(Errc::kUnitMismatch, "exposure and universe have different unit lists");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    sum += (a.mass[i] / a.total) * (universe.sources[i] / universe.total);
  }
  return 0.5 * sum;
}

SegregationReport run_segregation_experiment(const RecommendationNetwork& rn,
                                             const SegregationConfig& cfg) {
  for (const auto& s : cfg.starts) rn.index_of(s);
  const auto universe = build_universe(rn);
  const std::size_t num_tp = cfg.tps.size();
  std::vector<SurferPolicy> policies;
  policies.reserve(num_tp);
  for (double tp : cfg.tps) policies.push_back(SurferPolicy::stochastic(tp));

  SegregationReport report;
  report.groups.resize(cfg.starts.size() * num_tp);
  parallel_blocks(report.groups.size(), 1, cfg.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t g = b; g < e; ++g) {
      const std::size_t s = g / num_tp;
      const std::size_t t = g % num_tp;
      GroupSpec spec{cfg.starts[s], policies[t], cfg.members, cfg.steps};
      auto a = group_exposure(rn, spec, universe, derive_seed(cfg.seed, hash_id(cfg.starts[s]), t));
      report.groups[g] = {cfg.starts[s], cfg.tps[t], evenness(a), concentration(a, universe)};
    }
  });

  report.per_tp.resize(num_tp);
  for (std::size_t t = 0; t < num_tp; ++t) {
    auto& row = report.per_tp[t];
    row.tp = cfg.tps[t];
    for (std::size_t s = 0; s < cfg.starts.size(); ++s) {
      const auto& g = report.groups[s * num_tp + t];
      row.mean_evenness += g.evenness;
      row.mean_concentration += g.concentration;
      ++row.num_groups;
    }
    if (row.num_groups > 0) {
      row.mean_evenness /= static_cast<double>(row.num_groups);
      row.mean_concentration /= static_cast<double>(row.num_groups);
    }
  }
  return report;
}

std::vector<std::string> top_indegree_starts(const RecommendationNetwork& rn, std::size_t k) {
  std::vector<NodeIndex> order(rn.node_count());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  // Node indices follow id order, so a stable sort breaks ties by id.
  std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return rn.in_degree(a) > rn.in_degree(b);
  });
  order.resize(std::min(k, order.size()));
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (NodeIndex v : order) ids.push_back(rn.item(v).id);
  return ids;
}

void write_segregation_summary(std::ostream& out, const SegregationReport& report) {
  out << "tp,mean_evenness,mean_concentration,num_groups\n";
  for (const auto& row : report.per_tp) {
    out << short_decimal(row.tp) << ',' << fixed6(row.mean_evenness) << ','
        << fixed6(row.mean_concentration) << ',' << row.num_groups << '\n';
  }
}

void write_segregation_groups(std::ostream& out, const SegregationReport& report) {
  out << "start,tp,evenness,concentration\n";
  for (const auto& g : report.groups) {
    out << g.start << ',' << short_decimal(g.tp) << ',' << fixed6(g.evenness) << ','
        << fixed6(g.concentration) << '\n';
  }
}

}  // namespace rnaudit
