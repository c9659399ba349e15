#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rnaudit/graph.hpp"
#include "rnaudit/walker.hpp"

namespace rnaudit {

/// Information units (genres) and how many sources (items) fall in each.
/// Multi-genre items are split evenly across their genres.
struct InformationUniverse {
  std::vector<std::string> units;
  std::vector<double> sources;  // n_i
  double total = 0.0;           // n_total
};

/// Per-unit exposure mass of a group of users.
struct ExposureVector {
  std::vector<double> mass;  // a_i
  double total = 0.0;        // a_total

  static ExposureVector from(std::vector<double> mass);
};

struct GroupSpec {
  std::string start;
  SurferPolicy policy;
  std::uint32_t members = 10;
  std::uint32_t steps = 400;
};

InformationUniverse build_universe(const RecommendationNetwork& rn);

/// Mean exposure over `members` independent walks. Member m walks with seed
/// derive_seed(group_seed, m).
ExposureVector group_exposure(const RecommendationNetwork& rn, const GroupSpec& group,
                              const InformationUniverse& universe, std::uint64_t group_seed);

/// 1 - sum_i sum_j |a_i - a_j| / (2 m a_total). kZeroExposure if a_total <= 0.
double evenness(const ExposureVector& a);

/// 1/2 sum_i (a_i / a_total) (n_i / n_total). kZeroExposure, kUnitMismatch.
double concentration(const ExposureVector& a, const InformationUniverse& universe);

struct GroupResult {
  std::string start;
  double tp = 0.0;
  double evenness = 0.0;
  double concentration = 0.0;

  friend bool operator==(const GroupResult&, const GroupResult&) = default;
};

struct TpSummary {
  double tp = 0.0;
  double mean_evenness = 0.0;
  double mean_concentration = 0.0;
  std::size_t num_groups = 0;

  friend bool operator==(const TpSummary&, const TpSummary&) = default;
};

struct SegregationReport {
  std::vector<GroupResult> groups;  // start-major, t_p-minor
  std::vector<TpSummary> per_tp;    // in the order of the t_p list
};

struct SegregationConfig {
  std::vector<std::string> starts;
  std::vector<double> tps = default_tp_grid();
  std::uint32_t members = 10;
  std::uint32_t steps = 400;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// One group per (start, t_p) pair; group seeds derive from
/// (seed, start id, t_p index).
SegregationReport run_segregation_experiment(const RecommendationNetwork& rn,
                                             const SegregationConfig& cfg);

/// The k items with the highest in-degree, ties broken by id.
std::vector<std::string> top_indegree_starts(const RecommendationNetwork& rn, std::size_t k);

/// tp,mean_evenness,mean_concentration,num_groups
void write_segregation_summary(std::ostream& out, const SegregationReport& report);
/// start,tp,evenness,concentration
void write_segregation_groups(std::ostream& out, const SegregationReport& report);

}  // namespace rnaudit
