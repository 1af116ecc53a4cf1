#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "preftest/domain.hpp"
#include "preftest/order.hpp"

namespace preftest {

enum class DistanceMethod { AxisEnum, SubsetEnum, Hybrid };

// Result of an exact distance computation. `witness_removed` holds agent
// indices (preference distance) or alternative ids (alternative distance),
// sorted; deleting them puts the profile in the domain, which is re-checked
// before the report is returned.
struct DistanceReport {
  std::size_t value = 0;
  std::vector<std::size_t> witness_removed;
  DistanceMethod method = DistanceMethod::Hybrid;  // the method actually used
};

inline constexpr int kAxisEnumMaxM = 12;
inline constexpr std::size_t kSubsetEnumMaxDistinct = 24;

// Minimum number of agents to delete. AxisEnum (single-peaked only) scans all
// m!/2 axes; SubsetEnum searches subsets of distinct orders, heaviest first,
// with pruning by the domain's closure under deletion. Hybrid picks AxisEnum
// for single-peaked profiles with m <= 8, or with m <= 12 when there are too
// many distinct orders for SubsetEnum. Among optimal answers the
// lexicographically smallest removed set is returned. InstanceTooLarge when
// the chosen method's cap is exceeded.
DistanceReport pref_distance(const Profile& profile, const Domain& domain,
                             DistanceMethod method = DistanceMethod::Hybrid);

// Minimum number of alternatives to delete (m <= 12), by increasing deletion
// count; the lexicographically smallest deleted set is returned.
DistanceReport alt_distance(const Profile& profile, const Domain& domain);

struct CombinedWitness {
  std::vector<std::size_t> agents;         // kept agents (the set W)
  std::vector<Alternative> alternatives;  // kept alternatives (the set X)
};

// W, X with |W| >= (1-eps_v) n, |X| >= (1-eps_a) m and the restriction of the
// W-rows to X in the domain, or nullopt. Needs m <= 10 and at most 16
// distinct orders.
std::optional<CombinedWitness> combined_feasible(const Profile& profile, const Domain& domain, double eps_v,
                                                 double eps_a);

struct SubsampleCheck {
  double pass_rate = 0.0;
  double eps = 0.0;              // pref_distance(profile) / n
  std::size_t sample_size = 0;   // after the cap
  std::size_t trials = 0;
  std::size_t passes = 0;
};

// ceil((4 / gap^2) (con(m) m! m ln m + ln(1/delta))).
std::size_t subsample_size(const Domain& domain, int m, double gap, double delta);

// Draws `trials` sub-profiles of subsample_size() agents (at most sample_cap)
// with replacement, and counts how often their distance lies within
// [(eps - gap) l, (eps + gap) l].
SubsampleCheck check_lemma_subsample(const Profile& profile, const Domain& domain, double gap, double delta,
                                     std::size_t trials, std::uint64_t seed, std::size_t sample_cap = 100000);

}  // namespace preftest
