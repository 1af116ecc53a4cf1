#pragma once

#include <cstdint>
#include <optional>

#include "preftest/domain.hpp"
#include "preftest/oracle.hpp"
#include "preftest/rng.hpp"

namespace preftest {

// decision 1 means "close to the domain" (first input kind), 0 otherwise.
struct Verdict {
  int decision = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  std::uint64_t queries = 0;
  std::size_t sample_size = 0;     // agents drawn (l, or t for the alternative testers)
  std::size_t secondary_size = 0;  // alternatives sampled (alternative testers), else 0
  std::uint64_t budget = 0;        // comparison budget for the parameters used
};

struct TesterParams {
  double eps_v = 0.0;
  double eps_a = 0.0;
  double eps_v_prime = 1.0;
  double eps_a_prime = 1.0;
  double delta = 0.05;
  // Replaces the number of agents drawn (l, or t for the alternative testers);
  // thresholds are recomputed at the overridden value.
  std::optional<std::size_t> sample_override;
};

// Sample sizes. Real-valued expressions are rounded up.
//   random outliers:  12 m0! / (1-eps)^2 ln(m0!/delta)          (72/(1-eps)^2 ln(6/delta) when m0 = 3)
//   worst, small eps: same with (1 - eps/res(m0))^2
//   worst, any eps:   16 k! k ln k / (1 - eps/res(k))^2 ln(1/delta),  k = m(eps)
//   worst-worst:      64 / (eps' - eps)^2 (con(m) m! m ln m + ln(1/delta))
//   alternatives:     l = min(ceil((1-eps_a) m), ceil(2 log_{1/eps_a}(1/delta))),
//                     t = 18 ln(2 log_{1/eps_a}(1/delta) / delta)
//   combined:         t = 24 m0! / (1-eps)^2 ln(l/delta), or (1 - eps/res(m0))^2 for worst_pref
std::size_t sample_size_alg1(double eps_v, double delta);
std::size_t sample_size_random_outliers(const Domain& domain, double eps_v, double delta);
std::size_t sample_size_worst_small_eps(const Domain& domain, double eps_v, double delta);
std::size_t sample_size_any_eps(const Domain& domain, double eps_v, double delta);
std::size_t sample_size_worst_worst(const Domain& domain, int m, double eps_v, double eps_v_prime, double delta);

struct AltSampleSizes {
  std::size_t alternatives = 0;  // l
  std::size_t agents = 0;        // t
};
AltSampleSizes sample_sizes_alt(int m, double eps_a, double delta);
std::size_t sample_size_combined(const Domain& domain, std::size_t alternatives, double eps_v, double delta,
                                 bool worst_pref);

// Buckets the first m0 alternatives' orders; 1 iff the smallest bucket is below
// (l / (2 m0!)) (1 + eps_v). TooFewAlternatives when m < m0.
Verdict test_random_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params);

// As above with threshold (l / (2 m0!)) (1 + eps_v / res(m0)).
// EpsilonOutOfRange unless eps_v < res(m0).
Verdict test_worst_outliers_small_eps(QueryOracle& oracle, const Domain& domain, const TesterParams& params);

// Buckets the first m(eps_v) alternatives. EpsilonOutOfRange when
// res(m) <= eps_v, CapExceeded when m(eps_v) > 8.
Verdict test_worst_outliers_any_eps(QueryOracle& oracle, const Domain& domain, const TesterParams& params);

// Learns l full orders and computes their exact preference distance; 1 iff it
// is at most (eps_v + eps_v') l / 2. InstanceTooLarge from the distance oracle.
Verdict test_worst_worst_pref(QueryOracle& oracle, const Domain& domain, const TesterParams& params);

// Samples l alternatives without replacement and t agents; 1 iff some
// m0-subset of the sampled alternatives misses one of its m0! orders.
// statistic is the fewest orders seen on any subset, threshold m0!.
Verdict test_alt_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params, Rng& rng);

// Samples alternatives as test_alt_outliers and t agents; Y is the smallest
// count of any order on any m0-subset. 1 iff Y < (t / (2 m0!)) (1 + eps_v),
// or (1 + eps_v / res(m0)) when worst_pref.
Verdict test_combined_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params, Rng& rng,
                               bool worst_pref);

}  // namespace preftest
