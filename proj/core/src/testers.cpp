#include "preftest/testers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "preftest/distances.hpp"
#include "preftest/error.hpp"
#include "preftest/numeric.hpp"

namespace preftest {

namespace {

void check_eps(double eps, const char* name) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::InvalidParameter, std::string(name) + " must lie in [0, 1)");
}

// Testers need 0 < delta < 1/2; the size formulas only need delta > 0.
void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(Errc::InvalidParameter, "delta must lie in (0, 1/2)");
}

void check_formula_delta(double delta) {
  if (!(delta > 0.0 && std::isfinite(delta))) throw Error(Errc::InvalidParameter, "delta must be positive");
}

std::uint64_t sort_cost(std::size_t k) {
  if (k < 2) return 0;
  return ceil_count(static_cast<double>(k) * std::log2(static_cast<double>(k)));
}

std::size_t agents_to_draw(std::size_t formula, const TesterParams& params) {
  if (!params.sample_override) return formula;
  if (*params.sample_override == 0) throw Error(Errc::InvalidParameter, "sample override must be positive");
  return *params.sample_override;
}

// eps / res(k), rejecting eps >= res(k).
double relative_eps(const Domain& domain, int k, double eps) {
  const auto res = res_value(domain, k);
  if (!residue_exceeds(res, eps)) {
    throw Error(Errc::EpsilonOutOfRange, "eps_v = " + std::to_string(eps) + " is not below res(" +
                                             std::to_string(k) + ") = " + std::to_string(to_double(res)));
  }
  return eps / to_double(res);
}

// Buckets the orders of l agents over {0..k-1}; returns (min count, queries).
Verdict bucket_test(QueryOracle& oracle, int k, std::size_t l, double factor) {
  const auto buckets = static_cast<std::size_t>(factorial(k));
  std::vector<std::size_t> counts(buckets, 0);
  std::vector<Alternative> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<Alternative> learnt(subset.size());
  std::vector<Alternative> scratch;
  const auto before = oracle.query_count();
  for (std::size_t s = 0; s < l; ++s) {
    const auto agent = oracle.draw_agent();
    oracle.learn_restricted_order(agent, subset, learnt, scratch);
    ++counts[permutation_index(learnt)];
  }
  Verdict v;
  v.statistic = static_cast<double>(*std::min_element(counts.begin(), counts.end()));
  v.threshold = static_cast<double>(l) / (2.0 * static_cast<double>(buckets)) * factor;
  v.decision = v.statistic < v.threshold ? 1 : 0;
  v.queries = oracle.query_count() - before;
  v.sample_size = l;
  return v;
}

int domain_m0(const Domain& domain, const QueryOracle& oracle) {
  const int k = m0(domain);
  if (oracle.num_alternatives() < k) {
    throw Error(Errc::TooFewAlternatives, "the tester needs at least m0 = " + std::to_string(k) +
                                              " alternatives, the profile has " +
                                              std::to_string(oracle.num_alternatives()));
  }
  return k;
}

// Learns the orders of `agents` agents over the sampled alternatives and
// calls visit(subset_index, pattern) for every m0-subset of them.
struct SubsetPatterns {
  std::vector<std::vector<std::size_t>> subsets;  // indices into the sampled alternatives
  std::size_t patterns = 0;                       // m0!
};

SubsetPatterns enumerate_subsets(std::size_t l, int k) {
  SubsetPatterns sp;
  sp.patterns = static_cast<std::size_t>(factorial(k));
  std::vector<std::size_t> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), std::size_t{0});
  const auto kk = static_cast<std::size_t>(k);
  for (;;) {
    sp.subsets.push_back(c);
    std::size_t i = kk;
    while (i > 0 && c[i - 1] == l - kk + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < kk; ++j) c[j] = c[j - 1] + 1;
  }
  return sp;
}

std::vector<Alternative> sample_alternatives(int m, std::size_t l, Rng& rng) {
  std::vector<Alternative> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(l);
  std::sort(all.begin(), all.end());
  return all;
}

// Pattern counts per m0-subset over t agents: counts[s * patterns + p].
std::vector<std::size_t> subset_pattern_counts(QueryOracle& oracle, const std::vector<Alternative>& alts,
                                               const SubsetPatterns& sp, std::size_t t) {
  std::vector<std::size_t> counts(sp.subsets.size() * sp.patterns, 0);
  std::vector<Alternative> learnt(alts.size());
  std::vector<Alternative> scratch;
  std::vector<int> local_rank(alts.size());
  std::vector<Alternative> pattern;
  for (std::size_t s = 0; s < t; ++s) {
    const auto agent = oracle.draw_agent();
    oracle.learn_restricted_order(agent, alts, learnt, scratch);
    for (std::size_t r = 0; r < learnt.size(); ++r) {
      const auto idx = std::lower_bound(alts.begin(), alts.end(), learnt[r]) - alts.begin();
      local_rank[static_cast<std::size_t>(idx)] = static_cast<int>(r);
    }
    for (std::size_t q = 0; q < sp.subsets.size(); ++q) {
      const auto& sub = sp.subsets[q];
      pattern.resize(sub.size());
      std::iota(pattern.begin(), pattern.end(), 0);
      std::sort(pattern.begin(), pattern.end(), [&](Alternative x, Alternative y) {
        return local_rank[sub[static_cast<std::size_t>(x)]] < local_rank[sub[static_cast<std::size_t>(y)]];
      });
      ++counts[q * sp.patterns + permutation_index(pattern)];
    }
  }
  return counts;
}

void check_alt_regime(const Domain& domain, int m, double eps_a) {
  if (!(eps_a > 0.0 && eps_a < 1.0)) throw Error(Errc::InvalidParameter, "eps_a must lie in (0, 1)");
  const auto kept = static_cast<int>(ceil_count((1.0 - eps_a) * m));
  if (!(con_value(domain, std::max(kept, 1)) < Rational(1))) {
    throw Error(Errc::EpsilonOutOfRange, "con(ceil((1 - eps_a) m)) = 1: every profile is within eps_a of the domain");
  }
}

}  // namespace

std::size_t sample_size_alg1(double eps_v, double delta) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  return ceil_count(72.0 / ((1.0 - eps_v) * (1.0 - eps_v)) * std::log(6.0 / delta));
}

std::size_t sample_size_random_outliers(const Domain& domain, double eps_v, double delta) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  const double f = static_cast<double>(factorial(m0(domain)));
  return ceil_count(12.0 * f / ((1.0 - eps_v) * (1.0 - eps_v)) * std::log(f / delta));
}

std::size_t sample_size_worst_small_eps(const Domain& domain, double eps_v, double delta) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  const int k = m0(domain);
  const double r = relative_eps(domain, k, eps_v);
  const double f = static_cast<double>(factorial(k));
  return ceil_count(12.0 * f / ((1.0 - r) * (1.0 - r)) * std::log(f / delta));
}

std::size_t sample_size_any_eps(const Domain& domain, double eps_v, double delta) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  const int k = m_eps(domain, eps_v);
  const double r = relative_eps(domain, k, eps_v);
  const double f = static_cast<double>(factorial(k));
  return ceil_count(16.0 * f * k * std::log(static_cast<double>(k)) / ((1.0 - r) * (1.0 - r)) *
                    std::log(1.0 / delta));
}

std::size_t sample_size_worst_worst(const Domain& domain, int m, double eps_v, double eps_v_prime, double delta) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  if (!(eps_v_prime > eps_v && eps_v_prime <= 1.0)) {
    throw Error(Errc::InvalidParameter, "eps_v_prime must lie in (eps_v, 1]");
  }
  const double gap = eps_v_prime - eps_v;
  const double distinct = to_double(con_value(domain, m)) * static_cast<double>(factorial(m));
  return ceil_count(64.0 / (gap * gap) * (distinct * m * std::log(static_cast<double>(m)) + std::log(1.0 / delta)));
}

AltSampleSizes sample_sizes_alt(int m, double eps_a, double delta) {
  if (!(eps_a > 0.0 && eps_a < 1.0)) throw Error(Errc::InvalidParameter, "eps_a must lie in (0, 1)");
  check_formula_delta(delta);
  if (m < 1) throw Error(Errc::InvalidParameter, "m must be at least 1");
  const double log_term = 2.0 * std::log(1.0 / delta) / std::log(1.0 / eps_a);
  AltSampleSizes s;
  s.alternatives = std::min(ceil_count((1.0 - eps_a) * m), ceil_count(log_term));
  s.agents = ceil_count(18.0 * std::log(log_term / delta));
  return s;
}

std::size_t sample_size_combined(const Domain& domain, std::size_t alternatives, double eps_v, double delta,
                                 bool worst_pref) {
  check_eps(eps_v, "eps_v");
  check_formula_delta(delta);
  const int k = m0(domain);
  const double r = worst_pref ? relative_eps(domain, k, eps_v) : eps_v;
  const double f = static_cast<double>(factorial(k));
  return ceil_count(24.0 * f / ((1.0 - r) * (1.0 - r)) * std::log(static_cast<double>(alternatives) / delta));
}

Verdict test_random_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params) {
  check_delta(params.delta);
  const int k = domain_m0(domain, oracle);
  const std::size_t l = agents_to_draw(sample_size_random_outliers(domain, params.eps_v, params.delta), params);
  auto v = bucket_test(oracle, k, l, 1.0 + params.eps_v);
  v.budget = l * factorial(k);
  return v;
}

Verdict test_worst_outliers_small_eps(QueryOracle& oracle, const Domain& domain, const TesterParams& params) {
  check_delta(params.delta);
  const int k = domain_m0(domain, oracle);
  const std::size_t l = agents_to_draw(sample_size_worst_small_eps(domain, params.eps_v, params.delta), params);
  auto v = bucket_test(oracle, k, l, 1.0 + relative_eps(domain, k, params.eps_v));
  v.budget = l * factorial(k);
  return v;
}

Verdict test_worst_outliers_any_eps(QueryOracle& oracle, const Domain& domain, const TesterParams& params) {
  check_delta(params.delta);
  check_eps(params.eps_v, "eps_v");
  const int m = oracle.num_alternatives();
  const int k = m_eps(domain, params.eps_v);
  if (k > m) {
    throw Error(Errc::EpsilonOutOfRange, "res(" + std::to_string(m) + ") <= eps_v; m(eps_v) = " +
                                             std::to_string(k) + " exceeds the number of alternatives");
  }
  if (k > 8) throw Error(Errc::CapExceeded, "m(eps_v) = " + std::to_string(k) + " needs more than 8! buckets");
  const std::size_t l = agents_to_draw(sample_size_any_eps(domain, params.eps_v, params.delta), params);
  auto v = bucket_test(oracle, k, l, 1.0 + relative_eps(domain, k, params.eps_v));
  v.budget = l * sort_cost(static_cast<std::size_t>(k));
  return v;
}

Verdict test_worst_worst_pref(QueryOracle& oracle, const Domain& domain, const TesterParams& params) {
  check_delta(params.delta);
  const int m = oracle.num_alternatives();
  const std::size_t l = agents_to_draw(
      sample_size_worst_worst(domain, m, params.eps_v, params.eps_v_prime, params.delta), params);
  std::vector<Alternative> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Alternative> learnt(all.size());
  std::vector<Alternative> scratch;
  std::vector<LinearOrder> sampled;
  sampled.reserve(l);
  const auto before = oracle.query_count();
  for (std::size_t s = 0; s < l; ++s) {
    const auto agent = oracle.draw_agent();
    oracle.learn_restricted_order(agent, all, learnt, scratch);
    sampled.push_back(make_order(learnt));
  }
  const auto report = pref_distance(Profile(m, std::move(sampled)), domain);
  Verdict v;
  v.statistic = static_cast<double>(report.value);
  v.threshold = (params.eps_v + params.eps_v_prime) * static_cast<double>(l) / 2.0;
  v.decision = v.statistic <= v.threshold ? 1 : 0;
  v.queries = oracle.query_count() - before;
  v.sample_size = l;
  v.budget = l * sort_cost(static_cast<std::size_t>(m));
  return v;
}

Verdict test_alt_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params, Rng& rng) {
  check_delta(params.delta);
  const int m = oracle.num_alternatives();
  check_alt_regime(domain, m, params.eps_a);
  const auto sizes = sample_sizes_alt(m, params.eps_a, params.delta);
  const int k = m0(domain);
  if (sizes.alternatives < static_cast<std::size_t>(k)) {
    throw Error(Errc::DegenerateSample, "only " + std::to_string(sizes.alternatives) +
                                            " alternatives would be sampled; at least " + std::to_string(k) +
                                            " are needed");
  }
  const std::size_t t = agents_to_draw(sizes.agents, params);
  const auto alts = sample_alternatives(m, sizes.alternatives, rng);
  const auto sp = enumerate_subsets(alts.size(), k);
  const auto before = oracle.query_count();
  const auto counts = subset_pattern_counts(oracle, alts, sp, t);

  std::size_t fewest = sp.patterns;
  for (std::size_t q = 0; q < sp.subsets.size(); ++q) {
    const auto first = counts.begin() + static_cast<std::ptrdiff_t>(q * sp.patterns);
    const auto seen = static_cast<std::size_t>(
        std::count_if(first, first + static_cast<std::ptrdiff_t>(sp.patterns), [](std::size_t c) { return c > 0; }));
    fewest = std::min(fewest, seen);
  }
  Verdict v;
  v.statistic = static_cast<double>(fewest);
  v.threshold = static_cast<double>(sp.patterns);
  v.decision = v.statistic < v.threshold ? 1 : 0;
  v.queries = oracle.query_count() - before;
  v.sample_size = t;
  v.secondary_size = alts.size();
  v.budget = t * sort_cost(alts.size());
  return v;
}

Verdict test_combined_outliers(QueryOracle& oracle, const Domain& domain, const TesterParams& params, Rng& rng,
                               bool worst_pref) {
  check_delta(params.delta);
  const int m = oracle.num_alternatives();
  check_eps(params.eps_v, "eps_v");
  check_alt_regime(domain, m, params.eps_a);
  const auto sizes = sample_sizes_alt(m, params.eps_a, params.delta);
  const int k = m0(domain);
  if (sizes.alternatives < static_cast<std::size_t>(k)) {
    throw Error(Errc::DegenerateSample, "only " + std::to_string(sizes.alternatives) +
                                            " alternatives would be sampled; at least " + std::to_string(k) +
                                            " are needed");
  }
  const double factor = 1.0 + (worst_pref ? relative_eps(domain, k, params.eps_v) : params.eps_v);
  const std::size_t t =
      agents_to_draw(sample_size_combined(domain, sizes.alternatives, params.eps_v, params.delta, worst_pref), params);
  const auto alts = sample_alternatives(m, sizes.alternatives, rng);
  const auto sp = enumerate_subsets(alts.size(), k);
  const auto before = oracle.query_count();
  const auto counts = subset_pattern_counts(oracle, alts, sp, t);

  Verdict v;
  v.statistic = static_cast<double>(*std::min_element(counts.begin(), counts.end()));
  v.threshold = static_cast<double>(t) / (2.0 * static_cast<double>(sp.patterns)) * factor;
  v.decision = v.statistic < v.threshold ? 1 : 0;
  v.queries = oracle.query_count() - before;
  v.sample_size = t;
  v.secondary_size = alts.size();
  v.budget = t * sort_cost(alts.size());
  return v;
}

}  // namespace preftest
