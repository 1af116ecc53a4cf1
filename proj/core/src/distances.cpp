#include "preftest/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "preftest/error.hpp"
#include "preftest/numeric.hpp"
#include "preftest/rng.hpp"
#include "preftest/single_peaked.hpp"

namespace preftest {

namespace {

void verify_agents_removed(const Profile& profile, const Domain& domain, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> kept;
  std::size_t r = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (r < removed.size() && removed[r] == i) {
      ++r;
    } else {
      kept.push_back(i);
    }
  }
  if (kept.empty() || !accepts(domain, profile.subprofile(kept))) {
    throw std::logic_error("distance witness failed re-verification");
  }
}

std::vector<std::size_t> removed_agents(const std::vector<OrderGroup>& groups, const std::vector<char>& keep) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!keep[g]) out.insert(out.end(), groups[g].agents.begin(), groups[g].agents.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

DistanceReport axis_enum(const Profile& profile, const std::vector<OrderGroup>& groups) {
  const int m = profile.num_alternatives();
  if (m > kAxisEnumMaxM) {
    throw Error(Errc::InstanceTooLarge, "axis enumeration supports m <= " + std::to_string(kAxisEnumMaxM) +
                                            ", got " + std::to_string(m));
  }
  std::vector<Alternative> axis(static_cast<std::size_t>(m));
  std::iota(axis.begin(), axis.end(), 0);
  std::vector<int> pos(static_cast<std::size_t>(m));
  std::vector<char> keep(groups.size());
  std::vector<char> best_keep;
  std::size_t best_cover = 0;
  std::vector<std::size_t> best_removed;
  do {
    if (axis.front() > axis.back()) continue;  // each axis once, up to reversal
    for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(axis[static_cast<std::size_t>(i)])] = i;
    std::size_t cover = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      keep[g] = is_sp_ranking(groups[g].order.ranking(), pos) ? 1 : 0;
      if (keep[g]) cover += groups[g].agents.size();
    }
    if (cover < best_cover) continue;
    if (cover > best_cover || best_keep.empty()) {
      best_cover = cover;
      best_keep = keep;
      best_removed = removed_agents(groups, keep);
    } else if (keep != best_keep) {
      auto removed = removed_agents(groups, keep);
      if (removed < best_removed) {
        best_keep = keep;
        best_removed = std::move(removed);
      }
    }
  } while (std::next_permutation(axis.begin(), axis.end()));
  return {profile.size() - best_cover, std::move(best_removed), DistanceMethod::AxisEnum};
}

class SubsetSearch {
 public:
  SubsetSearch(const Profile& profile, const Domain& domain, const std::vector<OrderGroup>& groups)
      : profile_(profile), domain_(domain), groups_(groups), keep_(groups.size(), 0) {
    order_.resize(groups.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return groups[a].agents.size() > groups[b].agents.size();
    });
    suffix_.assign(groups.size() + 1, 0);
    for (std::size_t i = groups.size(); i > 0; --i) suffix_[i - 1] = suffix_[i] + groups[order_[i - 1]].agents.size();
  }

  DistanceReport run() {
    dfs(0, 0);
    return {profile_.size() - best_cover_, std::move(best_removed_), DistanceMethod::SubsetEnum};
  }

 private:
  bool feasible() {
    std::vector<LinearOrder> chosen;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (keep_[g]) chosen.push_back(groups_[g].order);
    }
    return chosen.empty() || accepts(domain_, Profile(profile_.num_alternatives(), std::move(chosen)));
  }

  void dfs(std::size_t i, std::size_t cover) {
    if (have_best_ && cover + suffix_[i] < best_cover_) return;
    if (i == order_.size()) {
      auto removed = removed_agents(groups_, keep_);
      if (!have_best_ || cover > best_cover_ || removed < best_removed_) {
        have_best_ = true;
        best_cover_ = cover;
        best_removed_ = std::move(removed);
      }
      return;
    }
    const std::size_t g = order_[i];
    keep_[g] = 1;
    if (feasible()) dfs(i + 1, cover + groups_[g].agents.size());
    keep_[g] = 0;
    dfs(i + 1, cover);
  }

  const Profile& profile_;
  const Domain& domain_;
  const std::vector<OrderGroup>& groups_;
  std::vector<char> keep_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> suffix_;
  bool have_best_ = false;
  std::size_t best_cover_ = 0;
  std::vector<std::size_t> best_removed_;
};

DistanceReport subset_enum(const Profile& profile, const Domain& domain, const std::vector<OrderGroup>& groups) {
  if (groups.size() > kSubsetEnumMaxDistinct) {
    throw Error(Errc::InstanceTooLarge, "subset enumeration supports at most " +
                                            std::to_string(kSubsetEnumMaxDistinct) + " distinct orders, got " +
                                            std::to_string(groups.size()));
  }
  return SubsetSearch(profile, domain, groups).run();
}

std::vector<Alternative> complement(int m, const std::vector<Alternative>& removed) {
  std::vector<Alternative> kept;
  for (Alternative a = 0; a < m; ++a) {
    if (!std::binary_search(removed.begin(), removed.end(), a)) kept.push_back(a);
  }
  return kept;
}

// Visits the size-k subsets of {0..m-1} in lexicographic order until f returns true.
template <class F>
bool for_each_combination(int m, int k, F&& f) {
  std::vector<Alternative> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    if (f(c)) return true;
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

DistanceReport pref_distance(const Profile& profile, const Domain& domain, DistanceMethod method) {
  const auto groups = group_distinct(profile);
  const int m = profile.num_alternatives();
  const bool sp = domain.kind() == DomainKind::SinglePeaked;
  if (method == DistanceMethod::AxisEnum && !sp) {
    throw Error(Errc::UnsupportedDomain, "axis enumeration applies to the single-peaked domain only");
  }
  if (method == DistanceMethod::Hybrid) {
    const bool axis = sp && (m <= 8 || (groups.size() > kSubsetEnumMaxDistinct && m <= kAxisEnumMaxM));
    method = axis ? DistanceMethod::AxisEnum : DistanceMethod::SubsetEnum;
  }
  auto report = method == DistanceMethod::AxisEnum ? axis_enum(profile, groups) : subset_enum(profile, domain, groups);
  verify_agents_removed(profile, domain, report.witness_removed);
  return report;
}

DistanceReport alt_distance(const Profile& profile, const Domain& domain) {
  const int m = profile.num_alternatives();
  if (m > kAxisEnumMaxM) {
    throw Error(Errc::InstanceTooLarge, "alternative distance supports m <= " + std::to_string(kAxisEnumMaxM));
  }
  const auto compact = distinct_profile(profile, group_distinct(profile));
  for (int d = 0; d < m; ++d) {
    std::vector<Alternative> found;
    const bool hit = for_each_combination(m, d, [&](const std::vector<Alternative>& removed) {
      if (!accepts(domain, compact.restricted(complement(m, removed)))) return false;
      found = removed;
      return true;
    });
    if (hit) {
      if (!accepts(domain, profile.restricted(complement(m, found)))) {
        throw std::logic_error("alternative-distance witness failed re-verification");
      }
      return {static_cast<std::size_t>(d), std::vector<std::size_t>(found.begin(), found.end()),
              DistanceMethod::SubsetEnum};
    }
  }
  throw std::logic_error("a single alternative is always in the domain");
}

std::optional<CombinedWitness> combined_feasible(const Profile& profile, const Domain& domain, double eps_v,
                                                 double eps_a) {
  if (!(eps_v >= 0.0 && eps_v < 1.0) || !(eps_a >= 0.0 && eps_a < 1.0)) {
    throw Error(Errc::InvalidParameter, "eps_v and eps_a must lie in [0, 1)");
  }
  const int m = profile.num_alternatives();
  if (m > 10) throw Error(Errc::InstanceTooLarge, "combined search supports m <= 10");
  if (group_distinct(profile).size() > 16) {
    throw Error(Errc::InstanceTooLarge, "combined search supports at most 16 distinct orders");
  }
  const std::size_t n = profile.size();
  const std::size_t min_agents = ceil_count((1.0 - eps_v) * static_cast<double>(n));
  const int min_alts = static_cast<int>(ceil_count((1.0 - eps_a) * m));

  std::optional<CombinedWitness> result;
  for (int k = m; k >= std::max(min_alts, 1) && !result; --k) {
    for_each_combination(m, k, [&](const std::vector<Alternative>& kept) {
      const auto sub = profile.restricted(kept);
      const auto report = pref_distance(sub, domain);
      if (n - report.value < min_agents) return false;
      CombinedWitness w;
      for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (r < report.witness_removed.size() && report.witness_removed[r] == i) {
          ++r;
        } else {
          w.agents.push_back(i);
        }
      }
      w.alternatives = kept;
      result = std::move(w);
      return true;
    });
  }
  return result;
}

std::size_t subsample_size(const Domain& domain, int m, double gap, double delta) {
  if (!(gap > 0.0 && gap <= 1.0)) throw Error(Errc::InvalidParameter, "gap must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::InvalidParameter, "delta must lie in (0, 1)");
  const double distinct = to_double(con_value(domain, m)) * static_cast<double>(factorial(m));
  return ceil_count(4.0 / (gap * gap) * (distinct * m * std::log(static_cast<double>(m)) + std::log(1.0 / delta)));
}

SubsampleCheck check_lemma_subsample(const Profile& profile, const Domain& domain, double gap, double delta,
                                     std::size_t trials, std::uint64_t seed, std::size_t sample_cap) {
  if (trials == 0) throw Error(Errc::InvalidParameter, "trials must be positive");
  if (sample_cap == 0) throw Error(Errc::InvalidParameter, "sample cap must be positive");
  SubsampleCheck out;
  out.trials = trials;
  out.eps = static_cast<double>(pref_distance(profile, domain).value) / static_cast<double>(profile.size());
  out.sample_size = std::min(subsample_size(domain, profile.num_alternatives(), gap, delta), sample_cap);
  const double l = static_cast<double>(out.sample_size);

  std::vector<std::size_t> agents(out.sample_size);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    for (auto& a : agents) a = static_cast<std::size_t>(rng.below(profile.size()));
    const auto d = static_cast<double>(pref_distance(profile.subprofile(agents), domain).value);
    if (d >= (out.eps - gap) * l && d <= (out.eps + gap) * l) ++out.passes;
  }
  out.pass_rate = static_cast<double>(out.passes) / static_cast<double>(trials);
  return out;
}

}  // namespace preftest
