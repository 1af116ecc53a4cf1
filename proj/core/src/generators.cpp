#include "preftest/generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>

#include "preftest/error.hpp"
#include "preftest/numeric.hpp"

namespace preftest {

namespace {

void check_sizes(int m, std::size_t n) {
  if (m < 1) throw Error(Errc::InvalidParameter, "m must be at least 1");
  if (n < 1) throw Error(Errc::InvalidParameter, "n must be at least 1");
}

void check_fraction(double eps, const char* name) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::InvalidParameter, std::string(name) + " must lie in [0, 1)");
}

std::vector<Alternative> iota_ids(int m) {
  std::vector<Alternative> ids(static_cast<std::size_t>(m));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

template <class T>
std::vector<T> sorted_sample(std::size_t population, std::size_t count, Rng& rng) {
  std::vector<T> all(population);
  std::iota(all.begin(), all.end(), T{0});
  // Partial Fisher-Yates: the first `count` slots are a uniform subset.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(population - i));
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

LinearOrder outside_model(const InDomainModel& model, int k, Rng& rng) {
  // Rejection sampling; the acceptance rate is res(k) > 0.
  for (int attempt = 0; attempt < 1 << 20; ++attempt) {
    auto o = gen_uniform_order(k, rng);
    if (!model.contains(o)) return o;
  }
  throw Error(Errc::InvalidParameter, "adversary needs an order outside the domain model (is con(k) < 1?)");
}

std::vector<LinearOrder> missing_order_flood(const InDomainModel& model, int k, std::size_t count, Rng& rng) {
  if (count == 0) return {};
  return std::vector<LinearOrder>(count, outside_model(model, k, rng));
}

std::vector<LinearOrder> uniform_complement(const InDomainModel& model, int k, std::size_t count, Rng& rng) {
  std::vector<LinearOrder> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(outside_model(model, k, rng));
  return out;
}

struct Registry {
  std::mutex mu;
  std::map<std::string, AdversaryFn, std::less<>> fns{
      {"missing-order-flood", missing_order_flood},
      {"uniform-complement", uniform_complement},
  };
};

Registry& registry() {
  static Registry r;
  return r;
}

AdversaryFn find_adversary(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.fns.find(name);
  if (it == r.fns.end()) throw Error(Errc::InvalidParameter, "unknown adversary '" + std::string(name) + "'");
  return it->second;
}

// Builds the order of block patterns: `pattern` lists offsets into each block
// (0 = a, 1 = b, 2 = c), and blocks run in ascending or descending order.
LinearOrder block_order(int m_blocks, std::array<int, 3> pattern, bool descending) {
  std::vector<Alternative> ids;
  for (int j = 0; j < m_blocks; ++j) {
    const int block = descending ? m_blocks - 1 - j : j;
    for (int off : pattern) ids.push_back(3 * block + off);
  }
  return make_order(std::move(ids));
}

}  // namespace

LinearOrder gen_uniform_order(int m, Rng& rng) {
  auto ids = iota_ids(m);
  rng.shuffle(std::span<Alternative>(ids));
  return make_order(std::move(ids));
}

GeneratedProfile gen_uniform_profile(int m, std::size_t n, std::uint64_t seed) {
  check_sizes(m, n);
  Rng rng(seed);
  std::vector<LinearOrder> orders;
  orders.reserve(n);
  for (std::size_t i = 0; i < n; ++i) orders.push_back(gen_uniform_order(m, rng));
  GroundTruth truth;
  truth.kind = GroundTruth::Kind::Type2;
  truth.inlier_indices.resize(n);
  std::iota(truth.inlier_indices.begin(), truth.inlier_indices.end(), std::size_t{0});
  truth.kept_alternatives = iota_ids(m);
  return {Profile(m, std::move(orders)), std::move(truth)};
}

LinearOrder gen_sp_order_uniform(const LinearOrder& axis, Rng& rng) {
  const std::size_t m = axis.size();
  if (m == 0) throw Error(Errc::WrongLength, "empty axis");
  std::vector<Alternative> ranking(m);
  std::size_t lo = 0;
  std::size_t hi = m - 1;
  for (std::size_t r = m - 1; r > 0; --r) ranking[r] = rng.coin() ? axis[hi--] : axis[lo++];
  ranking[0] = axis[lo];
  std::vector<Alternative> ids(ranking.begin(), ranking.end());
  std::sort(ids.begin(), ids.end());
  if (ids.back() == static_cast<Alternative>(m - 1)) return make_order(std::move(ranking));
  // Sparse ids: extend to a full permutation with the subset on top, then project.
  std::vector<char> used(static_cast<std::size_t>(ids.back()) + 1, 0);
  for (Alternative a : ranking) used[static_cast<std::size_t>(a)] = 1;
  for (std::size_t a = 0; a < used.size(); ++a) {
    if (!used[a]) ranking.push_back(static_cast<Alternative>(a));
  }
  return restrict(make_order(std::move(ranking)), ids);
}

LinearOrder gen_sp_order_uniform(const LinearOrder& axis, std::uint64_t seed) {
  Rng rng(seed);
  return gen_sp_order_uniform(axis, rng);
}

void register_adversary(std::string name, AdversaryFn fn) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.fns[std::move(name)] = std::move(fn);
}

std::vector<std::string> adversary_names() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, fn] : r.fns) names.push_back(name);
  return names;
}

GeneratedProfile gen_type1_profile(const Domain& domain, int m, std::size_t n, double eps_v, double eps_a,
                                   OutlierMode mode, std::uint64_t seed, std::string_view adversary) {
  check_sizes(m, n);
  check_fraction(eps_v, "eps_v");
  check_fraction(eps_a, "eps_a");
  AdversaryFn adversary_fn;
  if (mode == OutlierMode::AdversarialOutliers) adversary_fn = find_adversary(adversary);

  Rng rng(seed);
  const auto k = static_cast<int>(ceil_count((1.0 - eps_a) * m));
  const std::size_t n_in = ceil_count((1.0 - eps_v) * static_cast<double>(n));

  auto kept = sorted_sample<Alternative>(static_cast<std::size_t>(m), static_cast<std::size_t>(k), rng);
  auto inliers = sorted_sample<std::size_t>(n, n_in, rng);
  auto model = domain.make_model(k, rng);
  if (!model) throw Error(Errc::UnsupportedDomain, "domain '" + std::string(domain.name()) + "' has no sampler");

  std::vector<char> is_inlier(n, 0);
  for (auto i : inliers) is_inlier[i] = 1;
  std::vector<Alternative> deleted;
  for (Alternative a = 0, j = 0; a < m; ++a) {
    if (j < k && kept[static_cast<std::size_t>(j)] == a) {
      ++j;
    } else {
      deleted.push_back(a);
    }
  }

  std::vector<LinearOrder> outliers;
  if (mode == OutlierMode::AdversarialOutliers) outliers = adversary_fn(*model, k, n - n_in, rng);

  std::vector<LinearOrder> orders;
  orders.reserve(n);
  std::size_t next_outlier = 0;
  std::vector<Alternative> ranking;
  for (std::size_t i = 0; i < n; ++i) {
    LinearOrder core;
    if (is_inlier[i]) {
      core = model->sample(rng);
    } else if (mode == OutlierMode::AdversarialOutliers) {
      core = outliers.at(next_outlier++);
    } else {
      core = gen_uniform_order(k, rng);
    }
    ranking.clear();
    for (Alternative local : core.ranking()) ranking.push_back(kept[static_cast<std::size_t>(local)]);
    for (Alternative d : deleted) {
      const auto pos = static_cast<std::ptrdiff_t>(rng.below(ranking.size() + 1));
      ranking.insert(ranking.begin() + pos, d);
    }
    orders.push_back(make_order(ranking));
  }

  GroundTruth truth;
  truth.kind = GroundTruth::Kind::Type1;
  truth.inlier_indices = std::move(inliers);
  if (auto axis = model->axis()) {
    std::vector<Alternative> full;
    for (Alternative local : axis->ranking()) full.push_back(kept[static_cast<std::size_t>(local)]);
    full.insert(full.end(), deleted.begin(), deleted.end());
    truth.axis = restrict(make_order(std::move(full)), kept);
  }
  truth.kept_alternatives = std::move(kept);
  return {Profile(m, std::move(orders)), std::move(truth)};
}

Profile gen_prop3_profile(const Domain& domain, int m, std::size_t n) {
  check_sizes(m, n);
  if (m > 10) throw Error(Errc::InstanceTooLarge, "gen_prop3_profile supports m <= 10");
  (void)con_value(domain, m);
  const auto f = static_cast<std::size_t>(factorial(m));
  if (n % f != 0) {
    throw Error(Errc::DivisibilityError, "n = " + std::to_string(n) + " is not divisible by m! = " + std::to_string(f));
  }
  const auto all = all_orders(m);
  std::vector<LinearOrder> orders;
  orders.reserve(n);
  for (std::size_t i = 0; i < n; ++i) orders.push_back(all[i % f]);
  return Profile(m, std::move(orders));
}

LowerBoundPair gen_lb_sp_profile(int m_blocks, std::size_t n) {
  if (m_blocks < 1) throw Error(Errc::InvalidParameter, "m_blocks must be at least 1");
  if (n < 4 || n % 2 != 0) throw Error(Errc::InvalidParameter, "n must be even and at least 4");
  const auto up = block_order(m_blocks, {0, 1, 2}, false);
  const auto down = block_order(m_blocks, {2, 1, 0}, true);
  std::vector<LinearOrder> orders(n / 2, up);
  orders.insert(orders.end(), n / 2 - 1, down);
  orders.push_back(block_order(m_blocks, {0, 2, 1}, false));
  auto primed = orders;
  primed.back() = primed.front();
  const int m = 3 * m_blocks;
  return {Profile(m, std::move(orders)), Profile(m, std::move(primed))};
}

LowerBoundPair gen_lb_sc_profile(int m_blocks, std::size_t n) {
  if (m_blocks < 1) throw Error(Errc::InvalidParameter, "m_blocks must be at least 1");
  if (n < 8 || n % 4 != 0) throw Error(Errc::InvalidParameter, "n must be divisible by 4 and at least 8");
  const std::size_t q = n / 4;
  std::vector<LinearOrder> orders;
  orders.insert(orders.end(), q, block_order(m_blocks, {0, 1, 2}, false));
  orders.insert(orders.end(), q, block_order(m_blocks, {0, 2, 1}, false));
  orders.insert(orders.end(), q, block_order(m_blocks, {2, 0, 1}, false));
  orders.insert(orders.end(), q - 1, block_order(m_blocks, {2, 1, 0}, false));
  orders.push_back(block_order(m_blocks, {1, 0, 2}, false));
  auto primed = orders;
  primed.back() = primed.front();
  const int m = 3 * m_blocks;
  return {Profile(m, std::move(orders)), Profile(m, std::move(primed))};
}

}  // namespace preftest
