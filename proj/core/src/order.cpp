#include "preftest/order.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>

#include "preftest/error.hpp"

namespace preftest {

std::size_t LinearOrder::position(Alternative a) const {
  const auto it = std::find(ranking_.begin(), ranking_.end(), a);
  if (it == ranking_.end()) {
    throw Error(Errc::UnknownAlternative, "alternative " + std::to_string(a) + " not in order");
  }
  return static_cast<std::size_t>(it - ranking_.begin());
}

LinearOrder make_order(std::vector<Alternative> ids) {
  if (ids.empty()) throw Error(Errc::WrongLength, "an order needs at least one alternative");
  const auto m = static_cast<Alternative>(ids.size());
  std::vector<char> seen(ids.size(), 0);
  for (Alternative a : ids) {
    if (a < 0 || a >= m) {
      throw Error(Errc::UnknownAlternative,
                  "alternative " + std::to_string(a) + " outside [0, " + std::to_string(m) + ")");
    }
    if (seen[static_cast<std::size_t>(a)]) {
      throw Error(Errc::DuplicateAlternative, "alternative " + std::to_string(a) + " repeated");
    }
    seen[static_cast<std::size_t>(a)] = 1;
  }
  return LinearOrder(std::move(ids));
}

LinearOrder restrict(const LinearOrder& order, std::span<const Alternative> subset) {
  if (subset.empty()) throw Error(Errc::EmptySubset, "cannot restrict to an empty subset");
  std::vector<Alternative> wanted(subset.begin(), subset.end());
  std::sort(wanted.begin(), wanted.end());
  if (std::adjacent_find(wanted.begin(), wanted.end()) != wanted.end()) {
    throw Error(Errc::DuplicateAlternative, "restriction subset has repeated alternatives");
  }
  std::vector<Alternative> out;
  out.reserve(wanted.size());
  for (Alternative a : order.ranking_) {
    if (std::binary_search(wanted.begin(), wanted.end(), a)) out.push_back(a);
  }
  if (out.size() != wanted.size()) {
    throw Error(Errc::UnknownAlternative, "restriction subset is not contained in the order");
  }
  return LinearOrder(std::move(out));
}

LinearOrder reversed(const LinearOrder& order) {
  return LinearOrder(std::vector<Alternative>(order.ranking_.rbegin(), order.ranking_.rend()));
}

LinearOrder relabel(const LinearOrder& order, std::span<const Alternative> sigma) {
  std::vector<Alternative> r;
  r.reserve(order.size());
  for (Alternative a : order.ranking()) r.push_back(sigma[static_cast<std::size_t>(a)]);
  return make_order(std::move(r));
}

std::vector<LinearOrder> all_orders(int m) {
  std::vector<Alternative> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  std::vector<LinearOrder> out;
  out.reserve(factorial(m));
  do {
    out.push_back(make_order(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t permutation_index(std::span<const Alternative> ranking) {
  const std::size_t k = ranking.size();
  if (k > 20) throw Error(Errc::CapExceeded, "permutation index needs k <= 20");
  std::uint32_t used = 0;
  std::size_t index = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto a = static_cast<std::uint32_t>(ranking[i]);
    const std::uint32_t below_unused = a - static_cast<std::uint32_t>(std::popcount(used & ((1U << a) - 1U)));
    used |= 1U << a;
    index = index * (k - i) + below_unused;
  }
  return index;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::size_t swap_distance(const LinearOrder& a, const LinearOrder& b) {
  const std::size_t m = a.size();
  std::vector<std::size_t> pos_b(m);
  for (std::size_t r = 0; r < m; ++r) pos_b[static_cast<std::size_t>(b[r])] = r;
  std::size_t d = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (pos_b[static_cast<std::size_t>(a[i])] > pos_b[static_cast<std::size_t>(a[j])]) ++d;
    }
  }
  return d;
}

Profile::Profile(int num_alternatives, std::vector<LinearOrder> orders)
    : m_(num_alternatives), orders_(std::move(orders)) {
  if (m_ < 1) throw Error(Errc::InvalidParameter, "profile needs m >= 1");
  if (orders_.empty()) throw Error(Errc::EmptyProfile, "profile needs n >= 1");
  const auto m = static_cast<std::size_t>(m_);
  positions_.assign(orders_.size() * m, -1);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto& r = orders_[i].ranking();
    if (r.size() != m) {
      throw Error(Errc::WrongLength, "order " + std::to_string(i) + " has " +
                                         std::to_string(r.size()) + " alternatives, expected " +
                                         std::to_string(m));
    }
    for (std::size_t rank = 0; rank < m; ++rank) {
      const Alternative a = r[rank];
      if (a < 0 || a >= m_) {
        throw Error(Errc::UnknownAlternative, "order " + std::to_string(i) +
                                                  " mentions alternative " + std::to_string(a));
      }
      auto& slot = positions_[i * m + static_cast<std::size_t>(a)];
      if (slot != -1) {
        throw Error(Errc::DuplicateAlternative,
                    "order " + std::to_string(i) + " repeats alternative " + std::to_string(a));
      }
      slot = static_cast<std::int32_t>(rank);
    }
  }
}

Profile Profile::restricted(std::span<const Alternative> subset) const {
  if (subset.empty()) throw Error(Errc::EmptySubset, "cannot restrict to an empty subset");
  std::vector<Alternative> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::DuplicateAlternative, "restriction subset has repeated alternatives");
  }
  if (sorted.front() < 0 || sorted.back() >= m_) {
    throw Error(Errc::UnknownAlternative, "restriction subset outside the alternative set");
  }
  std::vector<Alternative> local(static_cast<std::size_t>(m_), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    local[static_cast<std::size_t>(sorted[i])] = static_cast<Alternative>(i);
  }
  std::vector<LinearOrder> out;
  out.reserve(orders_.size());
  std::vector<Alternative> r;
  for (const auto& o : orders_) {
    r.clear();
    for (Alternative a : o.ranking()) {
      const Alternative l = local[static_cast<std::size_t>(a)];
      if (l >= 0) r.push_back(l);
    }
    out.push_back(LinearOrder(r));
  }
  return Profile(static_cast<int>(sorted.size()), std::move(out));
}

Profile Profile::subprofile(std::span<const std::size_t> agents) const {
  std::vector<LinearOrder> out;
  out.reserve(agents.size());
  for (std::size_t a : agents) out.push_back(orders_.at(a));
  return Profile(m_, std::move(out));
}

std::vector<OrderGroup> group_distinct(const Profile& profile) {
  std::map<std::span<const Alternative>, std::size_t,
           decltype([](std::span<const Alternative> a, std::span<const Alternative> b) {
             return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
           })>
      index;
  std::vector<OrderGroup> groups;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto key = profile[i].ranking();
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back(OrderGroup{profile[i], {}});
    groups[it->second].agents.push_back(i);
  }
  return groups;
}

Profile distinct_profile(const Profile& profile, std::span<const OrderGroup> groups) {
  std::vector<LinearOrder> orders;
  orders.reserve(groups.size());
  for (const auto& g : groups) orders.push_back(g.order);
  return Profile(profile.num_alternatives(), std::move(orders));
}

}  // namespace preftest
