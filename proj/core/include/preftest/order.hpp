#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace preftest {

// Alternatives are dense integer ids. Within a Profile they are exactly 0..m-1.
using Alternative = std::int32_t;

// A strict total order, most preferred first.
//
// Orders built with make_order() range over {0, ..., m-1}. restrict() keeps the
// original ids, so a restricted order ranges over the given subset instead.
class LinearOrder {
 public:
  LinearOrder() = default;

  std::size_t size() const { return ranking_.size(); }
  Alternative operator[](std::size_t rank) const { return ranking_[rank]; }
  std::span<const Alternative> ranking() const { return ranking_; }

  Alternative top() const { return ranking_.front(); }
  Alternative bottom() const { return ranking_.back(); }

  // Rank of `a` (0 = most preferred); UnknownAlternative if absent.
  std::size_t position(Alternative a) const;
  bool prefers(Alternative x, Alternative y) const { return position(x) < position(y); }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;
  friend auto operator<=>(const LinearOrder& a, const LinearOrder& b) {
    return a.ranking_ <=> b.ranking_;
  }

 private:
  friend LinearOrder make_order(std::vector<Alternative> ids);
  friend LinearOrder restrict(const LinearOrder& order, std::span<const Alternative> subset);
  friend LinearOrder reversed(const LinearOrder& order);
  friend class Profile;

  explicit LinearOrder(std::vector<Alternative> ranking) : ranking_(std::move(ranking)) {}

  std::vector<Alternative> ranking_;
};

// Validates that `ids` is a permutation of {0, ..., ids.size()-1}.
// Throws DuplicateAlternative, UnknownAlternative (out of range) or WrongLength (empty).
LinearOrder make_order(std::vector<Alternative> ids);

// Order-preserving projection onto `subset` (ids are kept).
// Throws EmptySubset or UnknownAlternative.
LinearOrder restrict(const LinearOrder& order, std::span<const Alternative> subset);

// The reversed order (used for axes); keeps ids.
LinearOrder reversed(const LinearOrder& order);

// Relabel alternative a to sigma[a]; sigma must be a permutation of 0..m-1.
LinearOrder relabel(const LinearOrder& order, std::span<const Alternative> sigma);

// All m! orders over {0..m-1} in lexicographic order of their rankings.
std::vector<LinearOrder> all_orders(int m);

// Index of a permutation of {0..k-1} in lexicographic order (Lehmer code).
std::size_t permutation_index(std::span<const Alternative> ranking);

std::uint64_t factorial(int k);

// Number of pairs the two orders rank differently (Kendall tau / swap distance).
// Both orders must range over the same ids 0..m-1.
std::size_t swap_distance(const LinearOrder& a, const LinearOrder& b);

// An ordered sequence of n >= 1 linear orders over {0, ..., m-1}.
//
// Immutable after construction; keeps a flat position table so that the
// comparison oracle answers in O(1).
class Profile {
 public:
  Profile(int num_alternatives, std::vector<LinearOrder> orders);

  int num_alternatives() const { return m_; }
  std::size_t size() const { return orders_.size(); }
  const LinearOrder& operator[](std::size_t agent) const { return orders_[agent]; }
  std::span<const LinearOrder> orders() const { return orders_; }

  // Rank of alternative `a` in agent's order.
  std::int32_t position(std::size_t agent, Alternative a) const {
    return positions_[agent * static_cast<std::size_t>(m_) + static_cast<std::size_t>(a)];
  }

  // Profile over the sorted subset, relabelled so that the i-th smallest id of
  // `subset` becomes alternative i.
  Profile restricted(std::span<const Alternative> subset) const;

  // Profile of the listed agents, in the listed order.
  Profile subprofile(std::span<const std::size_t> agents) const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.m_ == b.m_ && a.orders_ == b.orders_;
  }

 private:
  int m_;
  std::vector<LinearOrder> orders_;
  std::vector<std::int32_t> positions_;
};

// Distinct orders of a profile with the agents holding each one. Groups are
// sorted by their smallest agent index.
struct OrderGroup {
  LinearOrder order;
  std::vector<std::size_t> agents;
};
std::vector<OrderGroup> group_distinct(const Profile& profile);

// Profile made of one copy of each group's order, in group order.
Profile distinct_profile(const Profile& profile, std::span<const OrderGroup> groups);

}  // namespace preftest
