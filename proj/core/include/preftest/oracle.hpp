#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "preftest/order.hpp"
#include "preftest/rng.hpp"

namespace preftest {

class QueryOracle;

// An agent drawn from an oracle. The agent index is not exposed.
class AgentHandle {
 public:
  AgentHandle() = default;

 private:
  friend class QueryOracle;
  AgentHandle(const QueryOracle* owner, std::size_t agent) : owner_(owner), agent_(agent) {}

  const QueryOracle* owner_ = nullptr;
  std::size_t agent_ = 0;
};

// Hidden profile behind agent draws (uniform, with replacement) and pairwise
// comparison queries. Not thread-safe; use one oracle per trial. The profile
// must outlive the oracle.
class QueryOracle {
 public:
  QueryOracle(const Profile& hidden, std::uint64_t seed) : hidden_(hidden), rng_(seed) {}

  int num_alternatives() const { return hidden_.num_alternatives(); }

  AgentHandle draw_agent();

  // true iff the agent prefers x to y. SameAlternative when x == y,
  // UnknownAlternative when out of range, ForeignHandle for a handle from
  // another oracle.
  bool compare(const AgentHandle& agent, Alternative x, Alternative y);

  // The agent's order restricted to `subset`, learnt by top-down merge sort
  // (at most ceil(k log2 k) comparisons). The result keeps the subset's ids.
  LinearOrder learn_restricted_order(const AgentHandle& agent, std::span<const Alternative> subset);

  // Allocation-free variant: writes the learnt ranking into `out`
  // (out.size() == subset.size()) and uses `scratch` as merge buffer.
  void learn_restricted_order(const AgentHandle& agent, std::span<const Alternative> subset,
                              std::span<Alternative> out, std::vector<Alternative>& scratch);

  std::uint64_t query_count() const { return comparisons_; }
  std::uint64_t agents_drawn() const { return drawn_; }

 private:
  void check_handle(const AgentHandle& agent) const;
  void sort(const AgentHandle& agent, std::span<Alternative> items, std::span<Alternative> buffer);

  const Profile& hidden_;
  Rng rng_;
  std::uint64_t comparisons_ = 0;
  std::uint64_t drawn_ = 0;
};

// Worst-case comparisons of the merge sort used above: sum over merges of
// (left + right - 1). Never more than ceil(k log2 k).
std::uint64_t merge_sort_comparisons_bound(std::size_t k);

}  // namespace preftest
