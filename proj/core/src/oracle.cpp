#include "preftest/oracle.hpp"

#include <algorithm>
#include <string>

#include "preftest/error.hpp"

namespace preftest {

AgentHandle QueryOracle::draw_agent() {
  ++drawn_;
  return AgentHandle(this, static_cast<std::size_t>(rng_.below(hidden_.size())));
}

void QueryOracle::check_handle(const AgentHandle& agent) const {
  if (agent.owner_ != this) throw Error(Errc::ForeignHandle, "agent handle belongs to a different oracle");
}

bool QueryOracle::compare(const AgentHandle& agent, Alternative x, Alternative y) {
  check_handle(agent);
  const int m = hidden_.num_alternatives();
  if (x < 0 || x >= m || y < 0 || y >= m) {
    throw Error(Errc::UnknownAlternative, "compare(" + std::to_string(x) + ", " + std::to_string(y) +
                                              ") outside [0, " + std::to_string(m) + ")");
  }
  if (x == y) throw Error(Errc::SameAlternative, "compare needs two distinct alternatives");
  ++comparisons_;
  return hidden_.position(agent.agent_, x) < hidden_.position(agent.agent_, y);
}

void QueryOracle::sort(const AgentHandle& agent, std::span<Alternative> items, std::span<Alternative> buffer) {
  const std::size_t k = items.size();
  if (k < 2) return;
  const std::size_t mid = k / 2;
  sort(agent, items.first(mid), buffer.first(mid));
  sort(agent, items.subspan(mid), buffer.subspan(mid));
  std::size_t i = 0;
  std::size_t j = mid;
  std::size_t o = 0;
  while (i < mid && j < k) buffer[o++] = compare(agent, items[i], items[j]) ? items[i++] : items[j++];
  while (i < mid) buffer[o++] = items[i++];
  while (j < k) buffer[o++] = items[j++];
  std::copy(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(k), items.begin());
}

void QueryOracle::learn_restricted_order(const AgentHandle& agent, std::span<const Alternative> subset,
                                         std::span<Alternative> out, std::vector<Alternative>& scratch) {
  check_handle(agent);
  if (subset.empty()) throw Error(Errc::EmptySubset, "cannot learn an order over an empty subset");
  if (out.size() != subset.size()) throw Error(Errc::WrongLength, "output span must match the subset size");
  std::copy(subset.begin(), subset.end(), out.begin());
  if (subset.size() == 1) {
    const int m = hidden_.num_alternatives();
    if (out[0] < 0 || out[0] >= m) throw Error(Errc::UnknownAlternative, "alternative outside the profile");
    return;
  }
  scratch.resize(subset.size());
  sort(agent, out, scratch);
}

LinearOrder QueryOracle::learn_restricted_order(const AgentHandle& agent, std::span<const Alternative> subset) {
  std::vector<Alternative> out(subset.size());
  std::vector<Alternative> scratch;
  learn_restricted_order(agent, subset, out, scratch);
  // Rebuild as a LinearOrder over the subset's ids.
  std::vector<Alternative> full(out);
  std::vector<char> used(static_cast<std::size_t>(hidden_.num_alternatives()), 0);
  for (Alternative a : out) {
    if (used[static_cast<std::size_t>(a)]) throw Error(Errc::DuplicateAlternative, "subset repeats an alternative");
    used[static_cast<std::size_t>(a)] = 1;
  }
  for (std::size_t a = 0; a < used.size(); ++a) {
    if (!used[a]) full.push_back(static_cast<Alternative>(a));
  }
  return restrict(make_order(std::move(full)), subset);
}

std::uint64_t merge_sort_comparisons_bound(std::size_t k) {
  if (k < 2) return 0;
  const std::size_t mid = k / 2;
  return merge_sort_comparisons_bound(mid) + merge_sort_comparisons_bound(k - mid) + (k - 1);
}

}  // namespace preftest
