#pragma once

#include <optional>
#include <vector>

#include "preftest/domain.hpp"

namespace preftest {

// Witness voter order if the profile is single-crossing: along it every pair of
// alternatives changes relative order at most once. Copies of the same order
// are adjacent and in increasing agent index; of a witness and its reverse the
// lexicographically smaller one is returned.
std::optional<std::vector<std::size_t>> recognize_sc(const Profile& profile);

// Checks the single-crossing condition along a given agent sequence.
bool is_sc_wrt_voter_order(const Profile& profile, std::span<const std::size_t> voter_order);

class SingleCrossingDomain final : public Domain {
 public:
  std::string_view name() const override { return "single-crossing"; }
  DomainKind kind() const override { return DomainKind::SingleCrossing; }
  Rational content(int m) const override;  // (C(m,2) + 1) / m!
  std::optional<Witness> recognize(const Profile& profile) const override;
  std::unique_ptr<InDomainModel> make_model(int m, Rng& rng) const override;
};

// A maximal single-crossing chain of C(m,2)+1 orders: starts from a uniformly
// random order and repeatedly swaps a uniformly chosen adjacent pair that has
// not been swapped before, ending at the reverse of the start.
std::vector<LinearOrder> random_sc_chain(int m, Rng& rng);

}  // namespace preftest
