#pragma once

#include <optional>
#include <span>

#include "preftest/domain.hpp"

namespace preftest {

// axis_pos[a] is the axis position of alternative a. The order is single-peaked
// iff, removing alternatives from the bottom of the order upwards, each removed
// alternative is an endpoint of the remaining axis interval.
bool is_sp_ranking(std::span<const Alternative> ranking, std::span<const int> axis_pos);

bool is_sp_wrt_axis(const Profile& profile, const LinearOrder& axis);

// Witness axis if the profile is single-peaked. Outside-in axis construction:
// the alternatives ranked last (among those not yet placed) by some order must
// occupy the two ends of the unplaced block. Of an axis and its reverse, the
// lexicographically smaller one is returned.
std::optional<LinearOrder> recognize_sp(const Profile& profile);

class SinglePeakedDomain final : public Domain {
 public:
  std::string_view name() const override { return "single-peaked"; }
  DomainKind kind() const override { return DomainKind::SinglePeaked; }
  Rational content(int m) const override;  // 2^(m-1) / m!
  std::optional<Witness> recognize(const Profile& profile) const override;
  std::unique_ptr<InDomainModel> make_model(int m, Rng& rng) const override;
};

}  // namespace preftest
