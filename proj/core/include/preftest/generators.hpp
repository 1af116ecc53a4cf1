#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "preftest/domain.hpp"
#include "preftest/order.hpp"
#include "preftest/rng.hpp"

namespace preftest {

struct GroundTruth {
  enum class Kind { Type1, Type2 };

  Kind kind = Kind::Type2;
  std::vector<std::size_t> inlier_indices;     // sorted
  std::vector<Alternative> kept_alternatives;  // sorted
  std::optional<LinearOrder> axis;             // over kept_alternatives, single-peaked only
};

struct GeneratedProfile {
  Profile profile;
  GroundTruth truth;
};

// i.i.d. uniform orders (Fisher-Yates per agent).
GeneratedProfile gen_uniform_profile(int m, std::size_t n, std::uint64_t seed);
LinearOrder gen_uniform_order(int m, Rng& rng);

// Uniform over the 2^(m-1) orders single-peaked w.r.t. `axis`: the order is
// built from the bottom by dropping the left or right end of the remaining axis
// interval with probability 1/2 each. Works for axes over any id set.
LinearOrder gen_sp_order_uniform(const LinearOrder& axis, Rng& rng);
LinearOrder gen_sp_order_uniform(const LinearOrder& axis, std::uint64_t seed);

enum class OutlierMode { RandomOutliers, AdversarialOutliers };

// Produces `count` outlier orders over {0..k-1} given the inliers' model.
using AdversaryFn =
    std::function<std::vector<LinearOrder>(const InDomainModel& model, int k, std::size_t count, Rng& rng)>;

// Shipped: "missing-order-flood" (every outlier is one order outside the
// model, chosen uniformly) and "uniform-complement" (each outlier uniform over
// orders outside the model). Registration replaces an existing entry.
void register_adversary(std::string name, AdversaryFn fn);
std::vector<std::string> adversary_names();
inline constexpr std::string_view kDefaultAdversary = "missing-order-flood";

// ceil((1-eps_v) n) inliers and ceil((1-eps_a) m) kept alternatives, both
// chosen uniformly. Inlier restrictions to the kept set come from the domain's
// model; outlier restrictions are uniform or adversarial. Deleted alternatives
// are inserted into every order at uniformly random positions.
GeneratedProfile gen_type1_profile(const Domain& domain, int m, std::size_t n, double eps_v, double eps_a,
                                   OutlierMode mode, std::uint64_t seed,
                                   std::string_view adversary = kDefaultAdversary);

// n / m! copies of every order, cycling through all orders in lexicographic
// order. DivisibilityError unless m! divides n.
Profile gen_prop3_profile(const Domain& domain, int m, std::size_t n);

struct LowerBoundPair {
  Profile p;
  Profile p_prime;  // p with its last order replaced by its first
};

// Alternatives a_j, b_j, c_j are 3j, 3j+1, 3j+2 for block j = 0..m_blocks-1.
LowerBoundPair gen_lb_sp_profile(int m_blocks, std::size_t n);
LowerBoundPair gen_lb_sc_profile(int m_blocks, std::size_t n);

}  // namespace preftest
