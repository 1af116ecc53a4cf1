#pragma once

#include <cmath>
#include <cstddef>

namespace preftest {

// Sample sizes and counts such as ceil((1-eps)*n) are computed in floating
// point; values within this slack of an integer are treated as that integer,
// so ln(6/(6/e)) * 72 gives 72 and not 73.
inline constexpr double kRoundingSlack = 1e-9;

// Comparisons of a user-supplied epsilon against an exact residue (e.g.
// eps_v = 1/3 vs res = 1/3) treat differences below this as equality.
inline constexpr double kEpsilonSlack = 1e-12;

inline std::size_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::size_t>(std::ceil(x - kRoundingSlack));
}

}  // namespace preftest
