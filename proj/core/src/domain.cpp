#include "preftest/domain.hpp"

#include <string>

#include "preftest/error.hpp"
#include "preftest/numeric.hpp"
#include "preftest/single_crossing.hpp"
#include "preftest/single_peaked.hpp"

namespace preftest {

std::unique_ptr<InDomainModel> Domain::make_model(int, Rng&) const { return nullptr; }

const Domain& single_peaked() {
  static const SinglePeakedDomain domain;
  return domain;
}

const Domain& single_crossing() {
  static const SingleCrossingDomain domain;
  return domain;
}

const Domain& domain_by_name(std::string_view name) {
  if (name == "single-peaked" || name == "sp") return single_peaked();
  if (name == "single-crossing" || name == "sc") return single_crossing();
  throw Error(Errc::InvalidParameter, "unknown domain '" + std::string(name) +
                                          "' (expected single-peaked or single-crossing)");
}

Rational con_value(const Domain& domain, int m) {
  if (m < 1) throw Error(Errc::InvalidParameter, "content needs m >= 1");
  if (m == 1) return Rational(1);
  return domain.content(m);
}

Rational res_value(const Domain& domain, int m) { return Rational(1) - con_value(domain, m); }

int m0(const Domain& domain) {
  for (int m = 1; m <= kDomainSearchCap; ++m) {
    if (con_value(domain, m) < Rational(1)) return m;
  }
  throw Error(Errc::NotFoundWithinCap, "content stays 1 up to m = " +
                                           std::to_string(kDomainSearchCap));
}

bool residue_exceeds(const Rational& res, double eps) {
  return to_double(res) > eps + kEpsilonSlack;
}

int m_eps(const Domain& domain, double eps_v) {
  if (!(eps_v >= 0.0 && eps_v < 1.0)) {
    throw Error(Errc::InvalidParameter, "eps_v must lie in [0, 1)");
  }
  for (int m = 1; m <= kDomainSearchCap; ++m) {
    if (residue_exceeds(res_value(domain, m), eps_v)) return m;
  }
  throw Error(Errc::NotFoundWithinCap, "no m <= " + std::to_string(kDomainSearchCap) +
                                           " has residue above " + std::to_string(eps_v));
}

}  // namespace preftest
