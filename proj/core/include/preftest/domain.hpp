#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "preftest/order.hpp"
#include "preftest/rng.hpp"

namespace preftest {

using Rational = boost::rational<std::int64_t>;

// Certificate that a profile belongs to a domain.
struct Witness {
  enum class Kind { Axis, VoterOrder };

  Kind kind = Kind::Axis;
  LinearOrder axis;                       // Kind::Axis: the societal axis, left to right
  std::vector<std::size_t> voter_order;  // Kind::VoterOrder: agent indices
};

// A fixed in-domain structure over k alternatives {0..k-1}, such as one axis
// for single-peaked or one maximal chain for single-crossing. Every order it
// samples lies in members(), and any profile drawn from members() is in the
// domain.
class InDomainModel {
 public:
  virtual ~InDomainModel() = default;

  virtual LinearOrder sample(Rng& rng) const = 0;
  virtual bool contains(const LinearOrder& order) const = 0;
  virtual std::vector<LinearOrder> members() const = 0;
  virtual std::optional<LinearOrder> axis() const { return std::nullopt; }
};

enum class DomainKind { SinglePeaked, SingleCrossing, Custom };

// A neutral and normal preferential domain.
//
// Implementations must be restriction-closed (normal), invariant under
// relabelling of alternatives (neutral) and closed under deleting agents.
// content(m) is the largest fraction of the m! orders a profile in the domain
// can contain, with content(1) = 1.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::string_view name() const = 0;
  virtual DomainKind kind() const { return DomainKind::Custom; }
  virtual Rational content(int m) const = 0;
  virtual std::optional<Witness> recognize(const Profile& profile) const = 0;

  // Optional in-domain sampler; nullptr when the domain has none.
  virtual std::unique_ptr<InDomainModel> make_model(int m, Rng& rng) const;
};

const Domain& single_peaked();
const Domain& single_crossing();

// "single-peaked" or "single-crossing"; InvalidParameter otherwise.
const Domain& domain_by_name(std::string_view name);

inline bool accepts(const Domain& domain, const Profile& profile) {
  return domain.recognize(profile).has_value();
}

// Exact content and residue. InvalidParameter when m < 1.
Rational con_value(const Domain& domain, int m);
Rational res_value(const Domain& domain, int m);

inline constexpr int kDomainSearchCap = 20;

// Smallest m with con(m) < 1.
int m0(const Domain& domain);

// Smallest m with res(m) > eps_v, searching m <= kDomainSearchCap;
// NotFoundWithinCap beyond.
int m_eps(const Domain& domain, double eps_v);

// true iff res > eps, treating |res - eps| <= kEpsilonSlack as equal.
bool residue_exceeds(const Rational& res, double eps);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace preftest
