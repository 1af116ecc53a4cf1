#include "preftest/single_peaked.hpp"

#include <algorithm>
#include <numeric>

#include "preftest/error.hpp"
#include "preftest/generators.hpp"

namespace preftest {

bool is_sp_ranking(std::span<const Alternative> ranking, std::span<const int> axis_pos) {
  if (ranking.empty()) return true;
  int lo = 0;
  int hi = static_cast<int>(ranking.size()) - 1;
  for (std::size_t r = ranking.size() - 1; r > 0; --r) {
    const int p = axis_pos[static_cast<std::size_t>(ranking[r])];
    if (p == lo) {
      ++lo;
    } else if (p == hi) {
      --hi;
    } else {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<int> axis_positions(const LinearOrder& axis) {
  std::vector<int> pos(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) pos[static_cast<std::size_t>(axis[i])] = static_cast<int>(i);
  return pos;
}

// Outside-in construction. `left` grows inwards from the left end, `right`
// inwards from the right end; `free` marks alternatives not yet placed. Every
// triple is checked once, when its last member is placed, plus a lookahead
// against the unplaced block (which ends up between `left` and `right`).
class AxisSearch {
 public:
  AxisSearch(const std::vector<LinearOrder>& orders, int m) : m_(m), free_(static_cast<std::size_t>(m), 1) {
    ranks_.reserve(orders.size());
    for (const auto& o : orders) {
      std::vector<int> r(static_cast<std::size_t>(m));
      for (std::size_t i = 0; i < o.size(); ++i) r[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
      ranks_.push_back(std::move(r));
    }
  }

  std::optional<LinearOrder> run() {
    if (!search(true)) return std::nullopt;
    std::vector<Alternative> axis(left_);
    axis.insert(axis.end(), right_.rbegin(), right_.rend());
    std::vector<Alternative> rev(axis.rbegin(), axis.rend());
    return make_order(std::min(axis, rev));
  }

 private:
  int rank(std::size_t d, Alternative a) const { return ranks_[d][static_cast<std::size_t>(a)]; }

  // Worst-ranked free alternative of each order.
  std::vector<Alternative> last_set() const {
    std::vector<Alternative> out;
    for (std::size_t d = 0; d < ranks_.size(); ++d) {
      Alternative worst = -1;
      for (Alternative a = 0; a < m_; ++a) {
        if (free_[static_cast<std::size_t>(a)] && (worst < 0 || rank(d, a) > rank(d, worst))) worst = a;
      }
      if (std::find(out.begin(), out.end(), worst) == out.end()) out.push_back(worst);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // `mine` is the side p joins, `other` the opposite side. Both lists are
  // ordered outermost first.
  bool placeable(Alternative p, const std::vector<Alternative>& mine,
                 const std::vector<Alternative>& other) const {
    for (std::size_t d = 0; d < ranks_.size(); ++d) {
      const int rp = rank(d, p);
      int free_min = m_;
      int free_max = -1;
      for (Alternative u = 0; u < m_; ++u) {
        if (!free_[static_cast<std::size_t>(u)] || u == p) continue;
        free_min = std::min(free_min, rank(d, u));
        free_max = std::max(free_max, rank(d, u));
      }
      // (x, y, p) on my side: y is between x and p.
      for (std::size_t j = 1; j < mine.size(); ++j) {
        const int ry = rank(d, mine[j]);
        for (std::size_t i = 0; i < j; ++i) {
          if (ry > std::max(rank(d, mine[i]), rp)) return false;
        }
      }
      // (x, p, c): x on my side, c on the other side or still free.
      for (Alternative x : mine) {
        const int rx = rank(d, x);
        if (rp > rx) {
          for (Alternative c : other) {
            if (rp > rank(d, c)) return false;
          }
          if (free_max >= 0 && rp > free_min) return false;
        }
      }
      // (p, y, c): y on the other side inside c, or y free and c anywhere beyond.
      for (std::size_t i = 0; i < other.size(); ++i) {
        const int rc = rank(d, other[i]);
        for (std::size_t j = i + 1; j < other.size(); ++j) {
          if (rank(d, other[j]) > std::max(rp, rc)) return false;
        }
        if (free_max >= 0 && free_max > std::max(rp, rc)) return false;
      }
    }
    return true;
  }

  bool place(Alternative p, bool on_left) {
    auto& mine = on_left ? left_ : right_;
    const auto& other = on_left ? right_ : left_;
    if (!placeable(p, mine, other)) return false;
    mine.push_back(p);
    free_[static_cast<std::size_t>(p)] = 0;
    return true;
  }

  void unplace(Alternative p, bool on_left) {
    (on_left ? left_ : right_).pop_back();
    free_[static_cast<std::size_t>(p)] = 1;
  }

  bool search(bool first) {
    if (left_.size() + right_.size() == static_cast<std::size_t>(m_)) return true;
    const auto last = last_set();
    if (last.size() > 2) return false;
    if (last.size() == 1) {
      const Alternative x = last[0];
      for (bool side : {true, false}) {
        if (place(x, side)) {
          if (search(false)) return true;
          unplace(x, side);
        }
        if (first) break;  // the mirror image is equivalent
      }
      return false;
    }
    const Alternative x = last[0];
    const Alternative y = last[1];
    for (bool x_left : {true, false}) {
      if (place(x, x_left)) {
        if (place(y, !x_left)) {
          if (search(false)) return true;
          unplace(y, !x_left);
        }
        unplace(x, x_left);
      }
      if (first) break;
    }
    return false;
  }

  int m_;
  std::vector<std::vector<int>> ranks_;
  std::vector<char> free_;
  std::vector<Alternative> left_;
  std::vector<Alternative> right_;
};

}  // namespace

bool is_sp_wrt_axis(const Profile& profile, const LinearOrder& axis) {
  if (axis.size() != static_cast<std::size_t>(profile.num_alternatives())) {
    throw Error(Errc::WrongLength, "axis length differs from the number of alternatives");
  }
  const auto pos = axis_positions(axis);
  for (const auto& o : profile.orders()) {
    if (!is_sp_ranking(o.ranking(), pos)) return false;
  }
  return true;
}

std::optional<LinearOrder> recognize_sp(const Profile& profile) {
  std::vector<LinearOrder> distinct;
  for (auto& g : group_distinct(profile)) distinct.push_back(std::move(g.order));
  return AxisSearch(distinct, profile.num_alternatives()).run();
}

Rational SinglePeakedDomain::content(int m) const {
  if (m < 1) throw Error(Errc::InvalidParameter, "content needs m >= 1");
  if (m > kDomainSearchCap) throw Error(Errc::CapExceeded, "content supports m <= 20");
  return Rational(std::int64_t{1} << (m - 1), static_cast<std::int64_t>(factorial(m)));
}

std::optional<Witness> SinglePeakedDomain::recognize(const Profile& profile) const {
  auto axis = recognize_sp(profile);
  if (!axis) return std::nullopt;
  Witness w;
  w.kind = Witness::Kind::Axis;
  w.axis = std::move(*axis);
  return w;
}

namespace {

class SinglePeakedModel final : public InDomainModel {
 public:
  explicit SinglePeakedModel(LinearOrder axis) : axis_(std::move(axis)), pos_(axis_positions(axis_)) {}

  LinearOrder sample(Rng& rng) const override { return gen_sp_order_uniform(axis_, rng); }

  bool contains(const LinearOrder& order) const override {
    return order.size() == axis_.size() && is_sp_ranking(order.ranking(), pos_);
  }

  // Bit i of the mask picks which end of the remaining interval is dropped at
  // step i; the 2^(m-1) masks give the 2^(m-1) distinct orders.
  std::vector<LinearOrder> members() const override {
    const std::size_t m = axis_.size();
    std::vector<LinearOrder> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
      std::vector<Alternative> bottom_up;
      std::size_t lo = 0;
      std::size_t hi = m - 1;
      for (std::size_t step = 0; step + 1 < m; ++step) {
        bottom_up.push_back((mask >> step) & 1 ? axis_[hi--] : axis_[lo++]);
      }
      bottom_up.push_back(axis_[lo]);
      out.push_back(make_order(std::vector<Alternative>(bottom_up.rbegin(), bottom_up.rend())));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<LinearOrder> axis() const override { return axis_; }

 private:
  LinearOrder axis_;
  std::vector<int> pos_;
};

}  // namespace

std::unique_ptr<InDomainModel> SinglePeakedDomain::make_model(int m, Rng& rng) const {
  if (m < 1) throw Error(Errc::InvalidParameter, "model needs m >= 1");
  std::vector<Alternative> ids(static_cast<std::size_t>(m));
  std::iota(ids.begin(), ids.end(), 0);
  rng.shuffle(std::span<Alternative>(ids));
  return std::make_unique<SinglePeakedModel>(make_order(std::move(ids)));
}

}  // namespace preftest
