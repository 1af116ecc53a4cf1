#include "preftest/single_crossing.hpp"

#include <algorithm>
#include <numeric>

#include "preftest/error.hpp"

namespace preftest {

namespace {

std::vector<int> ranks_of(const LinearOrder& o) {
  std::vector<int> r(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) r[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
  return r;
}

// Along `seq` (rank tables), does every pair flip at most once?
bool crosses_at_most_once(const std::vector<std::vector<int>>& seq, int m) {
  for (Alternative a = 0; a < m; ++a) {
    for (Alternative b = a + 1; b < m; ++b) {
      int flips = 0;
      for (std::size_t i = 1; i < seq.size(); ++i) {
        const bool before = seq[i - 1][static_cast<std::size_t>(a)] < seq[i - 1][static_cast<std::size_t>(b)];
        const bool now = seq[i][static_cast<std::size_t>(a)] < seq[i][static_cast<std::size_t>(b)];
        if (before != now && ++flips > 1) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_sc_wrt_voter_order(const Profile& profile, std::span<const std::size_t> voter_order) {
  if (voter_order.size() != profile.size()) {
    throw Error(Errc::WrongLength, "voter order must list every agent once");
  }
  std::vector<char> seen(profile.size(), 0);
  std::vector<std::vector<int>> seq;
  seq.reserve(voter_order.size());
  for (auto i : voter_order) {
    if (i >= profile.size() || seen[i]) throw Error(Errc::InvalidParameter, "voter order is not a permutation");
    seen[i] = 1;
    seq.push_back(ranks_of(profile[i]));
  }
  return crosses_at_most_once(seq, profile.num_alternatives());
}

std::optional<std::vector<std::size_t>> recognize_sc(const Profile& profile) {
  auto groups = group_distinct(profile);
  const std::size_t k = groups.size();

  std::vector<std::size_t> chain(k);
  std::iota(chain.begin(), chain.end(), std::size_t{0});
  if (k > 2) {
    // An end of the chain is an order farthest from any pivot; along the chain
    // the distance from that end then increases strictly.
    std::size_t v = 0;
    std::size_t best = 0;
    for (std::size_t g = 1; g < k; ++g) {
      const auto d = swap_distance(groups[0].order, groups[g].order);
      if (d > best) {
        best = d;
        v = g;
      }
    }
    std::vector<std::size_t> dist(k);
    for (std::size_t g = 0; g < k; ++g) dist[g] = swap_distance(groups[v].order, groups[g].order);
    std::stable_sort(chain.begin(), chain.end(), [&](std::size_t x, std::size_t y) { return dist[x] < dist[y]; });
    for (std::size_t i = 1; i < k; ++i) {
      if (dist[chain[i]] == dist[chain[i - 1]]) return std::nullopt;
    }
    std::vector<std::vector<int>> seq;
    for (auto g : chain) seq.push_back(ranks_of(groups[g].order));
    if (!crosses_at_most_once(seq, profile.num_alternatives())) return std::nullopt;
  }

  std::vector<std::size_t> forward;
  std::vector<std::size_t> backward;
  for (auto g : chain) forward.insert(forward.end(), groups[g].agents.begin(), groups[g].agents.end());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    backward.insert(backward.end(), groups[*it].agents.begin(), groups[*it].agents.end());
  }
  return std::min(forward, backward);
}

Rational SingleCrossingDomain::content(int m) const {
  if (m < 1) throw Error(Errc::InvalidParameter, "content needs m >= 1");
  if (m > kDomainSearchCap) throw Error(Errc::CapExceeded, "content supports m <= 20");
  const std::int64_t pairs = static_cast<std::int64_t>(m) * (m - 1) / 2;
  return Rational(pairs + 1, static_cast<std::int64_t>(factorial(m)));
}

std::optional<Witness> SingleCrossingDomain::recognize(const Profile& profile) const {
  auto order = recognize_sc(profile);
  if (!order) return std::nullopt;
  Witness w;
  w.kind = Witness::Kind::VoterOrder;
  w.voter_order = std::move(*order);
  return w;
}

std::vector<LinearOrder> random_sc_chain(int m, Rng& rng) {
  if (m < 1) throw Error(Errc::InvalidParameter, "chain needs m >= 1");
  std::vector<Alternative> cur(static_cast<std::size_t>(m));
  std::iota(cur.begin(), cur.end(), 0);
  rng.shuffle(std::span<Alternative>(cur));
  const auto start = ranks_of(make_order(cur));

  std::vector<LinearOrder> chain{make_order(cur)};
  std::vector<std::size_t> open;
  for (;;) {
    // Adjacent pairs still in their starting relative order.
    open.clear();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (start[static_cast<std::size_t>(cur[i])] < start[static_cast<std::size_t>(cur[i + 1])]) open.push_back(i);
    }
    if (open.empty()) break;
    const auto i = open[static_cast<std::size_t>(rng.below(open.size()))];
    std::swap(cur[i], cur[i + 1]);
    chain.push_back(make_order(cur));
  }
  return chain;
}

namespace {

class SingleCrossingModel final : public InDomainModel {
 public:
  explicit SingleCrossingModel(std::vector<LinearOrder> chain) : chain_(std::move(chain)), sorted_(chain_) {
    std::sort(sorted_.begin(), sorted_.end());
  }

  LinearOrder sample(Rng& rng) const override { return chain_[static_cast<std::size_t>(rng.below(chain_.size()))]; }

  bool contains(const LinearOrder& order) const override {
    return std::binary_search(sorted_.begin(), sorted_.end(), order);
  }

  std::vector<LinearOrder> members() const override { return sorted_; }

 private:
  std::vector<LinearOrder> chain_;
  std::vector<LinearOrder> sorted_;
};

}  // namespace

std::unique_ptr<InDomainModel> SingleCrossingDomain::make_model(int m, Rng& rng) const {
  return std::make_unique<SingleCrossingModel>(random_sc_chain(m, rng));
}

}  // namespace preftest
