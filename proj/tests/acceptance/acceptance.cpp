// Acceptance suite: one PASS/FAIL line per criterion. An optional argument
// runs only the criteria whose key contains it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "brute_force.hpp"
#include "preftest/distances.hpp"
#include "preftest/domain.hpp"
#include "preftest/experiment.hpp"
#include "preftest/generators.hpp"
#include "preftest/oracle.hpp"
#include "preftest/single_crossing.hpp"
#include "preftest/single_peaked.hpp"
#include "preftest/testers.hpp"

using namespace preftest;

namespace {

// Pinned tolerances.
constexpr double kCensusSeconds = 10.0;
constexpr double kDistanceSeconds = 120.0;
constexpr std::size_t kDistanceProfiles = 5000;
constexpr std::size_t kTrialsPerKind = 500;
constexpr double kErrorFactor = 2.0;  // empirical error <= 2 delta
constexpr double kTesterSeconds = 600.0;
constexpr std::size_t kWorstWorstTrials = 200;
constexpr double kWorstWorstSeconds = 300.0;
constexpr double kFig1Reach = 0.65;
constexpr double kFig2Reach = 0.55;
constexpr double kFig3Reach = 0.40;
constexpr double kFigureSeconds = 900.0;
constexpr double kChiSquaredLevel = 0.01;
constexpr int kChiSquaredSeeds = 20;
constexpr std::size_t kChiSquaredSamples = 600;

// Profiles per input kind; each is queried by kTrialsPerKind / kProfilePool oracles.
constexpr std::size_t kProfilePool = 50;

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string& key, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", key.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ceil(k log2 k), the merge-sort budget for k items.
std::uint64_t sort_budget(std::size_t k) {
  if (k < 2) return 0;
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(k) * std::log2(static_cast<double>(k)) - 1e-9));
}

// Budget tally over every tester trial of the suite.
struct BudgetTally {
  std::size_t trials = 0;
  std::size_t violations = 0;
} budgets;

enum class Algo { Alg1, Worst, AnyEps, WorstWorst, Alt, Combined };

// k is the number of alternatives each agent's order is learnt over
// (m(eps) for any-eps, m for worst-worst).
std::uint64_t budget_bound(Algo algo, const Verdict& v, int k) {
  switch (algo) {
    case Algo::Alg1:
    case Algo::Worst:
      return 6 * v.sample_size;
    case Algo::AnyEps:
    case Algo::WorstWorst:
      return v.sample_size * sort_budget(static_cast<std::size_t>(k));
    case Algo::Alt:
    case Algo::Combined:
      return v.sample_size * sort_budget(v.secondary_size);
  }
  return 0;
}

struct Kind {
  std::string label;
  int truth;  // expected decision
  std::function<Profile(std::uint64_t)> make;
};

struct Case {
  std::string label;
  Algo algo;
  std::function<Verdict(QueryOracle&, Rng&)> run;
};

// Runs kTrialsPerKind trials on each kind; returns false if any kind errs
// more than kErrorFactor * delta.
bool run_case(const Case& c, const std::vector<Kind>& kinds, double delta, int m, std::uint64_t seed,
              std::string& detail) {
  bool ok = true;
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    const auto& kind = kinds[ki];
    std::size_t errors = 0;
    const std::size_t per_profile = kTrialsPerKind / kProfilePool;
    for (std::size_t pi = 0; pi < kProfilePool; ++pi) {
      const auto profile = kind.make(derive_seed(seed, ki, pi));
      for (std::size_t s = 0; s < per_profile; ++s) {
        const auto trial_seed = derive_seed(seed, ki, pi, s + 1);
        QueryOracle oracle(profile, trial_seed);
        Rng rng(splitmix64(trial_seed));
        const auto v = c.run(oracle, rng);
        errors += v.decision != kind.truth;
        ++budgets.trials;
        const auto expected = budget_bound(c.algo, v, m);
        if (v.queries > expected || v.budget != expected) ++budgets.violations;
      }
    }
    const double rate = static_cast<double>(errors) / static_cast<double>(per_profile * kProfilePool);
    const bool kind_ok = rate <= kErrorFactor * delta;
    ok = ok && kind_ok;
    detail += fmt(" %s[%s d=%.2f]=%.3f", c.label.c_str(), kind.label.c_str(), delta, rate);
  }
  return ok;
}

// ---------------------------------------------------------------------------

std::size_t max_accepted_subset(const Domain& d, const std::vector<LinearOrder>& all, std::vector<LinearOrder>& cur,
                                std::size_t from) {
  std::size_t best = cur.size();
  for (std::size_t i = from; i < all.size(); ++i) {
    cur.push_back(all[i]);
    if (accepts(d, Profile(static_cast<int>(all[i].size()), cur))) {
      best = std::max(best, max_accepted_subset(d, all, cur, i + 1));
    }
    cur.pop_back();
  }
  return best;
}

void census() {
  const auto start = Clock::now();
  std::string detail;
  bool ok = true;
  for (int m : {3, 4}) {
    std::vector<LinearOrder> cur;
    const auto sp = max_accepted_subset(single_peaked(), all_orders(m), cur, 0);
    const std::size_t want = m == 3 ? 4 : 8;
    ok = ok && sp == want;
    detail += fmt("m=%d max single-peaked set %zu (want %zu); ", m, sp, want);
  }
  const double secs = seconds_since(start);
  ok = ok && secs < kCensusSeconds;
  detail += fmt("limit %.0fs", kCensusSeconds);
  report(ok, "census", detail, start);
}

Profile with_counts(int m, std::vector<std::pair<std::vector<Alternative>, std::size_t>> spec) {
  std::vector<LinearOrder> orders;
  for (auto& [r, c] : spec) orders.insert(orders.end(), c, make_order(r));
  return Profile(m, std::move(orders));
}

void distance_exactness() {
  const auto start = Clock::now();
  const std::size_t n = 10;
  const auto one = with_counts(3, {{{0, 1, 2}, n / 2}, {{0, 2, 1}, n / 2 - 1}, {{2, 1, 0}, 1}});
  const auto two = with_counts(3, {{{0, 1, 2}, n / 2}, {{0, 2, 1}, n / 2 - 2}, {{2, 1, 0}, 2}});
  const auto d1 = pref_distance(one, single_peaked()).value;
  const auto d2 = pref_distance(two, single_peaked()).value;
  bool ok = d1 == 1 && d2 == 2;

  Rng rng(20240611);
  std::size_t mismatches = 0, brute_mismatches = 0;
  const brute::Accept sp = [](const Profile& q) { return brute::is_sp(q); };
  for (std::size_t i = 0; i < kDistanceProfiles; ++i) {
    const int m = 1 + static_cast<int>(rng.below(4));
    const std::size_t len = 1 + rng.below(8);
    const auto axis = gen_uniform_order(m, rng);
    std::vector<LinearOrder> orders;
    for (std::size_t a = 0; a < len; ++a) {
      orders.push_back(rng.coin() ? gen_uniform_order(m, rng) : gen_sp_order_uniform(axis, rng));
    }
    const Profile p(m, std::move(orders));
    const auto axis_value = pref_distance(p, single_peaked(), DistanceMethod::AxisEnum).value;
    const auto subset_value = pref_distance(p, single_peaked(), DistanceMethod::SubsetEnum).value;
    mismatches += axis_value != subset_value;
    brute_mismatches += axis_value != brute::pref_distance(p, sp);
  }
  const double secs = seconds_since(start);
  ok = ok && mismatches == 0 && brute_mismatches == 0 && secs < kDistanceSeconds;
  report(ok, "distance_exactness",
         fmt("examples %zu,%zu (want 1,2); %zu profiles: axis/subset mismatches %zu, brute-force mismatches %zu",
             d1, d2, kDistanceProfiles, mismatches, brute_mismatches),
         start);
}

// ---------------------------------------------------------------------------

Kind uniform_kind(int m, std::size_t n) {
  return {"uniform", 0, [m, n](std::uint64_t s) { return gen_uniform_profile(m, n, s).profile; }};
}

Kind type1_kind(const std::string& label, int m, std::size_t n, double eps_v, double eps_a, OutlierMode mode,
                std::string adversary = std::string(kDefaultAdversary)) {
  return {label, 1, [=](std::uint64_t s) {
            return gen_type1_profile(single_peaked(), m, n, eps_v, eps_a, mode, s, adversary).profile;
          }};
}

TesterParams params_of(double eps_v, double eps_a, double delta) {
  TesterParams p;
  p.eps_v = eps_v;
  p.eps_a = eps_a;
  p.delta = delta;
  return p;
}

void tester_error_bounds() {
  const auto start = Clock::now();
  const auto& sp = single_peaked();
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1000;

  for (const double delta : {0.05, 0.01}) {
    for (const double eps : {0.1, 0.3}) {
      const auto p = params_of(eps, 0.0, delta);
      const std::size_t n = std::max<std::size_t>(2000, 2 * sample_size_alg1(eps, delta));
      ok &= run_case({fmt("alg1 e=%.1f", eps), Algo::Alg1, [p](QueryOracle& o, Rng&) { return test_random_outliers(o, single_peaked(), p); }},
                     {uniform_kind(3, n), type1_kind("random", 3, n, eps, 0.0, OutlierMode::RandomOutliers)}, delta, 3,
                     ++seed, detail);
    }
    for (const double eps : {0.1, 0.3}) {
      const auto p = params_of(eps, 0.0, delta);
      const std::size_t n = std::max<std::size_t>(2000, 2 * sample_size_worst_small_eps(sp, eps, delta));
      ok &= run_case(
          {fmt("worst e=%.1f", eps), Algo::Worst, [p](QueryOracle& o, Rng&) { return test_worst_outliers_small_eps(o, single_peaked(), p); }},
          {uniform_kind(3, n), type1_kind("flood", 3, n, eps, 0.0, OutlierMode::AdversarialOutliers),
           type1_kind("complement", 3, n, eps, 0.0, OutlierMode::AdversarialOutliers, "uniform-complement")},
          delta, 3, ++seed, detail);
    }
    {
      const double eps = 0.4;
      const auto p = params_of(eps, 0.0, delta);
      const int k = m_eps(sp, eps);
      const std::size_t n = std::max<std::size_t>(2000, 2 * sample_size_any_eps(sp, eps, delta));
      ok &= run_case(
          {fmt("any-eps e=%.1f", eps), Algo::AnyEps, [p](QueryOracle& o, Rng&) { return test_worst_outliers_any_eps(o, single_peaked(), p); }},
          {uniform_kind(k, n), type1_kind("flood", k, n, eps, 0.0, OutlierMode::AdversarialOutliers),
           type1_kind("complement", k, n, eps, 0.0, OutlierMode::AdversarialOutliers, "uniform-complement")},
          delta, k, ++seed, detail);
    }
    for (const double eps_a : {0.1, 0.3}) {
      const auto p = params_of(0.0, eps_a, delta);
      ok &= run_case({fmt("alt ea=%.1f", eps_a), Algo::Alt,
                      [p](QueryOracle& o, Rng& r) { return test_alt_outliers(o, single_peaked(), p, r); }},
                     {uniform_kind(9, 2000), type1_kind("alt-outliers", 9, 2000, 0.0, eps_a, OutlierMode::RandomOutliers)},
                     delta, 9, ++seed, detail);
    }
    {
      const auto p = params_of(0.2, 0.2, delta);
      ok &= run_case({"combined ev=ea=0.2", Algo::Combined,
                      [p](QueryOracle& o, Rng& r) { return test_combined_outliers(o, single_peaked(), p, r, false); }},
                     {uniform_kind(10, 2000), type1_kind("both", 10, 2000, 0.2, 0.2, OutlierMode::RandomOutliers)},
                     delta, 10, ++seed, detail);
    }
  }
  const double secs = seconds_since(start);
  ok = ok && secs < kTesterSeconds;
  report(ok, "tester_error_bounds", fmt("%zu trials per kind, error <= %.0f delta;", kTrialsPerKind, kErrorFactor) + detail,
         start);
}

void worst_worst() {
  const auto start = Clock::now();
  const double delta = 0.05;
  auto p = params_of(0.0, 0.0, delta);
  p.eps_v_prime = 0.5;
  bool ok = true;
  std::string detail;

  // Every order equally often: distance n/3 at m = 3 and 2n/3 at m = 4.
  const Kind in_domain{"in-domain", 1, [](std::uint64_t s) {
                         return gen_type1_profile(single_peaked(), 3, 2000, 0.0, 0.0, OutlierMode::RandomOutliers, s)
                             .profile;
                       }};
  const Kind flood3{"flood-m3", 0, [](std::uint64_t) { return gen_prop3_profile(single_peaked(), 3, 600); }};
  const Kind flood4{"flood-m4", 0, [](std::uint64_t) { return gen_prop3_profile(single_peaked(), 4, 2400); }};
  const Case c{"worst-worst", Algo::WorstWorst,
               [p](QueryOracle& o, Rng&) { return test_worst_worst_pref(o, single_peaked(), p); }};

  std::uint64_t seed = 5000;
  for (const auto* kind : {&in_domain, &flood3, &flood4}) {
    std::size_t errors = 0;
    const int m = kind == &flood4 ? 4 : 3;
    for (std::size_t t = 0; t < kWorstWorstTrials; ++t) {
      const auto profile = kind->make(derive_seed(seed, t));
      QueryOracle oracle(profile, derive_seed(seed, t, 1));
      Rng rng(0);
      const auto v = c.run(oracle, rng);
      errors += v.decision != kind->truth;
      ++budgets.trials;
      const auto expected = budget_bound(Algo::WorstWorst, v, m);
      if (v.queries > expected || v.budget != expected) ++budgets.violations;
    }
    ++seed;
    const double rate = static_cast<double>(errors) / static_cast<double>(kWorstWorstTrials);
    ok = ok && rate <= kErrorFactor * delta;
    detail += fmt(" error[%s]=%.3f", kind->label.c_str(), rate);
  }

  // Subsample concentration with gap (eps' - eps) / 4, the gap behind l.
  const double gap = 0.125;
  for (const auto* kind : {&in_domain, &flood3}) {
    const auto profile = kind->make(77);
    const auto check = check_lemma_subsample(profile, single_peaked(), gap, delta, kWorstWorstTrials, 99);
    ok = ok && check.pass_rate >= 1.0 - kErrorFactor * delta;
    detail += fmt(" subsample[%s] l=%zu pass=%.3f", kind->label.c_str(), check.sample_size, check.pass_rate);
  }
  const double secs = seconds_since(start);
  ok = ok && secs < kWorstWorstSeconds;
  report(ok, "worst_worst", fmt("%zu trials per side, delta=%.2f;", kWorstWorstTrials, delta) + detail, start);
}

// ---------------------------------------------------------------------------

void adversarial_fixtures() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  const brute::Accept sp = [](const Profile& q) { return brute::is_sp(q); };
  const brute::Accept sc = [](const Profile& q) { return brute::is_sc(q); };
  for (int blocks : {1, 2}) {
    const auto lsp = gen_lb_sp_profile(blocks, 8);
    const auto lsc = gen_lb_sc_profile(blocks, 8);
    const bool sp_ok = recognize_sp(lsp.p_prime).has_value() && !recognize_sp(lsp.p).has_value();
    const bool sc_ok = recognize_sc(lsc.p_prime).has_value() && !recognize_sc(lsc.p).has_value();
    const auto sp_alt = brute::alt_distance(lsp.p, sp);
    const auto sc_alt = brute::alt_distance(lsc.p, sc);
    const auto sp_alt_lib = alt_distance(lsp.p, single_peaked()).value;
    const auto sc_alt_lib = alt_distance(lsc.p, single_crossing()).value;
    const auto want = static_cast<std::size_t>(blocks);
    const bool row_ok = sp_ok && sc_ok && sp_alt == want && sc_alt == want && sp_alt_lib == want && sc_alt_lib == want;
    ok = ok && row_ok;
    detail += fmt(" blocks=%d: P' accepted / P rejected sp=%s sc=%s, alt_distance sp=%zu sc=%zu (brute %zu,%zu);", blocks,
                  sp_ok ? "yes" : "no", sc_ok ? "yes" : "no", sp_alt_lib, sc_alt_lib, sp_alt, sc_alt);
  }
  report(ok, "adversarial_fixtures", detail, start);
}

void cyclic_profile_indistinguishable() {
  const auto start = Clock::now();
  const auto profile = gen_prop3_profile(single_peaked(), 3, 600);
  const boost::math::chi_squared dist(5.0);
  double min_p = 1.0;
  int rejections = 0;
  for (int seed = 0; seed < kChiSquaredSeeds; ++seed) {
    Rng rng(derive_seed(0x9e3779b9, static_cast<std::uint64_t>(seed)));
    double table[2][6] = {};
    for (std::size_t i = 0; i < kChiSquaredSamples; ++i) {
      const auto agent = rng.below(profile.size());
      table[0][permutation_index(profile[agent].ranking())] += 1;
      table[1][permutation_index(gen_uniform_order(3, rng).ranking())] += 1;
    }
    const double total = 2.0 * kChiSquaredSamples;
    double stat = 0.0;
    for (int c = 0; c < 6; ++c) {
      const double col = table[0][c] + table[1][c];
      for (int r = 0; r < 2; ++r) {
        const double expected = col * kChiSquaredSamples / total;
        if (expected > 0) stat += (table[r][c] - expected) * (table[r][c] - expected) / expected;
      }
    }
    const double pvalue = boost::math::cdf(boost::math::complement(dist, stat));
    min_p = std::min(min_p, pvalue);
    rejections += pvalue < kChiSquaredLevel;
  }
  report(rejections == 0, "cyclic_profile_indistinguishable",
         fmt("%d seeds x %zu samples per side, rejections at p=%.2f: %d, smallest p-value %.4f", kChiSquaredSeeds,
             kChiSquaredSamples, kChiSquaredLevel, rejections, min_p),
         start);
}

// ---------------------------------------------------------------------------

void figures() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& [scenario, bound] : std::vector<std::pair<Scenario, double>>{
           {Scenario::Fig1Alg1, kFig1Reach}, {Scenario::Fig2WorstCase, kFig2Reach}, {Scenario::Fig3AltOutliers, kFig3Reach}}) {
    const auto fig_start = Clock::now();
    const auto config = preset(scenario, false);
    const auto result = run_experiment(config);
    for (const auto& r : result.records) {
      ++budgets.trials;
      budgets.violations += r.queries > r.budget;
    }
    detail += " " + scenario_name(scenario) + ":";
    for (const double eps : config.eps_list) {
      const auto reach = reach_fraction(result.summary, eps, 1.0 - config.delta);
      const bool eps_ok = reach.has_value() && *reach <= bound + 1e-9;
      ok = ok && eps_ok;
      if (reach) {
        detail += fmt(" %.2f->%.2f", eps, *reach);
      } else {
        detail += fmt(" %.2f->never", eps);
      }
    }
    detail += fmt(" (<= %.2f, %.0fs);", bound, seconds_since(fig_start));
  }
  const double secs = seconds_since(start);
  ok = ok && secs < kFigureSeconds;
  report(ok, "figures", "desk scale, first fraction with rho >= 1-delta per eps;" + detail, start);
}

// Checks the trials of the criteria already run in this process, plus its
// own sweep over every tester so that it also stands alone.
void query_budgets() {
  const auto start = Clock::now();
  const std::size_t before = budgets.trials;
  constexpr std::size_t kSweepTrials = 100;
  struct Sweep {
    Algo algo;
    int m;
    int k;
    double eps_v, eps_a;
    bool alt_outliers;
  };
  const std::vector<Sweep> sweeps = {
      {Algo::Alg1, 3, 3, 0.1, 0.0, false},       {Algo::Alg1, 6, 3, 0.4, 0.0, false},
      {Algo::Worst, 3, 3, 0.2, 0.0, false},      {Algo::Worst, 5, 3, 0.3, 0.0, false},
      {Algo::AnyEps, 4, 4, 0.4, 0.0, false},     {Algo::AnyEps, 6, 5, 0.7, 0.0, false},
      {Algo::WorstWorst, 3, 3, 0.0, 0.0, false}, {Algo::WorstWorst, 5, 5, 0.0, 0.0, false},
      {Algo::Alt, 9, 0, 0.0, 0.2, true},         {Algo::Alt, 12, 0, 0.0, 0.4, true},
      {Algo::Combined, 10, 0, 0.2, 0.2, true},   {Algo::Combined, 10, 0, 0.1, 0.3, true},
  };
  std::uint64_t seed = 9000;
  for (const auto& sw : sweeps) {
    auto p = params_of(sw.eps_v, sw.eps_a, 0.05);
    p.eps_v_prime = 0.5;
    for (std::size_t t = 0; t < kSweepTrials; ++t) {
      const auto s = derive_seed(seed, t);
      const auto profile =
          t % 2 == 0 ? gen_uniform_profile(sw.m, 1000, s).profile
                     : gen_type1_profile(single_peaked(), sw.m, 1000, sw.eps_v, sw.eps_a, OutlierMode::RandomOutliers, s)
                           .profile;
      QueryOracle oracle(profile, s + 1);
      Rng rng(s + 2);
      Verdict v;
      switch (sw.algo) {
        case Algo::Alg1: v = test_random_outliers(oracle, single_peaked(), p); break;
        case Algo::Worst: v = test_worst_outliers_small_eps(oracle, single_peaked(), p); break;
        case Algo::AnyEps: v = test_worst_outliers_any_eps(oracle, single_peaked(), p); break;
        case Algo::WorstWorst: v = test_worst_worst_pref(oracle, single_peaked(), p); break;
        case Algo::Alt: v = test_alt_outliers(oracle, single_peaked(), p, rng); break;
        case Algo::Combined: v = test_combined_outliers(oracle, single_peaked(), p, rng, t % 4 == 1); break;
      }
      ++budgets.trials;
      const auto expected = budget_bound(sw.algo, v, sw.k);
      if (v.queries > expected || v.budget != expected) ++budgets.violations;
    }
    ++seed;
  }
  report(budgets.violations == 0, "query_budgets",
         fmt("%zu trials checked (%zu from this sweep), %zu over budget", budgets.trials, budgets.trials - before,
             budgets.violations),
         start);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"census", census},
      {"distance_exactness", distance_exactness},
      {"tester_error_bounds", tester_error_bounds},
      {"worst_worst", worst_worst},
      {"figures", figures},
      {"query_budgets", query_budgets},
      {"adversarial_fixtures", adversarial_fixtures},
      {"cyclic_profile_indistinguishable", cyclic_profile_indistinguishable},
  };
  for (const auto& [key, fn] : criteria) {
    if (key.find(filter) == std::string::npos) continue;
    try {
      fn();
    } catch (const std::exception& e) {
      report(false, key, std::string("exception: ") + e.what(), Clock::now());
    }
  }
  return failures == 0 ? 0 : 1;
}
