#include "preftest/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "preftest/domain.hpp"
#include "preftest/error.hpp"
#include "preftest/generators.hpp"
#include "preftest/numeric.hpp"
#include "preftest/oracle.hpp"
#include "preftest/testers.hpp"

namespace preftest {

namespace {

enum class Tester { Alg1, Worst, AnyEps, WorstWorst, Alt, Combined };

Tester tester_of(const ExperimentConfig& c) {
  switch (c.scenario) {
    case Scenario::Fig1Alg1: return Tester::Alg1;
    case Scenario::Fig2WorstCase: return Tester::Worst;
    case Scenario::Fig3AltOutliers: return Tester::Alt;
    case Scenario::Custom: break;
  }
  if (c.tester == "alg1") return Tester::Alg1;
  if (c.tester == "worst") return Tester::Worst;
  if (c.tester == "any-eps") return Tester::AnyEps;
  if (c.tester == "worst-worst") return Tester::WorstWorst;
  if (c.tester == "alt") return Tester::Alt;
  if (c.tester == "combined") return Tester::Combined;
  throw Error(Errc::InvalidParameter, "unknown tester '" + c.tester + "'");
}

bool eps_is_alternative(Tester t) { return t == Tester::Alt; }

TesterParams params_for(const ExperimentConfig& c, Tester t, double eps) {
  TesterParams p;
  p.delta = c.delta;
  p.eps_v_prime = c.eps_v_prime;
  if (eps_is_alternative(t)) {
    p.eps_a = eps;
  } else {
    p.eps_v = eps;
    if (t == Tester::Combined) p.eps_a = eps;
  }
  return p;
}

// Number of agents the tester draws at fraction 1.
std::size_t full_size(const ExperimentConfig& c, const Domain& d, Tester t, const TesterParams& p) {
  switch (t) {
    case Tester::Alg1: return sample_size_random_outliers(d, p.eps_v, p.delta);
    case Tester::Worst: return sample_size_worst_small_eps(d, p.eps_v, p.delta);
    case Tester::AnyEps: return sample_size_any_eps(d, p.eps_v, p.delta);
    case Tester::WorstWorst: return sample_size_worst_worst(d, c.m, p.eps_v, p.eps_v_prime, p.delta);
    case Tester::Alt: return sample_sizes_alt(c.m, p.eps_a, p.delta).agents;
    case Tester::Combined: {
      const auto alts = sample_sizes_alt(c.m, p.eps_a, p.delta).alternatives;
      return sample_size_combined(d, alts, p.eps_v, p.delta, false);
    }
  }
  return 0;
}

Verdict run_tester(Tester t, QueryOracle& oracle, const Domain& d, const TesterParams& p, Rng& rng) {
  switch (t) {
    case Tester::Alg1: return test_random_outliers(oracle, d, p);
    case Tester::Worst: return test_worst_outliers_small_eps(oracle, d, p);
    case Tester::AnyEps: return test_worst_outliers_any_eps(oracle, d, p);
    case Tester::WorstWorst: return test_worst_worst_pref(oracle, d, p);
    case Tester::Alt: return test_alt_outliers(oracle, d, p, rng);
    case Tester::Combined: return test_combined_outliers(oracle, d, p, rng, false);
  }
  return {};
}

GeneratedProfile make_profile(const ExperimentConfig& c, const Domain& d, Tester t, const TesterParams& p,
                              bool type1, std::uint64_t seed) {
  if (!type1) return gen_uniform_profile(c.m, c.n, seed);
  switch (t) {
    case Tester::Alg1:
      return gen_type1_profile(d, c.m, c.n, p.eps_v, 0.0, OutlierMode::RandomOutliers, seed);
    case Tester::Worst:
    case Tester::AnyEps:
    case Tester::WorstWorst:
      return gen_type1_profile(d, c.m, c.n, p.eps_v, 0.0, OutlierMode::AdversarialOutliers, seed);
    case Tester::Alt:
      return gen_type1_profile(d, c.m, c.n, 0.0, p.eps_a, OutlierMode::RandomOutliers, seed);
    case Tester::Combined:
      return gen_type1_profile(d, c.m, c.n, p.eps_v, p.eps_a, OutlierMode::RandomOutliers, seed);
  }
  return gen_uniform_profile(c.m, c.n, seed);
}

void validate(const ExperimentConfig& c) {
  if (c.m < 1) throw Error(Errc::InvalidParameter, "m must be at least 1");
  if (c.n < 1) throw Error(Errc::InvalidParameter, "n must be at least 1");
  if (c.eps_list.empty()) throw Error(Errc::InvalidParameter, "eps list is empty");
  if (c.fraction_grid.empty()) throw Error(Errc::InvalidParameter, "fraction grid is empty");
  for (double f : c.fraction_grid) {
    if (!(f > 0.0 && f <= 1.0)) throw Error(Errc::InvalidParameter, "grid fractions must lie in (0, 1]");
  }
  if (c.profiles_per_point < 1 || c.samples_per_profile < 1) {
    throw Error(Errc::InvalidParameter, "trial counts must be at least 1");
  }
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, path.string() + ": cannot open for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(Errc::IoError, path.string() + ": write failed");
}

}  // namespace

std::vector<double> default_fraction_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

ExperimentConfig preset(Scenario scenario, bool paper_scale) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.delta = 0.001;
  c.fraction_grid = default_fraction_grid();
  c.n = paper_scale ? 10000 : 2000;
  c.profiles_per_point = paper_scale ? 100 : 30;
  c.samples_per_profile = paper_scale ? 100 : 30;
  switch (scenario) {
    case Scenario::Fig1Alg1:
      c.tester = "alg1";
      c.m = 3;
      c.eps_list = {0.1, 0.2, 0.3, 0.4, 0.5};
      break;
    case Scenario::Fig2WorstCase:
      c.tester = "worst";
      c.m = 5;
      c.eps_list = {0.05, 0.1, 0.15, 0.2};
      if (paper_scale) c.eps_list.push_back(0.25);
      break;
    case Scenario::Fig3AltOutliers:
      c.tester = "alt";
      c.m = 9;
      c.eps_list = {0.1, 0.2, 0.3, 0.4, 0.5};
      break;
    case Scenario::Custom:
      break;
  }
  return c;
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::Fig1Alg1: return "fig1";
    case Scenario::Fig2WorstCase: return "fig2";
    case Scenario::Fig3AltOutliers: return "fig3";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "fig1") return Scenario::Fig1Alg1;
  if (name == "fig2") return Scenario::Fig2WorstCase;
  if (name == "fig3") return Scenario::Fig3AltOutliers;
  if (name == "custom") return Scenario::Custom;
  throw Error(Errc::InvalidParameter, "unknown scenario '" + name + "' (expected fig1, fig2, fig3 or custom)");
}

unsigned effective_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PREFTEST_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const Domain& domain = domain_by_name(config.domain);
  const Tester tester = tester_of(config);
  const std::string name = scenario_name(config.scenario);

  std::vector<TesterParams> params;
  std::vector<std::size_t> full;
  for (double eps : config.eps_list) {
    params.push_back(params_for(config, tester, eps));
    full.push_back(full_size(config, domain, tester, params.back()));
  }

  const std::size_t grid = config.fraction_grid.size();
  const std::size_t per_unit = grid * config.samples_per_profile;
  const std::size_t units = config.eps_list.size() * config.profiles_per_point;
  std::vector<RunRecord> records(units * per_unit);

  // One unit is one (eps, profile) pair; the profile is reused across the grid.
  auto run_unit = [&](std::size_t unit) {
    const std::size_t e = unit / config.profiles_per_point;
    const std::size_t tp = unit % config.profiles_per_point;
    const bool type1 = config.kinds == ProfileKinds::Both && tp % 2 == 1;
    const auto gen = make_profile(config, domain, tester, params[e], type1,
                                  derive_seed(config.seed, 0, e, tp));
    const std::uint64_t trial_base = derive_seed(config.seed, 1, e);
    for (std::size_t fi = 0; fi < grid; ++fi) {
      TesterParams p = params[e];
      p.sample_override = std::max<std::size_t>(1, ceil_count(config.fraction_grid[fi] * static_cast<double>(full[e])));
      for (std::size_t ts = 0; ts < config.samples_per_profile; ++ts) {
        const std::uint64_t s = derive_seed(trial_base, fi, tp, ts);
        QueryOracle oracle(gen.profile, s);
        Rng rng(splitmix64(s));
        const auto v = run_tester(tester, oracle, domain, p, rng);
        auto& r = records[unit * per_unit + fi * config.samples_per_profile + ts];
        r.scenario = name;
        r.eps = config.eps_list[e];
        r.fraction = config.fraction_grid[fi];
        r.trial_profile = tp;
        r.trial_sample = ts;
        r.decision = v.decision;
        r.truth = type1 ? 1 : 0;
        r.queries = v.queries;
        r.budget = v.budget;
      }
    }
  };

  const unsigned threads = std::min<unsigned>(effective_threads(config.threads), static_cast<unsigned>(units));
  if (threads <= 1) {
    for (std::size_t u = 0; u < units; ++u) run_unit(u);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t u = next++; u < units; u = next++) {
          try {
            run_unit(u);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = units;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.eps, a.fraction, a.trial_profile, a.trial_sample) <
           std::tie(b.eps, b.fraction, b.trial_profile, b.trial_sample);
  });
  ExperimentResult result;
  result.summary = summarize(records);
  result.records = std::move(records);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::size_t> index(records.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  std::stable_sort(index.begin(), index.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(records[a].scenario, records[a].eps, records[a].fraction) <
           std::tie(records[b].scenario, records[b].eps, records[b].fraction);
  });
  for (std::size_t i : index) {
    const auto& r = records[i];
    if (rows.empty() || rows.back().scenario != r.scenario || rows.back().eps != r.eps ||
        rows.back().fraction != r.fraction) {
      rows.push_back(SummaryRow{r.scenario, r.eps, r.fraction, 0, 0.0, 0, 0, 0, 0});
    }
    auto& row = rows.back();
    ++row.trials;
    const bool wrong = r.decision != r.truth;
    if (r.truth == 1) {
      ++row.type1_trials;
      row.type1_errors += wrong ? 1 : 0;
    } else {
      ++row.type2_trials;
      row.type2_errors += wrong ? 1 : 0;
    }
  }
  for (auto& row : rows) {
    const auto errors = row.type1_errors + row.type2_errors;
    row.rho = static_cast<double>(row.trials - errors) / static_cast<double>(row.trials);
  }
  return rows;
}

std::optional<double> reach_fraction(const std::vector<SummaryRow>& summary, double eps, double target) {
  std::optional<double> best;
  for (const auto& row : summary) {
    if (row.eps != eps || row.rho < target) continue;
    if (!best || row.fraction < *best) best = row.fraction;
  }
  return best;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "scenario,eps,fraction,trial_profile,trial_sample,decision,truth,queries\n";
  for (const auto& r : records) {
    out << r.scenario << ',' << fixed6(r.eps) << ',' << fixed6(r.fraction) << ',' << r.trial_profile << ','
        << r.trial_sample << ',' << r.decision << ',' << r.truth << ',' << r.queries << '\n';
  }
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_records_csv(out, records);
  finish_write(out, path);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "scenario,eps,fraction,trials,rho,type1_trials,type1_errors,type2_trials,type2_errors\n";
  for (const auto& r : summary) {
    char rho[64];
    std::snprintf(rho, sizeof rho, "%.12f", r.rho);
    out << r.scenario << ',' << fixed6(r.eps) << ',' << fixed6(r.fraction) << ',' << r.trials << ',' << rho << ','
        << r.type1_trials << ',' << r.type1_errors << ',' << r.type2_trials << ',' << r.type2_errors << '\n';
  }
}

void emit_summary_csv(const std::vector<SummaryRow>& summary, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_summary_csv(out, summary);
  finish_write(out, path);
}

}  // namespace preftest
