// preftest: generate profiles, run testers and distance oracles, and drive
// the Monte Carlo experiments.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "preftest/distances.hpp"
#include "preftest/domain.hpp"
#include "preftest/error.hpp"
#include "preftest/experiment.hpp"
#include "preftest/generators.hpp"
#include "preftest/oracle.hpp"
#include "preftest/profile_io.hpp"
#include "preftest/testers.hpp"

namespace {

using namespace preftest;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_to(const std::string& path, const Profile& profile) {
  if (path.empty() || path == "-") {
    write_profile(std::cout, profile);
  } else {
    save_profile(path, profile);
  }
}

Profile read_profile_from(const std::string& path) {
  if (path.empty() || path == "-") return read_profile(std::cin);
  return load_profile(path);
}

void write_truth(const std::string& path, const GroundTruth& truth) {
  nlohmann::json j;
  j["kind"] = truth.kind == GroundTruth::Kind::Type1 ? "Type1" : "Type2";
  j["inlier_indices"] = truth.inlier_indices;
  j["kept_alternatives"] = truth.kept_alternatives;
  if (truth.axis) {
    auto r = truth.axis->ranking();
    j["axis"] = std::vector<Alternative>(r.begin(), r.end());
  } else {
    j["axis"] = nullptr;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, path + ": cannot open for writing");
  out << j.dump(2) << '\n';
}

template <class T>
void print_list(const std::vector<T>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) std::cout << (i ? " " : "") << xs[i];
  std::cout << '\n';
}

struct GenArgs {
  std::string kind = "uniform";
  std::string domain = "single-peaked";
  int m = 3;
  std::size_t n = 100;
  double eps_v = 0.0;
  double eps_a = 0.0;
  std::string outliers = "random";
  std::string adversary{kDefaultAdversary};
  std::uint64_t seed = 1;
  std::string out;
  std::string truth;
};

int run_gen(const GenArgs& a) {
  if (a.kind == "prop3") {
    write_profile_to(a.out, gen_prop3_profile(domain_by_name(a.domain), a.m, a.n));
    return 0;
  }
  GeneratedProfile g = [&] {
    if (a.kind == "uniform") return gen_uniform_profile(a.m, a.n, a.seed);
    if (a.kind != "type1") throw Error(Errc::InvalidParameter, "unknown profile kind '" + a.kind + "'");
    if (a.outliers != "random" && a.outliers != "adversarial") {
      throw Error(Errc::InvalidParameter, "--outliers must be random or adversarial");
    }
    const auto mode = a.outliers == "random" ? OutlierMode::RandomOutliers : OutlierMode::AdversarialOutliers;
    return gen_type1_profile(domain_by_name(a.domain), a.m, a.n, a.eps_v, a.eps_a, mode, a.seed, a.adversary);
  }();
  write_profile_to(a.out, g.profile);
  if (!a.truth.empty()) write_truth(a.truth, g.truth);
  return 0;
}

struct TestArgs {
  std::string algo = "alg1";
  std::string domain = "single-peaked";
  double eps_v = 0.0;
  double eps_a = 0.1;
  double eps_v_prime = 1.0;
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  bool worst_pref = false;
  std::string in;
};

// Sampled sub-profiles above this many order-alternative entries make the
// exact worst-worst check slow.
constexpr double kWorstWorstBudget = 2e6;

int run_test(const TestArgs& a) {
  const Profile profile = read_profile_from(a.in);
  const Domain& domain = domain_by_name(a.domain);
  TesterParams p;
  p.eps_v = a.eps_v;
  p.eps_a = a.eps_a;
  p.eps_v_prime = a.eps_v_prime;
  p.delta = a.delta;
  if (a.samples > 0) p.sample_override = a.samples;
  QueryOracle oracle(profile, a.seed);
  Rng rng(splitmix64(a.seed));
  Verdict v;
  if (a.algo == "alg1") {
    v = test_random_outliers(oracle, domain, p);
  } else if (a.algo == "worst") {
    v = test_worst_outliers_small_eps(oracle, domain, p);
  } else if (a.algo == "any-eps") {
    v = test_worst_outliers_any_eps(oracle, domain, p);
  } else if (a.algo == "worst-worst") {
    const int m = profile.num_alternatives();
    const double l = p.sample_override ? static_cast<double>(*p.sample_override)
                                       : static_cast<double>(sample_size_worst_worst(
                                             domain, m, p.eps_v, p.eps_v_prime, p.delta));
    if (l * m > kWorstWorstBudget || m > 8) {
      std::cerr << "warning: worst-worst draws l = " << static_cast<std::size_t>(l) << " orders over m = " << m
                << " alternatives and solves an exact deletion problem; expect a long run. Desk-scale settings"
                   " use m <= 5 (e.g. m = 3, --eps-v 0 --eps-v-prime 0.5 --delta 0.05).\n";
    }
    v = test_worst_worst_pref(oracle, domain, p);
  } else if (a.algo == "alt") {
    v = test_alt_outliers(oracle, domain, p, rng);
  } else if (a.algo == "combined") {
    v = test_combined_outliers(oracle, domain, p, rng, a.worst_pref);
  } else {
    throw Error(Errc::InvalidParameter, "unknown algorithm '" + a.algo + "'");
  }
  std::cout << v.decision << ' ' << num(v.statistic) << ' ' << num(v.threshold) << ' ' << v.queries << ' '
            << v.sample_size << '\n';
  return 0;
}

struct DistanceArgs {
  std::string kind = "pref";
  std::string domain = "single-peaked";
  double eps_v = 0.0;
  double eps_a = 0.0;
  std::string in;
};

int run_distance(const DistanceArgs& a) {
  const Profile profile = read_profile_from(a.in);
  const Domain& domain = domain_by_name(a.domain);
  if (a.kind == "pref" || a.kind == "alt") {
    const auto r = a.kind == "pref" ? pref_distance(profile, domain) : alt_distance(profile, domain);
    std::cout << r.value << '\n';
    print_list(r.witness_removed);
    return 0;
  }
  if (a.kind != "combined") throw Error(Errc::InvalidParameter, "unknown distance kind '" + a.kind + "'");
  const auto w = combined_feasible(profile, domain, a.eps_v, a.eps_a);
  if (!w) {
    std::cout << "infeasible\n";
    return 0;
  }
  std::cout << "feasible\n";
  print_list(w->agents);
  print_list(w->alternatives);
  return 0;
}

struct ExperimentArgs {
  std::string preset = "fig1";
  bool paper_scale = false;
  std::string out;
  std::string summary;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::size_t profiles = 0;
  std::size_t samples = 0;
  bool both_kinds = false;
  unsigned threads = 0;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig c = preset(scenario_from_name(a.preset), a.paper_scale);
  if (c.scenario == Scenario::Custom) throw Error(Errc::InvalidParameter, "choose a preset: fig1, fig2 or fig3");
  c.seed = a.seed;
  if (a.n) c.n = a.n;
  if (a.profiles) c.profiles_per_point = a.profiles;
  if (a.samples) c.samples_per_profile = a.samples;
  if (a.both_kinds) c.kinds = ProfileKinds::Both;
  c.threads = a.threads;
  const auto result = run_experiment(c);
  if (!a.out.empty()) emit_csv(result.records, a.out);
  if (!a.summary.empty()) emit_summary_csv(result.summary, a.summary);
  std::printf("eps reach(rho>=%g)\n", 1.0 - c.delta);
  for (double eps : c.eps_list) {
    const auto f = reach_fraction(result.summary, eps, 1.0 - c.delta);
    if (f) {
      std::printf("%.2f %.2f\n", eps, *f);
    } else {
      std::printf("%.2f none\n", eps);
    }
  }
  return 0;
}

struct LbArgs {
  std::string domain = "single-peaked";
  int blocks = 1;
  std::size_t n = 8;
  std::string out;
  std::string out_prime;
};

int run_lb_gen(const LbArgs& a) {
  const Domain& domain = domain_by_name(a.domain);
  const auto pair = domain.kind() == DomainKind::SinglePeaked ? gen_lb_sp_profile(a.blocks, a.n)
                                                              : gen_lb_sc_profile(a.blocks, a.n);
  write_profile_to(a.out, pair.p);
  if (!a.out_prime.empty()) write_profile_to(a.out_prime, pair.p_prime);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based testers for single-peaked and single-crossing preference profiles"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a profile");
  g->add_option("--kind", gen.kind, "uniform | type1 | prop3")->capture_default_str();
  g->add_option("--domain", gen.domain, "single-peaked | single-crossing")->capture_default_str();
  g->add_option("-m,--m", gen.m, "Number of alternatives")->capture_default_str();
  g->add_option("-n,--n", gen.n, "Number of agents")->capture_default_str();
  g->add_option("--eps-v", gen.eps_v, "Fraction of outlier agents (type1)")->capture_default_str();
  g->add_option("--eps-a", gen.eps_a, "Fraction of outlier alternatives (type1)")->capture_default_str();
  g->add_option("--outliers", gen.outliers, "random | adversarial")->capture_default_str();
  g->add_option("--adversary", gen.adversary, "Adversary strategy for --outliers adversarial")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out, "Output profile (default stdout)");
  g->add_option("--truth", gen.truth, "Write the ground truth as JSON");

  TestArgs test;
  auto* t = app.add_subcommand("test", "Run a tester; prints: decision statistic threshold queries sample_size");
  t->add_option("--algo", test.algo, "alg1 | worst | any-eps | worst-worst | alt | combined")->capture_default_str();
  t->add_option("--domain", test.domain)->capture_default_str();
  t->add_option("--eps-v", test.eps_v)->capture_default_str();
  t->add_option("--eps-a", test.eps_a)->capture_default_str();
  t->add_option("--eps-v-prime", test.eps_v_prime)->capture_default_str();
  t->add_option("--delta", test.delta)->capture_default_str();
  t->add_option("--seed", test.seed)->capture_default_str();
  t->add_option("--samples", test.samples, "Override the number of agents drawn");
  t->add_flag("--worst-pref", test.worst_pref, "combined: arbitrary preference outliers");
  t->add_option("--in", test.in, "Input profile (default stdin)");

  DistanceArgs dist;
  auto* d = app.add_subcommand("distance", "Exact distance to the domain; prints value, then the witness");
  d->add_option("--kind", dist.kind, "pref | alt | combined")->capture_default_str();
  d->add_option("--domain", dist.domain)->capture_default_str();
  d->add_option("--eps-v", dist.eps_v, "combined only")->capture_default_str();
  d->add_option("--eps-a", dist.eps_a, "combined only")->capture_default_str();
  d->add_option("--in", dist.in, "Input profile (default stdin)");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Monte Carlo reproduction of the empirical curves");
  e->add_option("--preset", exp.preset, "fig1 | fig2 | fig3")->capture_default_str();
  e->add_flag("--paper-scale", exp.paper_scale, "n = 10000 with 100 x 100 trials");
  e->add_option("--out", exp.out, "Per-trial CSV");
  e->add_option("--summary", exp.summary, "Per-point summary CSV");
  e->add_option("--seed", exp.seed)->capture_default_str();
  e->add_option("--n", exp.n, "Override the profile size");
  e->add_option("--profiles", exp.profiles, "Override profiles per point");
  e->add_option("--samples", exp.samples, "Override samples per profile");
  e->add_flag("--both-kinds", exp.both_kinds, "Alternate uniform and Type-1 profiles");
  e->add_option("--threads", exp.threads, "Worker threads (PREFTEST_THREADS caps this)");

  LbArgs lb;
  auto* l = app.add_subcommand("lb-gen", "Lower-bound profile pair P, P'");
  l->add_option("--domain", lb.domain)->capture_default_str();
  l->add_option("--blocks", lb.blocks, "Number of {a, b, c} blocks")->capture_default_str();
  l->add_option("-n,--n", lb.n)->capture_default_str();
  l->add_option("--out", lb.out, "P (default stdout)");
  l->add_option("--out-prime", lb.out_prime, "P'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g->parsed()) return run_gen(gen);
    if (t->parsed()) return run_test(test);
    if (d->parsed()) return run_distance(dist);
    if (e->parsed()) return run_experiment_cmd(exp);
    if (l->parsed()) return run_lb_gen(lb);
  } catch (const Error& err) {
    std::cerr << "preftest: " << err.what() << '\n';
    return is_configuration_error(err.code()) ? 2 : 1;
  } catch (const std::exception& err) {
    std::cerr << "preftest: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
