#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace preftest {

enum class Scenario { Fig1Alg1, Fig2WorstCase, Fig3AltOutliers, Custom };

// UniformOnly: every profile uniform, truth 0. Both makes odd-numbered
// profiles Type-1 instances of the scenario's outlier model.
enum class ProfileKinds { UniformOnly, Both };

struct ExperimentConfig {
  Scenario scenario = Scenario::Fig1Alg1;
  std::string tester = "alg1";  // Custom only: alg1|worst|any-eps|worst-worst|alt|combined
  int m = 3;
  std::size_t n = 2000;
  double delta = 0.001;
  std::vector<double> eps_list;       // eps_v, or eps_a for the alternative scenario
  std::vector<double> fraction_grid;  // values in (0, 1]
  std::size_t profiles_per_point = 30;
  std::size_t samples_per_profile = 30;
  std::uint64_t seed = 1;
  std::string domain = "single-peaked";
  ProfileKinds kinds = ProfileKinds::UniformOnly;
  double eps_v_prime = 1.0;  // worst-worst only
  unsigned threads = 0;      // 0: hardware concurrency, capped by PREFTEST_THREADS
};

// 0.05, 0.10, ..., 1.00
std::vector<double> default_fraction_grid();

// Fig1: m = 3, eps_v 0.1..0.5. Fig2: m = 5, eps_v 0.05..0.20 (0.25 added
// with paper_scale). Fig3: m = 9, eps_a 0.1..0.5. Desk scale is n = 2000 with
// 30 x 30 trials, paper_scale n = 10000 with 100 x 100; delta = 0.001.
ExperimentConfig preset(Scenario scenario, bool paper_scale);

std::string scenario_name(Scenario scenario);         // fig1|fig2|fig3|custom
Scenario scenario_from_name(const std::string& name);  // InvalidParameter otherwise

struct RunRecord {
  std::string scenario;
  double eps = 0.0;
  double fraction = 0.0;
  std::size_t trial_profile = 0;
  std::size_t trial_sample = 0;
  int decision = 0;
  int truth = 0;
  std::uint64_t queries = 0;
  std::uint64_t budget = 0;  // not written to CSV
};

struct SummaryRow {
  std::string scenario;
  double eps = 0.0;
  double fraction = 0.0;
  std::size_t trials = 0;
  double rho = 0.0;  // fraction of trials with decision == truth
  std::size_t type1_trials = 0;
  std::size_t type1_errors = 0;
  std::size_t type2_trials = 0;
  std::size_t type2_errors = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // sorted by (eps, fraction, trial_profile, trial_sample)
  std::vector<SummaryRow> summary;  // sorted by (eps, fraction)
};

// Validates the config (InvalidParameter and tester errors surface before any
// trial runs). Deterministic for a fixed config regardless of thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// Smallest grid fraction whose rho reaches `target`, if any.
std::optional<double> reach_fraction(const std::vector<SummaryRow>& summary, double eps, double target);

// Header: scenario,eps,fraction,trial_profile,trial_sample,decision,truth,queries
// Rows are written in the given order; eps and fraction use 6 decimals.
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

// Header: scenario,eps,fraction,trials,rho,type1_trials,type1_errors,type2_trials,type2_errors
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
void emit_summary_csv(const std::vector<SummaryRow>& summary, const std::filesystem::path& path);

// Threads to use: `requested` (0 = hardware concurrency), capped by the
// PREFTEST_THREADS environment variable when set, and at least 1.
unsigned effective_threads(unsigned requested);

}  // namespace preftest
