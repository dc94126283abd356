#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numrad/bounds.hpp"
#include "numrad/ensembles.hpp"

namespace numrad {

inline constexpr const char* kReportFormat = "numrad-report/1";

struct CampaignConfig {
  std::vector<std::string> bound_ids;
  /// Kinds for X, Y and the off-diagonal blocks B, C.
  std::vector<EnsembleKind> offdiag_kinds;
  /// Kinds for the diagonal blocks A, D of th1.
  std::vector<EnsembleKind> diagonal_kinds;
  /// Kinds for the contractions of main4 (must produce norm <= 1).
  std::vector<EnsembleKind> contraction_kinds;
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  std::size_t trials = 500;
  std::vector<double> r_values;
  std::vector<double> alpha_values;
  std::vector<double> holder_p_values;
  std::vector<double> omega_p_values;
  std::vector<std::size_t> n_operators;
  std::uint64_t seed = 0;
  double omega_tol = 1e-6;  // relative to max(1, ||T||)
  double slack_rel = 1e-8;
  /// Also run main11.* with the printed constant (expected to violate).
  bool include_as_stated = false;
  /// Prepend the hand-checked tight inputs (X = Y = [1] and friends).
  bool include_fixed_cases = true;
  std::size_t omega_p_restarts = 0;  // 0 -> 2 * side per trial
  std::size_t zeta_restarts = 4;
  std::size_t jobs = 1;

  /// Every bound id, the full parameter sweeps, dims up to 8 x 8.
  static CampaignConfig defaults();
  /// Throws OutOfRange / UnknownBound / ShapeUnsupported when a sweep value
  /// breaks an evaluator precondition.
  void validate() const;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::string bound_id;
  std::string task;  // bound id, plus "@as_stated" for the printed-constant runs
  std::string constant_mode;
  bool fixed_case = false;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t n_ops = 1;
  double r = 1.0;  // r, or p for the omega_p families
  std::optional<double> alpha;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<int> sign;
  std::string kinds;
  std::vector<std::uint64_t> digests;
  double value = 0.0;
  double exponent = 1.0;
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  double ratio = 0.0;
  bool violation = false;
  bool failed = false;
  std::string error;
  std::vector<std::pair<std::string, double>> extras;
  std::string seed_path;
  double wall_ms = 0.0;  // kept out of serialized reports
};

struct BoundSummary {
  std::string task;
  std::size_t count = 0;
  std::size_t failed = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  bool expected_discrepancy = false;
};

struct CampaignReport {
  std::string format_version = kReportFormat;
  CampaignConfig config;
  std::vector<BoundSummary> summaries;
  std::vector<TrialRecord> records;

  std::vector<const TrialRecord*> violations() const;
  /// Violations outside the printed-constant main11 runs.
  std::size_t unexpected_violations() const;
  std::size_t failures() const;
};

CampaignReport run_campaign(const CampaignConfig& config);

/// Re-runs one trial from its task name and index.
TrialRecord replay_trial(const CampaignConfig& config, const std::string& task, std::size_t trial);

/// Scalar parameters for one explicit evaluation. For main4 and th1, `r`
/// is the omega_p exponent p; for main11.* `holder_p` picks the pair.
struct BoundArgs {
  double r = 1.0;
  double alpha = 0.5;
  double holder_p = 2.0;
  Sign sign = Sign::plus;
};

/// Evaluates one bound (task = id, optionally with "@as_stated") on explicit
/// matrices and compares it against the certified left-hand side. Matrix order:
/// X Y for the off-diagonal ids, A B C D X Y per item for main4, A B C D per
/// block for th1. Errors propagate instead of being recorded.
TrialRecord evaluate_bound(const CampaignConfig& config, const std::string& task,
                           const std::vector<ComplexMatrix>& matrices, const BoundArgs& args);

struct SweepSpec {
  std::vector<double> r_values{1.0};
  std::vector<double> alpha_values{0.5};
  std::vector<double> holder_p_values{2.0};
};

struct SweepPoint {
  double r;
  double alpha;
  double holder_p;
  double value;
  double lhs;  // certified lower endpoint raised to the bound's exponent
  double ratio;
};

/// Ratio table over the Cartesian product of the sweep lists on fixed
/// matrices; any empty list gives an empty table. Throws UnknownBound.
std::vector<SweepPoint> tightness_sweep(const std::string& bound_id, const std::vector<ComplexMatrix>& matrices,
                                        const SweepSpec& sweep, double omega_tol = 1e-9);

/// Fixed documented cases: (a) the printed Hoelder constant on X = Y = [1],
/// (b) a seeded search for non-normal pairs breaking ||X+Y|| <= || |X|+|Y| ||,
/// (c) the proved constant on the input of (a).
CampaignReport counterexample_suite(std::uint64_t seed, std::size_t search_trials = 500);

/// Recomputes summaries from records (used by run_campaign and tests).
std::vector<BoundSummary> summarize(const std::vector<TrialRecord>& records);

std::string report_to_json(const CampaignReport& report);
std::string report_to_csv(const CampaignReport& report);

std::string config_to_json(const CampaignConfig& config);
/// Missing keys keep their default values. Throws ParseError.
CampaignConfig config_from_json(const std::string& text);

}  // namespace numrad
