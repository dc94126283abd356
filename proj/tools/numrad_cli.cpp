// numrad: numerical radius bounds from the command line.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numrad/bounds.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/error.hpp"
#include "numrad/harness.hpp"
#include "numrad/matrix_io.hpp"
#include "numrad/radius.hpp"

namespace fs = std::filesystem;
using namespace numrad;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitUnknownBound = 5;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonFinite:
      return kExitParse;
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::ToleranceUnreachable:
      return kExitNumerical;
    case ErrorKind::UnknownBound:
      return kExitUnknownBound;
    default:
      return kExitDimension;
  }
}

std::string num(double v) { return std::isfinite(v) ? format_double(v) : std::string("inf"); }
std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<ComplexMatrix> read_all(const std::vector<std::string>& paths) {
  std::vector<ComplexMatrix> out;
  for (const auto& p : paths) out.push_back(read_matrix(p));
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
}

void write_reports(const CampaignReport& report, const std::string& out_dir, const std::string& format,
                   const std::string& stem) {
  fs::create_directories(out_dir);
  if (format == "json" || format == "both") {
    const fs::path p = fs::path(out_dir) / (stem + ".json");
    write_text(p, report_to_json(report));
    std::cout << "wrote " << p.string() << "\n";
  }
  if (format == "csv" || format == "both") {
    const fs::path p = fs::path(out_dir) / (stem + ".csv");
    write_text(p, report_to_csv(report));
    std::cout << "wrote " << p.string() << "\n";
  }
}

void print_summary(const BoundSummary& s) {
  std::cout << "summary task=" << s.task << " count=" << s.count << " failed=" << s.failed
            << " violations=" << s.violations << " min_ratio=" << num(s.min_ratio)
            << " median_ratio=" << num(s.median_ratio) << " max_ratio=" << num(s.max_ratio) << "\n";
}

void print_record(const char* tag, const TrialRecord& r) {
  std::cout << tag << " task=" << r.task << " trial=" << r.trial << " value=" << num(r.value)
            << " lhs=" << num(std::pow(r.omega_lo, r.exponent)) << " ratio=" << num(r.ratio)
            << " violation=" << yes_no(r.violation) << " seed_path=" << r.seed_path << " digests=";
  for (std::size_t i = 0; i < r.digests.size(); ++i) std::cout << (i ? "," : "") << hex64(r.digests[i]);
  std::cout << "\n";
}

// Appends ".v<variant>" to ids that come in two variants when the caller left it out.
std::string resolve_id(std::string id, std::optional<int> variant) {
  if (is_known_bound(id)) {
    if (variant && id.size() > 3 && id[id.size() - 3] == '.' && id[id.size() - 2] == 'v' &&
        id.back() - '0' != *variant) {
      throw Error(ErrorKind::OutOfRange, "--variant contradicts bound id " + id);
    }
    return id;
  }
  const std::string versioned = id + ".v" + std::to_string(variant.value_or(1));
  if (is_known_bound(versioned)) return versioned;
  throw Error(ErrorKind::UnknownBound, "unknown bound id " + id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified numerical radii and verification of numerical radius bounds"};
  app.require_subcommand(1);

  // omega
  auto* omega_cmd = app.add_subcommand("omega", "Certified numerical radius of a square matrix");
  std::string omega_path;
  std::optional<double> omega_tol;
  omega_cmd->add_option("path", omega_path, "Matrix file")->required();
  omega_cmd->add_option("--tol", omega_tol, "Absolute tolerance (default 1e-9 max(1, ||M||))");

  // omega-p
  auto* omp_cmd = app.add_subcommand("omega-p", "Lower estimate of the omega_p functional");
  std::vector<std::string> omp_paths;
  double omp_p = 1.0;
  std::size_t omp_restarts = 0;
  std::uint64_t omp_seed = 1;
  double omp_tol = 0.0;
  omp_cmd->add_option("paths", omp_paths, "Matrix files")->required();
  omp_cmd->add_option("--p", omp_p, "Exponent p >= 1");
  omp_cmd->add_option("--restarts", omp_restarts, "Random restarts (default 8 * side)");
  omp_cmd->add_option("--seed", omp_seed, "Master seed");
  omp_cmd->add_option("--tol", omp_tol, "Stopping tolerance (default 1e-8 scale)");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate one bound and compare it with the certified left side");
  std::string bound_id;
  std::vector<std::string> bound_paths;
  double b_r = 1.0;
  double b_alpha = 0.5;
  std::optional<double> b_p;
  std::optional<double> b_q;
  std::optional<int> b_variant;
  std::string b_mode = "as_proved";
  std::string b_sign = "plus";
  std::uint64_t b_seed = 1;
  std::optional<double> b_tol;
  bound_cmd->add_option("--id", bound_id, "Bound id")->required();
  bound_cmd->add_option("paths", bound_paths, "Matrix files (X Y; A B C D X Y per main4 item; A B C D per th1 block)")
      ->required();
  bound_cmd->add_option("--r", b_r, "Power r >= 1");
  bound_cmd->add_option("--alpha", b_alpha, "Power pair exponent in [0, 1]");
  bound_cmd->add_option("--p", b_p, "Hoelder p (main11.*) or omega_p exponent (main4.*, th1)");
  bound_cmd->add_option("--q", b_q, "Hoelder conjugate q");
  bound_cmd->add_option("--variant", b_variant, "Variant 1 or 2")->check(CLI::IsMember({1, 2}));
  bound_cmd->add_option("--constant-mode", b_mode, "as_proved or as_stated")
      ->check(CLI::IsMember({"as_proved", "as_stated"}));
  bound_cmd->add_option("--sign", b_sign, "plus or minus (sum_norm)")->check(CLI::IsMember({"plus", "minus"}));
  bound_cmd->add_option("--seed", b_seed, "Seed for randomised estimators");
  bound_cmd->add_option("--tol", b_tol, "Relative tolerance of certified radii");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification campaign");
  std::string v_config;
  std::optional<std::size_t> v_trials;
  std::optional<std::uint64_t> v_seed;
  std::optional<double> v_tol;
  std::size_t v_jobs = 1;
  std::string v_out = ".";
  std::string v_format = "both";
  std::vector<std::string> v_ids;
  bool v_as_stated = false;
  verify_cmd->add_option("--config", v_config, "Campaign config (JSON)");
  verify_cmd->add_option("--trials", v_trials, "Random trials per bound");
  verify_cmd->add_option("--seed", v_seed, "Master seed");
  verify_cmd->add_option("--tol", v_tol, "Relative tolerance of certified radii");
  verify_cmd->add_option("--jobs", v_jobs, "Concurrent trials");
  verify_cmd->add_option("--id", v_ids, "Restrict to these bound ids");
  verify_cmd->add_flag("--include-as-stated", v_as_stated, "Also run main11.* with the printed constant");
  verify_cmd->add_option("--out", v_out, "Output directory");
  verify_cmd->add_option("--format", v_format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

  // counterexamples
  auto* cex_cmd = app.add_subcommand("counterexamples", "Run the documented counterexample cases");
  std::uint64_t c_seed = 1;
  std::size_t c_trials = 500;
  std::optional<std::string> c_out;
  std::string c_format = "both";
  cex_cmd->add_option("--seed", c_seed, "Seed of the random search");
  cex_cmd->add_option("--trials", c_trials, "Random non-normal pairs to search");
  cex_cmd->add_option("--out", c_out, "Also write reports to this directory");
  cex_cmd->add_option("--format", c_format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw a matrix from an ensemble and write it");
  std::string s_kind;
  std::size_t s_m = 0;
  std::size_t s_n = 0;
  std::uint64_t s_seed = 1;
  std::uint64_t s_stream = 0;
  std::string s_out;
  sample_cmd->add_option("kind", s_kind, "Ensemble kind")->required();
  sample_cmd->add_option("m", s_m, "Rows")->required();
  sample_cmd->add_option("n", s_n, "Columns")->required();
  sample_cmd->add_option("--seed", s_seed, "Master seed");
  sample_cmd->add_option("--stream", s_stream, "Stream index");
  sample_cmd->add_option("--out", s_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*omega_cmd) {
      const ComplexMatrix m = read_matrix(omega_path);
      if (!m.is_square()) throw Error(ErrorKind::NotSquare, "omega needs a square matrix");
      const double tol = omega_tol.value_or(1e-9 * std::max(1.0, spectral_norm(m)));
      const CertifiedRadius w = omega(m, tol);
      std::cout << "omega lo=" << num(w.lo) << " hi=" << num(w.hi) << " theta=" << num(w.witness_theta) << "\n";
      return 0;
    }

    if (*omp_cmd) {
      const std::vector<ComplexMatrix> ops = read_all(omp_paths);
      OmegaPOptions opts;
      opts.restarts = omp_restarts;
      opts.tol = omp_tol;
      const OmegaPEstimate est = omega_p(ops, omp_p, RngStream{omp_seed, 0}, opts);
      std::cout << "omega_p value=" << num(est.value) << " p=" << num(est.p) << " converged=" << yes_no(est.converged)
                << "\n";
      std::cout << "witness";
      for (Eigen::Index i = 0; i < est.witness.size(); ++i) {
        std::cout << ' ' << num(est.witness(i).real()) << (est.witness(i).imag() < 0 ? "" : "+")
                  << num(est.witness(i).imag()) << 'i';
      }
      std::cout << "\n";
      return 0;
    }

    if (*bound_cmd) {
      std::string id = resolve_id(bound_id, b_variant);
      const bool omega_p_family = id.starts_with("main4.") || id == "th1";
      const auto mode = *parse_constant_mode(b_mode);
      if (mode == ConstantMode::as_stated) {
        if (!id.starts_with("main11.v")) throw Error(ErrorKind::OutOfRange, "as_stated applies to main11.v1/v2 only");
        id += "@as_stated";
      }
      BoundArgs args;
      args.r = b_r;
      args.alpha = b_alpha;
      args.sign = b_sign == "plus" ? Sign::plus : Sign::minus;
      if (omega_p_family) {
        args.r = b_p.value_or(1.0);
      } else {
        if (b_p && b_q) (void)HolderPair(*b_p, *b_q);
        args.holder_p = b_p ? *b_p : b_q ? HolderPair::conjugate_of(*b_q).q() : 2.0;
      }
      CampaignConfig config = CampaignConfig::defaults();
      config.seed = b_seed;
      config.omega_tol = b_tol.value_or(1e-9);
      const TrialRecord rec = evaluate_bound(config, id, read_all(bound_paths), args);
      std::cout << "bound id=" << rec.bound_id << " value=" << num(rec.value) << " exponent=" << num(rec.exponent)
                << " omega_lo=" << num(rec.omega_lo) << " ok=" << yes_no(!rec.violation) << "\n";
      for (const auto& [k, v] : rec.extras) std::cout << "term " << k << "=" << num(v) << "\n";
      return 0;
    }

    if (*verify_cmd) {
      CampaignConfig config = CampaignConfig::defaults();
      if (!v_config.empty()) {
        std::ifstream in(v_config);
        if (!in) throw Error(ErrorKind::ParseError, "cannot read config " + v_config);
        std::stringstream ss;
        ss << in.rdbuf();
        config = config_from_json(ss.str());
      }
      if (v_trials) config.trials = *v_trials;
      if (v_seed) config.seed = *v_seed;
      if (v_tol) config.omega_tol = *v_tol;
      if (!v_ids.empty()) config.bound_ids = v_ids;
      if (v_as_stated) config.include_as_stated = true;
      config.jobs = std::max<std::size_t>(1, v_jobs);
      const CampaignReport report = run_campaign(config);
      write_reports(report, v_out, v_format, "numrad-report");
      bool expected_header = false;
      for (const BoundSummary& s : report.summaries)
        if (!s.expected_discrepancy) print_summary(s);
      for (const BoundSummary& s : report.summaries) {
        if (!s.expected_discrepancy) continue;
        if (!expected_header) std::cout << "# expected discrepancy (printed main11 constant)\n";
        expected_header = true;
        print_summary(s);
      }
      for (const TrialRecord* r : report.violations()) {
        print_record(r->task.ends_with("@as_stated") ? "expected_violation" : "violation", *r);
      }
      const std::size_t unexpected = report.unexpected_violations();
      std::cout << "verify records=" << report.records.size() << " failures=" << report.failures()
                << " unexpected_violations=" << unexpected << "\n";
      return unexpected == 0 ? 0 : kExitViolations;
    }

    if (*cex_cmd) {
      const CampaignReport report = counterexample_suite(c_seed, c_trials);
      for (const TrialRecord& r : report.records) {
        if (r.task.starts_with("a:")) print_record("case_a", r);
        if (r.task.starts_with("c:")) print_record("case_c", r);
        if (r.task.starts_with("b:") && r.violation) print_record("case_b", r);
      }
      for (const BoundSummary& s : report.summaries) print_summary(s);
      if (c_out) write_reports(report, *c_out, c_format, "numrad-counterexamples");
      return 0;
    }

    if (*sample_cmd) {
      const auto kind = parse_ensemble(s_kind);
      if (!kind) throw Error(ErrorKind::ParseError, "unknown ensemble kind " + s_kind);
      const ComplexMatrix m = sample(*kind, s_m, s_n, RngStream{s_seed, s_stream});
      if (s_out.empty()) {
        std::cout << format_matrix(m);
      } else {
        write_matrix(s_out, m);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "numrad: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "numrad: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
