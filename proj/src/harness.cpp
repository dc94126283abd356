#include "numrad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "numrad/error.hpp"
#include "numrad/matrix_io.hpp"

namespace numrad {

namespace {

using ojson = nlohmann::ordered_json;

enum class Family { main1, product_xy, sum_norm, sum_norm_normal, main11, young, main3, main4, th1 };

struct TaskSpec {
  std::string task;
  std::string bound_id;
  Family family;
  Variant variant = Variant::v1;
  ConstantMode mode = ConstantMode::as_proved;
};

constexpr const char* kAsStatedSuffix = "@as_stated";

TaskSpec task_spec(const std::string& task) {
  TaskSpec spec;
  spec.task = task;
  std::string id = task;
  if (const auto at = id.find('@'); at != std::string::npos) {
    if (id.substr(at) != kAsStatedSuffix) throw Error(ErrorKind::UnknownBound, "unknown task suffix in " + task);
    id = id.substr(0, at);
    spec.mode = ConstantMode::as_stated;
  }
  if (!is_known_bound(id)) throw Error(ErrorKind::UnknownBound, "unknown bound id " + id);
  spec.bound_id = id;
  if (id.ends_with(".v2")) spec.variant = Variant::v2;
  if (id.starts_with("main1.")) spec.family = Family::main1;
  else if (id == "product_xy") spec.family = Family::product_xy;
  else if (id == "sum_norm") spec.family = Family::sum_norm;
  else if (id == "sum_norm.normal") spec.family = Family::sum_norm_normal;
  else if (id.starts_with("main11.young")) spec.family = Family::young;
  else if (id.starts_with("main11.")) spec.family = Family::main11;
  else if (id.starts_with("main3.")) spec.family = Family::main3;
  else if (id.starts_with("main4.")) spec.family = Family::main4;
  else spec.family = Family::th1;
  if (spec.mode == ConstantMode::as_stated && spec.family != Family::main11) {
    throw Error(ErrorKind::UnknownBound, "only main11.* has a printed-constant variant");
  }
  return spec;
}

std::vector<std::string> task_list(const CampaignConfig& config) {
  std::vector<std::string> tasks;
  for (const std::string& id : config.bound_ids) {
    tasks.push_back(id);
    if (config.include_as_stated && (id == "main11.v1" || id == "main11.v2")) tasks.push_back(id + kAsStatedSuffix);
  }
  return tasks;
}

std::uint64_t label_of(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& values) {
  return values[rng.index(values.size())];
}

bool kind_fits(EnsembleKind kind, std::size_t rows, std::size_t cols) {
  if (kind == EnsembleKind::scalar) return rows == 1 && cols == 1;
  return !square_only(kind) || rows == cols;
}

EnsembleKind pick_kind(Rng& rng, const std::vector<EnsembleKind>& kinds, std::size_t rows, std::size_t cols) {
  std::vector<EnsembleKind> fit;
  for (EnsembleKind k : kinds)
    if (kind_fits(k, rows, cols)) fit.push_back(k);
  if (fit.empty()) return EnsembleKind::ginibre;
  return pick(rng, fit);
}

ComplexMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = rows.begin()->size();
  std::vector<cplx> entries;
  for (const auto& row : rows)
    for (double v : row) entries.emplace_back(v, 0.0);
  return ComplexMatrix(r, c, entries);
}

// Everything one trial needs to evaluate a bound and its left-hand side.
struct TrialInput {
  std::vector<ComplexMatrix> matrices;  // in the order they are digested
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t n_ops = 1;
  double r = 1.0;
  double alpha = 0.5;
  double holder_p = 2.0;
  Sign sign = Sign::plus;
  std::string kinds;
};

std::size_t fixed_case_count(Family family) {
  switch (family) {
    case Family::main1:
    case Family::main11:
    case Family::young:
    case Family::main3:
    case Family::product_xy:
    case Family::main4:
      return 2;
    case Family::sum_norm:
    case Family::sum_norm_normal:
      return 1;
    case Family::th1:
      return 3;
  }
  return 0;
}

TrialInput fixed_input(Family family, std::size_t index) {
  TrialInput in;
  in.kinds = "fixed";
  const ComplexMatrix one = ComplexMatrix::scalar(1.0);
  const ComplexMatrix zero = ComplexMatrix::scalar(0.0);
  switch (family) {
    case Family::main1:
    case Family::main11:
    case Family::young:
    case Family::main3:
      if (index == 0) {
        in.matrices = {one, one};
      } else {
        const ComplexMatrix x = mat({{0, 2}, {0, 0}});
        in.matrices = {x, x};
        in.m = in.n = 2;
      }
      break;
    case Family::product_xy:
      if (index == 0) {
        in.matrices = {ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
        in.m = in.n = 2;
      } else {
        in.matrices = {one, one};
        in.r = 2.0;
      }
      break;
    case Family::sum_norm:
    case Family::sum_norm_normal:
      in.matrices = {one, one};
      break;
    case Family::main4:
      in.n_ops = index + 1;
      for (std::size_t i = 0; i < in.n_ops; ++i) in.matrices.insert(in.matrices.end(), {one, one, one, one, one, one});
      break;
    case Family::th1:
      if (index == 0) in.matrices = {zero, one, one, zero};
      if (index == 1) in.matrices = {ComplexMatrix::scalar(2.0), zero, zero, ComplexMatrix::scalar(5.0)};
      if (index == 2) in.matrices = {one, one, zero, zero};
      break;
  }
  return in;
}

TrialInput random_input(const CampaignConfig& config, Family family, const RngStream& ts) {
  Rng rng(derive(ts, 0));
  TrialInput in;
  auto [m, n] = pick(rng, config.dims);
  in.r = pick(rng, config.r_values);
  in.alpha = pick(rng, config.alpha_values);
  in.holder_p = pick(rng, config.holder_p_values);
  in.sign = rng.uniform() < 0.5 ? Sign::plus : Sign::minus;
  std::uint64_t draw = 1;
  std::vector<std::string> kind_names;
  auto draw_kind = [&](const std::vector<EnsembleKind>& kinds, std::size_t rows, std::size_t cols) {
    const EnsembleKind k = pick_kind(rng, kinds, rows, cols);
    kind_names.emplace_back(to_string(k));
    in.matrices.push_back(sample(k, rows, cols, derive(ts, draw++)));
  };

  switch (family) {
    case Family::product_xy:
    case Family::sum_norm_normal:
      n = m;
      break;
    case Family::main4:
    case Family::th1:
      in.r = pick(rng, config.omega_p_values);
      in.n_ops = pick(rng, config.n_operators);
      break;
    default:
      break;
  }
  in.m = m;
  in.n = n;

  switch (family) {
    case Family::sum_norm_normal: {
      static const std::vector<EnsembleKind> normal_kinds{EnsembleKind::normal, EnsembleKind::hermitian,
                                                          EnsembleKind::unitary, EnsembleKind::psd};
      draw_kind(normal_kinds, m, m);
      draw_kind(normal_kinds, m, m);
      break;
    }
    case Family::main4:
      for (std::size_t i = 0; i < in.n_ops; ++i) {
        draw_kind(config.contraction_kinds, m, m);  // A
        draw_kind(config.contraction_kinds, n, n);  // B
        draw_kind(config.contraction_kinds, m, m);  // C
        draw_kind(config.contraction_kinds, n, n);  // D
        draw_kind(config.offdiag_kinds, m, n);      // X
        draw_kind(config.offdiag_kinds, n, m);      // Y
      }
      break;
    case Family::th1:
      for (std::size_t i = 0; i < in.n_ops; ++i) {
        draw_kind(config.diagonal_kinds, m, m);  // A
        draw_kind(config.offdiag_kinds, m, n);   // B
        draw_kind(config.offdiag_kinds, n, m);   // C
        draw_kind(config.diagonal_kinds, n, n);  // D
      }
      break;
    default:
      draw_kind(config.offdiag_kinds, m, n);
      draw_kind(config.offdiag_kinds, n, m);
      break;
  }
  std::ostringstream ks;
  for (std::size_t i = 0; i < kind_names.size(); ++i) ks << (i ? "/" : "") << kind_names[i];
  in.kinds = ks.str();
  return in;
}

CertifiedRadius certified(const ComplexMatrix& t, double tol_rel) {
  return omega(t, tol_rel * std::max(1.0, spectral_norm(t)));
}

double ratio_of(double lhs_pow, double value) {
  if (value > 0.0) return lhs_pow / value;
  return lhs_pow == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

void evaluate(const CampaignConfig& config, const TaskSpec& spec, const TrialInput& in, const RngStream& ts,
              TrialRecord& rec) {
  const FunctionPair fg = power_pair(in.alpha);
  const auto& ms = in.matrices;
  auto set_lhs = [&rec](double lo, double hi) {
    rec.omega_lo = lo;
    rec.omega_hi = hi;
  };
  auto offdiag = [&]() { return OffDiagPair(ms[0], ms[1]); };

  BoundOutcome outcome;
  switch (spec.family) {
    case Family::main1: {
      outcome = bound_main1(offdiag(), fg, in.r, spec.variant);
      const CertifiedRadius w = certified(embed_offdiag(offdiag()), config.omega_tol);
      set_lhs(w.lo, w.hi);
      break;
    }
    case Family::product_xy: {
      outcome = bound_product_xy(ms[0], ms[1], in.alpha, in.r, spec.variant);
      const CertifiedRadius w = certified(ms[0] * ms[1], config.omega_tol);
      set_lhs(w.lo, w.hi);
      break;
    }
    case Family::sum_norm:
    case Family::sum_norm_normal: {
      const bool normal = spec.family == Family::sum_norm_normal;
      outcome = bound_sum_norm(ms[0], ms[1], in.r, in.sign, normal);
      const ComplexMatrix other = normal ? ms[1] : adjoint(ms[1]);
      const double lhs = spectral_norm(in.sign == Sign::plus ? ms[0] + other : ms[0] - other);
      set_lhs(lhs, lhs);
      rec.sign = in.sign == Sign::plus ? 1 : -1;
      break;
    }
    case Family::main11: {
      const HolderPair hp = HolderPair::conjugate_of(in.holder_p);
      outcome = bound_main11(offdiag(), fg, in.r, hp, spec.variant, spec.mode);
      const CertifiedRadius w = certified(embed_offdiag(offdiag()), config.omega_tol);
      set_lhs(w.lo, w.hi);
      break;
    }
    case Family::young: {
      const HolderPair hp = HolderPair::conjugate_of(in.holder_p);
      outcome = bound_main11_young(offdiag(), fg, in.r, hp, spec.variant);
      const CertifiedRadius w = certified(embed_offdiag(offdiag()), config.omega_tol);
      set_lhs(w.lo, w.hi);
      break;
    }
    case Family::main3: {
      Main3Result res = bound_main3(offdiag(), fg, in.r, spec.variant, config.zeta_restarts, derive(ts, 1000));
      outcome = res.guaranteed;
      rec.extras = {{"refined", res.refined.value}, {"zeta_estimate", res.zeta.value}};
      const CertifiedRadius w = certified(embed_offdiag(offdiag()), config.omega_tol);
      set_lhs(w.lo, w.hi);
      break;
    }
    case Family::main4:
    case Family::th1: {
      std::vector<ComplexMatrix> ops;
      if (spec.family == Family::main4) {
        std::vector<ContractionItem> items;
        for (std::size_t i = 0; i < in.n_ops; ++i) {
          const std::size_t b = 6 * i;
          items.push_back(ContractionItem{ms[b], ms[b + 1], ms[b + 2], ms[b + 3], ms[b + 4], ms[b + 5]});
          ops.push_back(items.back().product());
        }
        outcome = bound_main4(items, fg, in.r, spec.variant);
      } else {
        std::vector<Block2x2> blocks;
        for (std::size_t i = 0; i < in.n_ops; ++i) {
          const std::size_t b = 4 * i;
          blocks.emplace_back(ms[b], ms[b + 1], ms[b + 2], ms[b + 3]);
          ops.push_back(embed_block(blocks.back()));
        }
        outcome = bound_th1(blocks, in.r, config.omega_tol);
      }
      const std::size_t side = ops.front().rows();
      OmegaPOptions opts;
      opts.restarts = config.omega_p_restarts > 0 ? config.omega_p_restarts : 2 * side;
      double est = omega_p(ops, in.r, derive(ts, 2000), opts).value;
      const double slack = config.slack_rel * std::max(1.0, outcome.value);
      if (outcome.value < std::pow(est, in.r) - slack) {
        // Confirm with four times the restarts before recording.
        opts.restarts *= 4;
        est = std::max(est, omega_p(ops, in.r, derive(ts, 3000), opts).value);
      }
      set_lhs(est, est);
      break;
    }
  }

  rec.value = outcome.value;
  rec.exponent = outcome.exponent;
  if (outcome.params.holder_p) rec.p = outcome.params.holder_p;
  if (outcome.params.holder_q) rec.q = outcome.params.holder_q;
  if (spec.family == Family::main4 || spec.family == Family::th1) rec.p = in.r;
  if (spec.family != Family::th1 && spec.family != Family::sum_norm && spec.family != Family::sum_norm_normal) {
    rec.alpha = in.alpha;
  }
  for (const auto& [k, v] : outcome.terms) rec.extras.emplace_back(k, v);
  const double lhs_pow = std::pow(rec.omega_lo, rec.exponent);
  rec.ratio = ratio_of(lhs_pow, rec.value);
  rec.violation = rec.value < lhs_pow - config.slack_rel * std::max(1.0, rec.value);
}

TrialRecord run_trial(const CampaignConfig& config, const TaskSpec& spec, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.bound_id = spec.bound_id;
  rec.task = spec.task;
  if (spec.family == Family::main11) rec.constant_mode = std::string(to_string(spec.mode));
  rec.seed_path = std::to_string(config.seed) + ":" + spec.task + ":" + std::to_string(trial);
  const RngStream ts = derive(derive(RngStream{config.seed, 0}, label_of(spec.task)), trial);
  const std::size_t nfixed = config.include_fixed_cases ? fixed_case_count(spec.family) : 0;
  try {
    TrialInput in = trial < nfixed ? fixed_input(spec.family, trial) : random_input(config, spec.family, ts);
    rec.fixed_case = trial < nfixed;
    rec.m = in.m;
    rec.n = in.n;
    rec.n_ops = in.n_ops;
    rec.r = in.r;
    rec.kinds = in.kinds;
    for (const ComplexMatrix& mtx : in.matrices) rec.digests.push_back(digest(mtx));
    evaluate(config, spec, in, ts, rec);
  } catch (const Error& e) {
    rec.failed = true;
    rec.violation = false;
    rec.error = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ojson opt_num(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson record_json(const TrialRecord& r) {
  ojson j;
  j["trial"] = r.trial;
  j["task"] = r.task;
  j["bound_id"] = r.bound_id;
  j["constant_mode"] = r.constant_mode.empty() ? ojson(nullptr) : ojson(r.constant_mode);
  j["fixed_case"] = r.fixed_case;
  j["m"] = r.m;
  j["n"] = r.n;
  j["n_ops"] = r.n_ops;
  j["r"] = r.r;
  j["alpha"] = opt_num(r.alpha);
  j["p"] = opt_num(r.p);
  j["q"] = opt_num(r.q);
  j["sign"] = r.sign ? ojson(*r.sign) : ojson(nullptr);
  j["kinds"] = r.kinds;
  ojson digests = ojson::array();
  for (auto d : r.digests) digests.push_back(hex64(d));
  j["digests"] = digests;
  j["value"] = r.value;
  j["exponent"] = r.exponent;
  j["omega_lo"] = r.omega_lo;
  j["omega_hi"] = r.omega_hi;
  j["ratio"] = std::isfinite(r.ratio) ? ojson(r.ratio) : ojson("inf");
  j["violation"] = r.violation;
  j["failed"] = r.failed;
  j["error"] = r.error;
  ojson extras = ojson::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  j["seed_path"] = r.seed_path;
  return j;
}

ojson summary_json(const BoundSummary& s) {
  ojson j;
  j["task"] = s.task;
  j["count"] = s.count;
  j["failed"] = s.failed;
  j["violations"] = s.violations;
  j["min_ratio"] = s.min_ratio;
  j["median_ratio"] = s.median_ratio;
  j["max_ratio"] = s.max_ratio;
  j["expected_discrepancy"] = s.expected_discrepancy;
  return j;
}

ojson config_json(const CampaignConfig& c) {
  auto kinds = [](const std::vector<EnsembleKind>& ks) {
    ojson a = ojson::array();
    for (auto k : ks) a.push_back(std::string(to_string(k)));
    return a;
  };
  ojson j;
  j["bound_ids"] = c.bound_ids;
  j["offdiag_kinds"] = kinds(c.offdiag_kinds);
  j["diagonal_kinds"] = kinds(c.diagonal_kinds);
  j["contraction_kinds"] = kinds(c.contraction_kinds);
  ojson dims = ojson::array();
  for (auto [m, n] : c.dims) dims.push_back({m, n});
  j["dims"] = dims;
  j["trials"] = c.trials;
  j["r_values"] = c.r_values;
  j["alpha_values"] = c.alpha_values;
  j["holder_p_values"] = c.holder_p_values;
  j["omega_p_values"] = c.omega_p_values;
  j["n_operators"] = c.n_operators;
  j["seed"] = c.seed;
  j["omega_tol"] = c.omega_tol;
  j["slack_rel"] = c.slack_rel;
  j["include_as_stated"] = c.include_as_stated;
  j["include_fixed_cases"] = c.include_fixed_cases;
  j["omega_p_restarts"] = c.omega_p_restarts;
  j["zeta_restarts"] = c.zeta_restarts;
  // `jobs` is deliberately absent: it must not change report bytes.
  return j;
}

std::string csv_num(double v) { return std::isfinite(v) ? format_double(v) : std::string("inf"); }
std::string csv_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

CampaignConfig CampaignConfig::defaults() {
  CampaignConfig c;
  c.bound_ids.assign(kBoundIds.begin(), kBoundIds.end());
  using K = EnsembleKind;
  c.offdiag_kinds = {K::ginibre, K::ginibre, K::ginibre, K::contraction, K::unitary,         K::normal,
                     K::hermitian, K::psd,   K::nilpotent_shift,         K::scalar,          K::zero};
  c.diagonal_kinds = {K::ginibre, K::ginibre, K::hermitian, K::normal, K::nilpotent_shift, K::zero};
  c.contraction_kinds = {K::contraction, K::contraction, K::unitary, K::nilpotent_shift};
  c.dims = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {4, 4}, {5, 3}, {6, 6}, {8, 8}};
  c.trials = 500;
  c.r_values = {1.0, 1.5, 2.0, 3.0};
  c.alpha_values = {0.0, 0.25, 0.5, 0.75, 1.0};
  c.holder_p_values = {1.25, 2.0, 4.0};
  c.omega_p_values = {1.0, 2.0, 3.0};
  c.n_operators = {1, 2, 4};
  c.seed = 20261016;
  return c;
}

void CampaignConfig::validate() const {
  for (const std::string& task : task_list(*this)) (void)task_spec(task);
  auto nonempty = [](bool empty, const char* what) {
    if (empty) throw Error(ErrorKind::OutOfRange, std::string(what) + " must not be empty");
  };
  nonempty(offdiag_kinds.empty(), "offdiag_kinds");
  nonempty(diagonal_kinds.empty(), "diagonal_kinds");
  nonempty(contraction_kinds.empty(), "contraction_kinds");
  nonempty(dims.empty(), "dims");
  nonempty(r_values.empty(), "r_values");
  nonempty(alpha_values.empty(), "alpha_values");
  nonempty(holder_p_values.empty(), "holder_p_values");
  nonempty(omega_p_values.empty(), "omega_p_values");
  nonempty(n_operators.empty(), "n_operators");
  for (auto [m, n] : dims)
    if (m == 0 || n == 0) throw Error(ErrorKind::ShapeUnsupported, "dims must be positive");
  for (double r : r_values)
    if (!(r >= 1.0) || !std::isfinite(r)) throw Error(ErrorKind::OutOfRange, "r values must be finite and >= 1");
  for (double a : alpha_values)
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorKind::OutOfRange, "alpha values must lie in [0, 1]");
  for (double p : holder_p_values) (void)HolderPair::conjugate_of(p);
  for (double p : omega_p_values)
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::OutOfRange, "omega_p exponents must be >= 1");
  for (std::size_t k : n_operators)
    if (k == 0) throw Error(ErrorKind::OutOfRange, "n_operators entries must be >= 1");
  for (EnsembleKind k : contraction_kinds) {
    if (k != EnsembleKind::contraction && k != EnsembleKind::unitary && k != EnsembleKind::nilpotent_shift &&
        k != EnsembleKind::zero) {
      throw Error(ErrorKind::OutOfRange, std::string(to_string(k)) + " does not produce contractions");
    }
  }
  if (!(omega_tol > 0.0) || !(slack_rel >= 0.0)) throw Error(ErrorKind::OutOfRange, "tolerances must be positive");
}

std::vector<const TrialRecord*> CampaignReport::violations() const {
  std::vector<const TrialRecord*> out;
  for (const TrialRecord& r : records)
    if (r.violation) out.push_back(&r);
  return out;
}

std::size_t CampaignReport::unexpected_violations() const {
  std::size_t n = 0;
  for (const TrialRecord& r : records)
    if (r.violation && !r.task.ends_with(kAsStatedSuffix)) ++n;
  return n;
}

std::size_t CampaignReport::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return r.failed; }));
}

std::vector<BoundSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<BoundSummary> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> ratios;
  for (const TrialRecord& r : records) {
    auto [it, inserted] = index.try_emplace(r.task, out.size());
    if (inserted) {
      BoundSummary s;
      s.task = r.task;
      s.expected_discrepancy = r.task.ends_with(kAsStatedSuffix);
      out.push_back(s);
      ratios.emplace_back();
    }
    BoundSummary& s = out[it->second];
    if (r.failed) {
      ++s.failed;
      continue;
    }
    ++s.count;
    if (r.violation) ++s.violations;
    ratios[it->second].push_back(r.ratio);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& v = ratios[i];
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    out[i].min_ratio = v.front();
    out[i].max_ratio = v.back();
    const std::size_t mid = v.size() / 2;
    out[i].median_ratio = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  }
  return out;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  std::vector<TaskSpec> specs;
  for (const std::string& t : task_list(config)) specs.push_back(task_spec(t));

  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const std::size_t nfixed = config.include_fixed_cases ? fixed_case_count(specs[s].family) : 0;
    for (std::size_t t = 0; t < nfixed + config.trials; ++t) work.emplace_back(s, t);
  }

  std::vector<TrialRecord> records(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      records[i] = run_trial(config, specs[work[i].first], work[i].second);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(1, work.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignReport report;
  report.config = config;
  report.records = std::move(records);
  report.summaries = summarize(report.records);
  return report;
}

TrialRecord replay_trial(const CampaignConfig& config, const std::string& task, std::size_t trial) {
  return run_trial(config, task_spec(task), trial);
}

TrialRecord evaluate_bound(const CampaignConfig& config, const std::string& task,
                           const std::vector<ComplexMatrix>& matrices, const BoundArgs& args) {
  const TaskSpec spec = task_spec(task);
  TrialInput in;
  in.matrices = matrices;
  in.r = args.r;
  in.alpha = args.alpha;
  in.holder_p = args.holder_p;
  in.sign = args.sign;
  in.kinds = "explicit";
  const std::size_t group = spec.family == Family::main4 ? 6 : spec.family == Family::th1 ? 4 : 2;
  if (matrices.empty() || matrices.size() % group != 0 || (group == 2 && matrices.size() != 2)) {
    throw Error(ErrorKind::DimensionMismatch, spec.bound_id + " expects matrices in groups of " + std::to_string(group));
  }
  in.n_ops = matrices.size() / group;
  in.m = matrices[0].rows();
  in.n = group == 2 ? matrices[0].cols() : matrices[group == 6 ? 1 : 3].rows();

  TrialRecord rec;
  rec.bound_id = spec.bound_id;
  rec.task = spec.task;
  if (spec.family == Family::main11) rec.constant_mode = std::string(to_string(spec.mode));
  rec.seed_path = std::to_string(config.seed) + ":" + spec.task + ":explicit";
  rec.m = in.m;
  rec.n = in.n;
  rec.n_ops = in.n_ops;
  rec.r = in.r;
  rec.kinds = in.kinds;
  for (const ComplexMatrix& mtx : matrices) rec.digests.push_back(digest(mtx));
  evaluate(config, spec, in, derive(RngStream{config.seed, 0}, label_of(spec.task)), rec);
  return rec;
}

std::vector<SweepPoint> tightness_sweep(const std::string& bound_id, const std::vector<ComplexMatrix>& matrices,
                                        const SweepSpec& sweep, double omega_tol) {
  (void)task_spec(bound_id);
  CampaignConfig config = CampaignConfig::defaults();
  config.omega_tol = omega_tol;
  std::vector<SweepPoint> table;
  for (double r : sweep.r_values) {
    for (double alpha : sweep.alpha_values) {
      for (double hp : sweep.holder_p_values) {
        BoundArgs args;
        args.r = r;
        args.alpha = alpha;
        args.holder_p = hp;
        const TrialRecord rec = evaluate_bound(config, bound_id, matrices, args);
        table.push_back({r, alpha, hp, rec.value, std::pow(rec.omega_lo, rec.exponent), rec.ratio});
      }
    }
  }
  return table;
}

CampaignReport counterexample_suite(std::uint64_t seed, std::size_t search_trials) {
  CampaignConfig config = CampaignConfig::defaults();
  config.seed = seed;
  config.bound_ids = {"main11.v1"};
  config.include_as_stated = true;
  config.trials = 0;

  CampaignReport report;
  report.config = config;

  // (a) printed constant and (c) proved constant on X = Y = [1], alpha = 1/2, r = 1, p = q = 2.
  TrialRecord a = replay_trial(config, std::string("main11.v1") + kAsStatedSuffix, 0);
  a.task = "a:main11.v1@as_stated";
  TrialRecord c = replay_trial(config, "main11.v1", 0);
  c.task = "c:main11.v1@as_proved";

  // (b) ||X + Y|| <= || |X| + |Y| || outside its normality hypothesis.
  const RngStream root = derive(RngStream{seed, 0}, label_of("normal_inequality"));
  const double slack = config.slack_rel;
  auto check_pair = [&](std::size_t trial, const ComplexMatrix& x, const ComplexMatrix& y, std::string kinds) {
    TrialRecord rec;
    rec.trial = trial;
    rec.bound_id = "sum_norm.normal";
    rec.task = "b:sum_norm.normal@non_normal";
    rec.fixed_case = kinds == "fixed";
    rec.m = rec.n = x.rows();
    rec.r = 1.0;
    rec.sign = 1;
    rec.kinds = std::move(kinds);
    rec.digests = {digest(x), digest(y)};
    rec.seed_path = std::to_string(seed) + ":normal_inequality:" + std::to_string(trial);
    rec.value = spectral_norm(abs_op(x) + abs_op(y));
    const double lhs = spectral_norm(x + y);
    rec.omega_lo = rec.omega_hi = lhs;
    rec.ratio = ratio_of(lhs, rec.value);
    rec.violation = rec.value < lhs - slack * std::max(1.0, rec.value);
    rec.extras = {{"normal_x", is_normal(x) ? 1.0 : 0.0}, {"normal_y", is_normal(y) ? 1.0 : 0.0}};
    return rec;
  };

  report.records.push_back(std::move(a));
  report.records.push_back(check_pair(0, mat({{1, 1}, {0, 0}}), mat({{1, -1}, {0, 0}}), "fixed"));
  for (std::size_t t = 1; t <= search_trials; ++t) {
    const RngStream ts = derive(root, t);
    Rng rng(derive(ts, 0));
    const std::size_t side = 2 + rng.index(2);
    const ComplexMatrix x = sample(EnsembleKind::ginibre, side, side, derive(ts, 1));
    const ComplexMatrix y = sample(EnsembleKind::ginibre, side, side, derive(ts, 2));
    report.records.push_back(check_pair(t, x, y, "ginibre/ginibre"));
  }
  report.records.push_back(std::move(c));
  report.summaries = summarize(report.records);
  for (BoundSummary& s : report.summaries) s.expected_discrepancy = !s.task.starts_with("c:");
  return report;
}

std::string config_to_json(const CampaignConfig& config) { return config_json(config).dump(2); }

CampaignConfig config_from_json(const std::string& text) {
  CampaignConfig c = CampaignConfig::defaults();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "campaign config must be a JSON object");
    auto kinds = [](const nlohmann::json& arr) {
      std::vector<EnsembleKind> out;
      for (const auto& v : arr) {
        const auto k = parse_ensemble(v.get<std::string>());
        if (!k) throw Error(ErrorKind::ParseError, "unknown ensemble kind " + v.get<std::string>());
        out.push_back(*k);
      }
      return out;
    };
    for (const auto& [key, v] : j.items()) {
      if (key == "bound_ids") c.bound_ids = v.get<std::vector<std::string>>();
      else if (key == "offdiag_kinds") c.offdiag_kinds = kinds(v);
      else if (key == "diagonal_kinds") c.diagonal_kinds = kinds(v);
      else if (key == "contraction_kinds") c.contraction_kinds = kinds(v);
      else if (key == "dims") c.dims = v.get<std::vector<std::pair<std::size_t, std::size_t>>>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "r_values") c.r_values = v.get<std::vector<double>>();
      else if (key == "alpha_values") c.alpha_values = v.get<std::vector<double>>();
      else if (key == "holder_p_values") c.holder_p_values = v.get<std::vector<double>>();
      else if (key == "omega_p_values") c.omega_p_values = v.get<std::vector<double>>();
      else if (key == "n_operators") c.n_operators = v.get<std::vector<std::size_t>>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "omega_tol") c.omega_tol = v.get<double>();
      else if (key == "slack_rel") c.slack_rel = v.get<double>();
      else if (key == "include_as_stated") c.include_as_stated = v.get<bool>();
      else if (key == "include_fixed_cases") c.include_fixed_cases = v.get<bool>();
      else if (key == "omega_p_restarts") c.omega_p_restarts = v.get<std::size_t>();
      else if (key == "zeta_restarts") c.zeta_restarts = v.get<std::size_t>();
      else if (key == "jobs") c.jobs = v.get<std::size_t>();
      else throw Error(ErrorKind::ParseError, "unknown config key " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return c;
}

std::string report_to_json(const CampaignReport& report) {
  ojson j;
  j["format_version"] = report.format_version;
  j["config"] = config_json(report.config);
  ojson summaries = ojson::array();
  ojson expected = ojson::array();
  for (const BoundSummary& s : report.summaries) {
    (s.expected_discrepancy ? expected : summaries).push_back(summary_json(s));
  }
  j["summaries"] = summaries;
  j["expected_discrepancy"] = expected;
  j["unexpected_violations"] = report.unexpected_violations();
  ojson violations = ojson::array();
  for (const TrialRecord* r : report.violations()) violations.push_back(record_json(*r));
  j["violations"] = violations;
  ojson records = ojson::array();
  for (const TrialRecord& r : report.records) records.push_back(record_json(r));
  j["records"] = records;
  return j.dump(1) + "\n";
}

std::string report_to_csv(const CampaignReport& report) {
  std::ostringstream out;
  out << "trial,bound_id,m,n,r,alpha,p,q,value,omega_lo,omega_hi,ratio,violation,seed_path\n";
  for (const TrialRecord& r : report.records) {
    out << r.trial << ',' << r.bound_id << ',' << r.m << ',' << r.n << ',' << format_double(r.r) << ','
        << csv_opt(r.alpha) << ',' << csv_opt(r.p) << ',' << csv_opt(r.q) << ',' << csv_num(r.value) << ','
        << csv_num(r.omega_lo) << ',' << csv_num(r.omega_hi) << ',' << csv_num(r.ratio) << ','
        << (r.violation ? "true" : "false") << ',' << r.seed_path << '\n';
  }
  return out.str();
}

}  // namespace numrad
