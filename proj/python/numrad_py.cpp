#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "numrad/bounds.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/error.hpp"
#include "numrad/harness.hpp"
#include "numrad/radius.hpp"

namespace py = pybind11;
using namespace numrad;

namespace {

std::vector<ComplexMatrix> to_matrices(const std::vector<DenseMatrix>& in) {
  std::vector<ComplexMatrix> out;
  out.reserve(in.size());
  for (const DenseMatrix& m : in) out.emplace_back(m);
  return out;
}

Sign parse_sign(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::plus;
  if (s == "minus" || s == "-") return Sign::minus;
  throw Error(ErrorKind::OutOfRange, "sign must be plus or minus, got '" + s + "'");
}

py::object opt(const std::optional<double>& v) { return v ? py::object(py::float_(*v)) : py::object(py::none()); }

py::dict record_dict(const TrialRecord& r) {
  py::dict d;
  d["bound_id"] = r.bound_id;
  d["task"] = r.task;
  d["constant_mode"] = r.constant_mode;
  d["m"] = r.m;
  d["n"] = r.n;
  d["n_ops"] = r.n_ops;
  d["r"] = r.r;
  d["alpha"] = opt(r.alpha);
  d["p"] = opt(r.p);
  d["q"] = opt(r.q);
  d["value"] = r.value;
  d["exponent"] = r.exponent;
  d["omega_lo"] = r.omega_lo;
  d["omega_hi"] = r.omega_hi;
  d["ratio"] = r.ratio;
  d["violation"] = r.violation;
  py::dict extras;
  for (const auto& [k, v] : r.extras) extras[py::str(k)] = v;
  d["extras"] = extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(_numrad, m) {
  m.doc() = "Certified numerical radius and operator-matrix bound checks";

  static py::exception<Error> numrad_error(m, "NumradError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = numrad_error;
      py::object inst = exc(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.def(
      "omega",
      [](const DenseMatrix& t, double tol) {
        const CertifiedRadius w = omega(ComplexMatrix(t), tol);
        py::dict d;
        d["lo"] = w.lo;
        d["hi"] = w.hi;
        d["theta"] = w.witness_theta;
        d["witness"] = w.witness;
        return d;
      },
      py::arg("t"), py::arg("tol") = 1e-9, "Certified enclosure [lo, hi] of the numerical radius (absolute tol).");

  m.def(
      "omega_p",
      [](const std::vector<DenseMatrix>& ops, double p, std::uint64_t seed, std::uint64_t stream,
         std::size_t restarts) {
        const std::vector<ComplexMatrix> mats = to_matrices(ops);
        OmegaPOptions options;
        options.restarts = restarts;
        const OmegaPEstimate est = numrad::omega_p(mats, p, RngStream{seed, stream}, options);
        py::dict d;
        d["value"] = est.value;
        d["witness"] = est.witness;
        d["converged"] = est.converged;
        d["restarts"] = est.restarts_used;
        return d;
      },
      py::arg("ops"), py::arg("p") = 2.0, py::arg("seed") = 0, py::arg("stream") = 0, py::arg("restarts") = 0,
      "Lower estimate of the generalized radius max_x (sum_i |<T_i x, x>|^p)^(1/p).");

  m.def(
      "evaluate_bound",
      [](const std::string& task, const std::vector<DenseMatrix>& matrices, double r, double alpha,
         double holder_p, const std::string& sign, double tol) {
        CampaignConfig config = CampaignConfig::defaults();
        config.omega_tol = tol;
        BoundArgs args{r, alpha, holder_p, parse_sign(sign)};
        return record_dict(numrad::evaluate_bound(config, task, to_matrices(matrices), args));
      },
      py::arg("task"), py::arg("matrices"), py::arg("r") = 1.0, py::arg("alpha") = 0.5, py::arg("holder_p") = 2.0,
      py::arg("sign") = "plus", py::arg("tol") = 1e-9,
      "Evaluates one bound on explicit matrices against the certified left-hand side.");

  m.def("is_known_bound", [](const std::string& id) { return is_known_bound(id); }, py::arg("id"));

  m.def(
      "refined_young",
      [](double a, double b, int k) {
        const YoungSides s = numrad::refined_young(a, b, k);
        return py::make_tuple(s.lhs, s.rhs);
      },
      py::arg("a"), py::arg("b"), py::arg("m"));

  m.def(
      "sample",
      [](const std::string& kind, std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint64_t stream) {
        const auto k = parse_ensemble(kind);
        if (!k) throw Error(ErrorKind::OutOfRange, "unknown ensemble '" + kind + "'");
        return numrad::sample(*k, rows, cols, RngStream{seed, stream}).dense();
      },
      py::arg("kind"), py::arg("rows"), py::arg("cols"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def(
      "run_campaign_json",
      [](const std::string& config_json, std::size_t jobs) {
        CampaignConfig config = config_from_json(config_json);
        if (jobs > 0) config.jobs = jobs;
        CampaignReport report;
        {
          py::gil_scoped_release release;
          report = run_campaign(config);
        }
        return report_to_json(report);
      },
      py::arg("config_json") = "{}", py::arg("jobs") = 0);

  m.def(
      "default_config_json", [] { return config_to_json(CampaignConfig::defaults()); });

  m.def(
      "counterexamples_json",
      [](std::uint64_t seed, std::size_t trials) {
        CampaignReport report;
        {
          py::gil_scoped_release release;
          report = counterexample_suite(seed, trials);
        }
        return report_to_json(report);
      },
      py::arg("seed") = 0, py::arg("search_trials") = 500);
}
