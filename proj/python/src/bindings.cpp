#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>

#include "mixclust/harness.hpp"
#include "mixclust/metrics.hpp"
#include "mixclust/preprocess.hpp"
#include "mixclust/spectral.hpp"
#include "mixclust/verify.hpp"

namespace py = pybind11;
using namespace mixclust;

namespace {

// Boundary rule: python passes dense symmetric arrays; from_dense validates
// and averages the triangles, so asymmetry beyond tolerance raises.
SymmetricMatrix sym(const Matrix& m) { return SymmetricMatrix::from_dense(m); }

std::string csv_of(const ExperimentPlan& plan) {
  const std::vector<SweepRow> rows =
      plan.mode == RunMode::sweep ? run_sweep(plan) : run_angles(plan);
  std::ostringstream os;
  write_sweep_csv(rows, plan.mode, os);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SDP and spectral clustering of two-population mixtures";
  m.attr("__version__") = "0.1.0";

  py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch",
                                            PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence",
                                         PyExc_RuntimeError);
  py::register_exception<DegenerateSpectrum>(m, "DegenerateSpectrum",
                                             PyExc_RuntimeError);

  py::class_<MixtureSpec>(m, "MixtureSpec")
      .def_readonly("n", &MixtureSpec::n)
      .def_readonly("p", &MixtureSpec::p)
      .def_readonly("w1", &MixtureSpec::w1)
      .def_readonly("mu1", &MixtureSpec::mu1)
      .def_readonly("mu2", &MixtureSpec::mu2)
      .def_readonly("alpha", &MixtureSpec::alpha)
      .def_readonly("eps", &MixtureSpec::eps)
      .def_property_readonly("n1", &MixtureSpec::n1)
      .def_property_readonly("gamma",
                             [](const MixtureSpec& s) {
                               return separation(s).gamma;
                             })
      .def("__repr__", [](const MixtureSpec& s) {
        return "<MixtureSpec " + spec_fingerprint(s) + ">";
      });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("X", &Dataset::X)
      .def_readonly("membership", &Dataset::membership)
      .def_readonly("seed", &Dataset::seed)
      .def_property_readonly("spec",
                             [](const Dataset& d) { return d.spec; });

  py::class_<CenteredData>(m, "CenteredData")
      .def_readonly("Y", &CenteredData::Y)
      .def_property_readonly(
          "gram", [](const CenteredData& c) { return c.gram.dense(); })
      .def_readonly("lam", &CenteredData::lambda)
      .def_readonly("tau", &CenteredData::tau);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init([](int rank, double tol, int max_iters, int restarts,
                       std::uint64_t seed) {
             SolverOptions o;
             o.rank = rank;
             o.tol = tol;
             o.max_iters = max_iters;
             o.restarts = restarts;
             o.seed = seed;
             return o;
           }),
           py::arg("rank") = 0, py::arg("tol") = 1e-7,
           py::arg("max_iters") = 2000, py::arg("restarts") = 3,
           py::arg("seed") = 0)
      .def_readwrite("rank", &SolverOptions::rank)
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("max_iters", &SolverOptions::max_iters)
      .def_readwrite("restarts", &SolverOptions::restarts)
      .def_readwrite("seed", &SolverOptions::seed);

  py::class_<SdpSolution>(m, "SdpSolution")
      .def_readonly("factor", &SdpSolution::factor)
      .def_readonly("objective", &SdpSolution::objective)
      .def_readonly("iterations", &SdpSolution::iterations)
      .def_readonly("converged", &SdpSolution::converged);

  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("value", &EigenResult::value)
      .def_readonly("vector", &EigenResult::vector)
      .def_readonly("iterations", &EigenResult::iterations)
      .def_readonly("residual", &EigenResult::residual);

  py::class_<ZDistances>(m, "ZDistances")
      .def_readonly("z_l1", &ZDistances::z_l1)
      .def_readonly("z_frob", &ZDistances::z_frob)
      .def_readonly("z_op", &ZDistances::z_op);

  py::class_<GrothendieckReport>(m, "GrothendieckReport")
      .def_readonly("sdp_value", &GrothendieckReport::sdp_value)
      .def_readonly("inf_to_one", &GrothendieckReport::inf_to_one)
      .def_readonly("ratio", &GrothendieckReport::ratio)
      .def_readonly("ok", &GrothendieckReport::pass);

  py::class_<CurvatureReport>(m, "CurvatureReport")
      .def_readonly("lhs", &CurvatureReport::lhs)
      .def_readonly("rhs", &CurvatureReport::rhs)
      .def_readonly("holds", &CurvatureReport::holds);

  py::class_<EnvelopeReport>(m, "EnvelopeReport")
      .def_readonly("trials", &EnvelopeReport::trials)
      .def_readonly("gram_dev_max", &EnvelopeReport::gram_dev_max)
      .def_readonly("gram_dev_mean", &EnvelopeReport::gram_dev_mean)
      .def_readonly("c_hat", &EnvelopeReport::c_hat)
      .def_readonly("bias_dev_max", &EnvelopeReport::bias_dev_max)
      .def_readonly("bias_dev_mean", &EnvelopeReport::bias_dev_mean)
      .def_readonly("xi_hat", &EnvelopeReport::xi_hat);

  py::class_<SandwichReport>(m, "SandwichReport")
      .def_readonly("lhs", &SandwichReport::lhs)
      .def_readonly("upper", &SandwichReport::upper)
      .def_readonly("delta", &SandwichReport::delta)
      .def_readonly("delta_bound", &SandwichReport::delta_bound)
      .def_readonly("lower_ok", &SandwichReport::lower_ok)
      .def_readonly("upper_ok", &SandwichReport::upper_ok)
      .def_readonly("delta_ok", &SandwichReport::delta_ok)
      .def_readonly("solver_ok", &SandwichReport::solver_ok)
      .def_property_readonly("ok", &SandwichReport::pass);

  py::class_<CheckRow>(m, "CheckRow")
      .def_readonly("name", &CheckRow::name)
      .def_readonly("fingerprint", &CheckRow::fingerprint)
      .def_readonly("statistic", &CheckRow::statistic)
      .def_readonly("bound", &CheckRow::bound)
      .def_readonly("ok", &CheckRow::pass)
      .def("__repr__", [](const CheckRow& r) {
        return "<CheckRow " + r.name + (r.pass ? " ok>" : " FAIL>");
      });

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("rows", &VerifyReport::rows)
      .def("all_pass", &VerifyReport::all_pass)
      .def("csv", [](const VerifyReport& r) {
        std::ostringstream os;
        write_check_rows(r.rows, os);
        return os.str();
      });

  // Mixture model.
  m.def("make_bernoulli_spec", &make_bernoulli_spec, py::arg("alpha"),
        py::arg("eps"), py::arg("p"), py::arg("n"), py::arg("w1") = 0.5,
        "Mirrored two-population design with gamma = alpha^2.");
  m.def("spec_from_json", &spec_from_json, py::arg("text"));
  m.def("spec_to_json", &spec_to_json, py::arg("spec"));
  m.def("sample", &sample, py::arg("spec"), py::arg("seed"),
        "Deterministic dataset: row streams are keyed by (seed, row).");
  m.def("snr", &snr, py::arg("spec"));

  // Preprocessing and references.
  m.def("center", &center, py::arg("X"),
        "Global centering; returns Y, the gram, lambda and tau.");
  m.def("build_a", [](const CenteredData& cd) { return build_A(cd).dense(); },
        py::arg("centered"), "Adjusted objective matrix A.");
  m.def("sdp2_matrix",
        [](const CenteredData& cd) { return sdp2_matrix(cd).dense(); },
        py::arg("centered"));
  m.def("reference_r",
        [](const MixtureSpec& s) { return reference_R(s).dense(); },
        py::arg("spec"));
  m.def("reference_v1", &reference_v1, py::arg("spec"));
  m.def("expected_gram",
        [](const MixtureSpec& s) { return expected_gram(s).dense(); },
        py::arg("spec"));
  m.def("expected_bias",
        [](const MixtureSpec& s) { return expected_bias(s).dense(); },
        py::arg("spec"));
  m.def("expected_tau", &expected_tau, py::arg("spec"));

  // Solvers and rounding.
  m.def("solve",
        [](const Matrix& a, const SolverOptions& opts) {
          return solve(sym(a), opts);
        },
        py::arg("a"), py::arg("options") = SolverOptions(),
        "Low-rank ascent over the elliptope; best restart wins.");
  m.def("leading_eigvec", &leading_eigvec, py::arg("solution"));
  m.def("round_signs", &round_signs, py::arg("x"));
  m.def("top_eigen",
        [](const Matrix& s, double tol) { return top_eigen(sym(s), tol); },
        py::arg("s"), py::arg("tol") = 1e-10);
  m.def("peng_wei_split", &peng_wei_split, py::arg("v"), py::arg("Y"),
        "Contiguous 1-D 2-means split along v.");
  m.def("sign_split", &sign_split, py::arg("v"));

  // Metrics.
  m.def("success_rate", &success_rate, py::arg("pred"), py::arg("truth"),
        "Label-swap-maximized agreement in [1/2, 1].");
  m.def("angle_deg", &angle_deg, py::arg("u"), py::arg("v"));
  m.def("aligned_l2", &aligned_l2, py::arg("u"), py::arg("v"));
  m.def("z_distances", &z_distances, py::arg("solution"), py::arg("truth"),
        "Normalized l1/frobenius/operator deviations from the planted Z.");

  // Verification toolkit.
  m.def("op_norm",
        [](const Matrix& mm, double tol) { return op_norm(sym(mm), tol); },
        py::arg("m"), py::arg("tol") = 1e-8);
  m.def("inf_to_one_exact", &inf_to_one_exact, py::arg("m"),
        "Exact inf->1 norm by enumeration (n <= 22).");
  m.def("grothendieck_check",
        [](const Matrix& mm, const SolverOptions& opts) {
          return grothendieck_check(sym(mm), opts);
        },
        py::arg("m"), py::arg("options") = SolverOptions());
  m.def("brute_force_maxcut",
        [](const Matrix& a) {
          const MaxcutResult r = brute_force_maxcut(sym(a));
          return py::make_tuple(r.x_opt, r.value);
        },
        py::arg("a"), "Exhaustive max of x'Ax over signs; returns (x, value).");
  m.def("curvature_check",
        [](const MixtureSpec& spec, const Matrix& z) {
          return curvature_check(spec, sym(z));
        },
        py::arg("spec"), py::arg("z"));
  m.def("deviation_envelope", &deviation_envelope, py::arg("spec"),
        py::arg("trials"), py::arg("seed"));
  m.def("sandwich_check", &sandwich_check, py::arg("spec"), py::arg("seed"),
        py::arg("options") = SolverOptions());
  m.def("run_verify", &run_verify, py::arg("seed") = 0,
        "Deterministic verification battery.");

  // Experiments: JSON plan in, CSV text out.
  m.def("sweep_csv",
        [](const std::string& plan_json) {
          ExperimentPlan plan = plan_from_json(plan_json);
          plan.mode = RunMode::sweep;
          return csv_of(plan);
        },
        py::arg("plan_json"), "Success-rate sweep over the plan's grid.");
  m.def("angles_csv",
        [](const std::string& plan_json) {
          ExperimentPlan plan = plan_from_json(plan_json);
          plan.mode = RunMode::angles;
          return csv_of(plan);
        },
        py::arg("plan_json"), "Sweep plus the angle-study columns.");
}
