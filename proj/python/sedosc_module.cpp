// Python bindings for the core operations: vacuum-field sampling, the two
// trajectory solvers, the variance quadrature, wavepacket evaluation,
// energy-flow reports, ensembles and the built-in acceptance checks.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sedosc/dynamics.hpp"
#include "sedosc/ensemble.hpp"
#include "sedosc/heisenberg.hpp"
#include "sedosc/model.hpp"
#include "sedosc/vacuum_field.hpp"
#include "sedosc/verify.hpp"
#include "sedosc/wavepacket.hpp"

namespace py = pybind11;
using namespace sedosc;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Charged harmonic oscillator driven by a classical zero-point "
            "field: trajectories, wavepacket statistics, energy flows";

  py::register_exception<validation_error>(m, "ValidationError",
                                           PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def_static("dimensionless", &ModelParams::dimensionless,
                  py::arg("epsilon"),
                  "Canonical units hbar = m = w0 = 1 with the damping "
                  "epsilon = 2 e^2 w0 / (3 m c^3)")
      .def_static("from_physical", &ModelParams::from_physical,
                  py::arg("mass"), py::arg("charge"), py::arg("omega0"),
                  py::arg("hbar"), py::arg("c_light"))
      .def("to_dimensionless", &ModelParams::to_dimensionless)
      .def_property_readonly("mass", &ModelParams::mass)
      .def_property_readonly("charge", &ModelParams::charge)
      .def_property_readonly("omega0", &ModelParams::omega0)
      .def_property_readonly("hbar", &ModelParams::hbar)
      .def_property_readonly("c_light", &ModelParams::c_light)
      .def_property_readonly("epsilon", &ModelParams::epsilon)
      .def_property_readonly("tau_r", &ModelParams::tau_r)
      .def_property_readonly("ground_state_variance",
                             &ModelParams::ground_state_variance)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(epsilon=" + std::to_string(p.epsilon()) + ")";
      });

  py::class_<FieldModeSet>(m, "FieldModeSet")
      .def(py::init<std::vector<double>, std::vector<double>,
                    std::vector<double>, std::uint64_t, double>(),
           py::arg("frequencies"), py::arg("amplitudes"), py::arg("phases"),
           py::arg("seed") = 0, py::arg("omega_cut") = 0.0)
      .def_property_readonly(
          "frequencies",
          [](const FieldModeSet& s) { return to_array(s.frequencies); })
      .def_property_readonly(
          "amplitudes",
          [](const FieldModeSet& s) { return to_array(s.amplitudes); })
      .def_property_readonly(
          "phases", [](const FieldModeSet& s) { return to_array(s.phases); })
      .def_readonly("seed", &FieldModeSet::seed)
      .def_readonly("omega_cut", &FieldModeSet::omega_cut)
      .def("__len__", &FieldModeSet::size);

  m.def("spectral_density", &spectral_density, py::arg("omega"),
        py::arg("params"),
        "One-sided spectral density of the per-mass drive, (eps/pi) w^3 "
        "dimensionless");
  m.def("mode_amplitude", &mode_amplitude, py::arg("omega"),
        py::arg("delta_omega"), py::arg("params"));
  m.def("draw_phases",
        [](std::uint64_t seed, std::size_t count) {
          return to_array(draw_phases(seed, count));
        },
        py::arg("seed"), py::arg("count"));
  m.def("sample_modes", &sample_modes, py::arg("params"), py::arg("omega_cut"),
        py::arg("n_modes"), py::arg("seed"));
  m.def("field_at", &field_at, py::arg("modes"), py::arg("t"));
  m.def("field_derivative_at", &field_derivative_at, py::arg("modes"),
        py::arg("t"));
  m.def("vector_potential_at", &vector_potential_at, py::arg("modes"),
        py::arg("t"), py::arg("params"));

  m.def("response_function",
        [](double omega, const ModelParams& params) {
          return response_function(omega, params).chi;
        },
        py::arg("omega"), py::arg("params"),
        "chi(w) = 1/(w0^2 - w^2 - i tau_R w^3); the response lags the drive "
        "by arg(chi)");

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly(
          "times", [](const Trajectory& t) { return to_array(t.times); })
      .def_property_readonly("q",
                             [](const Trajectory& t) { return to_array(t.q); })
      .def_property_readonly("p",
                             [](const Trajectory& t) { return to_array(t.p); })
      .def_property_readonly("g",
                             [](const Trajectory& t) { return to_array(t.g); })
      .def_readonly("transient_end", &Trajectory::transient_end)
      .def("__len__", [](const Trajectory& t) { return t.times.size(); });

  m.def("stationary_trajectory",
        [](const FieldModeSet& modes, double dt, std::size_t n_samples,
           const ModelParams& params) {
          return stationary_trajectory(modes, TimeGrid{dt, n_samples}, params);
        },
        py::arg("modes"), py::arg("dt"), py::arg("n_samples"),
        py::arg("params"));
  m.def("integrate_time_domain",
        [](const FieldModeSet& modes, double t_total, double dt, double q0,
           double p0, const ModelParams& params) {
          return integrate_time_domain(modes, t_total, dt, {q0, p0}, params);
        },
        py::arg("modes"), py::arg("t_total"), py::arg("dt"),
        py::arg("q0"), py::arg("p0"), py::arg("params"));
  m.def("accumulate_phase",
        [](const std::vector<double>& q, const std::vector<double>& p,
           double dt, const ModelParams& params) {
          return to_array(accumulate_phase(q, p, dt, params));
        },
        py::arg("q"), py::arg("p"), py::arg("dt"), py::arg("params"));

  m.def("variance_integral",
        [](const ModelParams& params, double rel_tol) {
          const VarianceResult r = variance_integral(params, rel_tol);
          return py::make_tuple(r.value, r.rel_error);
        },
        py::arg("params"), py::arg("rel_tol") = 1e-6,
        "Stationary <q_c^2>; returns (value, achieved relative error)");
  m.def("variance_integrand", &variance_integrand, py::arg("omega"),
        py::arg("params"));
  m.def("narrow_resonance_value", &narrow_resonance_value, py::arg("params"));
  m.def("discrete_variance_prediction", &discrete_variance_prediction,
        py::arg("modes"), py::arg("params"));
  m.def("transient_time", &transient_time, py::arg("params"));

  py::class_<WavepacketSample>(m, "WavepacketSample")
      .def_static("make", &WavepacketSample::make, py::arg("params"),
                  py::arg("center") = 0.0, py::arg("momentum") = 0.0,
                  py::arg("vector_potential") = 0.0, py::arg("phase") = 0.0)
      .def_readwrite("center", &WavepacketSample::center)
      .def_readwrite("momentum", &WavepacketSample::momentum)
      .def_readwrite("vector_potential", &WavepacketSample::vector_potential)
      .def_readwrite("phase", &WavepacketSample::phase)
      .def_readonly("width_sq", &WavepacketSample::width_sq)
      .def("canonical_momentum", &WavepacketSample::canonical_momentum,
           py::arg("params"));

  m.def("ground_state_density", &ground_state_density, py::arg("x"),
        py::arg("params"));
  m.def("wavefunction", &wavefunction, py::arg("x"), py::arg("sample"),
        py::arg("params"));
  m.def("position_second_moment", &position_second_moment, py::arg("sample"),
        py::arg("params"));
  m.def("exact_stationary_path", &exact_stationary_path, py::arg("modes"),
        py::arg("params"),
        "t -> WavepacketSample solving the Schrodinger equation exactly");
  m.def("schrodinger_residual", &schrodinger_residual, py::arg("path"),
        py::arg("params"), py::arg("t"), py::arg("dt"), py::arg("half_width"),
        py::arg("n_points"));

  m.def("acceleration_matrix_element", &acceleration_matrix_element,
        py::arg("n"), py::arg("m"), py::arg("params"));
  py::class_<EnergyFlowReport>(m, "EnergyFlowReport")
      .def_readonly("state_index", &EnergyFlowReport::state_index)
      .def_readonly("self_reaction", &EnergyFlowReport::self_reaction)
      .def_readonly("vacuum_up", &EnergyFlowReport::vacuum_up)
      .def_readonly("vacuum_down", &EnergyFlowReport::vacuum_down)
      .def_readonly("total_full", &EnergyFlowReport::total_full)
      .def_readonly("total_compact", &EnergyFlowReport::total_compact);
  m.def("energy_flow_full", &energy_flow_full, py::arg("n"), py::arg("params"),
        py::arg("n_max"));
  m.def("energy_flow_compact", &energy_flow_compact, py::arg("n"),
        py::arg("params"));
  m.def("energy_flow_range", &energy_flow_range, py::arg("n_lo"),
        py::arg("n_hi"), py::arg("params"));

  py::enum_<SolverKind>(m, "SolverKind")
      .value("stationary", SolverKind::stationary)
      .value("time_domain", SolverKind::time_domain);

  py::class_<EnsembleConfig>(m, "EnsembleConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &EnsembleConfig::epsilon)
      .def_readwrite("omega_cut", &EnsembleConfig::omega_cut)
      .def_readwrite("n_modes", &EnsembleConfig::n_modes)
      .def_readwrite("dt", &EnsembleConfig::dt)
      .def_readwrite("t_total", &EnsembleConfig::t_total)
      .def_readwrite("realizations", &EnsembleConfig::realizations)
      .def_readwrite("base_seed", &EnsembleConfig::base_seed)
      .def_readwrite("solver", &EnsembleConfig::solver)
      .def_readwrite("threads", &EnsembleConfig::threads);

  py::class_<MomentEstimate>(m, "MomentEstimate")
      .def_readonly("value", &MomentEstimate::value)
      .def_readonly("std_error", &MomentEstimate::std_error)
      .def_readonly("effective_samples", &MomentEstimate::effective_samples);

  py::class_<RealizationResult>(m, "RealizationResult")
      .def_readonly("seed", &RealizationResult::seed)
      .def_readonly("mean_q", &RealizationResult::mean_q)
      .def_readonly("mean_q_sq", &RealizationResult::mean_q_sq)
      .def_readonly("transient_time", &RealizationResult::transient_time)
      .def_readonly("samples_used", &RealizationResult::samples_used);

  py::class_<EnsembleStats>(m, "EnsembleStats")
      .def_readonly("mean_qc", &EnsembleStats::mean_qc)
      .def_readonly("mean_qc_sq", &EnsembleStats::mean_qc_sq)
      .def_readonly("mean_xbar_sq", &EnsembleStats::mean_xbar_sq)
      .def_readonly("per_realization", &EnsembleStats::per_realization)
      .def_readonly("wall_time_seconds", &EnsembleStats::wall_time_seconds);

  m.def("run_ensemble", &run_ensemble, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<PhaseCheckResult>(m, "PhaseCheckResult")
      .def_readonly("max_dev_orthogonality",
                    &PhaseCheckResult::max_dev_orthogonality)
      .def_readonly("max_dev_same_sign", &PhaseCheckResult::max_dev_same_sign)
      .def("max_deviation", &PhaseCheckResult::max_deviation);
  m.def("phase_orthogonality_check", &phase_orthogonality_check,
        py::arg("realizations"), py::arg("n_modes"),
        py::arg("base_seed") = 1234567);

  py::class_<verify::CheckResult>(m, "CheckResult")
      .def_readonly("name", &verify::CheckResult::name)
      .def_readonly("pass_", &verify::CheckResult::pass)
      .def_readonly("detail", &verify::CheckResult::detail)
      .def_readonly("seconds", &verify::CheckResult::seconds)
      .def("__repr__", [](const verify::CheckResult& r) {
        return (r.pass ? std::string("PASS ") : std::string("FAIL ")) + r.name;
      });
  m.def("run_checks",
        [](bool quick, int threads, bool inject_wrong_density) {
          verify::VerifyOptions options;
          options.quick = quick;
          options.threads = threads;
          options.inject_wrong_density = inject_wrong_density;
          return verify::run_all(options);
        },
        py::arg("quick") = true, py::arg("threads") = 0,
        py::arg("inject_wrong_density") = false,
        py::call_guard<py::gil_scoped_release>());
}
