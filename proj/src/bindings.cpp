// Python bindings for the pump simulator. The module mirrors the C++ API
// one to one: parameters, state space, generator assembly, propagation,
// membrane mechanics, trajectories, scans, config and CSV serialization,
// and the self-check registry.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "qcycle/config.hpp"
#include "qcycle/csv.hpp"
#include "qcycle/generator.hpp"
#include "qcycle/membrane.hpp"
#include "qcycle/propagator.hpp"
#include "qcycle/rates.hpp"
#include "qcycle/scan.hpp"
#include "qcycle/state_space.hpp"
#include "qcycle/trajectory.hpp"
#include "qcycle/validate.hpp"

namespace py = pybind11;
using namespace qcycle;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stochastic simulator of a shuttle-mediated membrane proton pump";

    m.attr("HBAR_INV_US_PER_MEV") = kHbarInvUsPerMev;
    m.attr("BOLTZMANN_MEV_PER_K") = kBoltzmannMevPerK;
    m.attr("ROOM_TEMPERATURE_K") = kRoomTemperatureK;
    m.attr("NUM_SITES") = kNumSites;
    m.attr("NUM_STATES") = kNumStates;
    m.attr("DEFAULT_DELTA_PH") = kDefaultDeltaPh;

    py::enum_<SiteId>(m, "SiteId")
        .value("ShuttleE1", SiteId::ShuttleE1)
        .value("ShuttleE2", SiteId::ShuttleE2)
        .value("ShuttleP1", SiteId::ShuttleP1)
        .value("ShuttleP2", SiteId::ShuttleP2)
        .value("HemeL", SiteId::HemeL)
        .value("HemeH", SiteId::HemeH)
        .value("SiteA", SiteId::SiteA)
        .value("SiteB", SiteId::SiteB);

    py::enum_<ProtonGapConvention>(m, "ProtonGapConvention")
        .value("Signed", ProtonGapConvention::Signed)
        .value("Absolute", ProtonGapConvention::Absolute);

    py::enum_<Side>(m, "Side").value("N", Side::N).value("P", Side::P);

    py::enum_<ChannelKind>(m, "ChannelKind")
        .value("ElectronReservoir", ChannelKind::ElectronReservoir)
        .value("Marcus", ChannelKind::Marcus)
        .value("ProtonReservoir", ChannelKind::ProtonReservoir);

    py::enum_<ScanVariable>(m, "ScanVariable")
        .value("DeltaMu", ScanVariable::DeltaMu)
        .value("DeltaV", ScanVariable::DeltaV)
        .value("Temperature", ScanVariable::Temperature);

    py::enum_<TemperatureScheme>(m, "TemperatureScheme")
        .value("I", TemperatureScheme::I)
        .value("II", TemperatureScheme::II)
        .value("III", TemperatureScheme::III);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("eps_Q0", &ModelParams::eps_Q0)
        .def_readwrite("E_Q0", &ModelParams::E_Q0)
        .def_readwrite("eps_L_prime", &ModelParams::eps_L_prime)
        .def_readwrite("eps_H_prime", &ModelParams::eps_H_prime)
        .def_readwrite("eps_A_prime", &ModelParams::eps_A_prime)
        .def_readwrite("eps_B_prime", &ModelParams::eps_B_prime)
        .def_readwrite("U_ee", &ModelParams::U_ee)
        .def_readwrite("U_pp", &ModelParams::U_pp)
        .def_readwrite("U_ep", &ModelParams::U_ep)
        .def_readwrite("U_LH", &ModelParams::U_LH)
        .def_readwrite("lambda_AQ", &ModelParams::lambda_AQ)
        .def_readwrite("lambda_BQ", &ModelParams::lambda_BQ)
        .def_readwrite("lambda_LQ", &ModelParams::lambda_LQ)
        .def_readwrite("lambda_HQ", &ModelParams::lambda_HQ)
        .def_readwrite("lambda_LH", &ModelParams::lambda_LH)
        .def_readwrite("Delta_AQ", &ModelParams::Delta_AQ)
        .def_readwrite("Delta_BQ", &ModelParams::Delta_BQ)
        .def_readwrite("Delta_LQ", &ModelParams::Delta_LQ)
        .def_readwrite("Delta_HQ", &ModelParams::Delta_HQ)
        .def_readwrite("Delta_LH", &ModelParams::Delta_LH)
        .def_readwrite("gamma_Fd", &ModelParams::gamma_Fd)
        .def_readwrite("gamma_Pc", &ModelParams::gamma_Pc)
        .def_readwrite("Gamma_N", &ModelParams::Gamma_N)
        .def_readwrite("Gamma_P", &ModelParams::Gamma_P)
        .def_readwrite("mu_Fd", &ModelParams::mu_Fd)
        .def_readwrite("mu_Pc", &ModelParams::mu_Pc)
        .def_readwrite("mu_N", &ModelParams::mu_N)
        .def_readwrite("mu_P", &ModelParams::mu_P)
        .def_readwrite("T", &ModelParams::T)
        .def_readwrite("V_P", &ModelParams::V_P)
        .def_readwrite("V_N", &ModelParams::V_N)
        .def_readwrite("U_w0", &ModelParams::U_w0)
        .def_readwrite("U_ch0", &ModelParams::U_ch0)
        .def_readwrite("x0", &ModelParams::x0)
        .def_readwrite("l_e", &ModelParams::l_e)
        .def_readwrite("l_p", &ModelParams::l_p)
        .def_readwrite("x_w", &ModelParams::x_w)
        .def_readwrite("l_w", &ModelParams::l_w)
        .def_readwrite("x_ch", &ModelParams::x_ch)
        .def_readwrite("l_ch", &ModelParams::l_ch)
        .def_readwrite("zeta", &ModelParams::zeta)
        .def_readwrite("dt", &ModelParams::dt)
        .def_readwrite("proton_gap_convention", &ModelParams::proton_gap_convention)
        .def_readwrite("initial_state", &ModelParams::initial_state)
        .def_readwrite("initial_x", &ModelParams::initial_x)
        .def("diffusion", &ModelParams::diffusion)
        .def("set_surface_potential", &ModelParams::set_surface_potential,
             py::arg("v_p"), py::arg("v_n"))
        .def("check", &ModelParams::check);

    m.def("surface_potential", &surface_potential, py::arg("x"), py::arg("params"));
    m.def("state_energy_base", &state_energy_base, py::arg("state"), py::arg("params"));
    m.def("surface_charge_coefficient", &surface_charge_coefficient, py::arg("state"));
    m.def("state_energy", &state_energy, py::arg("state"), py::arg("x"), py::arg("params"));
    m.def("basis_population", &basis_population, py::arg("state"));
    m.def("site_occupation", &site_occupation, py::arg("population"), py::arg("site"));
    m.def("shuttle_charge_sq", &shuttle_charge_sq, py::arg("population"));
    m.def("electron_count", &electron_count, py::arg("state"));
    m.def("proton_count", &proton_count, py::arg("state"));

    py::class_<StateTable>(m, "StateTable")
        .def(py::init<const ModelParams&>(), py::arg("params"))
        .def("energy", &StateTable::energy, py::arg("state"), py::arg("v_surface"));

    m.def("fermi_occupation", &fermi_occupation, py::arg("eps"), py::arg("T"), py::arg("mu"));
    m.def(
        "fermi_pair",
        [](double eps, double T, double mu) {
            const FermiPair f = fermi_pair(eps, T, mu);
            return py::make_tuple(f.occ, f.hole);
        },
        py::arg("eps"), py::arg("T"), py::arg("mu"),
        "Occupation and the stable hole factor 1 - occupation.");
    m.def("marcus_factor", &marcus_factor, py::arg("d_omega"), py::arg("lambda_"), py::arg("T"));
    m.def("marcus_rate", &marcus_rate, py::arg("d_omega"), py::arg("lambda_"), py::arg("T"),
          py::arg("delta"));
    m.def("coupling_profile", &coupling_profile, py::arg("site"), py::arg("x"), py::arg("params"));
    m.def("proton_rate_profile", &proton_rate_profile, py::arg("side"), py::arg("x"),
          py::arg("params"));

    py::class_<Channel>(m, "Channel")
        .def_readonly("kind", &Channel::kind)
        .def_readonly("endpoint_a", &Channel::endpoint_a)
        .def_readonly("endpoint_b", &Channel::endpoint_b)
        .def_readonly("d_ne", &Channel::d_ne)
        .def_readonly("d_np", &Channel::d_np)
        .def_readonly("d_nn", &Channel::d_nn)
        .def_readonly("from_state", &Channel::from_state)
        .def_readonly("to_state", &Channel::to_state)
        .def_readonly("rate", &Channel::rate);

    py::class_<RateMatrix>(m, "RateMatrix")
        .def_property_readonly("dim", &RateMatrix::dim)
        .def("channels", &RateMatrix::channels, py::return_value_policy::reference_internal)
        .def("max_exit_rate", &RateMatrix::max_exit_rate)
        .def("exit_rates", &RateMatrix::exit_rates, py::return_value_policy::reference_internal)
        .def(
            "apply",
            [](const RateMatrix& mat, const std::vector<double>& p) {
                std::vector<double> out(static_cast<std::size_t>(mat.dim()));
                mat.apply(p, out);
                return out;
            },
            py::arg("population"), "Generator applied to a population vector.")
        .def("to_dense", [](const RateMatrix& mat) {
            const std::vector<double> dense = mat.to_dense();
            const int n = mat.dim();
            py::array_t<double> arr({n, n});
            std::copy(dense.begin(), dense.end(), arr.mutable_data());
            return arr;
        });

    py::class_<GeneratorBuilder>(m, "GeneratorBuilder")
        .def(py::init<const ModelParams&>(), py::arg("params"))
        .def("update_position", &GeneratorBuilder::update_position, py::arg("x"))
        .def_property_readonly("matrix", &GeneratorBuilder::matrix,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("position", &GeneratorBuilder::position);

    m.def("build_generator", &build_generator, py::arg("x"), py::arg("params"));

    py::class_<FluxCounters>(m, "FluxCounters")
        .def(py::init<>())
        .def_readwrite("n_e", &FluxCounters::n_e)
        .def_readwrite("N_p", &FluxCounters::N_p)
        .def_readwrite("N_n", &FluxCounters::N_n);

    py::class_<StepResult>(m, "StepResult")
        .def_readonly("next", &StepResult::next)
        .def_readonly("time_integral", &StepResult::time_integral);

    m.def("evolve", &evolve, py::arg("population"), py::arg("rates"), py::arg("dt"),
          py::call_guard<py::gil_scoped_release>());
    m.def("evolve_step", &evolve_step, py::arg("population"), py::arg("rates"), py::arg("dt"),
          py::call_guard<py::gil_scoped_release>());
    m.def("dense_expm_reference", &dense_expm_reference, py::arg("rates"), py::arg("t"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "accumulate_fluxes",
        [](const PopulationVector& time_integral, const RateMatrix& rates, FluxCounters& counters) {
            accumulate_fluxes(time_integral, rates, counters);
        },
        py::arg("time_integral"), py::arg("rates"), py::arg("counters"));

    py::class_<PotentialValue>(m, "PotentialValue")
        .def_readonly("value", &PotentialValue::value)
        .def_readonly("derivative", &PotentialValue::derivative);

    m.def("confinement_potential", &confinement_potential, py::arg("x"), py::arg("params"));
    m.def("charge_barrier", &charge_barrier, py::arg("x"), py::arg("params"));
    m.def("langevin_step", &langevin_step, py::arg("x"), py::arg("q_sq"), py::arg("params"),
          py::arg("normal_draw"));

    m.def("splitmix64", &splitmix64, py::arg("state"));
    m.def("derive_trajectory_seed", &derive_trajectory_seed, py::arg("master_seed"),
          py::arg("point_index"), py::arg("traj_index"));

    py::class_<TrajectorySeries>(m, "TrajectorySeries")
        .def_readonly("t", &TrajectorySeries::t)
        .def_readonly("x", &TrajectorySeries::x)
        .def_readonly("occ", &TrajectorySeries::occ)
        .def_readonly("n_e", &TrajectorySeries::n_e)
        .def_readonly("N_p", &TrajectorySeries::N_p)
        .def_readonly("N_n", &TrajectorySeries::N_n);

    py::class_<TrajectoryResult>(m, "TrajectoryResult")
        .def_readonly("series", &TrajectoryResult::series)
        .def_readonly("counters", &TrajectoryResult::counters)
        .def_readonly("final_x", &TrajectoryResult::final_x)
        .def("qy_defined", &TrajectoryResult::qy_defined)
        .def("qy", &TrajectoryResult::qy);

    m.def("run_trajectory", &run_trajectory, py::arg("params"), py::arg("seed"),
          py::arg("t_end"), py::arg("dt"), py::arg("sample_every") = 100,
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScanSpec>(m, "ScanSpec")
        .def(py::init<>())
        .def_readwrite("variable", &ScanSpec::variable)
        .def_readwrite("grid", &ScanSpec::grid)
        .def_readwrite("scheme", &ScanSpec::scheme)
        .def_readwrite("trajectories", &ScanSpec::trajectories)
        .def_readwrite("t_end", &ScanSpec::t_end)
        .def_readwrite("dt", &ScanSpec::dt)
        .def_readwrite("master_seed", &ScanSpec::master_seed)
        .def_readwrite("sample_every", &ScanSpec::sample_every)
        .def("check", &ScanSpec::check);

    m.def("default_grid", &default_grid, py::arg("variable"));
    m.def("delta_mu_from_ph", &delta_mu_from_ph, py::arg("delta_ph"), py::arg("T_kelvin"));
    m.def("apply_scheme", &apply_scheme, py::arg("scheme"), py::arg("T_kelvin"), py::arg("base"));
    m.def("scan_point_params", &scan_point_params, py::arg("spec"), py::arg("value"),
          py::arg("base"));

    py::class_<FiguresOfMerit>(m, "FiguresOfMerit")
        .def_readonly("qy", &FiguresOfMerit::qy)
        .def_readonly("q", &FiguresOfMerit::q)
        .def_readonly("eta", &FiguresOfMerit::eta)
        .def_readonly("defined", &FiguresOfMerit::defined);

    m.def("figures_of_merit", &figures_of_merit, py::arg("n_e"), py::arg("N_p"),
          py::arg("params"));

    py::class_<ScanPoint>(m, "ScanPoint")
        .def_readonly("param", &ScanPoint::param)
        .def_readonly("qy_mean", &ScanPoint::qy_mean)
        .def_readonly("qy_std", &ScanPoint::qy_std)
        .def_readonly("ne_mean", &ScanPoint::ne_mean)
        .def_readonly("ne_std", &ScanPoint::ne_std)
        .def_readonly("np_mean", &ScanPoint::np_mean)
        .def_readonly("np_std", &ScanPoint::np_std)
        .def_readonly("q", &ScanPoint::q)
        .def_readonly("eta", &ScanPoint::eta)
        .def_readonly("qy_defined", &ScanPoint::qy_defined);

    py::class_<ScanResult>(m, "ScanResult").def_readonly("points", &ScanResult::points);

    m.def("run_scan", &run_scan, py::arg("spec"), py::arg("base"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<ParsedConfig>(m, "ParsedConfig")
        .def_readwrite("params", &ParsedConfig::params)
        .def_readwrite("scan", &ParsedConfig::scan);

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config_file", &load_config_file, py::arg("path"));
    m.def("emit_config", &emit_config, py::arg("params"), py::arg("scan"));

    m.def("scan_csv", &scan_csv, py::arg("result"));
    m.def("trajectory_csv", &trajectory_csv, py::arg("result"));
    m.def("scan_plot_script", &scan_plot_script, py::arg("csv_name"));
    m.def("trajectory_plot_script", &trajectory_plot_script, py::arg("csv_name"));

    m.def(
        "run_validation",
        [](int threads) {
            std::ostringstream report;
            int failures = 0;
            {
                py::gil_scoped_release release;
                failures = qcycle::run_validation(report, threads);
            }
            return py::make_tuple(failures, report.str());
        },
        py::arg("threads") = 0,
        "Run every registered model self-check; returns (failures, report).");
}
