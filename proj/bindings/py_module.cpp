#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdcm/control.hpp"
#include "sdcm/cop.hpp"
#include "sdcm/csv_io.hpp"
#include "sdcm/model.hpp"
#include "sdcm/scenario.hpp"
#include "sdcm/sim.hpp"

namespace py = pybind11;
using namespace sdcm;

namespace {

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["duration"] = s.duration;
  d["rows"] = s.n_rows;
  d["peak_abs_cop"] = s.peak_abs_cop;
  d["peak_exact_cop"] = s.peak_exact_cop;
  d["max_lin_err"] = s.max_lin_err;
  d["max_ang_err"] = s.max_ang_err;
  d["final_lin_err"] = s.final_lin_err;
  d["final_ang_err"] = s.final_ang_err;
  d["final_theta"] = s.final_theta;
  d["settling_time_lin"] = s.settling_time_lin;
  d["settling_time_ang"] = s.settling_time_ang;
  d["saturated_ticks"] = s.n_saturated_ticks;
  d["setpoint_switches"] = s.n_setpoint_switches;
  d["b"] = s.derived.b;
  d["s"] = s.derived.s;
  d["gamma"] = s.derived.gamma;
  d["closed_loop_eigenvalues"] = Eigen::VectorXd(s.closed_loop_eigenvalues);
  d["stable"] = s.stable;
  py::list segs;
  for (const auto& seg : s.segments) {
    py::dict e;
    e["segment"] = seg.segment;
    e["phi_set"] = seg.phi_set;
    e["min_abs_theta_err"] = seg.min_abs_theta_err;
    e["end_abs_theta_err"] = seg.end_abs_theta_err;
    segs.append(e);
  }
  d["segments"] = segs;
  return d;
}

py::dict log_arrays(const TrajectoryLog& log) {
  const ssize_t n = static_cast<ssize_t>(log.rows.size());
  auto mat = [&](int cols) { return Eigen::MatrixXd(n, cols); };
  Eigen::VectorXd t(n), theta(n), thetad(n), xia(n), xia_d(n), xia_dot_d(n),
      tau(n), phi(n), cop(n), am(n), seg(n), sat(n);
  Eigen::MatrixXd x = mat(3), xd = mat(3), xil = mat(3), xil_d = mat(3),
                  xil_dot_d = mat(3), f = mat(3), ecmp = mat(3), vrp = mat(3),
                  foot = mat(3);
  for (ssize_t i = 0; i < n; ++i) {
    const LogRow& r = log.rows[static_cast<size_t>(i)];
    t(i) = r.t;
    x.row(i) = r.state.x;
    xd.row(i) = r.state.xdot;
    theta(i) = r.state.theta;
    thetad(i) = r.state.thetadot;
    xil.row(i) = r.xi_l;
    xia(i) = r.xi_a;
    xil_d.row(i) = r.xi_l_d;
    xil_dot_d.row(i) = r.xi_l_dot_d;
    xia_d(i) = r.xi_a_d;
    xia_dot_d(i) = r.xi_a_dot_d;
    f.row(i) = r.wrench.f_ext;
    tau(i) = r.wrench.tau_ext;
    ecmp.row(i) = r.wrench.r_ecmp;
    vrp.row(i) = r.wrench.r_vrp;
    phi(i) = r.wrench.phi_vro;
    cop(i) = r.wrench.r_cop;
    foot.row(i) = r.r_foot;
    am(i) = r.angular_momentum;
    seg(i) = r.segment;
    sat(i) = r.wrench.saturated ? 1.0 : 0.0;
  }
  py::dict d;
  d["t"] = t;
  d["x"] = x;
  d["xdot"] = xd;
  d["theta"] = theta;
  d["thetadot"] = thetad;
  d["xi_l"] = xil;
  d["xi_a"] = xia;
  d["xi_l_d"] = xil_d;
  d["xi_l_dot_d"] = xil_dot_d;
  d["xi_a_d"] = xia_d;
  d["xi_a_dot_d"] = xia_dot_d;
  d["f_ext"] = f;
  d["tau_ext"] = tau;
  d["r_ecmp"] = ecmp;
  d["r_vrp"] = vrp;
  d["phi_vro"] = phi;
  d["r_cop"] = cop;
  d["r_foot"] = foot;
  d["angular_momentum"] = am;
  d["segment"] = seg;
  d["saturated"] = sat;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spatial DCM planner, controller and simulator";

  py::class_<PlannerParams>(m, "PlannerParams")
      .def(py::init([](double mass, double g, double h, double inertia,
                       double eta, double k_l, double k_a,
                       double r_cop_thres) {
             return make_params(mass, g, h, inertia, eta, k_l, k_a,
                                r_cop_thres);
           }),
           py::arg("m") = 65.1, py::arg("g") = 9.81, py::arg("h") = 0.981,
           py::arg("I") = 2.3, py::arg("eta") = 0.0, py::arg("k_l") = 3.0,
           py::arg("k_a") = 3.0, py::arg("r_cop_thres") = 0.12)
      .def_readonly("m", &PlannerParams::m)
      .def_readonly("g", &PlannerParams::g)
      .def_readonly("h", &PlannerParams::h)
      .def_readonly("I", &PlannerParams::inertia)
      .def_readonly("eta", &PlannerParams::eta)
      .def_readonly("k_l", &PlannerParams::k_l)
      .def_readonly("k_a", &PlannerParams::k_a)
      .def_readonly("r_cop_thres", &PlannerParams::r_cop_thres)
      .def_readonly("b", &PlannerParams::b)
      .def_readonly("s", &PlannerParams::s)
      .def_readonly("gamma", &PlannerParams::gamma);

  m.def(
      "derive_constants",
      [](double mass, double g, double h, double inertia, double eta) {
        const DerivedConstants d = derive_constants(mass, g, h, inertia, eta);
        return py::make_tuple(d.b, d.s, d.gamma);
      },
      py::arg("m"), py::arg("g"), py::arg("h"), py::arg("I"), py::arg("eta"),
      "(b, s, gamma) = (sqrt(h/g), m/b^2, I/eta^2)");

  m.def("linear_dcm", &linear_dcm, py::arg("x"), py::arg("xdot"), py::arg("b"));
  m.def("angular_dcm", &angular_dcm, py::arg("theta"), py::arg("thetadot"),
        py::arg("eta"));
  m.def("ecmp_force", &ecmp_force, py::arg("x"), py::arg("r_ecmp"),
        py::arg("s"));
  m.def("vro_torque", &vro_torque, py::arg("theta"), py::arg("phi_vro"),
        py::arg("gamma"));
  m.def("vrp_from_ecmp", &vrp_from_ecmp, py::arg("r_ecmp"), py::arg("b"),
        py::arg("g"));
  m.def("ecmp_from_vrp", &ecmp_from_vrp, py::arg("r_vrp"), py::arg("b"),
        py::arg("g"));
  m.def("cop_from_torque", &cop_from_torque, py::arg("tau_ext"), py::arg("m"),
        py::arg("g"));
  m.def(
      "saturate_torque",
      [](double tau, double r_cop_thres, double mass, double g) {
        const TorqueSplit s =
            saturate_torque(tau, SupportBounds{r_cop_thres}, mass, g);
        return py::make_tuple(s.tau_applied, s.tau_bar);
      },
      py::arg("tau_requested"), py::arg("r_cop_thres"), py::arg("m"),
      py::arg("g"), "(tau_applied, tau_bar)");
  m.def("augment_ecmp", &augment_ecmp, py::arg("r_ecmp"), py::arg("tau_bar_x"),
        py::arg("tau_bar_y"), py::arg("m"), py::arg("g"));

  m.def("linear_tracking_law", &linear_tracking_law, py::arg("xi_l"),
        py::arg("xi_l_d"), py::arg("xi_l_dot_d"), py::arg("params"));
  m.def("angular_tracking_law", &angular_tracking_law, py::arg("xi_a"),
        py::arg("xi_a_d"), py::arg("xi_a_dot_d"), py::arg("params"));

  m.def(
      "closed_loop_matrices",
      [](const PlannerParams& p) {
        const SystemMatrices sys = closed_loop_matrices(p);
        py::dict d;
        d["A_dcm"] = Eigen::MatrixXd(sys.dcm.A);
        d["B_dcm"] = Eigen::MatrixXd(sys.dcm.B);
        d["A"] = Eigen::MatrixXd(sys.stacked.A);
        d["B"] = Eigen::MatrixXd(sys.stacked.B);
        d["eigenvalues"] = Eigen::VectorXd(sys.stacked.eigenvalues);
        return d;
      },
      py::arg("params"));
  m.def(
      "open_loop_matrices",
      [](const PlannerParams& p) {
        const DcmOpenLoop sys = open_loop_matrices(p);
        py::dict d;
        d["A"] = Eigen::MatrixXd(sys.A);
        d["B"] = Eigen::MatrixXd(sys.B);
        d["eigenvalues"] = Eigen::VectorXd(sys.eigenvalues);
        d["unstable"] = sys.unstable;
        return d;
      },
      py::arg("params"));

  m.def("bundled_scenarios", [] {
    py::list names;
    for (const auto& s : bundled_scenarios()) names.append(s.name);
    return names;
  });
  m.def(
      "bundled_config",
      [](const std::string& name) {
        for (const auto& s : bundled_scenarios()) {
          if (s.name == name) return std::string(s.json);
        }
        throw std::runtime_error("unknown bundled scenario: " + name);
      },
      py::arg("name"));

  m.def(
      "run_scenario",
      [](const std::string& config_json) {
        const SimConfig config = parse_scenario(config_json);
        const TrajectoryLog log = run_scenario(config);
        py::dict d;
        d["log"] = log_arrays(log);
        d["summary"] = summary_dict(log.summary);
        d["diverged"] = log.diverged;
        d["message"] = log.message;
        return d;
      },
      py::arg("config_json"),
      "Simulate a scenario document; returns log arrays and summary stats.");
  m.def(
      "run_bundled",
      [](const std::string& name) {
        const SimConfig config = load_scenario(name);
        const TrajectoryLog log = run_scenario(config);
        py::dict d;
        d["log"] = log_arrays(log);
        d["summary"] = summary_dict(log.summary);
        d["diverged"] = log.diverged;
        d["message"] = log.message;
        return d;
      },
      py::arg("name"));
  m.def(
      "analytic_closed_loop",
      [](const std::string& config_json, const Eigen::VectorXd& times) {
        const SimConfig config = parse_scenario(config_json);
        const AnalyticClosedLoop sol(config);
        const ssize_t n = times.size();
        Eigen::MatrixXd x(n, 3), xil(n, 3);
        Eigen::VectorXd theta(n), xia(n);
        for (ssize_t i = 0; i < n; ++i) {
          const auto e = sol.eval(times(i));
          x.row(i) = e.x;
          xil.row(i) = e.xi_l;
          theta(i) = e.theta;
          xia(i) = e.xi_a;
        }
        py::dict d;
        d["x"] = x;
        d["xi_l"] = xil;
        d["theta"] = theta;
        d["xi_a"] = xia;
        return d;
      },
      py::arg("config_json"), py::arg("times"),
      "Matrix-exponential solution of the closed loop at the given times.");
  m.def(
      "trajectory_csv",
      [](const std::string& config_json) {
        const SimConfig config = parse_scenario(config_json);
        return trajectory_csv(run_scenario(config));
      },
      py::arg("config_json"));
}
