#include "sdcm/control.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace sdcm {

Vec3 linear_tracking_law(const Vec3& xi_l, const Vec3& xi_l_d,
                         const Vec3& xi_l_dot_d, const PlannerParams& params) {
  if (!(params.k_l > 0.0)) throw std::invalid_argument("k_l must be positive");
  return xi_l + params.k_l * params.b * (xi_l - xi_l_d) -
         params.b * xi_l_dot_d;
}

double angular_tracking_law(double xi_a, double xi_a_d, double xi_a_dot_d,
                            const PlannerParams& params) {
  if (!(params.k_a > 0.0)) throw std::invalid_argument("k_a must be positive");
  return xi_a + params.k_a * params.eta * (xi_a - xi_a_d) -
         params.eta * xi_a_dot_d;
}

WrenchCommand control_tick(const SpatialState& state,
                           const ReferenceSample& ref, const Vec3& stance_foot,
                           const PlannerParams& params,
                           const ControlOptions& opts) {
  const Vec3 xi_l = linear_dcm(state.x, state.xdot, params.b);
  const double xi_a = angular_dcm(state.theta, state.thetadot, params.eta);

  // Per-channel desired values. Setpoint mode regulates toward the segment
  // input, which is the fixed point of the open-loop dynamics.
  const Vec3 xi_l_d =
      (opts.lin_ref == RefMode::kRecursion) ? ref.xi_l_d : ref.r_vrp_const;
  const Vec3 xi_l_dot_d =
      (opts.lin_ref == RefMode::kRecursion && opts.feedforward_lin)
          ? ref.xi_l_dot_d
          : Vec3::Zero();
  const double xi_a_d =
      (opts.ang_ref == RefMode::kRecursion) ? ref.xi_a_d : ref.phi_vro_const;
  const double xi_a_dot_d =
      (opts.ang_ref == RefMode::kRecursion && opts.feedforward_ang)
          ? ref.xi_a_dot_d
          : 0.0;

  WrenchCommand cmd;
  cmd.r_vrp = linear_tracking_law(xi_l, xi_l_d, xi_l_dot_d, params);
  cmd.r_ecmp = ecmp_from_vrp(cmd.r_vrp, params.b, params.g);
  cmd.phi_vro = angular_tracking_law(xi_a, xi_a_d, xi_a_dot_d, params);
  cmd.tau_requested = vro_torque(state.theta, cmd.phi_vro, params.gamma);

  if (opts.cop_constraint) {
    const SupportBounds bounds{params.r_cop_thres};
    const TorqueSplit split =
        saturate_torque(cmd.tau_requested, bounds, params.m, params.g);
    cmd.tau_ext = split.tau_applied;
    cmd.saturated = split.tau_bar != 0.0;
    if (cmd.saturated) {
      cmd.r_ecmp = augment_ecmp(cmd.r_ecmp, 0.0, split.tau_bar, params.m,
                                params.g);
      cmd.r_vrp = vrp_from_ecmp(cmd.r_ecmp, params.b, params.g);
    }
  } else {
    cmd.tau_ext = cmd.tau_requested;
    cmd.saturated = false;
  }
  cmd.f_ext = ecmp_force(state.x, cmd.r_ecmp, params.s);
  cmd.r_cop = cop_from_torque(cmd.tau_ext, params.m, params.g);
  return cmd;
}

SystemMatrices closed_loop_matrices(const PlannerParams& params) {
  if (!params.finalized()) throw std::invalid_argument("params not finalized");
  if (!(params.k_l > 0.0) || !(params.k_a > 0.0)) {
    throw std::invalid_argument("k must be positive");
  }
  SystemMatrices sys;

  auto& dcm = sys.dcm;
  dcm.A.setZero();
  dcm.A.diagonal() << -params.k_l, -params.k_l, -params.k_l, -params.k_a;
  dcm.B.setZero();
  dcm.B.block<3, 3>(0, 0) = params.k_l * Eigen::Matrix3d::Identity();
  dcm.B.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
  dcm.B(3, 6) = params.k_a;
  dcm.B(3, 7) = 1.0;
  dcm.eigenvalues = dcm.A.diagonal();

  // Stacked [x; xi_l; theta; xi_a]: the body states chase their DCM,
  //   x_dot = (xi_l - x)/b,  theta_dot = (xi_a - theta)/eta.
  auto& st = sys.stacked;
  st.A.setZero();
  st.B.setZero();
  const double inv_b = 1.0 / params.b;
  const double inv_eta = 1.0 / params.eta;
  st.A.block<3, 3>(0, 0) = -inv_b * Eigen::Matrix3d::Identity();
  st.A.block<3, 3>(0, 3) = inv_b * Eigen::Matrix3d::Identity();
  st.A.block<3, 3>(3, 3) = -params.k_l * Eigen::Matrix3d::Identity();
  st.A(6, 6) = -inv_eta;
  st.A(6, 7) = inv_eta;
  st.A(7, 7) = -params.k_a;
  st.B.block<3, 3>(3, 0) = params.k_l * Eigen::Matrix3d::Identity();
  st.B.block<3, 3>(3, 3) = Eigen::Matrix3d::Identity();
  st.B(7, 6) = params.k_a;
  st.B(7, 7) = 1.0;
  st.eigenvalues << -inv_b, -inv_b, -inv_b, -params.k_l, -params.k_l,
      -params.k_l, -inv_eta, -params.k_a;
  std::sort(st.eigenvalues.data(), st.eigenvalues.data() + 8);
  return sys;
}

DcmOpenLoop open_loop_matrices(const PlannerParams& params) {
  if (!params.finalized()) throw std::invalid_argument("params not finalized");
  DcmOpenLoop sys;
  const double inv_b = 1.0 / params.b;
  const double inv_eta = 1.0 / params.eta;
  sys.A.setZero();
  sys.A.diagonal() << inv_b, inv_b, inv_b, inv_eta;
  sys.B.setZero();
  sys.B.diagonal() << -inv_b, -inv_b, -inv_b, -inv_eta;
  sys.eigenvalues = sys.A.diagonal();
  sys.unstable = (sys.eigenvalues.array() > 0.0).any();
  return sys;
}

}  // namespace sdcm
