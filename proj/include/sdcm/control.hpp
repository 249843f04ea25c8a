#pragma once

#include <Eigen/Core>

#include "sdcm/cop.hpp"
#include "sdcm/model.hpp"
#include "sdcm/reference.hpp"

namespace sdcm {

/// How a channel consumes the reference trajectory.
enum class RefMode {
  kRecursion,  ///< exponential desired DCM and its analytic derivative
  kSetpoint,   ///< piecewise-constant desired DCM (segment input), zero rate
};

struct ControlOptions {
  RefMode lin_ref = RefMode::kRecursion;
  RefMode ang_ref = RefMode::kRecursion;
  bool feedforward_lin = true;  ///< include -b*xi_l_dot_d in the linear law
  bool feedforward_ang = true;  ///< include -eta*xi_a_dot_d in the angular law
  bool cop_constraint = true;
};

/// r_vrp = xi_l + k_l*b*(xi_l - xi_l_d) - b*xi_l_dot_d.
/// Substituted into the open-loop dynamics this yields
/// xi_l_dot = -k_l*(xi_l - xi_l_d) + xi_l_dot_d.
Vec3 linear_tracking_law(const Vec3& xi_l, const Vec3& xi_l_d,
                         const Vec3& xi_l_dot_d, const PlannerParams& params);

/// phi_vro = xi_a + k_a*eta*(xi_a - xi_a_d) - eta*xi_a_dot_d.
double angular_tracking_law(double xi_a, double xi_a_d, double xi_a_dot_d,
                            const PlannerParams& params);

/// One controller evaluation: DCM extraction, both tracking laws, wrench
/// encodings and the CoP feasibility pass (torque saturation plus eCMP
/// augmentation when the support boundary would be exceeded).
WrenchCommand control_tick(const SpatialState& state,
                           const ReferenceSample& ref, const Vec3& stance_foot,
                           const PlannerParams& params,
                           const ControlOptions& opts = {});

/// Closed-loop DCM subsystem, state [xi_l; xi_a], inputs
/// [xi_l_d; xi_l_dot_d; xi_a_d; xi_a_dot_d].
struct DcmClosedLoop {
  Eigen::Matrix4d A;
  Eigen::Matrix<double, 4, 8> B;
  Eigen::Vector4d eigenvalues;
};

/// Full stacked system over [x; xi_l; theta; xi_a] with the same inputs.
/// The body states follow their DCM at rates 1/b and 1/eta.
struct StackedClosedLoop {
  Eigen::Matrix<double, 8, 8> A;
  Eigen::Matrix<double, 8, 8> B;
  Eigen::Matrix<double, 8, 1> eigenvalues;
};

/// Open-loop DCM subsystem, state [xi_l; xi_a], inputs [r_vrp; phi_vro].
struct DcmOpenLoop {
  Eigen::Matrix4d A;
  Eigen::Matrix4d B;
  Eigen::Vector4d eigenvalues;
  bool unstable = true;
};

struct SystemMatrices {
  DcmClosedLoop dcm;
  StackedClosedLoop stacked;
};

/// Requires finalized params with positive gains.
SystemMatrices closed_loop_matrices(const PlannerParams& params);

DcmOpenLoop open_loop_matrices(const PlannerParams& params);

}  // namespace sdcm
