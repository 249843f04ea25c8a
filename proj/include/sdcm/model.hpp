#pragma once

#include <Eigen/Core>

#include "sdcm/params.hpp"

namespace sdcm {

using Vec3 = Eigen::Vector3d;

/// State of the constrained SRBM: free 3D translation, 1D pitch rotation.
struct SpatialState {
  Vec3 x = Vec3::Zero();      ///< CoM position [m]
  Vec3 xdot = Vec3::Zero();   ///< CoM velocity [m/s]
  double theta = 0.0;         ///< body pitch angle [rad]
  double thetadot = 0.0;      ///< pitch rate [rad/s]
  double t = 0.0;             ///< time [s]

  bool finite() const;
};

/// Wrench computed by one controller tick, after CoP constraint resolution.
struct WrenchCommand {
  Vec3 f_ext = Vec3::Zero();    ///< external force on the CoM [N]
  double tau_ext = 0.0;         ///< applied pitch torque on the ground [N m]
  Vec3 r_ecmp = Vec3::Zero();   ///< eCMP encoding f_ext (possibly shifted) [m]
  Vec3 r_vrp = Vec3::Zero();    ///< virtual repellent point, r_ecmp + [0,0,b^2 g]
  double phi_vro = 0.0;         ///< virtual repellent orientation [rad]
  double r_cop = 0.0;           ///< CoP offset along x relative to the stance foot [m]

  double tau_requested = 0.0;   ///< torque asked for before saturation [N m]
  bool saturated = false;       ///< CoP constraint was active this tick
};

/// xi_l = x + b*xdot
Vec3 linear_dcm(const Vec3& x, const Vec3& xdot, double b);

/// xi_a = theta + eta*thetadot
double angular_dcm(double theta, double thetadot, double eta);

/// f_ext = s*(x - r_ecmp)
Vec3 ecmp_force(const Vec3& x, const Vec3& r_ecmp, double s);

/// tau_ext = gamma*(theta - phi_vro)
double vro_torque(double theta, double phi_vro, double gamma);

/// r_vrp = r_ecmp + [0, 0, b^2*g]
Vec3 vrp_from_ecmp(const Vec3& r_ecmp, double b, double g);

/// r_ecmp = r_vrp - [0, 0, b^2*g]; exact inverse of vrp_from_ecmp.
Vec3 ecmp_from_vrp(const Vec3& r_vrp, double b, double g);

struct Accel {
  Vec3 xddot = Vec3::Zero();
  double thetaddot = 0.0;
};

/// Constrained SRBM dynamics:
///   xddot     = f_ext/m - [0,0,g]
///   thetaddot = (pitch component of (r_foot - x) x f_ext + tau_ext) / I_yy
/// The lever arm is the stance foot position relative to the CoM; with the
/// eCMP placed at the foot the cross term vanishes identically.
Accel constrained_dynamics(const SpatialState& state, const Vec3& f_ext,
                           double tau_ext, const Vec3& r_foot,
                           const PlannerParams& params);

/// Pitch component of (r_foot - x) x f_ext, the torque the contact force
/// produces about the stance foot.
double pitch_cross_torque(const Vec3& x, const Vec3& f_ext, const Vec3& r_foot);

}  // namespace sdcm
