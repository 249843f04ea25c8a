#pragma once

#include "sdcm/model.hpp"

namespace sdcm {

/// 1D support region: the CoP may travel +/-r_cop_thres along x around the
/// stance foot (pitch rotation only).
struct SupportBounds {
  double r_cop_thres = 0.12;
};

/// CoP offset along x, relative to the stance foot, implied by a pitch
/// torque applied to the ground. Sign convention: the ground wrench about
/// the foot is r_cop x f with f ~ [0,0,m g], so tau = -r_cop*m*g and a
/// positive pitch torque shifts the CoP backward.
double cop_from_torque(double tau_ext, double m, double g);

struct TorqueSplit {
  double tau_applied = 0.0;  ///< torque the ground can deliver
  double tau_bar = 0.0;      ///< residual to realize through the force channel
};

/// Clips the requested torque to the support boundary |tau/(m g)| <=
/// r_cop_thres. Inside the boundary the request passes through unchanged.
TorqueSplit saturate_torque(double tau_requested, const SupportBounds& bounds,
                            double m, double g);

/// Shifts the eCMP so the force channel produces the residual torque:
///   r_ecmp* = r_ecmp + [tau_bar_y, -tau_bar_x, 0] / (m g).
/// Exact at nominal height where the vertical force equals m g; the shift
/// perturbs the linear DCM dynamics and re-introduces the cross term.
Vec3 augment_ecmp(const Vec3& r_ecmp, double tau_bar_x, double tau_bar_y,
                  double m, double g);

}  // namespace sdcm
