#pragma once

#include <vector>

#include "sdcm/model.hpp"

namespace sdcm {

struct Footstep {
  Vec3 r_foot = Vec3::Zero();  ///< stance foot position, world frame [m]
  double phi_vro = 0.0;        ///< VRO orientation setpoint for this stance [rad]
  double duration = 1.0;       ///< single stance duration [s]
};

/// Timed stance sequence. Transitions between stances are instantaneous,
/// there is no double stance interval.
struct FootstepPlan {
  std::vector<Footstep> steps;

  double total_duration() const;
  /// Throws std::invalid_argument if empty, a duration is non-positive or
  /// the foot heights differ (flat ground assumption).
  void validate() const;
};

struct WalkingPlanOptions {
  double vro_amplitude = 0.0;   ///< setpoints alternate +amp, -amp, ... [rad]
  double final_hold = 0.0;      ///< extra stance at the last foot [s]; 0 = none
  double final_vro = 0.0;       ///< VRO setpoint of the hold stance [rad]
};

/// Footsteps advance by v_x*t_step along x starting at v_x*t_step, alternate
/// +/-lateral_offset along y, and carry alternating VRO setpoints.
/// v_x = 0 yields a standing plan (all stances at the origin).
FootstepPlan generate_walking_plan(double v_x, double t_step, int n_steps,
                                   double lateral_offset,
                                   const WalkingPlanOptions& opts = {});

}  // namespace sdcm
