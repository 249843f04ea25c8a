#include "sdcm/plan.hpp"

#include <cmath>
#include <stdexcept>

namespace sdcm {

double FootstepPlan::total_duration() const {
  double sum = 0.0;
  for (const auto& s : steps) sum += s.duration;
  return sum;
}

void FootstepPlan::validate() const {
  if (steps.empty()) throw std::invalid_argument("plan has no steps");
  const double z0 = steps.front().r_foot.z();
  for (const auto& s : steps) {
    if (!(s.duration > 0.0)) {
      throw std::invalid_argument("step duration must be positive");
    }
    if (!s.r_foot.allFinite() || !std::isfinite(s.phi_vro)) {
      throw std::invalid_argument("step fields must be finite");
    }
    if (s.r_foot.z() != z0) {
      throw std::invalid_argument("foot heights must be equal (flat ground)");
    }
  }
}

FootstepPlan generate_walking_plan(double v_x, double t_step, int n_steps,
                                   double lateral_offset,
                                   const WalkingPlanOptions& opts) {
  if (v_x < 0.0) throw std::invalid_argument("v_x must be non-negative");
  if (!(t_step > 0.0)) throw std::invalid_argument("t_step must be positive");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");

  FootstepPlan plan;
  plan.steps.reserve(static_cast<size_t>(n_steps) + 1);
  for (int i = 0; i < n_steps; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    Footstep step;
    step.r_foot = Vec3(v_x * t_step * (i + 1), sign * lateral_offset, 0.0);
    step.phi_vro = sign * opts.vro_amplitude;
    step.duration = t_step;
    plan.steps.push_back(step);
  }
  if (opts.final_hold > 0.0) {
    Footstep hold = plan.steps.back();
    hold.phi_vro = opts.final_vro;
    hold.duration = opts.final_hold;
    plan.steps.push_back(hold);
  }
  plan.validate();
  return plan;
}

}  // namespace sdcm
