#include "sdcm/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdcm {

ReferenceTrajectory ReferenceTrajectory::build(
    const FootstepPlan& plan, const PlannerParams& params,
    const std::optional<Vec3>& terminal_xi_l,
    std::optional<double> terminal_xi_a) {
  plan.validate();
  if (!params.finalized()) {
    throw std::invalid_argument("params must be finalized");
  }

  ReferenceTrajectory traj;
  traj.b_ = params.b;
  traj.eta_ = params.eta;

  const size_t n = plan.steps.size();
  traj.segments_.resize(n);

  double t = 0.0;
  for (size_t i = 0; i < n; ++i) {
    auto& seg = traj.segments_[i];
    const auto& step = plan.steps[i];
    seg.t_start = t;
    t += step.duration;
    seg.t_end = t;
    seg.r_foot = step.r_foot;
    seg.r_vrp = vrp_from_ecmp(step.r_foot, params.b, params.g);
    seg.phi_vro = step.phi_vro;
  }

  // Terminal keypoints: rest at the last inputs unless overridden.
  traj.segments_[n - 1].xi_l_eos =
      terminal_xi_l.value_or(traj.segments_[n - 1].r_vrp);
  traj.segments_[n - 1].xi_a_eos =
      terminal_xi_a.value_or(traj.segments_[n - 1].phi_vro);

  for (size_t i = n - 1; i > 0; --i) {
    const auto& seg = traj.segments_[i];
    const double dt = seg.t_end - seg.t_start;
    const double decay_l = std::exp(-dt / params.b);
    const double decay_a = std::exp(-dt / params.eta);
    traj.segments_[i - 1].xi_l_eos =
        seg.r_vrp + decay_l * (seg.xi_l_eos - seg.r_vrp);
    traj.segments_[i - 1].xi_a_eos =
        seg.phi_vro + decay_a * (seg.xi_a_eos - seg.phi_vro);
  }
  return traj;
}

int ReferenceTrajectory::segment_index(double t) const {
  const auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double value, const ReferenceSegment& seg) { return value < seg.t_end; });
  if (it == segments_.end()) return static_cast<int>(segments_.size()) - 1;
  return static_cast<int>(it - segments_.begin());
}

ReferenceSample ReferenceTrajectory::sample_in_segment(int segment,
                                                       double t) const {
  const auto& seg = segments_.at(static_cast<size_t>(segment));
  ReferenceSample out;
  out.segment = segment;
  out.r_vrp_const = seg.r_vrp;
  out.phi_vro_const = seg.phi_vro;
  out.r_foot = seg.r_foot;

  const double decay_l = std::exp((t - seg.t_end) / b_);
  const double decay_a = std::exp((t - seg.t_end) / eta_);
  out.xi_l_d = seg.r_vrp + decay_l * (seg.xi_l_eos - seg.r_vrp);
  out.xi_l_dot_d = (out.xi_l_d - seg.r_vrp) / b_;
  out.xi_a_d = seg.phi_vro + decay_a * (seg.xi_a_eos - seg.phi_vro);
  out.xi_a_dot_d = (out.xi_a_d - seg.phi_vro) / eta_;
  return out;
}

ReferenceSample ReferenceTrajectory::sample(double t,
                                            OutOfRangePolicy policy) const {
  if (segments_.empty()) throw std::logic_error("empty reference trajectory");
  if (t < t_start() || t > t_end()) {
    if (policy == OutOfRangePolicy::kError) {
      throw std::out_of_range("reference sampled outside [" +
                              std::to_string(t_start()) + ", " +
                              std::to_string(t_end()) + "] at t=" +
                              std::to_string(t));
    }
    // Clamp: boundary value, zero derivatives.
    const double tc = std::clamp(t, t_start(), t_end());
    ReferenceSample out = sample_in_segment(segment_index(tc), tc);
    out.xi_l_dot_d.setZero();
    out.xi_a_dot_d = 0.0;
    return out;
  }
  return sample_in_segment(segment_index(t), t);
}

}  // namespace sdcm
