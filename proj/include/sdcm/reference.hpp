#pragma once

#include <optional>
#include <vector>

#include "sdcm/params.hpp"
#include "sdcm/plan.hpp"

namespace sdcm {

/// One stance interval of the desired DCM trajectories. Both channels follow
/// the bounded solution of the open-loop DCM dynamics for a constant input,
///   xi(t) = p + exp((t - t_end)/kappa) * (xi_eos - p),
/// with (p, kappa) = (r_vrp, b) for the linear channel and (phi_vro, eta) for
/// the angular one.
struct ReferenceSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  Vec3 r_vrp = Vec3::Zero();    ///< constant VRP input over the segment
  Vec3 xi_l_eos = Vec3::Zero(); ///< linear DCM at t_end
  double phi_vro = 0.0;         ///< constant VRO input over the segment
  double xi_a_eos = 0.0;        ///< angular DCM at t_end
  Vec3 r_foot = Vec3::Zero();   ///< stance foot for this interval
};

/// Values needed by one controller tick.
struct ReferenceSample {
  Vec3 xi_l_d = Vec3::Zero();
  Vec3 xi_l_dot_d = Vec3::Zero();
  double xi_a_d = 0.0;
  double xi_a_dot_d = 0.0;
  Vec3 r_vrp_const = Vec3::Zero();  ///< segment VRP input
  double phi_vro_const = 0.0;       ///< segment VRO input
  Vec3 r_foot = Vec3::Zero();
  int segment = 0;
};

enum class OutOfRangePolicy {
  kClamp,  ///< boundary value with zero derivative outside the plan
  kError,  ///< throw std::out_of_range
};

class ReferenceTrajectory {
 public:
  ReferenceTrajectory() = default;

  /// Backward recursion over the plan. Each segment's end-of-stance DCM
  /// keypoint is propagated from the terminal condition,
  ///   xi_eos[i-1] = p[i] + exp(-dt[i]/kappa) * (xi_eos[i] - p[i]).
  /// Terminal defaults: linear at the last VRP, angular at the last VRO,
  /// which brings the plan to rest.
  static ReferenceTrajectory build(
      const FootstepPlan& plan, const PlannerParams& params,
      const std::optional<Vec3>& terminal_xi_l = std::nullopt,
      std::optional<double> terminal_xi_a = std::nullopt);

  /// Piecewise-exponential values and their analytic derivatives at time t.
  /// The derivative identity xi_dot = (xi - p)/kappa holds within segments.
  ReferenceSample sample(double t,
                         OutOfRangePolicy policy = OutOfRangePolicy::kClamp) const;

  /// Same evaluation pinned to a segment, extrapolating its exponentials
  /// beyond [t_start, t_end]. Used by the integrator so that stage times at
  /// a stance switch stay on the current segment's smooth extension.
  ReferenceSample sample_in_segment(int segment, double t) const;

  /// Segment that owns time t (half open intervals, the final end time
  /// belongs to the last segment).
  int segment_index(double t) const;

  const std::vector<ReferenceSegment>& segments() const { return segments_; }
  double t_start() const { return segments_.front().t_start; }
  double t_end() const { return segments_.back().t_end; }
  double b() const { return b_; }
  double eta() const { return eta_; }

 private:
  std::vector<ReferenceSegment> segments_;
  double b_ = 0.0;
  double eta_ = 0.0;
};

}  // namespace sdcm
