#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdcm/control.hpp"
#include "sdcm/plan.hpp"
#include "sdcm/reference.hpp"

namespace sdcm {

struct SimConfig {
  PlannerParams params;
  FootstepPlan plan;
  double dt = 1e-3;             ///< integration step [s]
  double control_rate = 1000.0; ///< controller tick and log rate [Hz]
  bool continuous_control = false; ///< re-evaluate the laws inside RK4 stages
  ControlOptions control;
  std::optional<SpatialState> initial_state; ///< default: first-segment fixed point
  OutOfRangePolicy out_of_range = OutOfRangePolicy::kClamp;
  double divergence_pos = 100.0;   ///< abort when |x| exceeds this [m]
  double divergence_angle = 10.0;  ///< abort when |theta| exceeds this [rad]
  std::string scenario_id;

  /// Checks dt/control-rate/segment alignment and parameter validity.
  void validate() const;
};

struct LogRow {
  double t = 0.0;
  SpatialState state;
  WrenchCommand wrench;
  Vec3 xi_l = Vec3::Zero();
  double xi_a = 0.0;
  Vec3 xi_l_d = Vec3::Zero();      ///< desired values the controller used
  Vec3 xi_l_dot_d = Vec3::Zero();
  double xi_a_d = 0.0;
  double xi_a_dot_d = 0.0;
  Vec3 r_foot = Vec3::Zero();
  int segment = 0;
  double angular_momentum = 0.0;   ///< I_yy * thetadot
};

struct SegmentStats {
  int segment = 0;
  double phi_set = 0.0;
  double min_abs_theta_err = 0.0;  ///< min over the stance of |theta - phi_set|
  double end_abs_theta_err = 0.0;
};

struct RunSummary {
  double duration = 0.0;
  size_t n_rows = 0;
  double peak_abs_cop = 0.0;
  double peak_exact_cop = 0.0;     ///< diagnostic, instantaneous f_z instead of m g
  double max_lin_err = 0.0;
  double max_ang_err = 0.0;
  double final_lin_err = 0.0;
  double final_ang_err = 0.0;
  double final_theta = 0.0;
  double settling_time_lin = -1.0; ///< first time the error stays below 1e-3
  double settling_time_ang = -1.0;
  int n_saturated_ticks = 0;
  int n_setpoint_switches = 0;
  std::vector<SegmentStats> segments;
  DerivedConstants derived{0.0, 0.0, 0.0};
  Eigen::Matrix<double, 8, 1> closed_loop_eigenvalues;
  bool stable = false;
};

struct TrajectoryLog {
  std::vector<LogRow> rows;
  RunSummary summary;
  bool diverged = false;
  std::string message;
};

/// One classical fourth-order step of the constrained SRBM with the wrench
/// held constant. Throws on a non-finite input state.
SpatialState integrate_step(const SpatialState& state,
                            const WrenchCommand& wrench, const Vec3& r_foot,
                            double dt, const PlannerParams& params);

/// Runs the controller and integrator over the plan, switching stance
/// instantaneously at segment boundaries. Rows are logged at the control
/// rate. Divergence is reported through the flag with a partial log.
TrajectoryLog run_scenario(const SimConfig& config);

/// Exact solution of the stacked closed-loop LTI dynamics, chained across
/// plan segments with one matrix exponential per evaluation. Valid only
/// while the CoP constraint is inactive; construction rejects configs that
/// enable it.
class AnalyticClosedLoop {
 public:
  explicit AnalyticClosedLoop(const SimConfig& config);

  struct Eval {
    Vec3 x;
    Vec3 xi_l;
    double theta;
    double xi_a;
  };

  Eval eval(double t) const;
  double t_end() const { return t_end_; }

 private:
  static constexpr int kDim = 13;  // [x, xi_l, theta, xi_a, xi_l_d, xi_a_d, 1]
  using Mat = Eigen::Matrix<double, kDim, kDim>;
  using Vec = Eigen::Matrix<double, kDim, 1>;

  std::vector<Mat> seg_A_;
  std::vector<Vec> seg_start_state_;
  std::vector<double> seg_t_start_;
  std::vector<double> seg_t_end_;
  double t_end_ = 0.0;
};

/// Single-shot evaluation of the analytic closed loop.
AnalyticClosedLoop::Eval analytic_closed_loop(const SimConfig& config,
                                              double t);

}  // namespace sdcm
