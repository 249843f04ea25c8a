#include "sdcm/sim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdcm {

namespace {

struct StateDeriv {
  Vec3 dx = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  double dtheta = 0.0;
  double domega = 0.0;
};

SpatialState advance(const SpatialState& s, const StateDeriv& k, double dt) {
  SpatialState out = s;
  out.x += dt * k.dx;
  out.xdot += dt * k.dv;
  out.theta += dt * k.dtheta;
  out.thetadot += dt * k.domega;
  out.t += dt;
  return out;
}

template <typename DerivFn>
SpatialState rk4_step(const SpatialState& s, double dt, DerivFn&& deriv) {
  const StateDeriv k1 = deriv(s);
  const StateDeriv k2 = deriv(advance(s, k1, 0.5 * dt));
  const StateDeriv k3 = deriv(advance(s, k2, 0.5 * dt));
  const StateDeriv k4 = deriv(advance(s, k3, dt));
  SpatialState out = s;
  out.x += dt / 6.0 * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx);
  out.xdot += dt / 6.0 * (k1.dv + 2.0 * (k2.dv + k3.dv) + k4.dv);
  out.theta += dt / 6.0 * (k1.dtheta + 2.0 * (k2.dtheta + k3.dtheta) + k4.dtheta);
  out.thetadot +=
      dt / 6.0 * (k1.domega + 2.0 * (k2.domega + k3.domega) + k4.domega);
  out.t += dt;
  return out;
}

struct Desired {
  Vec3 xi_l_d;
  Vec3 xi_l_dot_d;
  double xi_a_d;
  double xi_a_dot_d;
};

Desired effective_desired(const ReferenceSample& ref,
                          const ControlOptions& opts) {
  Desired d;
  d.xi_l_d =
      (opts.lin_ref == RefMode::kRecursion) ? ref.xi_l_d : ref.r_vrp_const;
  d.xi_l_dot_d = (opts.lin_ref == RefMode::kRecursion && opts.feedforward_lin)
                     ? ref.xi_l_dot_d
                     : Vec3::Zero();
  d.xi_a_d =
      (opts.ang_ref == RefMode::kRecursion) ? ref.xi_a_d : ref.phi_vro_const;
  d.xi_a_dot_d = (opts.ang_ref == RefMode::kRecursion && opts.feedforward_ang)
                     ? ref.xi_a_dot_d
                     : 0.0;
  return d;
}

int steps_for(double duration, double dt, const char* what) {
  const int n = static_cast<int>(std::llround(duration / dt));
  if (n < 1 || std::abs(n * dt - duration) > 1e-9 * std::max(1.0, duration)) {
    throw std::invalid_argument(std::string("dt does not divide ") + what);
  }
  return n;
}

}  // namespace

void SimConfig::validate() const {
  if (!params.finalized()) {
    throw std::invalid_argument("params must be finalized");
  }
  plan.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(control_rate > 0.0)) {
    throw std::invalid_argument("control_rate must be positive");
  }
  const double period = 1.0 / control_rate;
  if (dt > period * (1.0 + 1e-12)) {
    throw std::invalid_argument("dt must not exceed the control period");
  }
  const int spt = steps_for(period, dt, "the control period");
  for (const auto& step : plan.steps) {
    const int n = steps_for(step.duration, dt, "a stance duration");
    if (n % spt != 0) {
      throw std::invalid_argument(
          "control period must divide every stance duration");
    }
  }
  if (initial_state && !initial_state->finite()) {
    throw std::invalid_argument("initial state must be finite");
  }
}

SpatialState integrate_step(const SpatialState& state,
                            const WrenchCommand& wrench, const Vec3& r_foot,
                            double dt, const PlannerParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!state.finite()) throw std::invalid_argument("non-finite state");
  return rk4_step(state, dt, [&](const SpatialState& s) {
    const Accel a = constrained_dynamics(s, wrench.f_ext, wrench.tau_ext,
                                         r_foot, params);
    StateDeriv d;
    d.dx = s.xdot;
    d.dv = a.xddot;
    d.dtheta = s.thetadot;
    d.domega = a.thetaddot;
    return d;
  });
}

TrajectoryLog run_scenario(const SimConfig& config) {
  config.validate();
  const PlannerParams& params = config.params;
  const ReferenceTrajectory traj = ReferenceTrajectory::build(config.plan,
                                                              params);

  SpatialState state;
  if (config.initial_state) {
    state = *config.initial_state;
  } else {
    // Fixed point of the first stance: CoM over the foot at nominal height,
    // pitch at the initial desired angular DCM.
    const ReferenceSample first = traj.sample_in_segment(0, 0.0);
    state.x = config.plan.steps.front().r_foot + Vec3(0.0, 0.0, params.h);
    state.xdot.setZero();
    state.theta = effective_desired(first, config.control).xi_a_d;
    state.thetadot = 0.0;
  }
  state.t = 0.0;

  const double period = 1.0 / config.control_rate;
  const int steps_per_tick = steps_for(period, config.dt, "control period");

  TrajectoryLog log;
  log.rows.reserve(
      static_cast<size_t>(config.plan.total_duration() / period) + 2);

  auto make_row = [&](const SpatialState& s, int seg_idx, double t) {
    const ReferenceSample ref = traj.sample_in_segment(seg_idx, t);
    const WrenchCommand cmd =
        control_tick(s, ref, ref.r_foot, params, config.control);
    const Desired des = effective_desired(ref, config.control);
    LogRow row;
    row.t = t;
    row.state = s;
    row.state.t = t;
    row.wrench = cmd;
    row.xi_l = linear_dcm(s.x, s.xdot, params.b);
    row.xi_a = angular_dcm(s.theta, s.thetadot, params.eta);
    row.xi_l_d = des.xi_l_d;
    row.xi_l_dot_d = des.xi_l_dot_d;
    row.xi_a_d = des.xi_a_d;
    row.xi_a_dot_d = des.xi_a_dot_d;
    row.r_foot = ref.r_foot;
    row.segment = seg_idx;
    row.angular_momentum = params.inertia * s.thetadot;
    return row;
  };

  auto diverged = [&](const SpatialState& s) {
    return !s.finite() || s.x.norm() > config.divergence_pos ||
           std::abs(s.theta) > config.divergence_angle;
  };

  const auto& segments = traj.segments();
  WrenchCommand held;
  bool stop = false;
  for (size_t seg_idx = 0; seg_idx < segments.size() && !stop; ++seg_idx) {
    const auto& seg = segments[seg_idx];
    const Vec3 r_foot = seg.r_foot;
    const int n_steps = steps_for(seg.t_end - seg.t_start, config.dt,
                                  "stance duration");
    for (int i = 0; i < n_steps; ++i) {
      const double t = seg.t_start + i * config.dt;
      state.t = t;
      if (i % steps_per_tick == 0) {
        log.rows.push_back(make_row(state, static_cast<int>(seg_idx), t));
        held = log.rows.back().wrench;
      }
      if (config.continuous_control) {
        state = rk4_step(state, config.dt, [&](const SpatialState& s) {
          const ReferenceSample ref =
              traj.sample_in_segment(static_cast<int>(seg_idx), s.t);
          const WrenchCommand cmd =
              control_tick(s, ref, r_foot, params, config.control);
          const Accel a = constrained_dynamics(s, cmd.f_ext, cmd.tau_ext,
                                               r_foot, params);
          StateDeriv d;
          d.dx = s.xdot;
          d.dv = a.xddot;
          d.dtheta = s.thetadot;
          d.domega = a.thetaddot;
          return d;
        });
      } else {
        state = integrate_step(state, held, r_foot, config.dt, params);
      }
      if (diverged(state)) {
        log.diverged = true;
        log.message = "state diverged at t=" + std::to_string(state.t);
        stop = true;
        break;
      }
    }
    state.t = seg.t_end;
  }
  if (!stop) {
    log.rows.push_back(make_row(state,
                                static_cast<int>(segments.size()) - 1,
                                traj.t_end()));
  }

  // Summary statistics.
  RunSummary& sum = log.summary;
  sum.duration = config.plan.total_duration();
  sum.n_rows = log.rows.size();
  sum.derived = DerivedConstants{params.b, params.s, params.gamma};
  const SystemMatrices sys = closed_loop_matrices(params);
  sum.closed_loop_eigenvalues = sys.stacked.eigenvalues;
  sum.stable = (sys.stacked.eigenvalues.array() < 0.0).all();
  sum.segments.resize(segments.size());
  for (size_t i = 0; i < segments.size(); ++i) {
    sum.segments[i].segment = static_cast<int>(i);
    sum.segments[i].phi_set = config.plan.steps[i].phi_vro;
    sum.segments[i].min_abs_theta_err =
        std::numeric_limits<double>::infinity();
    if (i > 0 &&
        config.plan.steps[i].phi_vro != config.plan.steps[i - 1].phi_vro) {
      ++sum.n_setpoint_switches;
    }
  }
  constexpr double kSettleTol = 1e-3;
  double last_unsettled_lin = -1.0, last_unsettled_ang = -1.0;
  for (const auto& row : log.rows) {
    sum.peak_abs_cop = std::max(sum.peak_abs_cop, std::abs(row.wrench.r_cop));
    if (row.wrench.f_ext.z() > 1e-9) {
      sum.peak_exact_cop =
          std::max(sum.peak_exact_cop,
                   std::abs(row.wrench.tau_ext / row.wrench.f_ext.z()));
    }
    const double lin_err = (row.xi_l - row.xi_l_d).norm();
    const double ang_err = std::abs(row.xi_a - row.xi_a_d);
    sum.max_lin_err = std::max(sum.max_lin_err, lin_err);
    sum.max_ang_err = std::max(sum.max_ang_err, ang_err);
    if (lin_err >= kSettleTol) last_unsettled_lin = row.t;
    if (ang_err >= kSettleTol) last_unsettled_ang = row.t;
    if (row.wrench.saturated) ++sum.n_saturated_ticks;
    auto& seg_stats = sum.segments[static_cast<size_t>(row.segment)];
    const double theta_err = std::abs(row.state.theta - seg_stats.phi_set);
    seg_stats.min_abs_theta_err =
        std::min(seg_stats.min_abs_theta_err, theta_err);
    seg_stats.end_abs_theta_err = theta_err;
  }
  if (!log.rows.empty()) {
    const auto& last = log.rows.back();
    sum.final_lin_err = (last.xi_l - last.xi_l_d).norm();
    sum.final_ang_err = std::abs(last.xi_a - last.xi_a_d);
    sum.final_theta = last.state.theta;
    sum.settling_time_lin = last_unsettled_lin;
    sum.settling_time_ang = last_unsettled_ang;
  }
  return log;
}

AnalyticClosedLoop::AnalyticClosedLoop(const SimConfig& config) {
  config.validate();
  if (config.control.cop_constraint) {
    throw std::invalid_argument(
        "analytic closed loop requires the CoP constraint disabled");
  }
  const PlannerParams& p = config.params;
  const ReferenceTrajectory traj = ReferenceTrajectory::build(config.plan, p);
  const auto& segs = traj.segments();
  const ControlOptions& opts = config.control;

  const double inv_b = 1.0 / p.b;
  const double inv_eta = 1.0 / p.eta;
  const bool lin_rec = opts.lin_ref == RefMode::kRecursion;
  const bool ang_rec = opts.ang_ref == RefMode::kRecursion;

  seg_A_.reserve(segs.size());
  seg_start_state_.reserve(segs.size());
  for (const auto& seg : segs) {
    Mat A = Mat::Zero();
    const Eigen::Matrix3d I3 = Eigen::Matrix3d::Identity();
    // Body follows its DCM.
    A.block<3, 3>(0, 0) = -inv_b * I3;
    A.block<3, 3>(0, 3) = inv_b * I3;
    A(6, 6) = -inv_eta;
    A(6, 7) = inv_eta;
    // Linear DCM channel.
    A.block<3, 3>(3, 3) = -p.k_l * I3;
    if (lin_rec) {
      if (opts.feedforward_lin) {
        A.block<3, 3>(3, 8) = (p.k_l + inv_b) * I3;
        A.block<3, 1>(3, 12) = -inv_b * seg.r_vrp;
      } else {
        A.block<3, 3>(3, 8) = p.k_l * I3;
      }
      A.block<3, 3>(8, 8) = inv_b * I3;
      A.block<3, 1>(8, 12) = -inv_b * seg.r_vrp;
    } else {
      A.block<3, 1>(3, 12) = p.k_l * seg.r_vrp;
    }
    // Angular DCM channel.
    A(7, 7) = -p.k_a;
    if (ang_rec) {
      if (opts.feedforward_ang) {
        A(7, 11) = p.k_a + inv_eta;
        A(7, 12) = -inv_eta * seg.phi_vro;
      } else {
        A(7, 11) = p.k_a;
      }
      A(11, 11) = inv_eta;
      A(11, 12) = -inv_eta * seg.phi_vro;
    } else {
      A(7, 12) = p.k_a * seg.phi_vro;
    }
    seg_A_.push_back(A);
    seg_t_start_.push_back(seg.t_start);
    seg_t_end_.push_back(seg.t_end);
  }
  t_end_ = traj.t_end();

  // Initial augmented state, matching the simulator's default or override.
  SpatialState init;
  if (config.initial_state) {
    init = *config.initial_state;
  } else {
    const ReferenceSample first = traj.sample_in_segment(0, 0.0);
    init.x = config.plan.steps.front().r_foot + Vec3(0.0, 0.0, p.h);
    init.xdot.setZero();
    init.theta = effective_desired(first, opts).xi_a_d;
    init.thetadot = 0.0;
  }
  Vec z = Vec::Zero();
  z.segment<3>(0) = init.x;
  z.segment<3>(3) = linear_dcm(init.x, init.xdot, p.b);
  z(6) = init.theta;
  z(7) = angular_dcm(init.theta, init.thetadot, p.eta);
  z(12) = 1.0;

  // The desired-DCM entries are unstable modes of the augmented matrix
  // (+1/b, +1/eta); re-anchoring them on the recursion keypoints at every
  // segment start keeps rounding noise from compounding across segments.
  for (size_t i = 0; i < segs.size(); ++i) {
    const ReferenceSample at_start =
        traj.sample_in_segment(static_cast<int>(i), segs[i].t_start);
    z.segment<3>(8) = lin_rec ? at_start.xi_l_d : at_start.r_vrp_const;
    z(11) = ang_rec ? at_start.xi_a_d : at_start.phi_vro_const;
    seg_start_state_.push_back(z);
    const double dur = segs[i].t_end - segs[i].t_start;
    z = (seg_A_[i] * dur).exp() * z;
  }
}

AnalyticClosedLoop::Eval AnalyticClosedLoop::eval(double t) const {
  size_t idx = 0;
  while (idx + 1 < seg_t_end_.size() && t >= seg_t_end_[idx]) ++idx;
  const double dt = t - seg_t_start_[idx];
  const Vec z = (seg_A_[idx] * dt).exp() * seg_start_state_[idx];
  Eval out;
  out.x = z.segment<3>(0);
  out.xi_l = z.segment<3>(3);
  out.theta = z(6);
  out.xi_a = z(7);
  return out;
}

AnalyticClosedLoop::Eval analytic_closed_loop(const SimConfig& config,
                                              double t) {
  return AnalyticClosedLoop(config).eval(t);
}

}  // namespace sdcm
