#include "sdcm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace sdcm {

bool SpatialState::finite() const {
  return x.allFinite() && xdot.allFinite() && std::isfinite(theta) &&
         std::isfinite(thetadot) && std::isfinite(t);
}

Vec3 linear_dcm(const Vec3& x, const Vec3& xdot, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("linear_dcm: b must be positive");
  return x + b * xdot;
}

double angular_dcm(double theta, double thetadot, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("angular_dcm: eta must be positive");
  return theta + eta * thetadot;
}

Vec3 ecmp_force(const Vec3& x, const Vec3& r_ecmp, double s) {
  return s * (x - r_ecmp);
}

double vro_torque(double theta, double phi_vro, double gamma) {
  return gamma * (theta - phi_vro);
}

Vec3 vrp_from_ecmp(const Vec3& r_ecmp, double b, double g) {
  if (!(b > 0.0)) throw std::invalid_argument("vrp_from_ecmp: b must be positive");
  return r_ecmp + Vec3(0.0, 0.0, b * b * g);
}

Vec3 ecmp_from_vrp(const Vec3& r_vrp, double b, double g) {
  if (!(b > 0.0)) throw std::invalid_argument("ecmp_from_vrp: b must be positive");
  return r_vrp - Vec3(0.0, 0.0, b * b * g);
}

double pitch_cross_torque(const Vec3& x, const Vec3& f_ext, const Vec3& r_foot) {
  const Vec3 lever = r_foot - x;
  return lever.z() * f_ext.x() - lever.x() * f_ext.z();
}

Accel constrained_dynamics(const SpatialState& state, const Vec3& f_ext,
                           double tau_ext, const Vec3& r_foot,
                           const PlannerParams& params) {
  Accel a;
  a.xddot = f_ext / params.m - Vec3(0.0, 0.0, params.g);
  a.thetaddot =
      (pitch_cross_torque(state.x, f_ext, r_foot) + tau_ext) / params.inertia;
  return a;
}

}  // namespace sdcm
