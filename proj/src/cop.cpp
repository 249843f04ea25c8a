#include "sdcm/cop.hpp"

#include <cmath>
#include <stdexcept>

namespace sdcm {

double cop_from_torque(double tau_ext, double m, double g) {
  if (!(m > 0.0) || !(g > 0.0)) {
    throw std::invalid_argument("cop_from_torque: m and g must be positive");
  }
  return -tau_ext / (m * g);
}

TorqueSplit saturate_torque(double tau_requested, const SupportBounds& bounds,
                            double m, double g) {
  if (!(bounds.r_cop_thres > 0.0)) {
    throw std::invalid_argument("r_cop_thres must be positive");
  }
  const double tau_limit = m * g * bounds.r_cop_thres;
  TorqueSplit split;
  if (std::abs(tau_requested) <= tau_limit) {
    split.tau_applied = tau_requested;
    split.tau_bar = 0.0;
  } else {
    split.tau_applied = std::copysign(tau_limit, tau_requested);
    split.tau_bar = tau_requested - split.tau_applied;
  }
  return split;
}

Vec3 augment_ecmp(const Vec3& r_ecmp, double tau_bar_x, double tau_bar_y,
                  double m, double g) {
  if (!(m > 0.0) || !(g > 0.0)) {
    throw std::invalid_argument("augment_ecmp: m and g must be positive");
  }
  return r_ecmp + Vec3(tau_bar_y, -tau_bar_x, 0.0) / (m * g);
}

}  // namespace sdcm
