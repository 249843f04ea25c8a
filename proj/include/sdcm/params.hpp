#pragma once

#include <string>

namespace sdcm {

/// Physical parameters of the pitch-constrained single rigid body model
/// together with the derived encoding constants.
///
/// The derived members satisfy the exact identities
///   b^2 * g = h,   s * b^2 = m,   gamma * eta^2 = I_yy
/// and are recomputed on construction; they are not independent inputs.
struct PlannerParams {
  double m = 65.1;          ///< body mass [kg]
  double g = 9.81;          ///< gravity magnitude, gravity vector is [0, 0, g] [m/s^2]
  double h = 0.981;         ///< nominal CoM height above the foot sole [m]
  double inertia = 2.3;     ///< pitch-axis moment of inertia I_yy [kg m^2]
  double eta = 0.0;         ///< angular DCM time constant [s]; 0 selects eta = b
  double k_l = 3.0;         ///< linear DCM tracking gain [1/s]
  double k_a = 3.0;         ///< angular DCM tracking gain [1/s]
  double r_cop_thres = 0.12;///< support half-length along x [m]

  // derived
  double b = 0.0;           ///< linear DCM time constant, sqrt(h/g) [s]
  double s = 0.0;           ///< force encoding constant, m/b^2 [kg/s^2]
  double gamma = 0.0;       ///< torque encoding constant, I_yy/eta^2 [N m/rad]

  /// Validates the raw fields and fills in b, s, gamma.
  /// Throws std::invalid_argument on any non-positive physical field.
  void finalize();

  bool finalized() const { return b > 0.0; }
};

struct DerivedConstants {
  double b;
  double s;
  double gamma;
};

/// b = sqrt(h/g), s = m/b^2, gamma = I_yy/eta^2.
/// All inputs must be strictly positive.
DerivedConstants derive_constants(double m, double g, double h, double inertia,
                                  double eta);

/// Convenience factory: fields then finalize().
PlannerParams make_params(double m, double g, double h, double inertia,
                          double eta, double k_l, double k_a,
                          double r_cop_thres);

}  // namespace sdcm
