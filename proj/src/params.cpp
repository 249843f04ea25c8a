#include "sdcm/params.hpp"

#include <cmath>
#include <stdexcept>

namespace sdcm {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(v));
  }
}

}  // namespace

DerivedConstants derive_constants(double m, double g, double h, double inertia,
                                  double eta) {
  require_positive(m, "m");
  require_positive(g, "g");
  require_positive(h, "h");
  require_positive(inertia, "I");
  require_positive(eta, "eta");
  DerivedConstants d;
  d.b = std::sqrt(h / g);
  d.s = m / (d.b * d.b);
  d.gamma = inertia / (eta * eta);
  return d;
}

void PlannerParams::finalize() {
  require_positive(m, "m");
  require_positive(g, "g");
  require_positive(h, "h");
  require_positive(inertia, "I");
  require_positive(r_cop_thres, "r_cop_thres");
  if (!(k_l > 0.0)) throw std::invalid_argument("k_l must be positive");
  if (!(k_a > 0.0)) throw std::invalid_argument("k_a must be positive");
  if (eta == 0.0) eta = std::sqrt(h / g);
  require_positive(eta, "eta");
  const DerivedConstants d = derive_constants(m, g, h, inertia, eta);
  b = d.b;
  s = d.s;
  gamma = d.gamma;
}

PlannerParams make_params(double m, double g, double h, double inertia,
                          double eta, double k_l, double k_a,
                          double r_cop_thres) {
  PlannerParams p;
  p.m = m;
  p.g = g;
  p.h = h;
  p.inertia = inertia;
  p.eta = eta;
  p.k_l = k_l;
  p.k_a = k_a;
  p.r_cop_thres = r_cop_thres;
  p.finalize();
  return p;
}

}  // namespace sdcm
