#include "adjchar/gas.hpp"

#include <cmath>
#include <string>

namespace adjchar {

Primitive2 primitive_from_conservative(const ConservState2& q, const GasModel& gas) {
  if (!(q.rho > 0.0)) {
    throw NonPhysicalState("rho = " + std::to_string(q.rho) + " <= 0");
  }
  const double g1 = gas.gamma1();
  const double u = q.rho_u / q.rho;
  const double v = q.rho_v / q.rho;
  const double ec = 0.5 * (u * u + v * v);
  const double p = g1 * (q.rho_E - q.rho * ec);
  if (!(p > 0.0)) {
    throw NonPhysicalState("p = " + std::to_string(p) + " <= 0");
  }
  Primitive2 w;
  w.rho = q.rho;
  w.u = u;
  w.v = v;
  w.p = p;
  w.c = std::sqrt(gas.gamma * p / q.rho);
  w.Ec = ec;
  w.H = w.c * w.c / g1 + ec;
  w.M = std::sqrt(2.0 * ec) / w.c;
  w.stagnant = (q.rho_u == 0.0 && q.rho_v == 0.0);
  w.phi = w.stagnant ? 0.0 : std::atan2(v, u);
  if (w.M >= 1.0) {
    w.beta = std::asin(1.0 / w.M);
  }
  return w;
}

ConservState2 conservative_from_primitive(double rho, double u, double v, double p,
                                          const GasModel& gas) {
  if (!(rho > 0.0) || !(p > 0.0)) {
    throw NonPhysicalState("rho or p <= 0 in primitive data");
  }
  ConservState2 q;
  q.rho = rho;
  q.rho_u = rho * u;
  q.rho_v = rho * v;
  q.rho_E = p / gas.gamma1() + 0.5 * rho * (u * u + v * v);
  return q;
}

double pressure(const ConservState3& q, const GasModel& gas) {
  if (!(q.rho > 0.0)) {
    throw NonPhysicalState("rho <= 0");
  }
  const double p = gas.gamma1() *
                   (q.rho_E - 0.5 * (q.rho_u * q.rho_u + q.rho_v * q.rho_v + q.rho_w * q.rho_w) / q.rho);
  if (!(p > 0.0)) {
    throw NonPhysicalState("p <= 0");
  }
  return p;
}

double prandtl_meyer(double mach, const GasModel& gas) {
  if (!(mach >= 1.0)) {
    throw SubsonicInput("prandtl_meyer requires M >= 1, got M = " + std::to_string(mach));
  }
  const double g = gas.gamma;
  const double g1 = gas.gamma1();
  const double m2m1 = mach * mach - 1.0;
  const double r = (g + 1.0) / g1;
  return std::sqrt(r) * std::atan(std::sqrt(m2m1 / r)) - std::atan(std::sqrt(m2m1));
}

RiemannInvariants riemann_invariants(const ConservState2& q, const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  if (!(w.M >= 1.0)) {
    throw SubsonicInput("riemann_invariants requires M >= 1, got M = " + std::to_string(w.M));
  }
  const double nu = prandtl_meyer(w.M, gas);
  return {w.phi - nu, w.phi + nu};
}

}  // namespace adjchar
