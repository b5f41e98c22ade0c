/** \file gas.hpp
 *  \brief Perfect-gas thermodynamics and classical characteristic quantities.
 */
#ifndef ADJCHAR_GAS_HPP
#define ADJCHAR_GAS_HPP

#include <array>
#include <optional>

#include "adjchar/errors.hpp"

namespace adjchar {

struct GasModel {
  double gamma = 1.4;  // > 1
  double gamma1() const { return gamma - 1.0; }
};

/// Conservative flow state at a point, 2D.
struct ConservState2 {
  double rho;
  double rho_u;
  double rho_v;
  double rho_E;
};

/// Conservative flow state at a point, 3D.
struct ConservState3 {
  double rho;
  double rho_u;
  double rho_v;
  double rho_w;
  double rho_E;
};

/// Adjoint vector at a point (components psi_1..psi_4).
struct Adjoint2 {
  std::array<double, 4> psi{};
};

/// Primitive quantities derived from a ConservState2.
///
/// Invariants: c = sqrt(gamma p / rho), H = c^2/(gamma-1) + Ec,
/// M = |U|/c, sin(beta) = 1/M when M >= 1. phi = 0 for stagnant states.
struct Primitive2 {
  double rho;
  double u;
  double v;
  double p;
  double c;
  double M;
  double H;
  double Ec;                   // kinetic energy per unit mass
  double phi;                  // flow angle [rad]
  std::optional<double> beta;  // Mach angle [rad], present iff M >= 1
  bool stagnant;
};

Primitive2 primitive_from_conservative(const ConservState2& q, const GasModel& gas);

ConservState2 conservative_from_primitive(double rho, double u, double v, double p,
                                          const GasModel& gas);

/// Static pressure of a 3D conservative state; throws NonPhysicalState.
double pressure(const ConservState3& q, const GasModel& gas);

/// Prandtl-Meyer function nu(M) [rad]; requires M >= 1.
double prandtl_meyer(double mach, const GasModel& gas);

struct RiemannInvariants {
  double k_plus;   // phi - nu(M), constant along a C+
  double k_minus;  // phi + nu(M), constant along a C-
};

RiemannInvariants riemann_invariants(const ConservState2& q, const GasModel& gas);

}  // namespace adjchar

#endif
