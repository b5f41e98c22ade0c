/** \file analytic.hpp
 *  \brief Analytic fixtures: the uniform-supersonic three-stripe adjoint
 *         field, the Gamma constancy functions, and the 3D streamtrace
 *         combination identities.
 */
#ifndef ADJCHAR_ANALYTIC_HPP
#define ADJCHAR_ANALYTIC_HPP

#include <string>
#include <vector>

#include "adjchar/field.hpp"
#include "adjchar/jacobians.hpp"
#include "adjchar/tracer.hpp"

namespace adjchar {

/// Piecewise-linear scalar profile on strictly increasing breakpoints.
/// Queries outside the table domain throw OutOfProfileDomain.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  /// One-sided slope of the containing segment (segment to the right of a
  /// breakpoint).
  double slope_at(double x) const;
  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }

  /// Compactly supported hat: zero outside [center-width/2, center+width/2],
  /// peak `height` at center, with flat zero padding out to +/- pad.
  static PiecewiseLinear hat(double center, double width, double height, double pad);

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Uniform supersonic flow at (M_inf, alpha) carrying the three-stripe
/// adjoint field: psi(x,y) = sum_mu prof_mu(x sin mu - y cos mu) lambda0^mu
/// with mu in {alpha, alpha+beta, alpha-beta}.
struct StripeField {
  GasModel gas;
  double M_inf;
  double alpha;    // freestream angle [rad]
  double rho_inf;
  double c_inf;
  PiecewiseLinear prof_alpha;
  PiecewiseLinear prof_alpha_plus_beta;
  PiecewiseLinear prof_alpha_minus_beta;

  double beta() const;  // Mach angle, asin(1/M_inf)
  ConservState2 uniform_state() const;
  LeftEigenvectors eigenvectors() const;
};

/// Demo stripes: three unequal hats (apexes at 0.10/0.13/0.07 along the
/// stripe coordinates, widths 0.50/0.56/0.46, heights 1.0/0.8/1.25) whose
/// supports all cover the origin, padded far out with zeros.
StripeField make_demo_stripe_field(const GasModel& gas, double mach_inf, double alpha,
                                   double rho_inf = 1.0, double c_inf = 1.0);

Adjoint2 stripe_adjoint(const StripeField& field, double x, double y);

struct Bbox {
  double xlo, xhi, ylo, yhi;
};

/// Cartesian grid with the uniform conservative state and nodal stripe
/// adjoint values.
FieldGrid make_stripe_grid(const StripeField& field, const Bbox& bbox, int ni, int nj);

void emit_stripe_grid(const StripeField& field, const Bbox& bbox, int ni, int nj,
                      const std::string& path);

/// Per-sample values of the three conserved combinations along a curve:
///   Gamma1_S = Ec psi1 + H u psi2 + H v psi3 + H^2 psi4
///   Gamma2_S = psi1 + u psi2 + v psi3 + Ec psi4
///   Gamma_C+ = direction-homogeneous form (u xi + v eta) psi1
///              + (u^2+v^2)(xi psi2 + eta psi3) + H (u xi + v eta) psi4
/// with (xi, eta) the local downstream C+ direction; gamma_cplus is left
/// empty when any sample is subsonic. scale* hold the largest per-sample sum
/// of absolute terms, the natural yardstick for constancy.
struct GammaSamples {
  std::vector<double> gamma1_s;
  std::vector<double> gamma2_s;
  std::vector<double> gamma_cplus;
  double scale1 = 0.0;
  double scale2 = 0.0;
  double scale_cplus = 0.0;
};

GammaSamples gamma_along(const Curve& curve);

/// (max - min) over a sample set relative to its term scale.
double relative_spread(const std::vector<double>& values, double scale);

/// Residuals of the 3D streamtrace row combinations against their closed
/// target patterns, for the two ODE analogues. Pattern norms are max-abs.
struct ThreeDResiduals {
  double residual_r1;
  double residual_r2;
  double pattern_norm_r1;
  double pattern_norm_r2;
};

ThreeDResiduals verify_3d_streamtrace_identity(const ConservState3& q, const GasModel& gas);

}  // namespace adjchar

#endif
