/** \file forms.hpp
 *  \brief Characteristic directions, the eight differential forms, and the
 *         ODE residuals along streamtraces and C+/C- curves.
 */
#ifndef ADJCHAR_FORMS_HPP
#define ADJCHAR_FORMS_HPP

#include <array>
#include <optional>
#include <span>

#include "adjchar/gas.hpp"
#include "adjchar/jacobians.hpp"
#include "adjchar/matrices.hpp"

namespace adjchar {

/// The three characteristic directions at a state. C+/C- entries are present
/// iff M >= 1; slopes are present additionally iff the direction is not
/// vertical. Directions are built from the angles phi and phi +/- beta, so
/// vertical characteristics (u^2 = c^2) are first-class.
struct CharDirections {
  Direction s_dir;
  std::optional<Direction> c_plus_dir;
  std::optional<Direction> c_minus_dir;
  std::optional<double> t_plus;
  std::optional<double> t_minus;
};

CharDirections characteristic_directions(const ConservState2& q, const GasModel& gas);

/// d(psi)/ds along a curve; s increases opposite to the flow direction.
struct AdjointRate {
  std::array<double, 4> dpsi_ds{};
};

/// A compatibility-relation residual split into its four additive terms.
struct FormResidual {
  double total = 0.0;
  std::array<double, 4> subparts{};
};

/// Residuals of the two streamtrace ODEs:
///   r1: Ec psi1' + H (u psi2' + v psi3') + H^2 psi4'
///   r2: psi1' + u psi2' + v psi3' + Ec psi4'
struct StreamtraceResiduals {
  FormResidual r1;
  FormResidual r2;
};

StreamtraceResiduals streamtrace_residuals(const ConservState2& q, const AdjointRate& rate,
                                           const GasModel& gas);

/// Direction-homogeneous C+/C- ODE residual with (xi, eta) = dir:
///   (u xi + v eta) psi1' + (u^2+v^2)(xi psi2' + eta psi3') + H (u xi + v eta) psi4'
/// For xi != 0 this equals xi times the slope form
///   (u + v t) psi1' + (u^2+v^2)(psi2' + t psi3') + H (u + v t) psi4'.
FormResidual characteristic_residual(const ConservState2& q, const Direction& dir,
                                     const AdjointRate& rate, const GasModel& gas);

/// The eight differential forms as an 8x4 row-major matrix on
/// (dpsi_1..dpsi_4). Rows 0..3 come from the x-derivative forms (m = 1..4),
/// rows 4..7 from the y-derivative forms. Row m carries the alternating-sign
/// convention (+C^1, -C^2, +C^3, -C^4) over the factored coefficients. For
/// vertical directions the rows are assembled from the swapped-axis system
/// (x<->y, u<->v, psi2<->psi3), which agrees with the direct assembly up to
/// a per-row sign.
using FormMatrix = std::array<double, 32>;

FormMatrix form_matrix(const ConservState2& q, const Direction& dir, const GasModel& gas);

/// Number of singular values greater than rel_tol times the largest one.
int numeric_rank(std::span<const double> row_major, int rows, int cols, double rel_tol = 1e-8);

inline int numeric_rank(const FormMatrix& m, double rel_tol = 1e-8) {
  return numeric_rank(std::span<const double>(m.data(), m.size()), 8, 4, rel_tol);
}

}  // namespace adjchar

#endif
