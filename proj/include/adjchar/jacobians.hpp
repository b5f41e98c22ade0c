/** \file jacobians.hpp
 *  \brief Transposed Euler flux Jacobians, the 8x8 characteristic system and its
 *         determinant factorization, the 32 closed-form minor coefficients, and
 *         the left null eigenvectors used by the uniform-flow adjoint field.
 */
#ifndef ADJCHAR_JACOBIANS_HPP
#define ADJCHAR_JACOBIANS_HPP

#include <array>
#include <optional>

#include "adjchar/gas.hpp"
#include "adjchar/matrices.hpp"

namespace adjchar {

struct JacobianPair2 {
  Mat4 a_t;  // transpose of dF_x/dq
  Mat4 b_t;  // transpose of dF_y/dq
};

struct JacobianTriple3 {
  Mat5 a_t;
  Mat5 b_t;
  Mat5 c_t;
};

JacobianPair2 jacobian_transpose_2d(const ConservState2& q, const GasModel& gas);
JacobianTriple3 jacobian_transpose_3d(const ConservState3& q, const GasModel& gas);

/// The 8x8 linear system relating (dpsi/dx, dpsi/dy) to the adjoint
/// differentials along a displacement (dx, dy):
///   [ dx I4   dy I4 ]
///   [ -A^T    -B^T  ]
Mat8 characteristic_system(const ConservState2& q, const Direction& dir, const GasModel& gas);

struct DeterminantPair {
  double det8;      // LU determinant of the assembled 8x8 system
  double factored;  // (u dy - v dx)^2 ((u dy - v dx)^2 - c^2 ds^2)
};

DeterminantPair characteristic_determinant(const ConservState2& q, const Direction& dir,
                                           const GasModel& gas);

/// The 32 coefficients C^l_{mx}, C^l_{my} of the eight differential forms.
///
/// C^l_{mx} is the 7x7 minor of the characteristic system obtained by deleting
/// row l and the column of dpsi_m/dx (column m); C^l_{my} deletes column m+4.
/// The null form for row m in direction x reads
///   C^1_{mx} dpsi_1 - C^2_{mx} dpsi_2 + C^3_{mx} dpsi_3 - C^4_{mx} dpsi_4 = 0.
struct CoeffTable {
  std::array<std::array<double, 4>, 4> cx{};  // [m-1][l-1]
  std::array<std::array<double, 4>, 4> cy{};
  double kappa = 0.0;             // u t - v
  std::optional<double> t;        // dy/dx, absent for vertical directions

  double x(int l, int m) const { return cx[m - 1][l - 1]; }
  double y(int l, int m) const { return cy[m - 1][l - 1]; }
  double& x(int l, int m) { return cx[m - 1][l - 1]; }
  double& y(int l, int m) { return cy[m - 1][l - 1]; }
};

/// Closed-form coefficient table evaluated with the direction components
/// (dx, dy) themselves, never the slope alone. Requires dir.dx() != 0.
CoeffTable coefficient_table(const ConservState2& q, const Direction& dir, const GasModel& gas);

/// The factored coefficients Cbar = C / (kappa dx), finite for kappa = 0.
CoeffTable coefficient_table_factored(const ConservState2& q, const Direction& dir,
                                      const GasModel& gas);

struct LeftEigenvectors {
  std::array<double, 4> lambda_alpha;
  std::array<double, 4> lambda_alpha_plus_beta;
  std::array<double, 4> lambda_alpha_minus_beta;
};

/// Left null vectors of (A sin(mu) - B cos(mu)) for mu in
/// {alpha, alpha+beta, alpha-beta}, for a supersonic state whose velocity
/// angle equals alpha. Each satisfies component_1 = H component_4.
LeftEigenvectors left_eigenvectors(const ConservState2& q, double alpha, const GasModel& gas);

}  // namespace adjchar

#endif
