#include "adjchar/jacobians.hpp"

#include <cmath>
#include <string>

namespace adjchar {

JacobianPair2 jacobian_transpose_2d(const ConservState2& q, const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  const double g = gas.gamma;
  const double g1 = gas.gamma1();
  const double u = w.u, v = w.v, Ec = w.Ec, H = w.H;

  JacobianPair2 j;
  Mat4& A = j.a_t;
  A(0, 0) = 0.0; A(0, 1) = g1 * Ec - u * u; A(0, 2) = -u * v;      A(0, 3) = (g1 * Ec - H) * u;
  A(1, 0) = 1.0; A(1, 1) = (3.0 - g) * u;   A(1, 2) = v;           A(1, 3) = H - g1 * u * u;
  A(2, 0) = 0.0; A(2, 1) = -g1 * v;         A(2, 2) = u;           A(2, 3) = -g1 * u * v;
  A(3, 0) = 0.0; A(3, 1) = g1;              A(3, 2) = 0.0;         A(3, 3) = g * u;

  Mat4& B = j.b_t;
  B(0, 0) = 0.0; B(0, 1) = -u * v;          B(0, 2) = g1 * Ec - v * v; B(0, 3) = (g1 * Ec - H) * v;
  B(1, 0) = 0.0; B(1, 1) = v;               B(1, 2) = -g1 * u;         B(1, 3) = -g1 * u * v;
  B(2, 0) = 1.0; B(2, 1) = u;               B(2, 2) = (3.0 - g) * v;   B(2, 3) = H - g1 * v * v;
  B(3, 0) = 0.0; B(3, 1) = 0.0;             B(3, 2) = g1;              B(3, 3) = g * v;
  return j;
}

JacobianTriple3 jacobian_transpose_3d(const ConservState3& q, const GasModel& gas) {
  const double p = pressure(q, gas);
  const double g = gas.gamma;
  const double g1 = gas.gamma1();
  const double u = q.rho_u / q.rho;
  const double v = q.rho_v / q.rho;
  const double w = q.rho_w / q.rho;
  const double Ec = 0.5 * (u * u + v * v + w * w);
  const double c2 = g * p / q.rho;
  const double H = c2 / g1 + Ec;

  JacobianTriple3 j;
  Mat5& A = j.a_t;
  A(0, 0) = 0; A(0, 1) = g1 * Ec - u * u; A(0, 2) = -u * v;        A(0, 3) = -u * w;        A(0, 4) = (g1 * Ec - H) * u;
  A(1, 0) = 1; A(1, 1) = (3.0 - g) * u;   A(1, 2) = v;             A(1, 3) = w;             A(1, 4) = H - g1 * u * u;
  A(2, 0) = 0; A(2, 1) = -g1 * v;         A(2, 2) = u;             A(2, 3) = 0;             A(2, 4) = -g1 * u * v;
  A(3, 0) = 0; A(3, 1) = -g1 * w;         A(3, 2) = 0;             A(3, 3) = u;             A(3, 4) = -g1 * u * w;
  A(4, 0) = 0; A(4, 1) = g1;              A(4, 2) = 0;             A(4, 3) = 0;             A(4, 4) = g * u;

  Mat5& B = j.b_t;
  B(0, 0) = 0; B(0, 1) = -u * v;          B(0, 2) = g1 * Ec - v * v; B(0, 3) = -v * w;      B(0, 4) = (g1 * Ec - H) * v;
  B(1, 0) = 0; B(1, 1) = v;               B(1, 2) = -g1 * u;         B(1, 3) = 0;           B(1, 4) = -g1 * u * v;
  B(2, 0) = 1; B(2, 1) = u;               B(2, 2) = (3.0 - g) * v;   B(2, 3) = w;           B(2, 4) = H - g1 * v * v;
  B(3, 0) = 0; B(3, 1) = 0;               B(3, 2) = -g1 * w;         B(3, 3) = v;           B(3, 4) = -g1 * v * w;
  B(4, 0) = 0; B(4, 1) = 0;               B(4, 2) = g1;              B(4, 3) = 0;           B(4, 4) = g * v;

  Mat5& C = j.c_t;
  C(0, 0) = 0; C(0, 1) = -u * w;          C(0, 2) = -v * w;          C(0, 3) = g1 * Ec - w * w; C(0, 4) = (g1 * Ec - H) * w;
  C(1, 0) = 0; C(1, 1) = w;               C(1, 2) = 0;               C(1, 3) = -g1 * u;         C(1, 4) = -g1 * u * w;
  C(2, 0) = 0; C(2, 1) = 0;               C(2, 2) = w;               C(2, 3) = -g1 * v;         C(2, 4) = -g1 * v * w;
  C(3, 0) = 1; C(3, 1) = u;               C(3, 2) = v;               C(3, 3) = (3.0 - g) * w;   C(3, 4) = H - g1 * w * w;
  C(4, 0) = 0; C(4, 1) = 0;               C(4, 2) = 0;               C(4, 3) = g1;              C(4, 4) = g * w;
  return j;
}

Mat8 characteristic_system(const ConservState2& q, const Direction& dir, const GasModel& gas) {
  const JacobianPair2 j = jacobian_transpose_2d(q, gas);
  Mat8 m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = dir.dx();
    m(i, i + 4) = dir.dy();
    for (int k = 0; k < 4; ++k) {
      m(i + 4, k) = -j.a_t(i, k);
      m(i + 4, k + 4) = -j.b_t(i, k);
    }
  }
  return m;
}

DeterminantPair characteristic_determinant(const ConservState2& q, const Direction& dir,
                                           const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  const double dx = dir.dx(), dy = dir.dy();
  const double cross = w.u * dy - w.v * dx;
  const double ds2 = dx * dx + dy * dy;
  DeterminantPair d;
  d.det8 = lu_determinant(characteristic_system(q, dir, gas));
  d.factored = cross * cross * (cross * cross - w.c * w.c * ds2);
  return d;
}

namespace {

// Factored coefficients Cbar = C / (u dy - v dx); the unfactored C carry one
// extra (u dy - v dx) factor each. The closed forms are homogenized in
// (dx, dy) so vertical directions stay finite.
CoeffTable factored_table(const Primitive2& w, double dx, double dy, const GasModel& gas) {
  const double g = gas.gamma;
  const double g1 = gas.gamma1();
  const double u = w.u, v = w.v, H = w.H;
  const double c2 = w.c * w.c;
  const double q2 = u * u + v * v;
  const double u2 = u * u, v2 = v * v;
  const double u3 = u2 * u, v3 = v2 * v;

  const double ch = u * dx + v * dy;
  const double dx2 = dx * dx, dy2 = dy * dy, dxdy = dx * dy;

  const double SA = (c2 + g1 * u2 - v2) * dx + g * u * v * dy;
  const double SD = -((c2 + g1 * v2 - u2) * dy + g * u * v * dx);
  const double SB = c2 * (v * dx + u * dy) - v3 * dx + g1 * u3 * dy + g * u * v2 * dy;
  const double SE = -c2 * (v * dx + u * dy) - g * u2 * v * dx - g1 * v3 * dx + u3 * dy;

  const double W1x = 2.0 * v * (v2 - c2) * dx2 +
                     (2.0 * c2 * u + g1 * u3 + (g - 5.0) * u * v2) * dxdy +
                     ((g + 1.0) * u2 * v + g1 * v3) * dy2;
  const double W1y = (g1 * u3 + (g + 1.0) * u * v2) * dx2 +
                     (2.0 * c2 * v + (g - 5.0) * u2 * v + g1 * v3) * dxdy +
                     2.0 * u * (u2 - c2) * dy2;
  const double W2y = (2.0 * c2 * u + g1 * u3 + (g - 3.0) * u * v2) * dx2 +
                     v * (3.0 * u2 - c2) * dxdy + u * (c2 - u2) * dy2;
  const double W3x = v * (c2 - v2) * dx2 + u * (3.0 * v2 - c2) * dxdy +
                     (2.0 * c2 * v + (g - 3.0) * u2 * v + g1 * v3) * dy2;

  CoeffTable tab;
  tab.x(1, 1) = -0.5 * W1x;
  tab.x(2, 1) = g1 * H * q2 * dxdy;
  tab.x(3, 1) = -g1 * H * q2 * dy2;
  tab.x(4, 1) = g1 * H * H * dy * ch;
  tab.x(1, 2) = -dy * SA;
  tab.x(2, 2) = dx * SB;
  tab.x(3, 2) = -dy * SB;
  tab.x(4, 2) = H * dy * SA;
  tab.x(1, 3) = -dy * SD;
  tab.x(2, 3) = dy * SE;
  tab.x(3, 3) = W3x;
  tab.x(4, 3) = H * dy * SD;
  tab.x(1, 4) = g1 * dy * ch;
  tab.x(2, 4) = -g1 * q2 * dxdy;
  tab.x(3, 4) = g1 * q2 * dy2;
  tab.x(4, 4) = -0.5 * W1x;

  tab.y(1, 1) = 0.5 * W1y;
  tab.y(2, 1) = -g1 * H * q2 * dx2;
  tab.y(3, 1) = g1 * H * q2 * dxdy;
  tab.y(4, 1) = -g1 * H * H * dx * ch;
  tab.y(1, 2) = dx * SA;
  tab.y(2, 2) = -W2y;
  tab.y(3, 2) = dx * SB;
  tab.y(4, 2) = -H * dx * SA;
  tab.y(1, 3) = dx * SD;
  tab.y(2, 3) = -dx * SE;
  tab.y(3, 3) = dy * SE;
  tab.y(4, 3) = -H * dx * SD;
  tab.y(1, 4) = -g1 * dx * ch;
  tab.y(2, 4) = g1 * q2 * dx2;
  tab.y(3, 4) = -g1 * q2 * dxdy;
  tab.y(4, 4) = 0.5 * W1y;

  tab.kappa = (u * dy - v * dx) / dx;  // callers guarantee dx != 0
  tab.t = dy / dx;
  return tab;
}

}  // namespace

CoeffTable coefficient_table_factored(const ConservState2& q, const Direction& dir,
                                      const GasModel& gas) {
  if (dir.dx() == 0.0) {
    throw DegenerateDirection("coefficient table requested for a vertical direction (dx = 0)");
  }
  const Primitive2 w = primitive_from_conservative(q, gas);
  return factored_table(w, dir.dx(), dir.dy(), gas);
}

CoeffTable coefficient_table(const ConservState2& q, const Direction& dir, const GasModel& gas) {
  if (dir.dx() == 0.0) {
    throw DegenerateDirection("coefficient table requested for a vertical direction (dx = 0)");
  }
  const Primitive2 w = primitive_from_conservative(q, gas);
  CoeffTable tab = factored_table(w, dir.dx(), dir.dy(), gas);
  const double cross = w.u * dir.dy() - w.v * dir.dx();
  for (int m = 0; m < 4; ++m) {
    for (int l = 0; l < 4; ++l) {
      tab.cx[m][l] *= cross;
      tab.cy[m][l] *= cross;
    }
  }
  return tab;
}

LeftEigenvectors left_eigenvectors(const ConservState2& q, double alpha, const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  if (!(w.M > 1.0)) {
    throw SubsonicInput("left_eigenvectors requires M > 1, got M = " + std::to_string(w.M));
  }
  const double speed = std::sqrt(w.u * w.u + w.v * w.v);
  if (std::fabs(w.u * std::sin(alpha) - w.v * std::cos(alpha)) > 1e-9 * speed) {
    throw Error("left_eigenvectors: velocity angle does not match alpha");
  }
  const double g1 = gas.gamma1();
  const double c = w.c, rho = w.rho, M = w.M, u = w.u, v = w.v;
  const double beta = std::asin(1.0 / M);
  const double amb = alpha - beta;
  const double apb = alpha + beta;
  const double head = 1.0 + 0.5 * g1 * M * M;

  LeftEigenvectors e;
  e.lambda_alpha_minus_beta = {
      (c / rho) * head,
      (std::sin(amb) - g1 * u / c) / rho,
      (-std::cos(amb) - g1 * v / c) / rho,
      g1 / (rho * c),
  };
  e.lambda_alpha_plus_beta = {
      (c / rho) * head,
      -(std::sin(apb) + g1 * u / c) / rho,
      -(-std::cos(apb) + g1 * v / c) / rho,
      g1 / (rho * c),
  };
  const double un = std::cos(alpha) * u + std::sin(alpha) * v;
  e.lambda_alpha = {
      -head,
      g1 * u / (c * c) + 2.0 * std::cos(alpha) / un,
      g1 * v / (c * c) + 2.0 * std::sin(alpha) / un,
      -g1 / (c * c),
  };
  return e;
}

}  // namespace adjchar
