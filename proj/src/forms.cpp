#include "adjchar/forms.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace adjchar {

CharDirections characteristic_directions(const ConservState2& q, const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  if (w.stagnant) {
    throw StagnantState("characteristic directions undefined for a stagnant state");
  }
  CharDirections d{Direction::from_angle(w.phi), {}, {}, {}, {}};
  if (w.beta) {
    const double beta = *w.beta;
    d.c_plus_dir = Direction::from_angle(w.phi + beta);
    d.c_minus_dir = Direction::from_angle(w.phi - beta);
    d.t_plus = d.c_plus_dir->slope();
    d.t_minus = d.c_minus_dir->slope();
  }
  return d;
}

StreamtraceResiduals streamtrace_residuals(const ConservState2& q, const AdjointRate& rate,
                                           const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  const auto& r = rate.dpsi_ds;
  StreamtraceResiduals out;
  out.r1.subparts = {w.Ec * r[0], w.H * w.u * r[1], w.H * w.v * r[2], w.H * w.H * r[3]};
  out.r2.subparts = {r[0], w.u * r[1], w.v * r[2], w.Ec * r[3]};
  for (int i = 0; i < 4; ++i) {
    out.r1.total += out.r1.subparts[i];
    out.r2.total += out.r2.subparts[i];
  }
  return out;
}

FormResidual characteristic_residual(const ConservState2& q, const Direction& dir,
                                     const AdjointRate& rate, const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(q, gas);
  const double xi = dir.dx(), eta = dir.dy();
  const double un = w.u * xi + w.v * eta;
  const double q2 = w.u * w.u + w.v * w.v;
  const auto& r = rate.dpsi_ds;
  FormResidual out;
  out.subparts = {un * r[0], q2 * xi * r[1], q2 * eta * r[2], w.H * un * r[3]};
  for (int i = 0; i < 4; ++i) out.total += out.subparts[i];
  return out;
}

namespace {

void fill_rows_from_table(const CoeffTable& tab, FormMatrix& m) {
  for (int row = 1; row <= 4; ++row) {
    for (int l = 1; l <= 4; ++l) {
      const double sign = (l % 2 == 1) ? 1.0 : -1.0;
      m[static_cast<std::size_t>(row - 1) * 4 + (l - 1)] = sign * tab.x(l, row);
      m[static_cast<std::size_t>(row + 3) * 4 + (l - 1)] = sign * tab.y(l, row);
    }
  }
}

}  // namespace

FormMatrix form_matrix(const ConservState2& q, const Direction& dir, const GasModel& gas) {
  FormMatrix m{};
  if (std::fabs(dir.dx()) > 1e-12) {
    fill_rows_from_table(coefficient_table_factored(q, dir, gas), m);
    return m;
  }
  // Vertical direction: expand along dy in the swapped-axis system. Swapped
  // form (m', x') maps to original form (P(m'), y) and swapped dpsi'_l to
  // dpsi_P(l), with P = (1)(2 3)(4).
  const ConservState2 qs{q.rho, q.rho_v, q.rho_u, q.rho_E};
  const Direction ds(dir.dy(), dir.dx());
  const CoeffTable tab = coefficient_table_factored(qs, ds, gas);
  constexpr int P[5] = {0, 1, 3, 2, 4};
  for (int row = 1; row <= 4; ++row) {
    for (int l = 1; l <= 4; ++l) {
      const double sign = (P[l] % 2 == 1) ? 1.0 : -1.0;
      // original (row, y) from swapped (P(row), x); (row, x) from (P(row), y)
      m[static_cast<std::size_t>(row + 3) * 4 + (l - 1)] = sign * tab.x(P[l], P[row]);
      m[static_cast<std::size_t>(row - 1) * 4 + (l - 1)] = sign * tab.y(P[l], P[row]);
    }
  }
  return m;
}

int numeric_rank(std::span<const double> row_major, int rows, int cols, double rel_tol) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> m(row_major.data(), rows, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace adjchar
