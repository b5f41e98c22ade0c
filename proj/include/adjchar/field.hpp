/** \file field.hpp
 *  \brief Structured-grid flow + adjoint fields: on-disk format, loading,
 *         and bilinear interpolation with cell walking.
 *
 *  File format (text, UTF-8):
 *    line 1:  ADJCHAR-FIELD 1
 *    line 2:  ni nj gamma periodic_i adjoint_present
 *    then ni*nj lines in j-major order (j outer, i inner):
 *      x y rho rho_u rho_v rho_E [psi1 psi2 psi3 psi4]
 *  Floats are written with 17 significant digits so save/load round-trips.
 */
#ifndef ADJCHAR_FIELD_HPP
#define ADJCHAR_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adjchar/gas.hpp"

namespace adjchar {

struct FieldGrid {
  int ni = 0;
  int nj = 0;
  double gamma = 1.4;
  bool periodic_i = false;
  std::vector<double> x, y;
  std::vector<double> rho, rho_u, rho_v, rho_E;
  std::vector<double> psi1, psi2, psi3, psi4;  // empty when adjoint absent
  std::vector<std::uint8_t> collapsed_cells;   // degenerate (e.g. O-mesh trailing edge)

  bool has_adjoint() const { return !psi1.empty(); }
  GasModel gas() const { return GasModel{gamma}; }
  int node(int i, int j) const { return j * ni + i; }
  int cells_i() const { return periodic_i ? ni : ni - 1; }
  int cells_j() const { return nj - 1; }
  int cell_index(int i, int j) const { return j * cells_i() + i; }
  bool cell_collapsed(int i, int j) const { return collapsed_cells[cell_index(i, j)] != 0; }

  ConservState2 state_at(int i, int j) const {
    const int n = node(i, j);
    return {rho[n], rho_u[n], rho_v[n], rho_E[n]};
  }
  Adjoint2 adjoint_at(int i, int j) const {
    const int n = node(i, j);
    return {{psi1[n], psi2[n], psi3[n], psi4[n]}};
  }

  /// Validates invariants, flags collapsed cells. Called by load_field;
  /// call manually after building a grid in memory.
  void finalize();
};

struct CellRef {
  int i = 0;
  int j = 0;
};

struct SamplePoint {
  ConservState2 state;
  std::optional<Adjoint2> adjoint;
  CellRef cell;
  double xi = 0.0;   // local coords in [0,1]^2
  double eta = 0.0;
};

FieldGrid load_field(const std::string& path);
void save_field(const FieldGrid& grid, const std::string& path);

/// Bilinear interpolation of conservative variables (and adjoint components,
/// when present) at (x, y). The containing cell is located by walking from
/// `hint`; a global search is the fallback. Throws OutOfDomain when no cell
/// contains the point.
SamplePoint sample(const FieldGrid& grid, double x, double y,
                   std::optional<CellRef> hint = std::nullopt);

/// Reads a headered CSV with columns x,y,rho,rho_u,rho_v,rho_E[,psi1..psi4]
/// (extra columns ignored), nodes in j-major order.
FieldGrid field_from_csv(const std::string& path, int ni, int nj, double gamma, bool periodic_i);

}  // namespace adjchar

#endif
