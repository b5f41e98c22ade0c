#include "adjchar/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace adjchar {

namespace {

double parse_double(const std::string& line, int lineno, const char*& cursor, int field) {
  char* end = nullptr;
  const double value = std::strtod(cursor, &end);
  if (end == cursor) {
    throw FormatError("line " + std::to_string(lineno) + ", field " + std::to_string(field) +
                      ": expected a number near column " +
                      std::to_string(static_cast<int>(cursor - line.c_str()) + 1));
  }
  cursor = end;
  return value;
}

long parse_long(const std::string& line, int lineno, const char*& cursor, int field) {
  char* end = nullptr;
  const long value = std::strtol(cursor, &end, 10);
  if (end == cursor) {
    throw FormatError("line " + std::to_string(lineno) + ", field " + std::to_string(field) +
                      ": expected an integer near column " +
                      std::to_string(static_cast<int>(cursor - line.c_str()) + 1));
  }
  cursor = end;
  return value;
}

void write_double(std::FILE* f, double v, bool leading_space) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::fputs(leading_space ? " " : "", f);
  std::fputs(buf, f);
}

struct CellGeom {
  double x00, y00, x10, y10, x01, y01, x11, y11;
};

CellGeom cell_geom(const FieldGrid& g, int i, int j) {
  const int i1 = g.periodic_i ? (i + 1) % g.ni : i + 1;
  const int n00 = g.node(i, j), n10 = g.node(i1, j);
  const int n01 = g.node(i, j + 1), n11 = g.node(i1, j + 1);
  return {g.x[n00], g.y[n00], g.x[n10], g.y[n10], g.x[n01], g.y[n01], g.x[n11], g.y[n11]};
}

// Newton inversion of the bilinear map; returns false when the iteration
// does not converge (degenerate cell or far-away point).
bool invert_bilinear(const CellGeom& c, double x, double y, double& xi, double& eta) {
  xi = 0.5;
  eta = 0.5;
  for (int it = 0; it < 20; ++it) {
    const double a0 = 1.0 - xi, a1 = xi, b0 = 1.0 - eta, b1 = eta;
    const double px = a0 * b0 * c.x00 + a1 * b0 * c.x10 + a0 * b1 * c.x01 + a1 * b1 * c.x11;
    const double py = a0 * b0 * c.y00 + a1 * b0 * c.y10 + a0 * b1 * c.y01 + a1 * b1 * c.y11;
    const double rx = px - x, ry = py - y;
    const double jxx = b0 * (c.x10 - c.x00) + b1 * (c.x11 - c.x01);
    const double jxy = a0 * (c.x01 - c.x00) + a1 * (c.x11 - c.x10);
    const double jyx = b0 * (c.y10 - c.y00) + b1 * (c.y11 - c.y01);
    const double jyy = a0 * (c.y01 - c.y00) + a1 * (c.y11 - c.y10);
    const double det = jxx * jyy - jxy * jyx;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double dxi = (rx * jyy - ry * jxy) / det;
    const double deta = (ry * jxx - rx * jyx) / det;
    xi -= dxi;
    eta -= deta;
    const double scale = std::fabs(c.x10 - c.x00) + std::fabs(c.y01 - c.y00) +
                         std::fabs(c.x01 - c.x00) + std::fabs(c.y10 - c.y00) + 1e-300;
    if (std::fabs(rx) + std::fabs(ry) < 1e-14 * scale &&
        std::fabs(dxi) + std::fabs(deta) < 1e-12) {
      return true;
    }
    if (std::fabs(xi) > 1e3 || std::fabs(eta) > 1e3) return false;
  }
  return true;  // converged enough for containment classification
}

constexpr double kInsideTol = 1e-9;

bool contains(const FieldGrid& g, int i, int j, double x, double y, double& xi, double& eta) {
  if (g.cell_collapsed(i, j)) return false;
  if (!invert_bilinear(cell_geom(g, i, j), x, y, xi, eta)) return false;
  return xi >= -kInsideTol && xi <= 1.0 + kInsideTol && eta >= -kInsideTol &&
         eta <= 1.0 + kInsideTol;
}

double bilerp(const std::vector<double>& f, const FieldGrid& g, int i, int j, double xi,
              double eta) {
  const int i1 = g.periodic_i ? (i + 1) % g.ni : i + 1;
  const double f00 = f[g.node(i, j)], f10 = f[g.node(i1, j)];
  const double f01 = f[g.node(i, j + 1)], f11 = f[g.node(i1, j + 1)];
  return (1.0 - xi) * (1.0 - eta) * f00 + xi * (1.0 - eta) * f10 + (1.0 - xi) * eta * f01 +
         xi * eta * f11;
}

}  // namespace

void FieldGrid::finalize() {
  if (ni < 2 || nj < 2) {
    throw DimensionMismatch("grid must be at least 2x2, got " + std::to_string(ni) + "x" +
                            std::to_string(nj));
  }
  const std::size_t n = static_cast<std::size_t>(ni) * nj;
  for (const auto* arr : {&x, &y, &rho, &rho_u, &rho_v, &rho_E}) {
    if (arr->size() != n) throw DimensionMismatch("node array size does not match ni*nj");
  }
  const bool adj = !psi1.empty() || !psi2.empty() || !psi3.empty() || !psi4.empty();
  if (adj) {
    for (const auto* arr : {&psi1, &psi2, &psi3, &psi4}) {
      if (arr->size() != n) {
        throw DimensionMismatch("adjoint arrays must all be present with ni*nj entries");
      }
    }
  }
  if (!(gamma > 1.0)) throw NonPhysicalState("gamma must be > 1");
  const GasModel g{gamma};
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const int k = node(i, j);
      try {
        (void)primitive_from_conservative({rho[k], rho_u[k], rho_v[k], rho_E[k]}, g);
      } catch (const NonPhysicalState& e) {
        throw NonPhysicalState("node (" + std::to_string(i) + "," + std::to_string(j) +
                               "): " + e.what());
      }
    }
  }
  // flag collapsed cells by area relative to the grid scale
  double scale2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale2 = std::max(scale2, x[k] * x[k] + y[k] * y[k]);
  }
  const double area_floor = 1e-24 * std::max(scale2, 1e-300);
  collapsed_cells.assign(static_cast<std::size_t>(cells_i()) * cells_j(), 0);
  for (int j = 0; j < cells_j(); ++j) {
    for (int i = 0; i < cells_i(); ++i) {
      const CellGeom c = cell_geom(*this, i, j);
      const double area = 0.5 * std::fabs((c.x10 - c.x00) * (c.y01 - c.y00) -
                                          (c.x01 - c.x00) * (c.y10 - c.y00)) +
                          0.5 * std::fabs((c.x10 - c.x11) * (c.y01 - c.y11) -
                                          (c.x01 - c.x11) * (c.y10 - c.y11));
      if (!(area > area_floor)) collapsed_cells[cell_index(i, j)] = 1;
    }
  }
}

FieldGrid load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("line 1: empty file");
  // tolerate trailing CR from foreign line endings
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "ADJCHAR-FIELD 1") {
    throw FormatError("line 1: expected header 'ADJCHAR-FIELD 1', got '" + line + "'");
  }
  if (!std::getline(in, line)) throw FormatError("line 2: missing dimensions line");
  const char* cur = line.c_str();
  FieldGrid g;
  g.ni = static_cast<int>(parse_long(line, 2, cur, 1));
  g.nj = static_cast<int>(parse_long(line, 2, cur, 2));
  g.gamma = parse_double(line, 2, cur, 3);
  const long periodic = parse_long(line, 2, cur, 4);
  const long adjoint = parse_long(line, 2, cur, 5);
  if (g.ni < 2 || g.nj < 2) {
    throw DimensionMismatch("line 2: grid must be at least 2x2, got " + std::to_string(g.ni) +
                            "x" + std::to_string(g.nj));
  }
  if ((periodic != 0 && periodic != 1) || (adjoint != 0 && adjoint != 1)) {
    throw FormatError("line 2: periodic_i and adjoint_present must be 0 or 1");
  }
  g.periodic_i = periodic == 1;
  const std::size_t n = static_cast<std::size_t>(g.ni) * g.nj;
  for (auto* arr : {&g.x, &g.y, &g.rho, &g.rho_u, &g.rho_v, &g.rho_E}) arr->reserve(n);
  if (adjoint) {
    for (auto* arr : {&g.psi1, &g.psi2, &g.psi3, &g.psi4}) arr->reserve(n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const int lineno = static_cast<int>(k) + 3;
    if (!std::getline(in, line)) {
      throw FormatError("line " + std::to_string(lineno) + ": unexpected end of file (expected " +
                        std::to_string(n) + " node lines)");
    }
    cur = line.c_str();
    int field = 1;
    g.x.push_back(parse_double(line, lineno, cur, field++));
    g.y.push_back(parse_double(line, lineno, cur, field++));
    g.rho.push_back(parse_double(line, lineno, cur, field++));
    g.rho_u.push_back(parse_double(line, lineno, cur, field++));
    g.rho_v.push_back(parse_double(line, lineno, cur, field++));
    g.rho_E.push_back(parse_double(line, lineno, cur, field++));
    if (adjoint) {
      g.psi1.push_back(parse_double(line, lineno, cur, field++));
      g.psi2.push_back(parse_double(line, lineno, cur, field++));
      g.psi3.push_back(parse_double(line, lineno, cur, field++));
      g.psi4.push_back(parse_double(line, lineno, cur, field++));
    }
  }
  g.finalize();
  return g;
}

void save_field(const FieldGrid& grid, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  std::fputs("ADJCHAR-FIELD 1\n", f);
  char head[96];
  std::snprintf(head, sizeof head, "%d %d %.17g %d %d\n", grid.ni, grid.nj, grid.gamma,
                grid.periodic_i ? 1 : 0, grid.has_adjoint() ? 1 : 0);
  std::fputs(head, f);
  const std::size_t n = static_cast<std::size_t>(grid.ni) * grid.nj;
  for (std::size_t k = 0; k < n; ++k) {
    write_double(f, grid.x[k], false);
    write_double(f, grid.y[k], true);
    write_double(f, grid.rho[k], true);
    write_double(f, grid.rho_u[k], true);
    write_double(f, grid.rho_v[k], true);
    write_double(f, grid.rho_E[k], true);
    if (grid.has_adjoint()) {
      write_double(f, grid.psi1[k], true);
      write_double(f, grid.psi2[k], true);
      write_double(f, grid.psi3[k], true);
      write_double(f, grid.psi4[k], true);
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("write failed: " + path);
}

SamplePoint sample(const FieldGrid& grid, double x, double y, std::optional<CellRef> hint) {
  const int nci = grid.cells_i(), ncj = grid.cells_j();
  int ci = hint ? hint->i : nci / 2;
  int cj = hint ? hint->j : ncj / 2;
  ci = std::max(0, std::min(nci - 1, ci));
  cj = std::max(0, std::min(ncj - 1, cj));

  double xi = 0.0, eta = 0.0;
  bool found = false;
  const int max_walk = 2 * (nci + ncj);
  for (int step = 0; step < max_walk; ++step) {
    if (!grid.cell_collapsed(ci, cj) &&
        invert_bilinear(cell_geom(grid, ci, cj), x, y, xi, eta)) {
      if (xi >= -kInsideTol && xi <= 1.0 + kInsideTol && eta >= -kInsideTol &&
          eta <= 1.0 + kInsideTol) {
        found = true;
        break;
      }
      int di = xi < -kInsideTol ? -1 : (xi > 1.0 + kInsideTol ? 1 : 0);
      int dj = eta < -kInsideTol ? -1 : (eta > 1.0 + kInsideTol ? 1 : 0);
      if (di == 0 && dj == 0) break;
      int ni2 = ci + di, nj2 = cj + dj;
      if (grid.periodic_i) ni2 = (ni2 + nci) % nci;
      if (ni2 < 0 || ni2 >= nci || nj2 < 0 || nj2 >= ncj) break;  // boundary: global pass decides
      ci = ni2;
      cj = nj2;
    } else {
      break;  // collapsed or non-convergent cell: fall through to global search
    }
  }
  if (!found) {
    for (int j = 0; j < ncj && !found; ++j) {
      for (int i = 0; i < nci && !found; ++i) {
        if (contains(grid, i, j, x, y, xi, eta)) {
          ci = i;
          cj = j;
          found = true;
        }
      }
    }
  }
  if (!found) {
    throw OutOfDomain("point (" + std::to_string(x) + ", " + std::to_string(y) +
                      ") is outside the grid footprint");
  }
  xi = std::max(0.0, std::min(1.0, xi));
  eta = std::max(0.0, std::min(1.0, eta));
  SamplePoint s;
  s.cell = {ci, cj};
  s.xi = xi;
  s.eta = eta;
  s.state = {bilerp(grid.rho, grid, ci, cj, xi, eta), bilerp(grid.rho_u, grid, ci, cj, xi, eta),
             bilerp(grid.rho_v, grid, ci, cj, xi, eta), bilerp(grid.rho_E, grid, ci, cj, xi, eta)};
  if (grid.has_adjoint()) {
    s.adjoint = Adjoint2{{bilerp(grid.psi1, grid, ci, cj, xi, eta),
                          bilerp(grid.psi2, grid, ci, cj, xi, eta),
                          bilerp(grid.psi3, grid, ci, cj, xi, eta),
                          bilerp(grid.psi4, grid, ci, cj, xi, eta)}};
  }
  return s;
}

FieldGrid field_from_csv(const std::string& path, int ni, int nj, double gamma, bool periodic_i) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("line 1: empty CSV file");
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\r')) tok.pop_back();
      std::size_t b = tok.find_first_not_of(' ');
      names.push_back(b == std::string::npos ? "" : tok.substr(b));
    }
  }
  auto col = [&names](const std::string& want) {
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k] == want) return static_cast<int>(k);
    }
    return -1;
  };
  const int cx = col("x"), cy = col("y"), crho = col("rho"), cru = col("rho_u"),
            crv = col("rho_v"), cre = col("rho_E");
  for (auto [idx, name] : {std::pair{cx, "x"}, {cy, "y"}, {crho, "rho"}, {cru, "rho_u"},
                           {crv, "rho_v"}, {cre, "rho_E"}}) {
    if (idx < 0) throw FormatError(std::string("line 1: missing required CSV column '") + name + "'");
  }
  const int cp1 = col("psi1"), cp2 = col("psi2"), cp3 = col("psi3"), cp4 = col("psi4");
  const bool adjoint = cp1 >= 0 && cp2 >= 0 && cp3 >= 0 && cp4 >= 0;

  FieldGrid g;
  g.ni = ni;
  g.nj = nj;
  g.gamma = gamma;
  g.periodic_i = periodic_i;
  const std::size_t n = static_cast<std::size_t>(ni) * nj;
  std::vector<double> row(names.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int lineno = static_cast<int>(k) + 2;
    if (!std::getline(in, line)) {
      throw FormatError("line " + std::to_string(lineno) + ": unexpected end of CSV (expected " +
                        std::to_string(n) + " data rows)");
    }
    std::stringstream ss(line);
    std::string tok;
    std::size_t kk = 0;
    while (std::getline(ss, tok, ',') && kk < row.size()) {
      const char* cur = tok.c_str();
      row[kk] = parse_double(tok, lineno, cur, static_cast<int>(kk + 1));
      ++kk;
    }
    if (kk != row.size()) {
      throw FormatError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(row.size()) + " columns, got " + std::to_string(kk));
    }
    g.x.push_back(row[cx]);
    g.y.push_back(row[cy]);
    g.rho.push_back(row[crho]);
    g.rho_u.push_back(row[cru]);
    g.rho_v.push_back(row[crv]);
    g.rho_E.push_back(row[cre]);
    if (adjoint) {
      g.psi1.push_back(row[cp1]);
      g.psi2.push_back(row[cp2]);
      g.psi3.push_back(row[cp3]);
      g.psi4.push_back(row[cp4]);
    }
  }
  g.finalize();
  return g;
}

}  // namespace adjchar
