#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <string>

#include "adjchar/field.hpp"
#include "support/oracles.hpp"

using namespace adjchar;

namespace {

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

// sheared parallelogram grid carrying fields linear in (x, y)
FieldGrid linear_field_grid(int ni, int nj) {
  FieldGrid g;
  g.ni = ni;
  g.nj = nj;
  g.gamma = 1.4;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const double x = i * 0.1 + j * 0.03;
      const double y = j * 0.12 + i * 0.01;
      g.x.push_back(x);
      g.y.push_back(y);
      g.rho.push_back(1.0 + 0.05 * x - 0.02 * y);
      g.rho_u.push_back(2.0 + 0.1 * x + 0.07 * y);
      g.rho_v.push_back(0.1 * x - 0.3 * y);
      g.rho_E.push_back(6.0 + 0.2 * x + 0.1 * y);
      g.psi1.push_back(0.5 * x - y);
      g.psi2.push_back(x + y);
      g.psi3.push_back(2.0 * x);
      g.psi4.push_back(1.0 - 0.4 * y);
    }
  }
  g.finalize();
  return g;
}

}  // namespace

TEST_CASE("minimal 2x2 uniform file without adjoint") {
  const std::string path = "tmp_min.field";
  write_text(path,
             "ADJCHAR-FIELD 1\n"
             "2 2 1.4 0 0\n"
             "0 0 1 2 0 5.7857142857142865\n"
             "1 0 1 2 0 5.7857142857142865\n"
             "0 1 1 2 0 5.7857142857142865\n"
             "1 1 1 2 0 5.7857142857142865\n");
  const FieldGrid g = load_field(path);
  CHECK(g.ni == 2);
  CHECK(g.nj == 2);
  CHECK_FALSE(g.has_adjoint());
  CHECK_FALSE(g.periodic_i);
  const SamplePoint s = sample(g, 0.5, 0.5);
  CHECK(s.state.rho == doctest::Approx(1.0));
  CHECK_FALSE(s.adjoint.has_value());
  std::remove(path.c_str());
}

TEST_CASE("save/load round-trip is lossless") {
  const FieldGrid g = linear_field_grid(7, 5);
  const std::string path = "tmp_rt.field";
  save_field(g, path);
  const FieldGrid h = load_field(path);
  REQUIRE(h.ni == g.ni);
  REQUIRE(h.nj == g.nj);
  CHECK(h.gamma == g.gamma);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    CHECK(h.x[k] == g.x[k]);
    CHECK(h.rho_E[k] == g.rho_E[k]);
    CHECK(h.psi3[k] == g.psi3[k]);
  }
  std::remove(path.c_str());
}

TEST_CASE("load errors") {
  SUBCASE("wrong header") {
    write_text("tmp_bad1.field", "NOT-A-FIELD\n2 2 1.4 0 0\n");
    CHECK_THROWS_AS(load_field("tmp_bad1.field"), FormatError);
    std::remove("tmp_bad1.field");
  }
  SUBCASE("truncated node list reports the line") {
    write_text("tmp_bad2.field",
               "ADJCHAR-FIELD 1\n2 2 1.4 0 0\n0 0 1 2 0 5.8\n1 0 1 2 0 5.8\n");
    try {
      load_field("tmp_bad2.field");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
    std::remove("tmp_bad2.field");
  }
  SUBCASE("non-numeric data reports line and field") {
    write_text("tmp_bad3.field",
               "ADJCHAR-FIELD 1\n2 2 1.4 0 0\n0 0 1 2 0 5.8\n1 0 oops 2 0 5.8\n"
               "0 1 1 2 0 5.8\n1 1 1 2 0 5.8\n");
    try {
      load_field("tmp_bad3.field");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 4") != std::string::npos);
      CHECK(msg.find("field 3") != std::string::npos);
    }
    std::remove("tmp_bad3.field");
  }
  SUBCASE("zero density names the node") {
    write_text("tmp_bad4.field",
               "ADJCHAR-FIELD 1\n2 2 1.4 0 0\n0 0 1 2 0 5.8\n1 0 0 0 0 5.8\n"
               "0 1 1 2 0 5.8\n1 1 1 2 0 5.8\n");
    try {
      load_field("tmp_bad4.field");
      FAIL("expected NonPhysicalState");
    } catch (const NonPhysicalState& e) {
      CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
    }
    std::remove("tmp_bad4.field");
  }
  SUBCASE("degenerate dimensions rejected") {
    write_text("tmp_bad5.field", "ADJCHAR-FIELD 1\n1 2 1.4 0 0\n0 0 1 2 0 5.8\n0 1 1 2 0 5.8\n");
    CHECK_THROWS_AS(load_field("tmp_bad5.field"), DimensionMismatch);
    std::remove("tmp_bad5.field");
  }
}

TEST_CASE("bilinear interpolation is exact on linear fields") {
  const FieldGrid g = linear_field_grid(9, 8);
  test::SplitMix64 rng{41};
  for (int trial = 0; trial < 300; ++trial) {
    // random point well inside the sheared footprint
    const double a = rng.range(0.05, 0.75), b = rng.range(0.05, 0.8);
    const double x = a * 0.1 * (g.ni - 1) + b * 0.03 * (g.nj - 1);
    const double y = b * 0.12 * (g.nj - 1) + a * 0.01 * (g.ni - 1);
    const SamplePoint s = sample(g, x, y);
    CHECK(std::fabs(s.state.rho - (1.0 + 0.05 * x - 0.02 * y)) <= 1e-12);
    CHECK(std::fabs(s.state.rho_u - (2.0 + 0.1 * x + 0.07 * y)) <= 1e-12);
    REQUIRE(s.adjoint.has_value());
    CHECK(std::fabs(s.adjoint->psi[0] - (0.5 * x - y)) <= 1e-12);
    CHECK(std::fabs(s.adjoint->psi[3] - (1.0 - 0.4 * y)) <= 1e-12);
  }
}

TEST_CASE("cell walking agrees with global search") {
  const FieldGrid g = linear_field_grid(12, 10);
  test::SplitMix64 rng{42};
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rng.range(0.02, 0.95), b = rng.range(0.02, 0.95);
    const double x = a * 0.1 * (g.ni - 1) + b * 0.03 * (g.nj - 1);
    const double y = b * 0.12 * (g.nj - 1) + a * 0.01 * (g.ni - 1);
    // walking from an arbitrary hint vs the default center hint
    const CellRef hint{static_cast<int>(rng.range(0, g.cells_i() - 1e-9)),
                       static_cast<int>(rng.range(0, g.cells_j() - 1e-9))};
    const SamplePoint s1 = sample(g, x, y, hint);
    const SamplePoint s2 = sample(g, x, y);
    CHECK(std::fabs(s1.state.rho - s2.state.rho) <= 1e-13);
    CHECK(std::fabs(s1.state.rho_E - s2.state.rho_E) <= 1e-12);
  }
}

TEST_CASE("queries outside the footprint raise OutOfDomain") {
  const FieldGrid g = linear_field_grid(5, 5);
  CHECK_THROWS_AS(sample(g, -5.0, 0.0), OutOfDomain);
  CHECK_THROWS_AS(sample(g, 100.0, 100.0), OutOfDomain);
}

TEST_CASE("node queries reproduce nodal values") {
  const FieldGrid g = linear_field_grid(6, 6);
  for (int j = 1; j < 5; ++j) {
    for (int i = 1; i < 5; ++i) {
      const int n = g.node(i, j);
      const SamplePoint s = sample(g, g.x[n], g.y[n]);
      CHECK(std::fabs(s.state.rho - g.rho[n]) <= 1e-12);
    }
  }
}

TEST_CASE("collapsed cells are flagged and sampling resolves nearby") {
  FieldGrid g = linear_field_grid(6, 4);
  // collapse cell (2, 1): copy the i=2 column nodes onto i=3 for rows 1..2
  for (int j = 1; j <= 2; ++j) {
    const int src = g.node(2, j), dst = g.node(3, j);
    g.x[dst] = g.x[src];
    g.y[dst] = g.y[src];
  }
  g.finalize();
  CHECK(g.cell_collapsed(2, 1));
  CHECK_FALSE(g.cell_collapsed(0, 0));
  // a query near the collapsed cell still lands in a valid neighbor
  const int n = g.node(2, 1);
  const SamplePoint s = sample(g, g.x[n] - 1e-3, g.y[n]);
  CHECK_FALSE(g.cell_collapsed(s.cell.i, s.cell.j));
}

TEST_CASE("periodic O-mesh sampling across the seam") {
  // annulus: i sweeps the angle (periodic), j the radius
  FieldGrid g;
  g.ni = 16;
  g.nj = 4;
  g.gamma = 1.4;
  g.periodic_i = true;
  for (int j = 0; j < g.nj; ++j) {
    const double r = 1.0 + 0.2 * j;
    for (int i = 0; i < g.ni; ++i) {
      const double th = 2.0 * std::numbers::pi * i / g.ni;
      g.x.push_back(r * std::cos(th));
      g.y.push_back(r * std::sin(th));
      g.rho.push_back(1.0 + 0.1 * j);
      g.rho_u.push_back(2.0);
      g.rho_v.push_back(0.0);
      g.rho_E.push_back(6.0);
    }
  }
  g.finalize();
  CHECK(g.cells_i() == 16);
  // a point just across the i = 0 seam, reachable only through the wrap cell
  const double th = -0.1, r = 1.3;
  const SamplePoint s = sample(g, r * std::cos(th), r * std::sin(th));
  CHECK(s.cell.i == 15);
  CHECK(s.state.rho == doctest::Approx(1.0 + 0.1 * 1.5).epsilon(0.05));
}

TEST_CASE("CSV conversion") {
  const std::string path = "tmp_conv.csv";
  write_text(path,
             "x, y, rho, rho_u, rho_v, rho_E, psi1, psi2, psi3, psi4\n"
             "0,0,1,2,0,5.8,1,0,0,0.2\n"
             "1,0,1,2,0,5.8,1,0,0,0.2\n"
             "0,1,1,2,0,5.8,1,0,0,0.2\n"
             "1,1,1,2,0,5.8,1,0,0,0.2\n");
  const FieldGrid g = field_from_csv(path, 2, 2, 1.4, false);
  CHECK(g.has_adjoint());
  CHECK(g.psi4[3] == 0.2);
  std::remove(path.c_str());

  write_text(path, "x,y,rho\n0,0,1\n");
  CHECK_THROWS_AS(field_from_csv(path, 2, 2, 1.4, false), FormatError);
  std::remove(path.c_str());
}
