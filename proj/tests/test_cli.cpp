#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "adjchar/analytic.hpp"
#include "adjchar/field.hpp"

#ifndef ADJCHAR_CLI_PATH
#error "ADJCHAR_CLI_PATH must be defined by the build"
#endif

using namespace adjchar;

namespace {

struct CliResult {
  int code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string out_file = "tmp_cli_out.txt";
  const std::string cmd = std::string(ADJCHAR_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  int code = -1;
  if (status != -1) {
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -2;
  }
  return {code, ss.str()};
}

const char* kFixture = "tmp_cli_stripe.field";

void make_fixture() {
  const StripeField f = make_demo_stripe_field(GasModel{1.4}, 2.0, 0.0);
  emit_stripe_grid(f, {-1.0, 1.0, -1.0, 1.0}, 129, 129, kFixture);
}

}  // namespace

TEST_CASE("identities subcommand") {
  SUBCASE("default-style run passes") {
    const CliResult r = run_cli("identities --samples 300 --seed 3");
    CHECK(r.code == 0);
    CHECK(r.output.find("all identities pass") != std::string::npos);
    CHECK(r.output.find("det_factor") != std::string::npos);
  }
  SUBCASE("zero samples is a usage error") {
    const CliResult r = run_cli("identities --samples 0");
    CHECK(r.code != 0);
  }
  SUBCASE("injected fault fails naming the cxy1 family") {
    const CliResult r = run_cli("identities --samples 200 --seed 5 --fault flip-c21y");
    CHECK(r.code == 1);
    CHECK(r.output.find("cxy1") != std::string::npos);
    CHECK(r.output.find("FAIL") != std::string::npos);
  }
}

TEST_CASE("stripe-demo subcommand") {
  SUBCASE("default conditions") {
    const CliResult r =
        run_cli("stripe-demo --ni 65 --nj 65 --step 0.01 --out tmp_demo.field");
    CHECK(r.code == 0);
    const FieldGrid g = load_field("tmp_demo.field");
    CHECK(g.ni == 65);
    CHECK(g.has_adjoint());
    std::ifstream gamma_s("tmp_demo.field.gamma_s.csv");
    CHECK(gamma_s.good());
    std::ifstream gamma_p("tmp_demo.field.gamma_cplus.csv");
    CHECK(gamma_p.good());
    std::remove("tmp_demo.field");
    std::remove("tmp_demo.field.gamma_s.csv");
    std::remove("tmp_demo.field.gamma_cplus.csv");
  }
  SUBCASE("the supersonic freestream of the verification study") {
    const CliResult r =
        run_cli("stripe-demo --mach 1.5 --alpha 1 --ni 33 --nj 33 --step 0.02 --out tmp_demo15.field");
    CHECK(r.code == 0);
    std::remove("tmp_demo15.field");
    std::remove("tmp_demo15.field.gamma_s.csv");
    std::remove("tmp_demo15.field.gamma_cplus.csv");
  }
  SUBCASE("subsonic Mach is a physics error") {
    const CliResult r = run_cli("stripe-demo --mach 0.8 --out tmp_demo08.field");
    CHECK(r.code == 3);
  }
}

TEST_CASE("trace subcommand") {
  make_fixture();
  SUBCASE("streamtrace through the uniform stripe field") {
    const CliResult r = run_cli(std::string("trace --field ") + kFixture +
                                " --family s --start 0.1,0.05 --step 0.005 --out tmp_tr.csv");
    CHECK(r.code == 0);
    std::ifstream csv("tmp_tr.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("s x y", 0) == 0);
    // uniform flow at alpha = 0: y stays put
    std::string line;
    while (std::getline(csv, line)) {
      std::istringstream ls(line);
      double s, x, y;
      ls >> s >> x >> y;
      CHECK(std::fabs(y - 0.05) <= 1e-9);
    }
    std::remove("tmp_tr.csv");
  }
  SUBCASE("starting outside the domain is a geometry error") {
    const CliResult r = run_cli(std::string("trace --field ") + kFixture +
                                " --family s --start 5,5 --out tmp_tr2.csv");
    CHECK(r.code == 2);
  }
  SUBCASE("characteristic from a subsonic node is a physics error") {
    // Mach falls through 1 with x; x = 1.5 is subsonic
    FieldGrid g;
    g.ni = 33;
    g.nj = 5;
    g.gamma = 1.4;
    for (int j = 0; j < g.nj; ++j) {
      for (int i = 0; i < g.ni; ++i) {
        const double x = 2.0 * i / (g.ni - 1);
        const double mach = 1.4 - 0.6 * x;
        const ConservState2 q =
            conservative_from_primitive(1.0, mach, 0.0, 1.0 / 1.4, GasModel{1.4});
        g.x.push_back(x);
        g.y.push_back(0.25 * j);
        g.rho.push_back(q.rho);
        g.rho_u.push_back(q.rho_u);
        g.rho_v.push_back(q.rho_v);
        g.rho_E.push_back(q.rho_E);
      }
    }
    g.finalize();
    save_field(g, "tmp_transonic.field");
    const CliResult r = run_cli(
        "trace --field tmp_transonic.field --family cplus --start 1.5,0.5 --out tmp_tr3.csv");
    CHECK(r.code == 3);
    std::remove("tmp_transonic.field");
  }
  SUBCASE("repeated runs are byte-identical") {
    const std::string args = std::string("trace --field ") + kFixture +
                             " --family cplus --start 0,0 --step 0.004 --out ";
    CHECK(run_cli(args + "tmp_d1.csv").code == 0);
    CHECK(run_cli(args + "tmp_d2.csv").code == 0);
    std::ifstream a("tmp_d1.csv"), b("tmp_d2.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
    std::remove("tmp_d1.csv");
    std::remove("tmp_d2.csv");
  }
  std::remove(kFixture);
}

TEST_CASE("verify subcommand") {
  make_fixture();
  SUBCASE("stripe fixture passes at the tight analytic threshold") {
    for (const char* kind : {"s1", "s2", "cplus", "cminus"}) {
      const CliResult r = run_cli(std::string("verify --field ") + kFixture + " --kind " + kind +
                                  " --start 0,0 --step 0.004 --tol 1e-8 --out tmp_rep.csv");
      INFO(kind, ": ", r.output);
      CHECK(r.code == 0);
    }
    std::remove("tmp_rep.csv");
  }
  SUBCASE("corrupted psi2 is detected at the default threshold") {
    FieldGrid g = load_field(kFixture);
    for (double& v : g.psi2) v *= 2.0;
    save_field(g, "tmp_broken.field");
    const CliResult r = run_cli(
        "verify --field tmp_broken.field --kind s1 --start 0,0 --step 0.004 --out tmp_rep2.csv");
    CHECK(r.code == 1);
    // the written report carries a ratio far above the 2% bound
    std::ifstream rep("tmp_rep2.csv");
    std::string line;
    double ratio = 0.0;
    while (std::getline(rep, line)) {
      if (line.rfind("# ratio ", 0) == 0) ratio = std::stod(line.substr(8));
    }
    CHECK(ratio > 0.02);
    std::remove("tmp_broken.field");
    std::remove("tmp_rep2.csv");
  }
  SUBCASE("clip flag bounds the curve") {
    const CliResult r = run_cli(std::string("verify --field ") + kFixture +
                                " --kind s1 --start 0,0 --step 0.004 --clip 0,0,0.5 "
                                "--tol 1e-8 --out tmp_rep3.csv");
    CHECK(r.code == 0);
    std::ifstream rep("tmp_rep3.csv");
    std::string line;
    bool saw_clip = false;
    double last_s = 0.0;
    while (std::getline(rep, line)) {
      if (line.rfind("# clip ", 0) == 0) saw_clip = true;
      if (!line.empty() && (std::isdigit(line[0]) || line[0] == '-')) {
        last_s = std::stod(line);
      }
    }
    CHECK(saw_clip);
    CHECK(last_s <= 0.5 + 1e-6);
    std::remove("tmp_rep3.csv");
  }
  std::remove(kFixture);
}

TEST_CASE("convert subcommand") {
  {
    std::ofstream csv("tmp_conv_in.csv");
    csv << "x,y,rho,rho_u,rho_v,rho_E\n";
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        csv << i << "," << j << ",1,2,0,5.8\n";
      }
    }
  }
  const CliResult r =
      run_cli("convert --field tmp_conv_in.csv --ni 3 --nj 3 --gamma 1.4 --out tmp_conv.field");
  CHECK(r.code == 0);
  const FieldGrid g = load_field("tmp_conv.field");
  CHECK(g.ni == 3);
  CHECK_FALSE(g.has_adjoint());
  std::remove("tmp_conv_in.csv");
  std::remove("tmp_conv.field");
}
