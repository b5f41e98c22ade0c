/** \file adjchar.cpp
 *  \brief Command-line front end: identity sweeps, curve tracing, ODE
 *         verification reports, stripe-field fixtures, and CSV conversion.
 */
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "adjchar/analytic.hpp"
#include "adjchar/compat.hpp"
#include "adjchar/field.hpp"
#include "adjchar/identities.hpp"
#include "adjchar/tracer.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitIo = 4;

adjchar::CurveFamily parse_family(const std::string& name) {
  if (name == "s") return adjchar::CurveFamily::S;
  if (name == "cplus") return adjchar::CurveFamily::Cplus;
  if (name == "cminus") return adjchar::CurveFamily::Cminus;
  throw CLI::ValidationError("--family", "expected one of s, cplus, cminus");
}

adjchar::CompatKind parse_kind(const std::string& name) {
  if (name == "s1") return adjchar::CompatKind::S1;
  if (name == "s2") return adjchar::CompatKind::S2;
  if (name == "cplus") return adjchar::CompatKind::Cplus;
  if (name == "cminus") return adjchar::CompatKind::Cminus;
  throw CLI::ValidationError("--kind", "expected one of s1, s2, cplus, cminus");
}

adjchar::CurveFamily family_for_kind(adjchar::CompatKind kind) {
  switch (kind) {
    case adjchar::CompatKind::S1:
    case adjchar::CompatKind::S2: return adjchar::CurveFamily::S;
    case adjchar::CompatKind::Cplus: return adjchar::CurveFamily::Cplus;
    case adjchar::CompatKind::Cminus: return adjchar::CurveFamily::Cminus;
  }
  return adjchar::CurveFamily::S;
}

int run_identities(long samples, std::uint64_t seed, const std::string& fault) {
  adjchar::SuiteConfig cfg;
  cfg.n_samples = samples;
  cfg.seed = seed;
  if (fault == "flip-c21y") cfg.fault = adjchar::Fault::flip_c21y;
  const std::vector<adjchar::IdentityCheck> checks = adjchar::run_identity_suite(cfg);
  std::string first_fail;
  for (const auto& c : checks) {
    std::printf("%-14s max_err %-12.3e tol %-8.0e %s\n", c.name.c_str(), c.max_err, c.tol,
                c.pass() ? "pass" : "FAIL");
    if (!c.pass() && first_fail.empty()) first_fail = c.name;
  }
  if (!first_fail.empty()) {
    std::printf("identity check failed: %s\n", first_fail.c_str());
    return kExitVerifyFail;
  }
  std::printf("all identities pass (%ld samples, seed %llu)\n", samples,
              static_cast<unsigned long long>(seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adjoint Euler characteristic ODE toolkit"};
  app.require_subcommand(1);

  // identities
  auto* cmd_id = app.add_subcommand("identities", "random-sample coefficient identity sweep");
  long samples = 10000;
  std::uint64_t seed = 1234;
  std::string fault;
  cmd_id->add_option("--samples", samples, "number of random samples")
      ->check(CLI::PositiveNumber);
  cmd_id->add_option("--seed", seed, "RNG seed");
  cmd_id->add_option("--fault", fault, "test-only fault injection")->group("");

  // shared trace options
  std::string field_path, out_path = "curve.csv", family_name = "s", kind_name = "s1";
  std::vector<double> start{0.0, 0.0};
  std::vector<double> clip_vals;
  double step = 0.005, max_length = 10.0, tol = 0.02;

  auto add_trace_opts = [&](CLI::App* cmd, bool with_kind) {
    cmd->add_option("--field", field_path, "ADJCHAR-FIELD file")->required();
    cmd->add_option("--start", start, "start point X,Y")->delimiter(',')->expected(2);
    cmd->add_option("--step", step, "integration step (arc length)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-length", max_length, "maximum curve length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--clip", clip_vals, "disk clip CX,CY,R")->delimiter(',')->expected(3);
    cmd->add_option("--out", out_path, "output CSV path");
    if (with_kind) {
      cmd->add_option("--kind", kind_name, "relation kind: s1, s2, cplus, cminus");
      cmd->add_option("--tol", tol, "pass threshold on |K|/max|subpart|");
    } else {
      cmd->add_option("--family", family_name, "curve family: s, cplus, cminus");
    }
  };

  auto* cmd_trace = app.add_subcommand("trace", "integrate one characteristic curve");
  add_trace_opts(cmd_trace, false);

  auto* cmd_verify = app.add_subcommand("verify", "trace a curve and integrate the adjoint ODE");
  add_trace_opts(cmd_verify, true);

  // stripe-demo
  auto* cmd_stripe = app.add_subcommand("stripe-demo",
                                        "emit an analytic stripe-field fixture and its "
                                        "constancy reports");
  double mach = 2.0, alpha_deg = 0.0;
  int ni = 257, nj = 257;
  std::string stripe_out = "stripe.field";
  double stripe_step = 0.004;
  cmd_stripe->add_option("--mach", mach, "freestream Mach number (> 1)");
  cmd_stripe->add_option("--alpha", alpha_deg, "freestream angle [deg]");
  cmd_stripe->add_option("--ni", ni, "grid nodes in i")->check(CLI::Range(2, 100000));
  cmd_stripe->add_option("--nj", nj, "grid nodes in j")->check(CLI::Range(2, 100000));
  cmd_stripe->add_option("--step", stripe_step, "trace step")->check(CLI::PositiveNumber);
  cmd_stripe->add_option("--out", stripe_out, "fixture output path");

  // convert
  auto* cmd_convert = app.add_subcommand("convert", "column CSV to ADJCHAR-FIELD");
  int cni = 0, cnj = 0;
  double cgamma = 1.4;
  bool cperiodic = false;
  std::string conv_out = "converted.field";
  cmd_convert->add_option("--field", field_path, "input CSV with a header row")->required();
  cmd_convert->add_option("--ni", cni, "grid nodes in i")->required()->check(CLI::Range(2, 100000));
  cmd_convert->add_option("--nj", cnj, "grid nodes in j")->required()->check(CLI::Range(2, 100000));
  cmd_convert->add_option("--gamma", cgamma, "ratio of specific heats");
  cmd_convert->add_flag("--periodic-i", cperiodic, "wrap the i index (O-mesh)");
  cmd_convert->add_option("--out", conv_out, "output field path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_id->parsed()) {
      return run_identities(samples, seed, fault);
    }

    if (cmd_trace->parsed() || cmd_verify->parsed()) {
      const adjchar::FieldGrid grid = adjchar::load_field(field_path);
      adjchar::TraceConfig cfg;
      cfg.step = step;
      cfg.max_length = max_length;
      if (!clip_vals.empty()) cfg.clip = adjchar::DiskClip{clip_vals[0], clip_vals[1], clip_vals[2]};

      if (cmd_trace->parsed()) {
        const adjchar::Curve curve =
            adjchar::trace(grid, start[0], start[1], parse_family(family_name), cfg);
        adjchar::write_curve_csv(curve, out_path);
        std::printf("traced %zu points, s_end %.6g, wrote %s\n", curve.points.size(),
                    curve.points.back().s, out_path.c_str());
        return 0;
      }

      const adjchar::CompatKind kind = parse_kind(kind_name);
      const adjchar::Curve curve =
          adjchar::trace(grid, start[0], start[1], family_for_kind(kind), cfg);
      const adjchar::CompatReport rep = adjchar::k_integrals(curve, kind, cfg.clip);
      adjchar::write_report(rep, out_path);
      std::printf("K_total   %.12e\n", rep.K_total);
      std::printf("subparts  %.12e %.12e %.12e %.12e\n", rep.subpart_totals[0],
                  rep.subpart_totals[1], rep.subpart_totals[2], rep.subpart_totals[3]);
      std::printf("ratio     %.12e   (threshold %.3g)\n", rep.ratio, tol);
      std::printf("report    %s\n", out_path.c_str());
      return rep.ratio <= tol ? 0 : kExitVerifyFail;
    }

    if (cmd_stripe->parsed()) {
      const double alpha = alpha_deg * 3.14159265358979323846 / 180.0;
      const adjchar::StripeField field =
          adjchar::make_demo_stripe_field(adjchar::GasModel{}, mach, alpha);
      const adjchar::Bbox bbox{-1.0, 1.0, -1.0, 1.0};
      const adjchar::FieldGrid grid = adjchar::make_stripe_grid(field, bbox, ni, nj);
      adjchar::save_field(grid, stripe_out);

      adjchar::TraceConfig cfg;
      cfg.step = stripe_step;
      cfg.max_length = 8.0;
      const adjchar::Curve cs = adjchar::trace(grid, 0.0, 0.0, adjchar::CurveFamily::S, cfg);
      const adjchar::Curve cp = adjchar::trace(grid, 0.0, 0.0, adjchar::CurveFamily::Cplus, cfg);
      const adjchar::GammaSamples gs = adjchar::gamma_along(cs);
      const adjchar::GammaSamples gp = adjchar::gamma_along(cp);

      const std::string gpath_s = stripe_out + ".gamma_s.csv";
      const std::string gpath_p = stripe_out + ".gamma_cplus.csv";
      std::FILE* f = std::fopen(gpath_s.c_str(), "w");
      if (!f) throw adjchar::IoError("cannot open " + gpath_s);
      std::fputs("s gamma1_s gamma2_s\n", f);
      for (std::size_t k = 0; k < cs.points.size(); ++k) {
        std::fprintf(f, "%.17g %.17g %.17g\n", cs.points[k].s, gs.gamma1_s[k], gs.gamma2_s[k]);
      }
      std::fclose(f);
      f = std::fopen(gpath_p.c_str(), "w");
      if (!f) throw adjchar::IoError("cannot open " + gpath_p);
      std::fputs("s gamma_cplus\n", f);
      for (std::size_t k = 0; k < cp.points.size(); ++k) {
        std::fprintf(f, "%.17g %.17g\n", cp.points[k].s, gp.gamma_cplus[k]);
      }
      std::fclose(f);

      std::printf("fixture   %s (%dx%d, M=%.4g, alpha=%.4g deg)\n", stripe_out.c_str(), ni, nj,
                  mach, alpha_deg);
      std::printf("gamma_s      spread %.3e (%s)\n",
                  adjchar::relative_spread(gs.gamma1_s, gs.scale1), gpath_s.c_str());
      std::printf("gamma_cplus  spread %.3e (%s)\n",
                  adjchar::relative_spread(gp.gamma_cplus, gp.scale_cplus), gpath_p.c_str());
      return 0;
    }

    if (cmd_convert->parsed()) {
      const adjchar::FieldGrid grid =
          adjchar::field_from_csv(field_path, cni, cnj, cgamma, cperiodic);
      adjchar::save_field(grid, conv_out);
      std::printf("wrote %s (%dx%d, adjoint %s)\n", conv_out.c_str(), grid.ni, grid.nj,
                  grid.has_adjoint() ? "present" : "absent");
      return 0;
    }
  } catch (const adjchar::OutOfDomain& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const adjchar::SubsonicInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPhysics;
  } catch (const adjchar::NonPhysicalState& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPhysics;
  } catch (const adjchar::StagnantState& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPhysics;
  } catch (const adjchar::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const adjchar::DimensionMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const adjchar::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const adjchar::MissingAdjoint& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const adjchar::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return 0;
}
