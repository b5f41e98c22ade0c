#include "adjchar/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adjchar/analytic.hpp"
#include "adjchar/forms.hpp"
#include "adjchar/gas.hpp"
#include "adjchar/jacobians.hpp"

namespace adjchar {

namespace {

struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double unit() { return (next() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

struct RandomState {
  GasModel gas;
  ConservState2 q;
  double u, v, c, mach, phi;
};

RandomState draw_state(SplitMix64& rng, double m_lo, double m_hi, bool bound_angle) {
  RandomState st;
  st.gas.gamma = rng.range(1.15, 1.67);
  const double rho = rng.range(0.3, 3.0);
  st.c = rng.range(0.5, 2.0);
  do {
    st.mach = rng.range(m_lo, m_hi);
  } while (std::fabs(st.mach - 1.0) < 1e-6);
  do {
    st.phi = rng.range(0.0, 2.0 * 3.14159265358979323846);
  } while (bound_angle && std::fabs(std::cos(st.phi)) < 0.05);
  st.u = st.mach * st.c * std::cos(st.phi);
  st.v = st.mach * st.c * std::sin(st.phi);
  const double p = rho * st.c * st.c / st.gas.gamma;
  st.q = conservative_from_primitive(rho, st.u, st.v, p, st.gas);
  return st;
}

constexpr double kPi = 3.14159265358979323846;

// angle distance modulo pi (directions are unsigned)
double dir_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kPi);
  return std::min(d, kPi - d);
}

enum CheckId {
  kDetFactor,
  kDetRows,
  kInx,
  kIny,
  kCxy1,
  kCxy2,
  kCxy3,
  kCxy4,
  kC11C44,
  kProp5,
  kDeg2,
  kDeg2Homog,
  kCpmPair,
  kRankS,
  kRankCpm,
  kRankGeneric,
  kEigNull,
  kEigH1H4,
  kTriR1,
  kTriR2,
  kTriW0,
  kNumChecks
};

struct CheckDef {
  const char* name;
  double tol;
};

constexpr CheckDef kChecks[kNumChecks] = {
    {"det_factor", 1e-10},   {"det_rows", 1e-10},   {"inx", 1e-10},
    {"iny", 1e-10},          {"cxy1", 1e-10},       {"cxy2", 1e-10},
    {"cxy3", 1e-10},         {"cxy4", 1e-10},       {"c11_c44", 1e-10},
    {"prop5", 1e-10},        {"deg2", 1e-10},       {"deg2_homog", 1e-10},
    {"cpm_pair", 1e-10},     {"rank_s", 0.5},       {"rank_cpm", 0.5},
    {"rank_generic", 0.5},   {"eig_null", 1e-10},   {"eig_h1h4", 1e-10},
    {"tri_r1", 1e-12},       {"tri_r2", 1e-12},     {"tri_w0", 1e-12},
};

double rel(double lhs, double rhs) { return std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)); }

void apply_fault(CoeffTable& tab, Fault fault) {
  if (fault == Fault::flip_c21y) tab.y(2, 1) = -tab.y(2, 1);
}

void evaluate_sample(std::uint64_t seed, long index, Fault fault,
                     std::array<double, kNumChecks>& err) {
  SplitMix64 rng{seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1))};
  auto note = [&err](CheckId id, double e) { err[id] = std::max(err[id], e); };

  // -- determinant factorization on an arbitrary state/direction pair
  {
    const RandomState st = draw_state(rng, 0.15, 3.5, false);
    const Direction dir = Direction::from_angle(rng.range(0.0, 2.0 * kPi));
    const DeterminantPair d = characteristic_determinant(st.q, dir, st.gas);
    note(kDetFactor, rel(d.det8, d.factored));
  }

  // -- lattice relations on a slope-friendly state/direction pair
  {
    const RandomState st = draw_state(rng, 0.15, 3.5, true);
    double theta;
    do {
      theta = rng.range(0.0, 2.0 * kPi);
    } while (std::fabs(std::cos(theta)) < 0.05);
    const Direction dir = Direction::from_angle(theta);
    const Primitive2 w = primitive_from_conservative(st.q, st.gas);
    const double H = w.H;
    const double t = dir.dy() / dir.dx();

    CoeffTable tab = coefficient_table(st.q, dir, st.gas);
    apply_fault(tab, fault);
    const double factored =
        characteristic_determinant(st.q, dir, st.gas).factored;
    for (int m = 1; m <= 4; ++m) {
      note(kDetRows, rel(dir.dx() * tab.x(m, m) + dir.dy() * tab.y(m, m), factored));
    }

    note(kInx, rel(tab.x(4, 1), H * H * tab.x(1, 4)));
    note(kInx, rel(tab.x(3, 1), -t * tab.x(2, 1)));
    note(kInx, rel(tab.x(4, 2), -H * tab.x(1, 2)));
    note(kInx, rel(tab.x(3, 2), -t * tab.x(2, 2)));
    note(kInx, rel(tab.x(4, 3), -H * tab.x(1, 3)));
    note(kInx, rel(tab.x(3, 4), -t * tab.x(2, 4)));

    note(kIny, rel(tab.y(4, 1), H * H * tab.y(1, 4)));
    note(kIny, rel(tab.y(3, 1), -t * tab.y(2, 1)));
    note(kIny, rel(tab.y(4, 2), -H * tab.y(1, 2)));
    note(kIny, rel(tab.y(4, 3), -H * tab.y(1, 3)));
    note(kIny, rel(tab.y(3, 3), -t * tab.y(2, 3)));
    note(kIny, rel(tab.y(3, 4), -t * tab.y(2, 4)));

    for (int l = 2; l <= 4; ++l) note(kCxy1, rel(tab.x(l, 1), -t * tab.y(l, 1)));
    note(kCxy2, rel(tab.x(1, 2), -t * tab.y(1, 2)));
    note(kCxy2, rel(tab.x(3, 2), -t * tab.y(3, 2)));
    note(kCxy2, rel(tab.x(4, 2), -t * tab.y(4, 2)));
    note(kCxy3, rel(tab.x(1, 3), -t * tab.y(1, 3)));
    note(kCxy3, rel(tab.x(2, 3), -t * tab.y(2, 3)));
    note(kCxy3, rel(tab.x(4, 3), -t * tab.y(4, 3)));
    for (int l = 1; l <= 3; ++l) note(kCxy4, rel(tab.x(l, 4), -t * tab.y(l, 4)));

    note(kC11C44, rel(tab.x(1, 1), tab.x(4, 4)));
    note(kC11C44, rel(tab.y(1, 1), tab.y(4, 4)));

    // factored x/y proportionality along the streamtrace (kappa = 0)
    const Direction sdir(w.u, w.v);
    if (sdir.dx() != 0.0) {
      const CoeffTable bar = coefficient_table_factored(st.q, sdir, st.gas);
      const double ts = sdir.dy() / sdir.dx();
      for (int m = 1; m <= 4; ++m) note(kProp5, rel(bar.x(m, m), -ts * bar.y(m, m)));
    }
  }

  // -- supersonic-only checks
  {
    const RandomState st = draw_state(rng, 1.0 + 2e-6, 4.0, false);
    const Primitive2 w = primitive_from_conservative(st.q, st.gas);
    const CharDirections dirs = characteristic_directions(st.q, st.gas);
    const double g1 = st.gas.gamma1();
    const double c2 = st.c * st.c;

    for (const Direction* cd : {&*dirs.c_plus_dir, &*dirs.c_minus_dir}) {
      const double cross = st.u * cd->dy() - st.v * cd->dx();
      note(kDeg2Homog, rel(cross * cross, c2));
      if (std::fabs(cd->dx()) >= 1e-3) {
        const double t = cd->dy() / cd->dx();
        const double lhs = g1 * (1.0 + t * t) * w.H;
        const double rhs = g1 * (1.0 + t * t) * w.Ec +
                           (t * st.u - st.v) * (t * st.u - st.v);
        note(kDeg2, rel(lhs, rhs));
      }
      if (std::fabs(cd->dx()) >= 1e-6) {
        const CoeffTable tab = coefficient_table(st.q, *cd, st.gas);
        note(kCpmPair, rel(tab.y(1, 1), -w.H * tab.y(1, 4)));
        note(kCpmPair, rel(tab.y(4, 1), -w.H * tab.y(4, 4)));
      }
    }

    note(kRankS, std::fabs(numeric_rank(form_matrix(st.q, dirs.s_dir, st.gas)) - 2.0));
    note(kRankCpm, std::fabs(numeric_rank(form_matrix(st.q, *dirs.c_plus_dir, st.gas)) - 1.0));
    note(kRankCpm, std::fabs(numeric_rank(form_matrix(st.q, *dirs.c_minus_dir, st.gas)) - 1.0));

    const double beta = *w.beta;
    double theta;
    do {
      theta = rng.range(0.0, 2.0 * kPi);
    } while (dir_distance(theta, w.phi) < 0.05 || dir_distance(theta, w.phi + beta) < 0.05 ||
             dir_distance(theta, w.phi - beta) < 0.05);
    const int rank_g = numeric_rank(form_matrix(st.q, Direction::from_angle(theta), st.gas));
    note(kRankGeneric, std::max(0.0, 3.0 - rank_g));

    // eigenvectors of the uniform-flow pencil at mu in {alpha, alpha +/- beta}
    const LeftEigenvectors eig = left_eigenvectors(st.q, w.phi, st.gas);
    const JacobianPair2 jac = jacobian_transpose_2d(st.q, st.gas);
    const std::array<double, 4>* lams[3] = {&eig.lambda_alpha, &eig.lambda_alpha_plus_beta,
                                            &eig.lambda_alpha_minus_beta};
    const double mus[3] = {w.phi, w.phi + beta, w.phi - beta};
    for (int k = 0; k < 3; ++k) {
      const double smu = std::sin(mus[k]), cmu = std::cos(mus[k]);
      double lam_scale = 0.0, mat_scale = 0.0, res = 0.0;
      for (int col = 0; col < 4; ++col) {
        double acc = 0.0;
        for (int row = 0; row < 4; ++row) {
          // left product with A sin - B cos; a_t/b_t store transposes
          const double entry = jac.a_t(col, row) * smu - jac.b_t(col, row) * cmu;
          acc += (*lams[k])[row] * entry;
          mat_scale = std::max(mat_scale, std::fabs(entry));
        }
        res = std::max(res, std::fabs(acc));
        lam_scale = std::max(lam_scale, std::fabs((*lams[k])[col]));
      }
      note(kEigNull, res / std::max(1.0, lam_scale * mat_scale));
      note(kEigH1H4, rel((*lams[k])[0], w.H * (*lams[k])[3]));
    }
  }

  // -- 3D streamtrace combinations
  {
    GasModel gas3{rng.range(1.15, 1.67)};
    const double rho = rng.range(0.3, 3.0);
    const double c = rng.range(0.5, 2.0);
    const double mach = rng.range(0.15, 3.5);
    const double th = rng.range(0.0, 2.0 * kPi);
    const double ph = rng.range(-1.3, 1.3);
    const double speed = mach * c;
    const double u = speed * std::cos(ph) * std::cos(th);
    const double v = speed * std::cos(ph) * std::sin(th);
    const double wv = speed * std::sin(ph);
    const double p = rho * c * c / gas3.gamma;
    const double ec = 0.5 * speed * speed;
    const ConservState3 q3{rho, rho * u, rho * v, rho * wv, p / gas3.gamma1() + rho * ec};
    const ThreeDResiduals r = verify_3d_streamtrace_identity(q3, gas3);
    note(kTriR1, r.residual_r1 / r.pattern_norm_r1);
    note(kTriR2, r.residual_r2 / r.pattern_norm_r2);

    // w = 0 reduction against the 2D combination
    const ConservState3 q3w0{rho, rho * u, rho * v, 0.0, p / gas3.gamma1() +
                                                             0.5 * rho * (u * u + v * v)};
    const ConservState2 q2{rho, rho * u, rho * v, q3w0.rho_E};
    const JacobianTriple3 j3 = jacobian_transpose_3d(q3w0, gas3);
    const JacobianPair2 j2 = jacobian_transpose_2d(q2, gas3);
    const double ec2 = 0.5 * (u * u + v * v);
    const Mat5* m3[2] = {&j3.a_t, &j3.b_t};
    const Mat4* m2[2] = {&j2.a_t, &j2.b_t};
    constexpr int keep[4] = {0, 1, 2, 4};
    double diff = 0.0, scale = 0.0;
    for (int d = 0; d < 2; ++d) {
      for (int kc = 0; kc < 4; ++kc) {
        const int k3 = keep[kc];
        const double comb3 = (*m3[d])(0, k3) + u * (*m3[d])(1, k3) + v * (*m3[d])(2, k3) +
                             0.0 * (*m3[d])(3, k3) + ec2 * (*m3[d])(4, k3);
        const double comb2 = (*m2[d])(0, kc) + u * (*m2[d])(1, kc) + v * (*m2[d])(2, kc) +
                             ec2 * (*m2[d])(3, kc);
        diff = std::max(diff, std::fabs(comb3 - comb2));
        scale = std::max(scale, std::fabs(comb2));
      }
    }
    note(kTriW0, diff / std::max(1.0, scale));
  }
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const SuiteConfig& cfg) {
  std::array<double, kNumChecks> global{};
  global.fill(0.0);

#ifdef _OPENMP
  if (cfg.parallel) {
    std::exception_ptr failure;
#pragma omp parallel
    {
      std::array<double, kNumChecks> local{};
      local.fill(0.0);
#pragma omp for schedule(static)
      for (long i = 0; i < cfg.n_samples; ++i) {
        try {
          evaluate_sample(cfg.seed, i, cfg.fault, local);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
#pragma omp critical
      {
        for (int k = 0; k < kNumChecks; ++k) global[k] = std::max(global[k], local[k]);
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else
#endif
  {
    for (long i = 0; i < cfg.n_samples; ++i) {
      evaluate_sample(cfg.seed, i, cfg.fault, global);
    }
  }

  std::vector<IdentityCheck> out;
  out.reserve(kNumChecks);
  for (int k = 0; k < kNumChecks; ++k) {
    out.push_back({kChecks[k].name, kChecks[k].tol, global[k]});
  }
  return out;
}

}  // namespace adjchar
