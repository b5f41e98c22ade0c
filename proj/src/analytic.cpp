#include "adjchar/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace adjchar {

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) {
    throw DimensionMismatch("profile needs >= 2 matching breakpoints");
  }
  for (std::size_t k = 1; k < xs_.size(); ++k) {
    if (!(xs_[k] > xs_[k - 1])) {
      throw DimensionMismatch("profile breakpoints must be strictly increasing");
    }
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x < xs_.front() || x > xs_.back()) {
    throw OutOfProfileDomain("profile query " + std::to_string(x) + " outside [" +
                             std::to_string(xs_.front()) + ", " + std::to_string(xs_.back()) + "]");
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = std::min<std::size_t>(xs_.size() - 1, it - xs_.begin());
  const std::size_t lo = hi - 1;
  const double f = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + f * (ys_[hi] - ys_[lo]);
}

double PiecewiseLinear::slope_at(double x) const {
  if (x < xs_.front() || x > xs_.back()) {
    throw OutOfProfileDomain("profile query outside table domain");
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = std::min<std::size_t>(xs_.size() - 1, it - xs_.begin());
  const std::size_t lo = hi - 1;
  return (ys_[hi] - ys_[lo]) / (xs_[hi] - xs_[lo]);
}

PiecewiseLinear PiecewiseLinear::hat(double center, double width, double height, double pad) {
  return PiecewiseLinear({center - pad, center - 0.5 * width, center, center + 0.5 * width,
                          center + pad},
                         {0.0, 0.0, height, 0.0, 0.0});
}

double StripeField::beta() const {
  if (!(M_inf > 1.0)) {
    throw SubsonicInput("stripe field requires M_inf > 1, got " + std::to_string(M_inf));
  }
  return std::asin(1.0 / M_inf);
}

ConservState2 StripeField::uniform_state() const {
  (void)beta();  // validates M_inf
  const double speed = M_inf * c_inf;
  const double p = rho_inf * c_inf * c_inf / gas.gamma;
  return conservative_from_primitive(rho_inf, speed * std::cos(alpha), speed * std::sin(alpha), p,
                                     gas);
}

LeftEigenvectors StripeField::eigenvectors() const {
  return left_eigenvectors(uniform_state(), alpha, gas);
}

StripeField make_demo_stripe_field(const GasModel& gas, double mach_inf, double alpha,
                                   double rho_inf, double c_inf) {
  if (!(mach_inf > 1.0)) {
    throw SubsonicInput("stripe field requires M_inf > 1, got " + std::to_string(mach_inf));
  }
  // Three deliberately unequal hats whose supports all cover the origin but
  // whose apexes are offset from it; unequal amplitudes keep the stripe
  // contributions from cancelling pairwise at alpha = 0.
  constexpr double kPad = 1e6;
  return StripeField{gas,
                     mach_inf,
                     alpha,
                     rho_inf,
                     c_inf,
                     PiecewiseLinear::hat(0.10, 0.50, 1.00, kPad),
                     PiecewiseLinear::hat(0.13, 0.56, 0.80, kPad),
                     PiecewiseLinear::hat(0.07, 0.46, 1.25, kPad)};
}

Adjoint2 stripe_adjoint(const StripeField& field, double x, double y) {
  const double beta = field.beta();
  const LeftEigenvectors eig = field.eigenvectors();
  const double mus[3] = {field.alpha, field.alpha + beta, field.alpha - beta};
  const PiecewiseLinear* profs[3] = {&field.prof_alpha, &field.prof_alpha_plus_beta,
                                     &field.prof_alpha_minus_beta};
  const std::array<double, 4>* lams[3] = {&eig.lambda_alpha, &eig.lambda_alpha_plus_beta,
                                          &eig.lambda_alpha_minus_beta};
  Adjoint2 out;
  for (int k = 0; k < 3; ++k) {
    const double xi = x * std::sin(mus[k]) - y * std::cos(mus[k]);
    const double amp = (*profs[k])(xi);
    for (int c = 0; c < 4; ++c) out.psi[c] += amp * (*lams[k])[c];
  }
  return out;
}

FieldGrid make_stripe_grid(const StripeField& field, const Bbox& bbox, int ni, int nj) {
  if (ni < 2 || nj < 2) throw DimensionMismatch("stripe grid must be at least 2x2");
  const ConservState2 q = field.uniform_state();
  FieldGrid g;
  g.ni = ni;
  g.nj = nj;
  g.gamma = field.gas.gamma;
  g.periodic_i = false;
  const std::size_t n = static_cast<std::size_t>(ni) * nj;
  g.x.resize(n);
  g.y.resize(n);
  g.rho.assign(n, q.rho);
  g.rho_u.assign(n, q.rho_u);
  g.rho_v.assign(n, q.rho_v);
  g.rho_E.assign(n, q.rho_E);
  g.psi1.resize(n);
  g.psi2.resize(n);
  g.psi3.resize(n);
  g.psi4.resize(n);

  std::exception_ptr failure;  // exceptions may not cross the parallel region
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nj; ++j) {
    try {
      const double y = bbox.ylo + (bbox.yhi - bbox.ylo) * j / (nj - 1);
      for (int i = 0; i < ni; ++i) {
        const double x = bbox.xlo + (bbox.xhi - bbox.xlo) * i / (ni - 1);
        const std::size_t k = static_cast<std::size_t>(j) * ni + i;
        g.x[k] = x;
        g.y[k] = y;
        const Adjoint2 psi = stripe_adjoint(field, x, y);
        g.psi1[k] = psi.psi[0];
        g.psi2[k] = psi.psi[1];
        g.psi3[k] = psi.psi[2];
        g.psi4[k] = psi.psi[3];
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  g.finalize();
  return g;
}

void emit_stripe_grid(const StripeField& field, const Bbox& bbox, int ni, int nj,
                      const std::string& path) {
  save_field(make_stripe_grid(field, bbox, ni, nj), path);
}

GammaSamples gamma_along(const Curve& curve) {
  const GasModel gas{curve.gamma};
  GammaSamples out;
  const std::size_t n = curve.points.size();
  out.gamma1_s.reserve(n);
  out.gamma2_s.reserve(n);
  out.gamma_cplus.reserve(n);
  bool all_supersonic = true;
  for (std::size_t k = 0; k < n; ++k) {
    const CurveSample& cs = curve.samples[k];
    if (!cs.adjoint) throw MissingAdjoint("curve has no adjoint data");
    const Primitive2 w = primitive_from_conservative(cs.state, gas);
    const auto& psi = cs.adjoint->psi;
    const double t1[4] = {w.Ec * psi[0], w.H * w.u * psi[1], w.H * w.v * psi[2],
                          w.H * w.H * psi[3]};
    const double t2[4] = {psi[0], w.u * psi[1], w.v * psi[2], w.Ec * psi[3]};
    out.gamma1_s.push_back(t1[0] + t1[1] + t1[2] + t1[3]);
    out.gamma2_s.push_back(t2[0] + t2[1] + t2[2] + t2[3]);
    out.scale1 = std::max(out.scale1,
                          std::fabs(t1[0]) + std::fabs(t1[1]) + std::fabs(t1[2]) + std::fabs(t1[3]));
    out.scale2 = std::max(out.scale2,
                          std::fabs(t2[0]) + std::fabs(t2[1]) + std::fabs(t2[2]) + std::fabs(t2[3]));
    if (all_supersonic && w.beta) {
      const Direction cp = Direction::from_angle(w.phi + *w.beta);
      const double un = w.u * cp.dx() + w.v * cp.dy();
      const double q2 = w.u * w.u + w.v * w.v;
      const double t3[4] = {un * psi[0], q2 * cp.dx() * psi[1], q2 * cp.dy() * psi[2],
                            w.H * un * psi[3]};
      out.gamma_cplus.push_back(t3[0] + t3[1] + t3[2] + t3[3]);
      out.scale_cplus =
          std::max(out.scale_cplus,
                   std::fabs(t3[0]) + std::fabs(t3[1]) + std::fabs(t3[2]) + std::fabs(t3[3]));
    } else {
      all_supersonic = false;
    }
  }
  if (!all_supersonic) {
    out.gamma_cplus.clear();
    out.scale_cplus = 0.0;
  }
  return out;
}

double relative_spread(const std::vector<double>& values, double scale) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return (*hi - *lo) / std::max(scale, 1e-300);
}

ThreeDResiduals verify_3d_streamtrace_identity(const ConservState3& q, const GasModel& gas) {
  const JacobianTriple3 j = jacobian_transpose_3d(q, gas);
  const double u = q.rho_u / q.rho;
  const double v = q.rho_v / q.rho;
  const double w = q.rho_w / q.rho;
  const double Ec = 0.5 * (u * u + v * v + w * w);
  const double c2 = gas.gamma * pressure(q, gas) / q.rho;
  const double H = c2 / gas.gamma1() + Ec;

  const Mat5* mats[3] = {&j.a_t, &j.b_t, &j.c_t};
  const double dirs[3] = {u, v, w};

  ThreeDResiduals out{0.0, 0.0, 0.0, 0.0};
  for (int d = 0; d < 3; ++d) {
    const Mat5& T = *mats[d];
    const double q1 = dirs[d];
    const double tgt_r2[5] = {q1, q1 * u, q1 * v, q1 * w, q1 * Ec};
    const double tgt_r1[5] = {q1 * Ec, q1 * u * H, q1 * v * H, q1 * w * H, q1 * H * H};
    for (int k = 0; k < 5; ++k) {
      const double comb_r2 =
          T(0, k) + u * T(1, k) + v * T(2, k) + w * T(3, k) + Ec * T(4, k);
      const double comb_r1 = (2.0 * Ec - H) * T(0, k) + u * Ec * T(1, k) + v * Ec * T(2, k) +
                             w * Ec * T(3, k) + Ec * H * T(4, k);
      out.residual_r2 = std::max(out.residual_r2, std::fabs(comb_r2 - tgt_r2[k]));
      out.residual_r1 = std::max(out.residual_r1, std::fabs(comb_r1 - tgt_r1[k]));
      out.pattern_norm_r2 = std::max(out.pattern_norm_r2, std::fabs(tgt_r2[k]));
      out.pattern_norm_r1 = std::max(out.pattern_norm_r1, std::fabs(tgt_r1[k]));
    }
  }
  return out;
}

}  // namespace adjchar
