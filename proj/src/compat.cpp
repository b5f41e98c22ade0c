#include "adjchar/compat.hpp"

#include <cmath>
#include <cstdio>

namespace adjchar {

const char* to_string(CompatKind kind) {
  switch (kind) {
    case CompatKind::S1: return "s1";
    case CompatKind::S2: return "s2";
    case CompatKind::Cplus: return "cplus";
    case CompatKind::Cminus: return "cminus";
  }
  return "?";
}

const char* to_string(CurveFamily family) {
  switch (family) {
    case CurveFamily::S: return "s";
    case CurveFamily::Cplus: return "cplus";
    case CurveFamily::Cminus: return "cminus";
  }
  return "?";
}

namespace {

bool kind_matches(CompatKind kind, CurveFamily family) {
  switch (kind) {
    case CompatKind::S1:
    case CompatKind::S2: return family == CurveFamily::S;
    case CompatKind::Cplus: return family == CurveFamily::Cplus;
    case CompatKind::Cminus: return family == CurveFamily::Cminus;
  }
  return false;
}

std::array<double, 4> coefficients(const Curve& curve, std::size_t k, CompatKind kind,
                                   const GasModel& gas) {
  const Primitive2 w = primitive_from_conservative(curve.samples[k].state, gas);
  switch (kind) {
    case CompatKind::S1: return {w.Ec, w.H * w.u, w.H * w.v, w.H * w.H};
    case CompatKind::S2: return {1.0, w.u, w.v, w.Ec};
    default: break;
  }
  const CharDirections dirs = characteristic_directions(curve.samples[k].state, gas);
  const auto& cd = kind == CompatKind::Cplus ? dirs.c_plus_dir : dirs.c_minus_dir;
  if (!cd) {
    throw SubsonicInput("subsonic sample on a C+/C- curve at s = " +
                        std::to_string(curve.points[k].s));
  }
  // align with the curve's marching direction so the integrand is continuous
  const std::size_t n = curve.points.size();
  const std::size_t ka = k == 0 ? 0 : k - 1;
  const std::size_t kb = k + 1 < n ? k + 1 : k;
  const double mx = curve.points[kb].x - curve.points[ka].x;
  const double my = curve.points[kb].y - curve.points[ka].y;
  double xi = cd->dx(), eta = cd->dy();
  if (xi * mx + eta * my < 0.0) {
    xi = -xi;
    eta = -eta;
  }
  const double un = w.u * xi + w.v * eta;
  const double q2 = w.u * w.u + w.v * w.v;
  return {un, q2 * xi, q2 * eta, w.H * un};
}

}  // namespace

CompatReport k_integrals(const Curve& curve, CompatKind kind, std::optional<DiskClip> clip) {
  if (!kind_matches(kind, curve.family)) {
    throw FamilyMismatch(std::string("kind '") + to_string(kind) +
                         "' does not match curve family '" + to_string(curve.family) + "'");
  }
  const std::size_t n = curve.points.size();
  if (n < 3) throw TooFewPoints("K integrals need at least 3 points, got " + std::to_string(n));

  const GasModel gas{curve.gamma};
  const std::vector<AdjointRate> rates = resample_adjoint_rates(curve);

  CompatReport rep;
  rep.family = curve.family;
  rep.kind = kind;
  rep.clip = clip;
  rep.s.resize(n);
  rep.K_cum.assign(n, 0.0);
  for (auto& cum : rep.subpart_cum) cum.assign(n, 0.0);

  std::array<double, 4> g_prev{};
  for (std::size_t k = 0; k < n; ++k) {
    rep.s[k] = curve.points[k].s;
    const std::array<double, 4> coeff = coefficients(curve, k, kind, gas);
    std::array<double, 4> g;
    for (int c = 0; c < 4; ++c) g[c] = coeff[c] * rates[k].dpsi_ds[c];
    if (k > 0) {
      const double ds = curve.points[k].s - curve.points[k - 1].s;
      for (int c = 0; c < 4; ++c) {
        rep.subpart_cum[c][k] = rep.subpart_cum[c][k - 1] + 0.5 * (g_prev[c] + g[c]) * ds;
      }
    }
    rep.K_cum[k] = rep.subpart_cum[0][k] + rep.subpart_cum[1][k] + rep.subpart_cum[2][k] +
                   rep.subpart_cum[3][k];
    g_prev = g;
  }
  for (int c = 0; c < 4; ++c) rep.subpart_totals[c] = rep.subpart_cum[c][n - 1];
  rep.K_total = rep.K_cum[n - 1];
  rep.max_abs_subpart = 0.0;
  for (int c = 0; c < 4; ++c) {
    rep.max_abs_subpart = std::max(rep.max_abs_subpart, std::fabs(rep.subpart_totals[c]));
  }
  rep.ratio = rep.max_abs_subpart == 0.0 ? 0.0 : std::fabs(rep.K_total) / rep.max_abs_subpart;
  return rep;
}

void write_report(const CompatReport& rep, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  std::fprintf(f, "# kind %s\n# family %s\n", to_string(rep.kind), to_string(rep.family));
  std::fprintf(f, "# K_total %.17g\n", rep.K_total);
  std::fprintf(f, "# subpart_totals %.17g %.17g %.17g %.17g\n", rep.subpart_totals[0],
               rep.subpart_totals[1], rep.subpart_totals[2], rep.subpart_totals[3]);
  std::fprintf(f, "# max_abs_subpart %.17g\n# ratio %.17g\n", rep.max_abs_subpart, rep.ratio);
  if (rep.kind == CompatKind::Cplus || rep.kind == CompatKind::Cminus) {
    std::fputs("# integrand direction-homogeneous (slope form scaled by tangent x-component)\n", f);
  }
  if (rep.clip) {
    std::fprintf(f, "# clip %.17g %.17g %.17g\n", rep.clip->cx, rep.clip->cy, rep.clip->radius);
  }
  std::fputs("s K_cum sub1_cum sub2_cum sub3_cum sub4_cum\n", f);
  for (std::size_t k = 0; k < rep.s.size(); ++k) {
    std::fprintf(f, "%.17g %.17g %.17g %.17g %.17g %.17g\n", rep.s[k], rep.K_cum[k],
                 rep.subpart_cum[0][k], rep.subpart_cum[1][k], rep.subpart_cum[2][k],
                 rep.subpart_cum[3][k]);
  }
  if (std::fclose(f) != 0) throw IoError("write failed: " + path);
}

}  // namespace adjchar
