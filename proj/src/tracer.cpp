#include "adjchar/tracer.hpp"

#include <cmath>
#include <cstdio>

namespace adjchar {

namespace {

struct Vec2 {
  double x;
  double y;
};

Vec2 aligned(const Direction& d, const Vec2& ref) {
  const double dot = d.dx() * ref.x + d.dy() * ref.y;
  if (dot < 0.0) return {-d.dx(), -d.dy()};
  return {d.dx(), d.dy()};
}

enum class StageFailure { none, out_of_domain, subsonic, other };

}  // namespace

RawTrace trace_tangent_field(const TangentField& field, double x0, double y0,
                             const TraceConfig& cfg) {
  RawTrace out;
  out.points.push_back({x0, y0, 0.0});

  Vec2 pos{x0, y0};
  double s = 0.0;
  Vec2 ref;  // last accepted tangent
  {
    const Direction d0 = field(x0, y0);
    ref = {d0.dx(), d0.dy()};
  }
  auto inside_clip = [&cfg](const Vec2& p) {
    if (!cfg.clip) return true;
    const double rx = p.x - cfg.clip->cx, ry = p.y - cfg.clip->cy;
    return rx * rx + ry * ry <= cfg.clip->radius * cfg.clip->radius;
  };

  while (true) {
    double h = cfg.step;
    StageFailure failure = StageFailure::none;
    Vec2 next{};
    bool stepped = false;
    for (int attempt = 0; attempt <= 4; ++attempt, h *= 0.5) {
      failure = StageFailure::none;
      try {
        const Vec2 k1 = aligned(field(pos.x, pos.y), ref);
        const Vec2 k2 = aligned(field(pos.x + 0.5 * h * k1.x, pos.y + 0.5 * h * k1.y), ref);
        const Vec2 k3 = aligned(field(pos.x + 0.5 * h * k2.x, pos.y + 0.5 * h * k2.y), ref);
        const Vec2 k4 = aligned(field(pos.x + h * k3.x, pos.y + h * k3.y), ref);
        next = {pos.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                pos.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
        // the next point itself must be evaluable, otherwise shrink the step
        const Direction dn = field(next.x, next.y);
        ref = aligned(dn, ref);
        stepped = true;
        break;
      } catch (const OutOfDomain&) {
        failure = StageFailure::out_of_domain;
      } catch (const SubsonicInput&) {
        failure = StageFailure::subsonic;
      } catch (const Error&) {
        failure = StageFailure::other;
      }
    }
    if (!stepped) {
      switch (failure) {
        case StageFailure::out_of_domain: out.termination = Termination::OutOfDomain; return out;
        case StageFailure::subsonic: out.termination = Termination::SubsonicReached; return out;
        default: out.termination = Termination::StepFailure; return out;
      }
    }
    const double chord = std::hypot(next.x - pos.x, next.y - pos.y);
    if (chord <= 0.0) {
      out.termination = Termination::StepFailure;
      return out;
    }
    if (s + chord > cfg.max_length * (1.0 + 1e-12)) {
      out.termination = Termination::MaxLength;
      return out;
    }
    if (!inside_clip(next)) {
      out.termination = Termination::OutOfDomain;
      return out;
    }
    pos = next;
    s += chord;
    out.points.push_back({pos.x, pos.y, s});
  }
}

Curve trace(const FieldGrid& grid, double x0, double y0, CurveFamily family,
            const TraceConfig& cfg) {
  const GasModel gas = grid.gas();
  std::optional<CellRef> hint;

  // precondition checks at the start point
  Primitive2 w0;
  try {
    const SamplePoint sp = sample(grid, x0, y0);
    hint = sp.cell;
    w0 = primitive_from_conservative(sp.state, gas);
  } catch (const OutOfDomain& e) {
    throw OutOfDomainAtStart(e.what());
  }
  if (family != CurveFamily::S && !(w0.M >= 1.0)) {
    throw SubsonicAtStart("C+/C- trace started at M = " + std::to_string(w0.M) + " < 1");
  }

  bool first_eval = true;
  auto tangent = [&](double px, double py) -> Direction {
    const SamplePoint sp = sample(grid, px, py, hint);
    hint = sp.cell;
    const CharDirections dirs = characteristic_directions(sp.state, gas);
    Direction d = dirs.s_dir;
    if (family != CurveFamily::S) {
      const auto& cd = family == CurveFamily::Cplus ? dirs.c_plus_dir : dirs.c_minus_dir;
      if (!cd) throw SubsonicInput("characteristic left the supersonic region");
      d = *cd;
    }
    if (first_eval) {
      first_eval = false;
      const Primitive2 w = primitive_from_conservative(sp.state, gas);
      const double dot = d.dx() * w.u + d.dy() * w.v;
      const bool want_upstream = cfg.sense == TraceSense::against_flow;
      if ((dot > 0.0) == want_upstream) d = d.reversed();
    }
    return d;
  };

  RawTrace raw = trace_tangent_field(tangent, x0, y0, cfg);

  Curve curve;
  curve.family = family;
  curve.gamma = grid.gamma;
  curve.termination = raw.termination;
  curve.points = std::move(raw.points);
  curve.samples.reserve(curve.points.size());
  for (const CurvePoint& p : curve.points) {
    const SamplePoint sp = sample(grid, p.x, p.y, hint);
    hint = sp.cell;
    CurveSample cs;
    cs.state = sp.state;
    cs.adjoint = sp.adjoint;
    cs.mach = primitive_from_conservative(sp.state, gas).M;
    curve.samples.push_back(cs);
  }
  // post-hoc shock proximity flag from the density variation per step
  for (std::size_t k = 1; k + 1 < curve.points.size(); ++k) {
    const double ds = curve.points[k + 1].s - curve.points[k - 1].s;
    const double drho = curve.samples[k + 1].state.rho - curve.samples[k - 1].state.rho;
    const double rel = std::fabs(drho / ds) * cfg.step / curve.samples[k].state.rho;
    curve.samples[k].shock_flag = rel > cfg.shock_grad_threshold;
  }
  return curve;
}

std::vector<AdjointRate> resample_adjoint_rates(const Curve& curve) {
  const std::size_t n = curve.points.size();
  if (n < 3) {
    throw TooFewPoints("adjoint rates need at least 3 curve points, got " + std::to_string(n));
  }
  for (const CurveSample& cs : curve.samples) {
    if (!cs.adjoint) throw MissingAdjoint("curve has no adjoint data");
  }
  std::vector<AdjointRate> rates(n);
  auto psi = [&](std::size_t k, int comp) { return curve.samples[k].adjoint->psi[comp]; };
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
    const double sa = curve.points[a].s, sb = curve.points[a + 1].s, sc = curve.points[a + 2].s;
    const double sk = curve.points[k].s;
    const double wa = (2.0 * sk - sb - sc) / ((sa - sb) * (sa - sc));
    const double wb = (2.0 * sk - sa - sc) / ((sb - sa) * (sb - sc));
    const double wc = (2.0 * sk - sa - sb) / ((sc - sa) * (sc - sb));
    for (int comp = 0; comp < 4; ++comp) {
      rates[k].dpsi_ds[comp] =
          wa * psi(a, comp) + wb * psi(a + 1, comp) + wc * psi(a + 2, comp);
    }
  }
  return rates;
}

void write_curve_csv(const Curve& curve, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  std::fputs("s x y rho rho_u rho_v rho_E M psi1 psi2 psi3 psi4 shock_flag\n", f);
  char buf[40];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
    std::fputs(buf, f);
  };
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const CurvePoint& p = curve.points[k];
    const CurveSample& c = curve.samples[k];
    put(p.s, ' ');
    put(p.x, ' ');
    put(p.y, ' ');
    put(c.state.rho, ' ');
    put(c.state.rho_u, ' ');
    put(c.state.rho_v, ' ');
    put(c.state.rho_E, ' ');
    put(c.mach, ' ');
    const double nan = std::nan("");
    put(c.adjoint ? c.adjoint->psi[0] : nan, ' ');
    put(c.adjoint ? c.adjoint->psi[1] : nan, ' ');
    put(c.adjoint ? c.adjoint->psi[2] : nan, ' ');
    put(c.adjoint ? c.adjoint->psi[3] : nan, ' ');
    std::fprintf(f, "%d\n", c.shock_flag ? 1 : 0);
  }
  if (std::fclose(f) != 0) throw IoError("write failed: " + path);
}

}  // namespace adjchar
