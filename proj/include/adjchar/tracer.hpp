/** \file tracer.hpp
 *  \brief Streamtrace and C+/C- curve integration through a FieldGrid.
 */
#ifndef ADJCHAR_TRACER_HPP
#define ADJCHAR_TRACER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adjchar/field.hpp"
#include "adjchar/forms.hpp"

namespace adjchar {

enum class CurveFamily { S, Cplus, Cminus };
enum class TraceSense { with_flow, against_flow };
enum class Termination { OutOfDomain, SubsonicReached, MaxLength, StepFailure };

struct DiskClip {
  double cx;
  double cy;
  double radius;
};

struct TraceConfig {
  double step = 0.01;        // nominal arc length per RK4 step
  double max_length = 10.0;  // > step
  std::optional<DiskClip> clip;
  TraceSense sense = TraceSense::against_flow;
  double shock_grad_threshold = 0.05;  // |drho/ds| step / rho above this flags a sample
};

struct CurvePoint {
  double x;
  double y;
  double s;  // accumulated chord length, strictly increasing from 0
};

struct CurveSample {
  ConservState2 state;
  std::optional<Adjoint2> adjoint;
  double mach = 0.0;
  bool shock_flag = false;
};

struct Curve {
  CurveFamily family = CurveFamily::S;
  double gamma = 1.4;
  std::vector<CurvePoint> points;
  std::vector<CurveSample> samples;
  Termination termination = Termination::MaxLength;
};

/// Classical 4-stage Runge-Kutta on the family's unit tangent field. The
/// tangent at every stage is sign-aligned with the last accepted tangent;
/// the very first tangent is oriented by cfg.sense. A step whose stages fail
/// is retried with up to 4 halvings. Leaving cfg.clip terminates the curve
/// with Termination::OutOfDomain.
Curve trace(const FieldGrid& grid, double x0, double y0, CurveFamily family,
            const TraceConfig& cfg);

/// Unit tangent callback for trace_tangent_field; defined up to sign, may
/// throw OutOfDomain to end the curve.
using TangentField = std::function<Direction(double x, double y)>;

struct RawTrace {
  std::vector<CurvePoint> points;
  Termination termination = Termination::MaxLength;
};

/// The RK core behind trace(), driving an arbitrary tangent field. The
/// initial orientation is the sign returned by the field at the start.
RawTrace trace_tangent_field(const TangentField& field, double x0, double y0,
                             const TraceConfig& cfg);

/// dpsi/ds at every curve point by the 3-point Lagrange derivative on the
/// nonuniform s grid (one-sided at the ends); second order, exact on
/// quadratics. Requires >= 3 points and adjoint data.
std::vector<AdjointRate> resample_adjoint_rates(const Curve& curve);

/// CSV columns: s x y rho rho_u rho_v rho_E M psi1 psi2 psi3 psi4 shock_flag
void write_curve_csv(const Curve& curve, const std::string& path);

}  // namespace adjchar

#endif
