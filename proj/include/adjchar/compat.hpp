/** \file compat.hpp
 *  \brief Compatibility integrals K and their subparts along traced curves.
 */
#ifndef ADJCHAR_COMPAT_HPP
#define ADJCHAR_COMPAT_HPP

#include <array>
#include <string>
#include <vector>

#include "adjchar/tracer.hpp"

namespace adjchar {

enum class CompatKind { S1, S2, Cplus, Cminus };

const char* to_string(CompatKind kind);
const char* to_string(CurveFamily family);

/// Trapezoidal-rule line integrals of one compatibility relation, split by
/// subpart. K_total is the ordered sum of subpart_totals; cumulative arrays
/// follow the curve's traversal order and end exactly at the totals.
struct CompatReport {
  CurveFamily family = CurveFamily::S;
  CompatKind kind = CompatKind::S1;
  double K_total = 0.0;
  std::array<double, 4> subpart_totals{};
  double max_abs_subpart = 0.0;
  double ratio = 0.0;  // |K_total| / max_abs_subpart, 0 for an all-zero report
  std::vector<double> s;
  std::vector<double> K_cum;
  std::array<std::vector<double>, 4> subpart_cum;
  std::optional<DiskClip> clip;
};

/// Integrands are coefficient(sample) * (dpsi/ds)(sample), trapezoid-summed
/// on the curve's s grid. Kinds S1/S2 use the streamtrace ODE coefficients;
/// Cplus/Cminus use the direction-homogeneous characteristic form, which for
/// a non-vertical tangent equals the slope form scaled by the tangent's
/// x-component.
CompatReport k_integrals(const Curve& curve, CompatKind kind,
                         std::optional<DiskClip> clip = std::nullopt);

/// CSV with a '#' header block (totals, ratio, scaling note) followed by
/// columns: s K_cum sub1_cum sub2_cum sub3_cum sub4_cum
void write_report(const CompatReport& report, const std::string& path);

}  // namespace adjchar

#endif
