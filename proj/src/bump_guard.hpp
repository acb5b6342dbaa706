#pragma once

// Conservative clearance checks of parametrized curves against bump obstacles.
// Internal to the library.

#include "tubehyp/geometry.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace tubehyp::detail {

struct Box {
  double x1_lo, x1_hi, x2_lo, x2_hi;
};

struct CurveEnclosure {
  /// Axis-aligned enclosure of the curve over the parameter interval [ta, tb].
  std::function<Box(double ta, double tb)> enclose;
  /// Point of the curve at parameter t.
  std::function<std::pair<double, double>(double t)> at;
};

/// Range [min, max] of the bump profile over x in [xa, xb], max inflated to
/// absorb rounding.
std::pair<double, double> bump_height_range(const Bump& bump, double xa, double xb);

/// Signed clearance of (x1, x2) from the bump region (positive = outside).
/// Returns nothing when x1 is outside the open support.
std::optional<double> bump_clearance_at(const Bump& bump, const ConvexBase& base, double x1, double x2);

struct BumpScan {
  bool clear = true;
  double t_hit = 0.0;
};

/// Subdivides [t0, t1] until every piece clears the bump by more than margin
/// or a point within margin is found. Exhausting the budget reports not clear.
BumpScan scan_bump(const Bump& bump, const ConvexBase& base, double margin, double t0, double t1,
                   const CurveEnclosure& curve);

}  // namespace tubehyp::detail
