#include "bump_guard.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tubehyp::detail {

namespace {

constexpr int kMaxDepth = 64;
constexpr long kMaxPieces = 1L << 20;

double profile(double s)
{
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double attached_line(const Bump& bump, const ConvexBase& base)
{
  if (const auto* strip = std::get_if<Strip>(&base))
    return to_double(bump.side == BumpSide::top ? strip->hi : strip->lo);
  if (const auto* half = std::get_if<HalfPlane>(&base)) return to_double(half->lo);
  return 0.0;  // rejected by validation
}

}  // namespace

std::pair<double, double> bump_height_range(const Bump& bump, double xa, double xb)
{
  const double x0 = to_double(bump.x0);
  const double w = to_double(bump.w);
  const double h = to_double(bump.h);
  const double sa = (xa - x0) / w;
  const double sb = (xb - x0) / w;
  const double fa = profile(sa);
  const double fb = profile(sb);
  // Increasing on [-1, 0], decreasing on [0, 1].
  double hi = (sa <= 0.0 && sb >= 0.0) ? 1.0 : std::max(fa, fb);
  double lo = std::min(fa, fb);
  if (sa <= -1.0 || sb >= 1.0) lo = 0.0;
  return {h * lo * (1.0 - 1e-12), h * hi * (1.0 + 1e-12)};
}

std::optional<double> bump_clearance_at(const Bump& bump, const ConvexBase& base, double x1, double x2)
{
  const double x0 = to_double(bump.x0);
  const double w = to_double(bump.w);
  if (std::abs(x1 - x0) >= w) return std::nullopt;
  const double line = attached_line(bump, base);
  const double height = bump_height(bump, x1);
  return bump.side == BumpSide::top ? line - height - x2 : x2 - line - height;
}

BumpScan scan_bump(const Bump& bump, const ConvexBase& base, double margin, double t0, double t1,
                   const CurveEnclosure& curve)
{
  const double x0 = to_double(bump.x0);
  const double w = to_double(bump.w);
  const double line = attached_line(bump, base);

  struct Piece {
    double ta, tb;
    int depth;
  };
  std::vector<Piece> stack{{t0, t1, 0}};
  long pieces = 0;

  while (!stack.empty()) {
    Piece piece = stack.back();
    stack.pop_back();
    ++pieces;

    const Box box = curve.enclose(piece.ta, piece.tb);
    if (box.x1_hi <= x0 - w || box.x1_lo >= x0 + w) continue;

    const auto [h_min, h_max] = bump_height_range(bump, box.x1_lo, box.x1_hi);
    (void)h_min;
    const double lower = bump.side == BumpSide::top ? line - h_max - box.x2_hi : box.x2_lo - line - h_max;
    if (lower > margin) continue;

    const double tm = 0.5 * (piece.ta + piece.tb);
    const auto [px, py] = curve.at(tm);
    if (auto g = bump_clearance_at(bump, base, px, py); g && *g <= margin) return {false, tm};

    if (piece.depth >= kMaxDepth || pieces >= kMaxPieces || !(piece.ta < tm && tm < piece.tb))
      return {false, tm};

    // Push the right half first so the left half is explored first.
    stack.push_back({tm, piece.tb, piece.depth + 1});
    stack.push_back({piece.ta, tm, piece.depth + 1});
  }
  return {true, 0.0};
}

}  // namespace tubehyp::detail
