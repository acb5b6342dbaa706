#pragma once

// Planar geometry of tube bases: D = (open convex base) \ (closed obstacles).
//
// Only real parts live here. A tube T_D = D + iR^2 is determined by D, so no
// type in this header stores imaginary coordinates.
//
// Slits and polygons are decided exactly in rational arithmetic. Bumps have a
// transcendental boundary and are decided in binary64 with a safety margin:
// a point counts as clear of a bump only when its clearance exceeds
// Domain::bump_margin(). Claims of containment are therefore never optimistic.

#include "tubehyp/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tubehyp {

struct Point2 {
  Rational x1;
  Rational x2;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

/// Displacements share the representation of points.
using Vec2 = Point2;

enum class Openness { open, closed };

struct Segment2 {
  Point2 p;
  Point2 q;
  Openness openness = Openness::closed;
};

/// The open set {center + x*u + y*v : x^2 + y^2 < 1}.
struct Ellipse2 {
  Point2 center;
  Vec2 u;
  Vec2 v;
};

/// Closed vertical segment {x1} x [lo, hi].
struct VerticalSlit {
  Rational x1;
  Rational lo;
  Rational hi;

  friend bool operator==(const VerticalSlit&, const VerticalSlit&) = default;
};

/// Closed simple polygon (interior and boundary).
struct Polygon {
  std::vector<Point2> vertices;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

enum class BumpSide { top, bottom };

/// Closed region between a strip boundary line and the graph of a smooth
/// bump of height h supported on [x0 - w, x0 + w].
struct Bump {
  BumpSide side = BumpSide::top;
  Rational x0;
  Rational w;
  Rational h;

  friend bool operator==(const Bump&, const Bump&) = default;
};

using Obstacle = std::variant<VerticalSlit, Polygon, Bump>;

/// {lo < x2 < hi}
struct Strip {
  Rational lo;
  Rational hi;

  friend bool operator==(const Strip&, const Strip&) = default;
};

/// {x2 > lo}
struct HalfPlane {
  Rational lo;

  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

/// Open bounded strictly convex polygon; either orientation.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

using ConvexBase = std::variant<Strip, HalfPlane, ConvexPolygon>;

inline constexpr double kDefaultBumpMargin = 1e-9;

class Domain {
 public:
  /// Validates every invariant and stores obstacles in canonical order.
  /// Throws Error(Errc::invalid_domain) on violation.
  Domain(ConvexBase base, std::vector<Obstacle> obstacles, std::string name = {});

  const ConvexBase& base() const noexcept { return base_; }
  const std::vector<Obstacle>& obstacles() const noexcept { return obstacles_; }
  const std::string& name() const noexcept { return name_; }

  double bump_margin() const noexcept { return bump_margin_; }
  Domain with_bump_margin(double margin) const;

  bool has_bumps() const noexcept;

  friend bool operator==(const Domain& a, const Domain& b)
  {
    return a.base_ == b.base_ && a.obstacles_ == b.obstacles_ && a.name_ == b.name_;
  }

 private:
  ConvexBase base_;
  std::vector<Obstacle> obstacles_;
  std::string name_;
  double bump_margin_ = kDefaultBumpMargin;
};

// Validation helpers, shared with the parser so errors can carry positions.
// Each returns an error message, or nothing when the item is valid.
std::optional<std::string> validate_base(const ConvexBase& base);
std::optional<std::string> validate_obstacle(const ConvexBase& base, const Obstacle& obstacle);

/// Strict weak order used for canonical obstacle lists.
bool obstacle_less(const Obstacle& a, const Obstacle& b);

/// True when the base lies in the half-plane {x2 > 0}.
bool is_loeb_normalized(const ConvexBase& base);

// Exact primitives.
Rational cross(const Vec2& a, const Vec2& b);
Rational dot(const Vec2& a, const Vec2& b);
Vec2 operator-(const Point2& a, const Point2& b);
Point2 operator+(const Point2& a, const Vec2& b);
Vec2 scaled(const Vec2& v, const Rational& s);
int orient(const Point2& a, const Point2& b, const Point2& c);
bool on_closed_segment(const Point2& p, const Point2& a, const Point2& b);
bool closed_segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);
bool in_closed_polygon(const Point2& p, const std::vector<Point2>& vertices);

bool in_base_interior(const ConvexBase& base, const Point2& p);
bool in_base_closure(const ConvexBase& base, const Point2& p);

/// Membership of p in the obstacle (closed set). Bumps use the margin.
bool in_obstacle(const Obstacle& obstacle, const ConvexBase& base, const Point2& p, double margin);

/// Bump profile h * exp(1 - 1/(1 - s^2)), s = (x - x0)/w, zero for |s| >= 1.
double bump_height(const Bump& bump, double x);
double bump_height(const Bump& bump, const Rational& x);

// ---------------------------------------------------------------------------
// Operations.

bool contains(const Domain& domain, const Point2& p);

struct SegmentVerdict {
  bool inside = true;
  /// On a hit: a point of the segment outside D.
  std::optional<Point2> witness;
  /// False when a bump check could not certify clearance and the witness was
  /// not confirmed outside D by direct evaluation.
  bool witness_verified = true;
};

SegmentVerdict segment_in_domain(const Domain& domain, const Segment2& segment);

bool ellipse_in_domain(const Domain& domain, const Ellipse2& ellipse);

enum class HullCase { case_i, case_ii };

struct HullReport {
  HullCase kind = HullCase::case_i;
  ConvexBase hull;
};

/// Convex hull classification of D. For a convex base minus bounded obstacles
/// the hull is the base itself, so every constructible domain lands in case (i).
HullReport hull_classify(const Domain& domain);

/// x1-range of an obstacle (closed), used by rendering and hull checks.
std::pair<Rational, Rational> obstacle_x_extent(const Obstacle& obstacle);

}  // namespace tubehyp
