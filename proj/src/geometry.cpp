#include "tubehyp/geometry.hpp"

#include "bump_guard.hpp"
#include "tubehyp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tubehyp {

// ---------------------------------------------------------------------------
// Exact primitives.

Rational cross(const Vec2& a, const Vec2& b) { return a.x1 * b.x2 - a.x2 * b.x1; }
Rational dot(const Vec2& a, const Vec2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }
Vec2 operator-(const Point2& a, const Point2& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
Point2 operator+(const Point2& a, const Vec2& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
Vec2 scaled(const Vec2& v, const Rational& s) { return {v.x1 * s, v.x2 * s}; }

int orient(const Point2& a, const Point2& b, const Point2& c) { return sgn(cross(b - a, c - a)); }

bool on_closed_segment(const Point2& p, const Point2& a, const Point2& b)
{
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x1, b.x1) <= p.x1 && p.x1 <= std::max(a.x1, b.x1) && std::min(a.x2, b.x2) <= p.x2 &&
         p.x2 <= std::max(a.x2, b.x2);
}

bool closed_segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d)
{
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_closed_segment(c, a, b) || on_closed_segment(d, a, b) || on_closed_segment(a, c, d) ||
         on_closed_segment(b, c, d);
}

bool in_closed_polygon(const Point2& p, const std::vector<Point2>& vertices)
{
  const std::size_t n = vertices.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = vertices[j];
    const Point2& b = vertices[i];
    if (on_closed_segment(p, a, b)) return true;
    // Half-open crossing rule on the horizontal ray to +x1.
    if ((a.x2 > p.x2) != (b.x2 > p.x2)) {
      // x1 of the edge at height p.x2, compared without division.
      const Rational lhs = (p.x1 - a.x1) * (b.x2 - a.x2);
      const Rational rhs = (b.x1 - a.x1) * (p.x2 - a.x2);
      const bool right_of_point = (b.x2 > a.x2) ? (lhs < rhs) : (lhs > rhs);
      if (right_of_point) inside = !inside;
    }
  }
  return inside;
}

namespace {

/// Open half-plane {n . p > beta}.
struct Constraint {
  Vec2 n;
  Rational beta;
};

int polygon_orientation(const std::vector<Point2>& vertices)
{
  Rational area2 = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    area2 += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  return sgn(area2);
}

std::vector<Constraint> base_constraints(const ConvexBase& base)
{
  std::vector<Constraint> out;
  if (const auto* strip = std::get_if<Strip>(&base)) {
    out.push_back({{0, 1}, strip->lo});
    out.push_back({{0, -1}, -strip->hi});
  } else if (const auto* half = std::get_if<HalfPlane>(&base)) {
    out.push_back({{0, 1}, half->lo});
  } else {
    const auto& vs = std::get<ConvexPolygon>(base).vertices;
    const int s = polygon_orientation(vs);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Point2& a = vs[i];
      const Point2& b = vs[(i + 1) % vs.size()];
      const Vec2 e = b - a;
      // s * cross(e, p - a) > 0  <=>  n . p > n . a  with n = s * (-e2, e1)
      Vec2 n{-e.x2 * s, e.x1 * s};
      Rational beta = dot(n, a);
      out.push_back({std::move(n), std::move(beta)});
    }
  }
  return out;
}

/// Boundary pieces of the base as segments or full lines (for critical points).
struct Edge {
  Point2 a;
  Point2 b;
  bool infinite_line = false;
};

std::vector<Edge> base_edges(const ConvexBase& base)
{
  std::vector<Edge> out;
  if (const auto* strip = std::get_if<Strip>(&base)) {
    out.push_back({{0, strip->lo}, {1, strip->lo}, true});
    out.push_back({{0, strip->hi}, {1, strip->hi}, true});
  } else if (const auto* half = std::get_if<HalfPlane>(&base)) {
    out.push_back({{0, half->lo}, {1, half->lo}, true});
  } else {
    const auto& vs = std::get<ConvexPolygon>(base).vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) out.push_back({vs[i], vs[(i + 1) % vs.size()], false});
  }
  return out;
}

std::vector<Edge> obstacle_edges(const Obstacle& obstacle)
{
  std::vector<Edge> out;
  if (const auto* slit = std::get_if<VerticalSlit>(&obstacle)) {
    out.push_back({{slit->x1, slit->lo}, {slit->x1, slit->hi}, false});
  } else if (const auto* poly = std::get_if<Polygon>(&obstacle)) {
    const auto& vs = poly->vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) out.push_back({vs[i], vs[(i + 1) % vs.size()], false});
  }
  return out;
}

bool is_simple_polygon(const std::vector<Point2>& vs)
{
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vs[i];
    const Point2& b = vs[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2& c = vs[j];
      const Point2& d = vs[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (closed_segments_intersect(a, b, c, d)) return false;
        continue;
      }
      // Adjacent edges share one vertex; they must not fold back onto each other.
      const Point2& shared = (j == i + 1) ? b : a;
      const Point2& p = (j == i + 1) ? a : b;
      const Point2& q = (j == i + 1) ? d : c;
      if (orient(shared, p, q) == 0 && dot(p - shared, q - shared) > 0) return false;
    }
  }
  return polygon_orientation(vs) != 0;
}

bool base_has_line(const ConvexBase& base, BumpSide side)
{
  if (std::holds_alternative<Strip>(base)) return true;
  if (std::holds_alternative<HalfPlane>(base)) return side == BumpSide::bottom;
  return false;
}

}  // namespace

bool in_base_interior(const ConvexBase& base, const Point2& p)
{
  for (const auto& c : base_constraints(base))
    if (!(dot(c.n, p) > c.beta)) return false;
  return true;
}

bool in_base_closure(const ConvexBase& base, const Point2& p)
{
  for (const auto& c : base_constraints(base))
    if (dot(c.n, p) < c.beta) return false;
  return true;
}

double bump_height(const Bump& bump, double x)
{
  const double s = (x - to_double(bump.x0)) / to_double(bump.w);
  if (std::abs(s) >= 1.0) return 0.0;
  return to_double(bump.h) * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_height(const Bump& bump, const Rational& x)
{
  // Exact support test, float profile.
  if (abs_of(Rational(x - bump.x0)) >= bump.w) return 0.0;
  return bump_height(bump, to_double(x));
}

bool in_obstacle(const Obstacle& obstacle, const ConvexBase& base, const Point2& p, double margin)
{
  if (const auto* slit = std::get_if<VerticalSlit>(&obstacle))
    return p.x1 == slit->x1 && slit->lo <= p.x2 && p.x2 <= slit->hi;
  if (const auto* poly = std::get_if<Polygon>(&obstacle)) return in_closed_polygon(p, poly->vertices);
  const auto& bump = std::get<Bump>(obstacle);
  if (abs_of(Rational(p.x1 - bump.x0)) >= bump.w) {
    // Outside the support only the boundary line itself remains.
    const Rational line = std::holds_alternative<Strip>(base)
                              ? (bump.side == BumpSide::top ? std::get<Strip>(base).hi : std::get<Strip>(base).lo)
                              : std::get<HalfPlane>(base).lo;
    return p.x2 == line;
  }
  auto g = detail::bump_clearance_at(bump, base, to_double(p.x1), to_double(p.x2));
  return g && *g <= margin;
}

std::optional<std::string> validate_base(const ConvexBase& base)
{
  if (const auto* strip = std::get_if<Strip>(&base)) {
    if (!(strip->lo < strip->hi)) return "strip requires lo < hi";
    return std::nullopt;
  }
  if (std::holds_alternative<HalfPlane>(base)) return std::nullopt;
  const auto& vs = std::get<ConvexPolygon>(base).vertices;
  if (vs.size() < 3) return "polybase requires at least 3 vertices";
  int turn = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const int o = orient(vs[i], vs[(i + 1) % vs.size()], vs[(i + 2) % vs.size()]);
    if (o == 0) return "polybase must be strictly convex (collinear or repeated vertices)";
    if (turn == 0) turn = o;
    if (o != turn) return "polybase must be convex";
  }
  if (!is_simple_polygon(vs)) return "polybase must be a simple polygon";
  return std::nullopt;
}

std::optional<std::string> validate_obstacle(const ConvexBase& base, const Obstacle& obstacle)
{
  if (const auto* slit = std::get_if<VerticalSlit>(&obstacle)) {
    if (!(slit->lo < slit->hi)) return "slit requires lo < hi";
    if (!in_base_closure(base, {slit->x1, slit->lo}) || !in_base_closure(base, {slit->x1, slit->hi}))
      return "slit lies outside the base closure";
    return std::nullopt;
  }
  if (const auto* poly = std::get_if<Polygon>(&obstacle)) {
    if (poly->vertices.size() < 3) return "polygon requires at least 3 vertices";
    if (!is_simple_polygon(poly->vertices)) return "polygon must be simple with nonzero area";
    for (const auto& v : poly->vertices)
      if (!in_base_closure(base, v)) return "polygon lies outside the base closure";
    return std::nullopt;
  }
  const auto& bump = std::get<Bump>(obstacle);
  if (!(bump.w > 0)) return "bump requires w > 0";
  if (!(bump.h > 0)) return "bump requires h > 0";
  if (!base_has_line(base, bump.side))
    return bump.side == BumpSide::top ? "top bump needs a strip base" : "bottom bump needs a strip or halfplane base";
  if (const auto* strip = std::get_if<Strip>(&base))
    if (bump.h > strip->hi - strip->lo) return "bump is taller than the strip";
  return std::nullopt;
}

namespace {

int variant_rank(const Obstacle& o) { return static_cast<int>(o.index()); }

template <class T>
int compare_values(const T& a, const T& b)
{
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_points(const Point2& a, const Point2& b)
{
  if (int c = compare_values(a.x1, b.x1)) return c;
  return compare_values(a.x2, b.x2);
}

}  // namespace

bool obstacle_less(const Obstacle& a, const Obstacle& b)
{
  if (variant_rank(a) != variant_rank(b)) return variant_rank(a) < variant_rank(b);
  if (const auto* sa = std::get_if<VerticalSlit>(&a)) {
    const auto& sb = std::get<VerticalSlit>(b);
    if (int c = compare_values(sa->x1, sb.x1)) return c < 0;
    if (int c = compare_values(sa->lo, sb.lo)) return c < 0;
    return sa->hi < sb.hi;
  }
  if (const auto* pa = std::get_if<Polygon>(&a)) {
    const auto& pb = std::get<Polygon>(b);
    const std::size_t n = std::min(pa->vertices.size(), pb.vertices.size());
    for (std::size_t i = 0; i < n; ++i)
      if (int c = compare_points(pa->vertices[i], pb.vertices[i])) return c < 0;
    return pa->vertices.size() < pb.vertices.size();
  }
  const auto& ba = std::get<Bump>(a);
  const auto& bb = std::get<Bump>(b);
  if (ba.side != bb.side) return ba.side == BumpSide::bottom;  // "bottom" < "top"
  if (int c = compare_values(ba.x0, bb.x0)) return c < 0;
  if (int c = compare_values(ba.w, bb.w)) return c < 0;
  return ba.h < bb.h;
}

bool is_loeb_normalized(const ConvexBase& base)
{
  if (const auto* strip = std::get_if<Strip>(&base)) return strip->lo >= 0;
  if (const auto* half = std::get_if<HalfPlane>(&base)) return half->lo >= 0;
  for (const auto& v : std::get<ConvexPolygon>(base).vertices)
    if (v.x2 < 0) return false;
  return true;
}

Domain::Domain(ConvexBase base, std::vector<Obstacle> obstacles, std::string name)
    : base_(std::move(base)), obstacles_(std::move(obstacles)), name_(std::move(name))
{
  if (name_.find_first_of("\"\n\r") != std::string::npos)
    throw Error(Errc::invalid_domain, "domain name may not contain quotes or line breaks");
  if (auto err = validate_base(base_)) throw Error(Errc::invalid_domain, *err);
  for (const auto& o : obstacles_)
    if (auto err = validate_obstacle(base_, o)) throw Error(Errc::invalid_domain, *err);
  std::stable_sort(obstacles_.begin(), obstacles_.end(), obstacle_less);
}

Domain Domain::with_bump_margin(double margin) const
{
  Domain copy = *this;
  copy.bump_margin_ = margin;
  return copy;
}

bool Domain::has_bumps() const noexcept
{
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [](const Obstacle& o) { return std::holds_alternative<Bump>(o); });
}

bool contains(const Domain& domain, const Point2& p)
{
  if (!in_base_interior(domain.base(), p)) return false;
  for (const auto& o : domain.obstacles())
    if (in_obstacle(o, domain.base(), p, domain.bump_margin())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lines, segments, ellipses.

namespace {

bool contains_polygonal(const Domain& domain, const Point2& p)
{
  if (!in_base_interior(domain.base(), p)) return false;
  for (const auto& o : domain.obstacles()) {
    if (std::holds_alternative<Bump>(o)) continue;
    if (in_obstacle(o, domain.base(), p, 0.0)) return false;
  }
  return true;
}

/// The set {origin + t*dir} over one of three parameter ranges.
struct LinePiece {
  enum class Range { closed01, open01, open_symmetric };

  Point2 origin;
  Vec2 dir;
  Range range = Range::closed01;
  Rational radius_sq;  // open_symmetric: t^2 < radius_sq

  Point2 at(const Rational& t) const { return origin + scaled(dir, t); }

  bool in_range(const Rational& t) const
  {
    switch (range) {
      case Range::closed01: return 0 <= t && t <= 1;
      case Range::open01: return 0 < t && t < 1;
      case Range::open_symmetric: return t * t < radius_sq;
    }
    return false;
  }
};

void add_edge_criticals(const LinePiece& line, const Edge& edge, std::vector<Rational>& out)
{
  const Vec2 e = edge.b - edge.a;
  const Rational denom = cross(line.dir, e);
  const Vec2 ao = edge.a - line.origin;
  if (denom != 0) {
    Rational t = cross(ao, e) / denom;
    if (!edge.infinite_line) {
      const Rational s = cross(ao, line.dir) / denom;
      if (s < 0 || s > 1) return;
    }
    out.push_back(std::move(t));
    return;
  }
  if (cross(ao, line.dir) != 0 || edge.infinite_line) return;  // parallel, or whole line on a base line
  const Rational dd = dot(line.dir, line.dir);
  out.push_back(dot(edge.a - line.origin, line.dir) / dd);
  out.push_back(dot(edge.b - line.origin, line.dir) / dd);
}

/// A rational strictly between `inner` and the open end sqrt(radius_sq)
/// (towards +) or -sqrt(radius_sq) (towards -). Requires inner inside.
Rational toward_open_root(const Rational& inner, const Rational& radius_sq, int direction)
{
  Rational q = inner + direction;
  while (q * q >= radius_sq) q = (q + inner) / 2;
  return q;
}

/// Parameters at which polygonal membership must be evaluated: every critical
/// value in range plus one interior point per gap. Ascending order.
std::vector<Rational> sample_parameters(const Domain& domain, const LinePiece& line)
{
  std::vector<Rational> crit;
  for (const auto& e : base_edges(domain.base())) add_edge_criticals(line, e, crit);
  for (const auto& o : domain.obstacles())
    for (const auto& e : obstacle_edges(o)) add_edge_criticals(line, e, crit);

  std::erase_if(crit, [&](const Rational& t) { return !line.in_range(t); });
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  std::vector<Rational> samples;
  using Range = LinePiece::Range;
  if (line.range == Range::open_symmetric) {
    if (crit.empty()) return {Rational(0)};
    samples.push_back(toward_open_root(crit.front(), line.radius_sq, -1));
    for (std::size_t i = 0; i < crit.size(); ++i) {
      if (i > 0) samples.push_back((crit[i - 1] + crit[i]) / 2);
      samples.push_back(crit[i]);
    }
    samples.push_back(toward_open_root(crit.back(), line.radius_sq, +1));
    return samples;
  }

  std::vector<Rational> cuts;
  cuts.push_back(0);
  for (auto& t : crit)
    if (t != 0 && t != 1) cuts.push_back(t);
  cuts.push_back(1);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const bool is_end = (i == 0 || i + 1 == cuts.size());
    if (!is_end || line.range == Range::closed01) samples.push_back(cuts[i]);
    if (i + 1 < cuts.size()) samples.push_back((cuts[i] + cuts[i + 1]) / 2);
  }
  return samples;
}

SegmentVerdict scan_line(const Domain& domain, const LinePiece& line)
{
  if (line.dir.x1 == 0 && line.dir.x2 == 0) {
    if (contains(domain, line.origin)) return {};
    return {false, line.origin, true};
  }

  for (const auto& t : sample_parameters(domain, line)) {
    Point2 p = line.at(t);
    if (!contains_polygonal(domain, p)) return {false, std::move(p), true};
  }

  double t0 = 0.0, t1 = 1.0;
  if (line.range == LinePiece::Range::open_symmetric) {
    t1 = std::sqrt(to_double(line.radius_sq));
    t0 = -t1;
  }
  const double o1 = to_double(line.origin.x1), o2 = to_double(line.origin.x2);
  const double d1 = to_double(line.dir.x1), d2 = to_double(line.dir.x2);
  detail::CurveEnclosure curve{
      [=](double ta, double tb) {
        const double xa = o1 + ta * d1, xb = o1 + tb * d1;
        const double ya = o2 + ta * d2, yb = o2 + tb * d2;
        return detail::Box{std::min(xa, xb), std::max(xa, xb), std::min(ya, yb), std::max(ya, yb)};
      },
      [=](double t) { return std::pair{o1 + t * d1, o2 + t * d2}; }};

  for (const auto& o : domain.obstacles()) {
    const auto* bump = std::get_if<Bump>(&o);
    if (!bump) continue;
    const auto scan = detail::scan_bump(*bump, domain.base(), domain.bump_margin(), t0, t1, curve);
    if (!scan.clear) {
      Point2 p = line.at(from_double(scan.t_hit));
      const bool verified = !contains(domain, p);
      return {false, std::move(p), verified};
    }
  }
  return {};
}

}  // namespace

SegmentVerdict segment_in_domain(const Domain& domain, const Segment2& segment)
{
  LinePiece line{segment.p, segment.q - segment.p,
                 segment.openness == Openness::closed ? LinePiece::Range::closed01 : LinePiece::Range::open01, 0};
  return scan_line(domain, line);
}

bool ellipse_in_domain(const Domain& domain, const Ellipse2& e)
{
  const Rational det = cross(e.u, e.v);
  if (det == 0) {
    // Collinear axes: the set is the open segment center + s*dir, |s| < sqrt(1 + lambda^2).
    const bool u_zero = e.u.x1 == 0 && e.u.x2 == 0;
    const bool v_zero = e.v.x1 == 0 && e.v.x2 == 0;
    if (u_zero && v_zero) return contains(domain, e.center);
    if (v_zero) return segment_in_domain(domain, {e.center + scaled(e.u, -1), e.center + e.u, Openness::open}).inside;
    const Vec2& dir = u_zero ? e.v : e.u;
    const Vec2& other = u_zero ? e.u : e.v;
    const Rational lambda = dot(other, dir) / dot(dir, dir);
    LinePiece line{e.center, dir, LinePiece::Range::open_symmetric, 1 + lambda * lambda};
    return scan_line(domain, line).inside;
  }

  // Base: inf over the ellipse of n.p - beta must be >= 0 for each constraint.
  for (const auto& c : base_constraints(domain.base())) {
    const Rational margin = dot(c.n, e.center) - c.beta;
    if (margin < 0) return false;
    const Rational nu = dot(c.n, e.u);
    const Rational nv = dot(c.n, e.v);
    if (nu * nu + nv * nv > margin * margin) return false;
  }

  // Polygonal obstacles: no edge point strictly inside, center not covered.
  // |adj(M)(p - c)|^2 < det^2 characterises the open ellipse, M = [u v].
  const auto adj = [&](const Vec2& w) { return Vec2{e.v.x2 * w.x1 - e.v.x1 * w.x2, -e.u.x2 * w.x1 + e.u.x1 * w.x2}; };
  const Rational det_sq = det * det;
  const auto edge_enters = [&](const Edge& edge) {
    const Vec2 a = adj(edge.a - e.center);
    const Vec2 b = adj(edge.b - edge.a);
    const Rational bb = dot(b, b);
    Rational s = 0;
    if (bb != 0) {
      s = -dot(a, b) / bb;
      if (s < 0) s = 0;
      if (s > 1) s = 1;
    }
    const Vec2 w = a + scaled(b, s);
    return dot(w, w) < det_sq;
  };
  for (const auto& o : domain.obstacles()) {
    if (std::holds_alternative<Bump>(o)) continue;
    for (const auto& edge : obstacle_edges(o))
      if (edge_enters(edge)) return false;
    if (const auto* poly = std::get_if<Polygon>(&o))
      if (in_closed_polygon(e.center, poly->vertices)) return false;
  }

  if (!domain.has_bumps()) return true;

  // Bumps: the closed boundary curve must clear each bump (any intrusion of a
  // bump into the ellipse shows up on the upper or lower boundary arc).
  const double c1 = to_double(e.center.x1), c2 = to_double(e.center.x2);
  const double u1 = to_double(e.u.x1), u2 = to_double(e.u.x2);
  const double v1 = to_double(e.v.x1), v2 = to_double(e.v.x2);
  const double r1 = std::hypot(u1, v1), r2 = std::hypot(u2, v2);
  const auto at = [=](double th) {
    return std::pair{c1 + u1 * std::cos(th) + v1 * std::sin(th), c2 + u2 * std::cos(th) + v2 * std::sin(th)};
  };
  detail::CurveEnclosure curve{[=](double ta, double tb) {
                                 const auto [x, y] = at(0.5 * (ta + tb));
                                 const double half = 0.5 * (tb - ta) * (1.0 + 1e-12);
                                 return detail::Box{x - r1 * half, x + r1 * half, y - r2 * half, y + r2 * half};
                               },
                               at};
  for (const auto& o : domain.obstacles()) {
    const auto* bump = std::get_if<Bump>(&o);
    if (!bump) continue;
    if (!detail::scan_bump(*bump, domain.base(), domain.bump_margin(), 0.0, 2.0 * std::numbers::pi, curve).clear)
      return false;
  }
  return true;
}

std::pair<Rational, Rational> obstacle_x_extent(const Obstacle& obstacle)
{
  if (const auto* slit = std::get_if<VerticalSlit>(&obstacle)) return {slit->x1, slit->x1};
  if (const auto* poly = std::get_if<Polygon>(&obstacle)) {
    Rational lo = poly->vertices.front().x1, hi = lo;
    for (const auto& v : poly->vertices) {
      lo = std::min(lo, v.x1);
      hi = std::max(hi, v.x1);
    }
    return {lo, hi};
  }
  const auto& bump = std::get<Bump>(obstacle);
  return {bump.x0 - bump.w, bump.x0 + bump.w};
}

HullReport hull_classify(const Domain& domain)
{
  // Bounded closed obstacles leave every point of a strip or half-plane base
  // in the closure of D, so the hull of D is the base. A polygonal base keeps
  // that property unless an obstacle swallows one of its corners.
  for (const auto& o : domain.obstacles()) {
    const auto [lo, hi] = obstacle_x_extent(o);
    if (hi < lo) throw Error(Errc::hull_undecidable, "obstacle has an undefined x1-extent");
  }
  if (const auto* poly = std::get_if<ConvexPolygon>(&domain.base())) {
    for (const auto& v : poly->vertices)
      for (const auto& o : domain.obstacles())
        if (const auto* p = std::get_if<Polygon>(&o); p && in_closed_polygon(v, p->vertices))
          throw Error(Errc::hull_undecidable, "an obstacle covers a corner of the polygonal base");
  }
  return {HullCase::case_i, domain.base()};
}

}  // namespace tubehyp
