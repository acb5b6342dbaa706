#include "tubehyp/witness.hpp"

#include "bump_guard.hpp"
#include "tubehyp/error.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace tubehyp {

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet::IntervalSet(OpenInterval single)
{
  if (!single.hi || single.lo < *single.hi) intervals_.push_back(std::move(single));
}

bool IntervalSet::contains(const Rational& x) const
{
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const OpenInterval& iv) { return iv.lo < x && (!iv.hi || x < *iv.hi); });
}

void IntervalSet::subtract_closed(const Rational& lo, const Rational& hi)
{
  std::vector<OpenInterval> out;
  for (auto& iv : intervals_) {
    // Left piece (iv.lo, min(iv.hi, lo)).
    Rational left_hi = (iv.hi && *iv.hi < lo) ? *iv.hi : lo;
    if (iv.lo < left_hi) out.push_back({iv.lo, left_hi});
    // Right piece (max(iv.lo, hi), iv.hi).
    Rational right_lo = iv.lo > hi ? iv.lo : hi;
    if (!iv.hi || right_lo < *iv.hi) out.push_back({right_lo, iv.hi});
  }
  // Left pieces entirely to the right of [lo, hi] duplicate the right piece.
  std::vector<OpenInterval> merged;
  for (auto& iv : out)
    if (merged.empty() || !(merged.back() == iv)) merged.push_back(std::move(iv));
  intervals_ = std::move(merged);
}

std::optional<Rational> IntervalSet::distance_to(const Rational& x) const
{
  if (intervals_.empty()) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& iv : intervals_) {
    Rational dist = 0;
    if (x < iv.lo)
      dist = iv.lo - x;
    else if (iv.hi && x > *iv.hi)
      dist = x - *iv.hi;
    if (!best || dist < *best) best = dist;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Admissible heights

namespace {

int orientation_of(const std::vector<Point2>& vs)
{
  Rational area2 = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) area2 += cross(vs[i], vs[(i + 1) % vs.size()]);
  return sgn(area2);
}

/// Heights b with both (-k, b) and (k, b) strictly inside the convex polygon.
IntervalSet polygon_base_heights(const ConvexPolygon& poly, const Rational& k)
{
  const auto& vs = poly.vertices;
  const int s = orientation_of(vs);
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Point2& a = vs[i];
    const Point2& b = vs[(i + 1) % vs.size()];
    const Vec2 e = b - a;
    for (const Rational& x : {Rational(-k), k}) {
      // s * (e1 (y - a2) - e2 (x - a1)) > 0  <=>  A y > B
      const Rational A = e.x1 * s;
      const Rational B = (e.x1 * a.x2 + e.x2 * (x - a.x1)) * s;
      if (A == 0) {
        if (!(0 > B)) return {};
        continue;
      }
      const Rational bound = B / A;
      if (A > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
  }
  if (!lo || !hi) return {};
  return IntervalSet({*lo, *hi});
}

bool horizontal_hits_polygon(const Polygon& poly, const Rational& k, const Rational& b)
{
  const Point2 left{-k, b}, right{k, b};
  const auto& vs = poly.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (closed_segments_intersect(left, right, vs[i], vs[(i + 1) % vs.size()])) return true;
  return in_closed_polygon(left, vs);
}

/// Closed height ranges in which [-k, k] x {b} meets the polygon.
std::vector<std::pair<Rational, Rational>> polygon_blocked_runs(const Polygon& poly, const Rational& k)
{
  std::vector<Rational> crit;
  const auto& vs = poly.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Point2& a = vs[i];
    const Point2& b = vs[(i + 1) % vs.size()];
    crit.push_back(a.x2);
    if (a.x1 == b.x1) continue;
    for (const Rational& x : {Rational(-k), k}) {
      if (std::min(a.x1, b.x1) <= x && x <= std::max(a.x1, b.x1))
        crit.push_back(a.x2 + (x - a.x1) * (b.x2 - a.x2) / (b.x1 - a.x1));
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  std::vector<Rational> samples;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (i > 0) samples.push_back((crit[i - 1] + crit[i]) / 2);
    samples.push_back(crit[i]);
  }

  std::vector<std::pair<Rational, Rational>> runs;
  std::optional<Rational> start;
  Rational last;
  for (const auto& b : samples) {
    if (horizontal_hits_polygon(poly, k, b)) {
      if (!start) start = b;
      last = b;
    } else if (start) {
      runs.emplace_back(*start, last);
      start.reset();
    }
  }
  if (start) runs.emplace_back(*start, last);
  return runs;
}

Rational attached_line(const Bump& bump, const ConvexBase& base)
{
  if (const auto* strip = std::get_if<Strip>(&base)) return bump.side == BumpSide::top ? strip->hi : strip->lo;
  return std::get<HalfPlane>(base).lo;
}

}  // namespace

IntervalSet admissible_heights(const Domain& domain, long k_int)
{
  if (k_int < 1) throw Error(Errc::invalid_argument, "scale k must be positive");
  const Rational k(k_int);

  IntervalSet set;
  if (const auto* strip = std::get_if<Strip>(&domain.base()))
    set = IntervalSet({strip->lo, strip->hi});
  else if (const auto* half = std::get_if<HalfPlane>(&domain.base()))
    set = IntervalSet({half->lo, std::nullopt});
  else
    set = polygon_base_heights(std::get<ConvexPolygon>(domain.base()), k);

  for (const auto& o : domain.obstacles()) {
    if (set.empty()) break;
    if (const auto* slit = std::get_if<VerticalSlit>(&o)) {
      if (abs_of(slit->x1) <= k) set.subtract_closed(slit->lo, slit->hi);
    } else if (const auto* poly = std::get_if<Polygon>(&o)) {
      for (const auto& [lo, hi] : polygon_blocked_runs(*poly, k)) set.subtract_closed(lo, hi);
    } else {
      const auto& bump = std::get<Bump>(o);
      const Rational xa = std::max(Rational(bump.x0 - bump.w), Rational(-k));
      const Rational xb = std::min(Rational(bump.x0 + bump.w), k);
      if (xa > xb) continue;
      const double reach = detail::bump_height_range(bump, to_double(xa), to_double(xb)).second + domain.bump_margin();
      const Rational line = attached_line(bump, domain.base());
      // Round the reach outward before making it exact.
      const Rational reach_q = from_double(std::nextafter(reach, INFINITY));
      if (bump.side == BumpSide::top)
        set.subtract_closed(line - reach_q, line);
      else
        set.subtract_closed(line, line + reach_q);
    }
  }
  return set;
}

LoebReport loeb_scan(const Domain& domain, const Point2& a, long k_max)
{
  if (!contains(domain, a)) throw Error(Errc::point_not_in_domain, "base point is not in the domain");
  if (k_max < 1) throw Error(Errc::invalid_argument, "k_max must be positive");
  LoebReport report;
  report.a = a;
  report.k_max = k_max;
  report.loeb_normalized = is_loeb_normalized(domain.base());
  for (long k = 1; k <= k_max; ++k) {
    LoebRecord rec{k, admissible_heights(domain, k), std::nullopt};
    rec.gap = rec.admissible.distance_to(a.x2);
    const bool ok = rec.gap && *rec.gap <= ratio(1, k);
    if (!ok && report.verdict == LoebVerdict::condition_holds_up_to_kmax) {
      report.verdict = LoebVerdict::condition_fails_at;
      report.failing_k = k;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Affine witnesses

WitnessVerdict verify_affine_witness(const Domain& domain, const AffineWitness& w)
{
  if (w.k < 1) throw Error(Errc::invalid_argument, "scale k must be positive");
  const Rational k(w.k);
  const Rational spread = k * abs_of(w.c) + abs_of(Rational(w.d - w.a.x2));
  if (spread > 1 / k) {
    WitnessVerdict v;
    v.failure = WitnessFailure::bound_violation;
    v.detail = "k|c| + |d - a2| = " + to_string(spread) + " exceeds 1/k = " + to_string(Rational(1 / k));
    return v;
  }
  const Segment2 graph{{-k, -w.c * k + w.d}, {k, w.c * k + w.d}, Openness::closed};
  const auto seg = segment_in_domain(domain, graph);
  if (seg.inside) return {};
  WitnessVerdict v;
  v.failure = WitnessFailure::containment_violation;
  v.point = seg.witness;
  v.t = seg.witness->x1;
  v.detail = "graph leaves the domain at (" + to_string(seg.witness->x1) + ", " + to_string(seg.witness->x2) + ")";
  return v;
}

namespace {

struct Candidate {
  Rational c;
  Rational d;
};

/// Orders by |c|, then |d - a2|, then by the signed values for determinism.
void sort_candidates(std::vector<Candidate>& cands, const Rational& a2)
{
  std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
    const Rational ax = abs_of(x.c), ay = abs_of(y.c);
    if (ax != ay) return ax < ay;
    const Rational dx = abs_of(Rational(x.d - a2)), dy = abs_of(Rational(y.d - a2));
    if (dx != dy) return dx < dy;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Candidate& x, const Candidate& y) { return x.c == y.c && x.d == y.d; }),
              cands.end());
}

std::vector<Point2> obstacle_anchor_points(const Domain& domain)
{
  std::vector<Point2> pts;
  for (const auto& o : domain.obstacles()) {
    if (const auto* slit = std::get_if<VerticalSlit>(&o)) {
      pts.push_back({slit->x1, slit->lo});
      pts.push_back({slit->x1, slit->hi});
    } else if (const auto* poly = std::get_if<Polygon>(&o)) {
      for (const auto& v : poly->vertices) pts.push_back(v);
    } else {
      const auto& bump = std::get<Bump>(o);
      const Rational line = attached_line(bump, domain.base());
      const Rational peak = bump.side == BumpSide::top ? Rational(line - bump.h) : Rational(line + bump.h);
      pts.push_back({bump.x0, peak});
      pts.push_back({bump.x0 - bump.w, line});
      pts.push_back({bump.x0 + bump.w, line});
    }
  }
  return pts;
}

bool base_spans(const ConvexBase& base, const Rational& k)
{
  const auto* poly = std::get_if<ConvexPolygon>(&base);
  if (!poly) return true;
  Rational lo = poly->vertices.front().x1, hi = lo;
  for (const auto& v : poly->vertices) {
    lo = std::min(lo, v.x1);
    hi = std::max(hi, v.x1);
  }
  return lo < -k && k < hi;
}

}  // namespace

std::optional<AffineWitness> find_affine_witness(const Domain& domain, const Point2& a, long k_int,
                                                 const WitnessSearchOptions& options)
{
  if (!contains(domain, a)) throw Error(Errc::point_not_in_domain, "base point is not in the domain");
  if (k_int < 1) throw Error(Errc::invalid_argument, "scale k must be positive");
  const Rational k(k_int);
  // A segment over [-k, k] needs the base to extend past both ends.
  if (!base_spans(domain.base(), k)) return std::nullopt;

  const auto try_candidates = [&](std::vector<Candidate>& cands) -> std::optional<AffineWitness> {
    sort_candidates(cands, a.x2);
    for (const auto& cand : cands) {
      AffineWitness w{k_int, cand.c, cand.d, a};
      if (verify_affine_witness(domain, w).valid()) return w;
    }
    return std::nullopt;
  };
  const Rational radius = 1 / k;
  const auto in_diamond = [&](const Rational& c, const Rational& d) {
    return k * abs_of(c) + abs_of(Rational(d - a.x2)) <= radius;
  };

  // (1) The horizontal line through a.
  std::vector<Candidate> first{{0, a.x2}};
  if (auto w = try_candidates(first)) return w;

  // (2) Lines through pairs of vertically perturbed obstacle anchor points.
  const Rational eps = Rational(1, 64) / (k * k * k);
  std::vector<Point2> anchors;
  for (const auto& p : obstacle_anchor_points(domain))
    for (const Rational& off : {Rational(-eps), Rational(0), eps}) anchors.push_back({p.x1, p.x2 + off});
  std::vector<Candidate> pairs;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const Point2& p = anchors[i];
      const Point2& r = anchors[j];
      if (p.x1 == r.x1) continue;
      Rational c = (r.x2 - p.x2) / (r.x1 - p.x1);
      Rational d = p.x2 - c * p.x1;
      if (in_diamond(c, d)) pairs.push_back({std::move(c), std::move(d)});
    }
  }
  if (auto w = try_candidates(pairs)) return w;

  // (3) Grid over the diamond.
  const int n = std::max(options.grid, 2);
  std::vector<Candidate> grid;
  for (int i = 0; i < n; ++i) {
    const Rational fc = ratio(2 * i, n - 1) - 1;
    for (int j = 0; j < n; ++j) {
      const Rational fd = ratio(2 * j, n - 1) - 1;
      if (abs_of(fc) + abs_of(fd) > 1) continue;
      grid.push_back({fc / (k * k), a.x2 + fd / k});
    }
  }
  return try_candidates(grid);
}

// ---------------------------------------------------------------------------
// Curve witnesses

namespace {

WitnessVerdict containment_failure(const Polynomial& gamma, const Rational& t, std::string why)
{
  WitnessVerdict v;
  v.failure = WitnessFailure::containment_violation;
  v.t = t;
  v.point = Point2{t, gamma(t)};
  v.detail = std::move(why);
  return v;
}

/// e1 (gamma(t) - a2) - e2 (t - a1): zero where the graph meets the line through a, b.
Polynomial line_crossing(const Polynomial& gamma, const Point2& a, const Point2& b)
{
  const Vec2 e = b - a;
  return e.x1 * (gamma - Polynomial::constant(a.x2)) - e.x2 * (Polynomial::identity() - Polynomial::constant(a.x1));
}

detail::Box enclose_graph(const Polynomial& gamma, double ta, double tb)
{
  double lo = 0.0, hi = 0.0;
  for (auto it = gamma.coeffs().rbegin(); it != gamma.coeffs().rend(); ++it) {
    const double p[4] = {lo * ta, lo * tb, hi * ta, hi * tb};
    const double c = to_double(*it);
    lo = *std::min_element(p, p + 4) + c;
    hi = *std::max_element(p, p + 4) + c;
    const double slop = 1e-14 * (std::abs(lo) + std::abs(hi)) + 1e-300;
    lo -= slop;
    hi += slop;
  }
  return {ta, tb, lo, hi};
}

std::string t_text(const Rational& t)
{
  return to_string(t);
}

}  // namespace

WitnessVerdict verify_curve_witness(const Domain& domain, const CurveWitness& w)
{
  if (w.k < 1) throw Error(Errc::invalid_argument, "scale k must be positive");
  const Polynomial gamma(w.coeffs);
  if (gamma.degree() > kMaxCurveDegree)
    throw Error(Errc::degree_too_high, "curve degree " + std::to_string(gamma.degree()) + " exceeds 8");
  const Rational k(w.k);
  const Rational lo = -k, hi = k;

  // |gamma - a2| <= 1/k  <=>  1/k - (gamma - a2) >= 0 and 1/k + (gamma - a2) >= 0.
  const Polynomial shifted = gamma - Polynomial::constant(w.a.x2);
  const Polynomial bound = Polynomial::constant(1 / k);
  for (const Polynomial& p : {bound - shifted, bound + shifted}) {
    if (auto t = negative_point(p, lo, hi)) {
      WitnessVerdict v;
      v.failure = WitnessFailure::bound_violation;
      v.t = *t;
      v.detail = "|gamma(t) - a2| exceeds 1/k at t = " + t_text(*t);
      return v;
    }
  }

  // Base: the graph may not touch a boundary line, and one point must be inside.
  const ConvexBase& base = domain.base();
  std::vector<std::pair<Point2, Point2>> base_lines;
  if (const auto* strip = std::get_if<Strip>(&base)) {
    base_lines.push_back({{0, strip->lo}, {1, strip->lo}});
    base_lines.push_back({{0, strip->hi}, {1, strip->hi}});
  } else if (const auto* half = std::get_if<HalfPlane>(&base)) {
    base_lines.push_back({{0, half->lo}, {1, half->lo}});
  } else {
    const auto& vs = std::get<ConvexPolygon>(base).vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) base_lines.push_back({vs[i], vs[(i + 1) % vs.size()]});
  }
  for (const auto& [a, b] : base_lines) {
    if (a.x1 == b.x1) {
      if (lo <= a.x1 && a.x1 <= hi) return containment_failure(gamma, a.x1, "graph crosses a base edge line");
      continue;
    }
    if (auto t = root_in(line_crossing(gamma, a, b), lo, hi))
      return containment_failure(gamma, *t, "graph meets the base boundary at t = " + t_text(*t));
  }
  if (!in_base_interior(base, {lo, gamma(lo)})) return containment_failure(gamma, lo, "graph lies outside the base");

  for (const auto& o : domain.obstacles()) {
    if (const auto* slit = std::get_if<VerticalSlit>(&o)) {
      if (abs_of(slit->x1) > k) continue;
      const Rational y = gamma(slit->x1);
      if (slit->lo <= y && y <= slit->hi)
        return containment_failure(gamma, slit->x1, "graph hits the slit at x1 = " + to_string(slit->x1));
    } else if (const auto* poly = std::get_if<Polygon>(&o)) {
      const auto& vs = poly->vertices;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const Point2& a = vs[i];
        const Point2& b = vs[(i + 1) % vs.size()];
        if (a.x1 == b.x1) {
          if (a.x1 < lo || a.x1 > hi) continue;
          const Rational y = gamma(a.x1);
          if (std::min(a.x2, b.x2) <= y && y <= std::max(a.x2, b.x2))
            return containment_failure(gamma, a.x1, "graph hits a polygon edge");
          continue;
        }
        const Rational from = std::max(std::min(a.x1, b.x1), lo);
        const Rational to = std::min(std::max(a.x1, b.x1), hi);
        if (from > to) continue;
        if (auto t = root_in(line_crossing(gamma, a, b), from, to))
          return containment_failure(gamma, *t, "graph hits a polygon edge at t = " + t_text(*t));
      }
      if (in_closed_polygon({lo, gamma(lo)}, vs)) return containment_failure(gamma, lo, "graph runs inside a polygon");
    } else {
      const auto& bump = std::get<Bump>(o);
      detail::CurveEnclosure curve{[&](double ta, double tb) { return enclose_graph(gamma, ta, tb); },
                                   [&](double t) { return std::pair{t, gamma(t)}; }};
      const auto scan = detail::scan_bump(bump, base, domain.bump_margin(), to_double(lo), to_double(hi), curve);
      if (!scan.clear) {
        const Rational t = from_double(scan.t_hit);
        return containment_failure(gamma, t, "graph comes within the bump margin at t = " + t_text(t));
      }
    }
  }
  return {};
}

}  // namespace tubehyp
