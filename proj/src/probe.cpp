#include "tubehyp/probe.hpp"

#include "tubehyp/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace tubehyp {

void validate(const ProbeConfig& cfg)
{
  if (cfg.multistarts < 1) throw Error(Errc::bad_params, "multistarts must be at least 1");
  if (cfg.pattern_steps < 0) throw Error(Errc::bad_params, "pattern_steps must be nonnegative");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0)) throw Error(Errc::bad_params, "shrink must lie in (0, 1)");
  if (!(cfg.neighborhood_radius >= 0.0) || !std::isfinite(cfg.neighborhood_radius))
    throw Error(Errc::bad_params, "neighborhood_radius must be a finite nonnegative number");
  for (long k : cfg.scale_list)
    if (k < 1) throw Error(Errc::bad_params, "scales must be positive");
}

namespace {

using Params = std::array<double, 4>;  // alpha.re, alpha.im, beta.re, beta.im

double objective(const Params& x)
{
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

double max_abs(const Params& x)
{
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

class Search {
 public:
  Search(const Domain& domain, double extent) : domain_(domain), extent_sq_(from_double(extent) * from_double(extent)) {}

  HoloAffineMap map_at(const Point2& center, const Params& x) const
  {
    HoloAffineMap f;
    f.p = {center.x1, 0};
    f.q = {center.x2, 0};
    f.alpha = {from_double(x[0]), from_double(x[1])};
    f.beta = {from_double(x[2]), from_double(x[3])};
    return f;
  }

  bool feasible(const Point2& center, const Params& x) const
  {
    for (double v : x)
      if (!std::isfinite(v)) return false;
    const HoloAffineMap f = map_at(center, x);
    if (f.alpha.re * f.alpha.re + f.alpha.im * f.alpha.im > extent_sq_) return false;
    return ellipse_in_domain(domain_, re_footprint(f));
  }

  /// Largest s in [0, cap] (to bisection accuracy) with s * dir feasible.
  Params extend_along(const Point2& center, const Params& dir, double cap) const
  {
    const auto at = [&](double s) { return Params{dir[0] * s, dir[1] * s, dir[2] * s, dir[3] * s}; };
    if (feasible(center, at(cap))) return at(cap);
    double lo = 0.0, hi = cap;
    for (int i = 0; i < 64 && hi - lo > 1e-15 * cap; ++i) {
      const double mid = 0.5 * (lo + hi);
      (feasible(center, at(mid)) ? lo : hi) = mid;
    }
    return at(lo);
  }

  /// Coordinate pattern search; only moves that increase |alpha|^2 + |beta|^2 are tried.
  Params climb(const Point2& center, Params x, const ProbeConfig& cfg) const
  {
    double step = 0.25 * std::max(1.0, max_abs(x));
    for (int it = 0; it < cfg.pattern_steps; ++it) {
      bool moved = false;
      for (std::size_t i = 0; i < 4; ++i) {
        Params y = x;
        y[i] += x[i] < 0.0 ? -step : step;
        if (feasible(center, y)) {
          x = y;
          moved = true;
        }
      }
      if (!moved) {
        step *= cfg.shrink;
        if (step < 1e-12 * std::max(1.0, max_abs(x))) break;
      }
    }
    return x;
  }

 private:
  const Domain& domain_;
  Rational extent_sq_;
};

Params params_of(const HoloAffineMap& f)
{
  return {to_double(f.alpha.re), to_double(f.alpha.im), to_double(f.beta.re), to_double(f.beta.im)};
}

struct Start {
  Point2 center;
  Params x;
};

}  // namespace

ProbeResult maximize_derivative_at(const Domain& domain, const Point2& a, double extent, const ProbeConfig& cfg,
                                   const std::vector<HoloAffineMap>& extra_seeds)
{
  validate(cfg);
  if (!contains(domain, a)) throw Error(Errc::point_not_in_domain, "base point is not in the domain");
  if (!(extent >= 0.0) || !std::isfinite(extent)) throw Error(Errc::bad_params, "extent must be finite and nonnegative");

  const Search search(domain, extent);
  const double cap = std::max(extent, 1.0) * 1024.0;
  std::vector<Start> starts;

  // Degenerate horizontal and vertical segments through a.
  starts.push_back({a, search.extend_along(a, {1, 0, 0, 0}, std::min(cap, extent))});
  starts.push_back({a, search.extend_along(a, {0, 0, 1, 0}, cap)});

  // The explicit family z -> (k z, z / k + 1) centered at (0, 1).
  if (a == Point2{0, 1}) {
    std::optional<Params> best_family;
    for (long j = 1; j <= static_cast<long>(std::floor(extent)); ++j) {
      const Params x = params_of(example1_map(j));
      if (search.feasible(a, x)) best_family = x;
    }
    if (best_family) starts.push_back({a, *best_family});
  }

  for (const auto& seed : extra_seeds) {
    const Point2 center{seed.p.re, seed.q.re};
    const Params x = params_of(seed);
    if (contains(domain, center) && search.feasible(center, x)) starts.push_back({center, x});
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double spread = std::max(extent, 1.0);
  for (int s = 0; s < cfg.multistarts; ++s) {
    Point2 center = a;
    if (cfg.neighborhood_radius > 0.0) {
      double u, v;
      do {
        u = unit(rng);
        v = unit(rng);
      } while (u * u + v * v > 1.0);
      const Point2 moved{a.x1 + from_double(u * cfg.neighborhood_radius), a.x2 + from_double(v * cfg.neighborhood_radius)};
      if (contains(domain, moved)) center = moved;
    }
    Params x{unit(rng) * spread, unit(rng) * spread, unit(rng) * spread, unit(rng) * spread};
    int halvings = 0;
    while (!search.feasible(center, x) && halvings < 60) {
      for (double& v : x) v *= 0.5;
      ++halvings;
    }
    if (halvings == 60) x = {0, 0, 0, 0};
    starts.push_back({center, x});
  }

  // Ordered reduction: larger objective wins, earlier start on ties.
  ProbeResult best;
  double best_obj = -1.0;
  for (const auto& start : starts) {
    const Params x = search.climb(start.center, start.x, cfg);
    const double obj = objective(x);
    if (obj > best_obj) {
      best_obj = obj;
      best.map = search.map_at(start.center, x);
    }
  }
  best.norm = derivative_norm(best.map);
  return best;
}

ProbeReport probe_scales(const Domain& domain, const Point2& a, const ProbeConfig& cfg)
{
  validate(cfg);
  if (cfg.scale_list.empty()) throw Error(Errc::bad_params, "scale list is empty");
  if (!contains(domain, a)) throw Error(Errc::point_not_in_domain, "base point is not in the domain");

  ProbeReport report;
  report.a = a;
  std::vector<HoloAffineMap> carried;
  for (long k : cfg.scale_list) {
    const ProbeResult r = maximize_derivative_at(domain, a, static_cast<double>(k), cfg, carried);
    report.records.push_back({k, r.map, r.norm});
    carried = {r.map};
  }

  double max_norm = 0.0;
  for (const auto& r : report.records) max_norm = std::max(max_norm, r.best_norm);

  if (report.records.size() >= 2) {
    double mk = 0.0, mn = 0.0;
    for (const auto& r : report.records) {
      mk += static_cast<double>(r.k);
      mn += r.best_norm;
    }
    mk /= static_cast<double>(report.records.size());
    mn /= static_cast<double>(report.records.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : report.records) {
      sxy += (static_cast<double>(r.k) - mk) * (r.best_norm - mn);
      sxx += (static_cast<double>(r.k) - mk) * (static_cast<double>(r.k) - mk);
    }
    report.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }

  // The largest scale's map is checked again before growth is claimed.
  const auto largest = std::max_element(report.records.begin(), report.records.end(),
                                        [](const ProbeRecord& x, const ProbeRecord& y) { return x.k < y.k; });
  const bool reverified = ellipse_in_domain(domain, re_footprint(largest->best_map));
  if (report.slope >= kGrowthEvidenceSlope && reverified) {
    report.verdict = ProbeVerdict::unbounded_growth_evidence;
  } else {
    report.verdict = ProbeVerdict::no_obstruction_found;
    report.bound_estimate_M = max_norm;
  }
  return report;
}

double kobayashi_upper_bound(const Domain& domain, const Point2& a, const Vec2& v, const ProbeConfig& cfg)
{
  validate(cfg);
  if (v.x1 == 0 && v.x2 == 0) throw Error(Errc::zero_vector, "direction vector is zero");
  if (cfg.scale_list.empty()) throw Error(Errc::bad_params, "scale list is empty");
  if (!contains(domain, a)) throw Error(Errc::point_not_in_domain, "base point is not in the domain");

  // A unimodular factor e^{i theta} on (alpha, beta) rotates the disk without
  // changing its footprint, so a real multiple of v covers every tilt.
  const double extent = static_cast<double>(*std::max_element(cfg.scale_list.begin(), cfg.scale_list.end()));
  const double v1 = to_double(v.x1), v2 = to_double(v.x2);
  const double len = std::hypot(v1, v2);
  const Search search(domain, std::numeric_limits<double>::max());
  const Params dir{v1 / len, 0, v2 / len, 0};
  const Params x = search.extend_along(a, dir, extent);
  const double n = derivative_norm(search.map_at(a, x));
  if (n == 0.0) return std::numeric_limits<double>::infinity();
  return len / n;
}

}  // namespace tubehyp
