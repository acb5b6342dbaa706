#include "tubehyp/report.hpp"

#include "tubehyp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tubehyp {

using nlohmann::json;

std::string report_json(const ReportEnvelope& envelope)
{
  json doc;
  doc["tool_version"] = envelope.tool_version;
  doc["command"] = envelope.command;
  doc["domain_canonical"] = envelope.domain_canonical;
  doc["payload"] = envelope.payload;
  doc["exit_code_hint"] = envelope.exit_code_hint;
  return doc.dump(2) + "\n";
}

namespace {

json number_or_inf(double x)
{
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

}  // namespace

const char* loeb_verdict_name(LoebVerdict v)
{
  return v == LoebVerdict::condition_fails_at ? "condition_fails_at" : "condition_holds_up_to_kmax";
}

const char* probe_verdict_name(ProbeVerdict v)
{
  return v == ProbeVerdict::unbounded_growth_evidence ? "unbounded_growth_evidence" : "no_obstruction_found";
}

const char* witness_failure_name(WitnessFailure f)
{
  switch (f) {
    case WitnessFailure::none: return "none";
    case WitnessFailure::bound_violation: return "bound_violation";
    case WitnessFailure::containment_violation: return "containment_violation";
  }
  return "unknown";
}

json to_json(const Point2& p) { return json::array({to_string(p.x1), to_string(p.x2)}); }

json to_json(const IntervalSet& set)
{
  json out = json::array();
  for (const auto& iv : set.intervals()) out.push_back({to_string(iv.lo), iv.hi ? to_string(*iv.hi) : "inf"});
  return out;
}

json to_json(const LoebReport& report)
{
  json records = json::array();
  for (const auto& r : report.records)
    records.push_back({{"k", r.k}, {"admissible", to_json(r.admissible)}, {"gap", r.gap ? to_string(*r.gap) : "inf"}});
  json out{{"a", to_json(report.a)},
           {"k_max", report.k_max},
           {"loeb_normalized", report.loeb_normalized},
           {"verdict", loeb_verdict_name(report.verdict)},
           {"records", std::move(records)}};
  if (report.verdict == LoebVerdict::condition_fails_at) out["k"] = report.failing_k;
  return out;
}

json to_json(const AffineWitness& w)
{
  return {{"k", w.k}, {"c", to_string(w.c)}, {"d", to_string(w.d)}, {"a", to_json(w.a)}};
}

json to_json(const WitnessVerdict& v)
{
  json out{{"valid", v.valid()}, {"reason", witness_failure_name(v.failure)}};
  if (v.t) out["t"] = to_string(*v.t);
  if (v.point) out["point"] = to_json(*v.point);
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

json to_json(const HoloAffineMap& f)
{
  const auto c = [](const Complex& z) { return json::array({to_string(z.re), to_string(z.im)}); };
  return {{"p", c(f.p)}, {"alpha", c(f.alpha)}, {"q", c(f.q)}, {"beta", c(f.beta)}, {"norm", derivative_norm(f)}};
}

json to_json(const CertificateVerdict& v)
{
  json out{{"valid", v.valid()}, {"growth_slope", number_or_inf(v.growth_slope)}};
  if (!v.valid()) {
    out["reason"] = certificate_failure_name(v.failure);
    out["k"] = v.k;
    out["detail"] = v.detail;
  }
  return out;
}

json to_json(const ProbeReport& report)
{
  json records = json::array();
  for (const auto& r : report.records)
    records.push_back({{"k", r.k}, {"best_map", to_json(r.best_map)}, {"best_norm", number_or_inf(r.best_norm)}});
  return {{"a", to_json(report.a)},
          {"records", std::move(records)},
          {"bound_estimate_M", report.bound_estimate_M ? number_or_inf(*report.bound_estimate_M) : json("inf")},
          {"verdict", probe_verdict_name(report.verdict)},
          {"slope", number_or_inf(report.slope)},
          {"evidence", "affine-family evidence; growth requires slope >= 0.25, half the k/2 rate of witness disks"}};
}

// ---------------------------------------------------------------------------
// SVG

namespace {

/// Fixed 9-decimal formatting, independent of the locale.
std::string fmt(double x)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 9);
  std::string s(buf, res.ptr);
  if (s == "-0.000000000") s = "0.000000000";
  return s;
}

struct Viewport {
  double x0, x1, y0, y1;
};

/// SVG coordinates put x2 upward by negating it.
std::string pt(double x, double y) { return fmt(x) + "," + fmt(-y); }

std::string polyline_path(const std::vector<std::pair<double, double>>& pts, bool closed)
{
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M " : " L ") + pt(pts[i].first, pts[i].second);
  if (closed) d += " Z";
  return d;
}

std::vector<std::pair<double, double>> ellipse_points(const Ellipse2& e)
{
  std::vector<std::pair<double, double>> pts;
  const double cx = to_double(e.center.x1), cy = to_double(e.center.x2);
  const double ux = to_double(e.u.x1), uy = to_double(e.u.x2), vx = to_double(e.v.x1), vy = to_double(e.v.x2);
  for (int i = 0; i < 128; ++i) {
    const double th = 2.0 * M_PI * i / 128.0;
    pts.emplace_back(cx + std::cos(th) * ux + std::sin(th) * vx, cy + std::cos(th) * uy + std::sin(th) * vy);
  }
  return pts;
}

}  // namespace

std::string render_svg(const Domain& domain, const std::vector<Overlay>& overlays, const RenderOptions& options)
{
  const ConvexBase& base = domain.base();
  // Vertical range from the base; horizontal range from everything drawn.
  Viewport vp{0, 0, 0, 0};
  bool have_x = false;
  const auto add_x = [&](double x) {
    if (!have_x) {
      vp.x0 = vp.x1 = x;
      have_x = true;
    }
    vp.x0 = std::min(vp.x0, x);
    vp.x1 = std::max(vp.x1, x);
  };
  double base_lo = 0, base_hi = 0;
  if (const auto* strip = std::get_if<Strip>(&base)) {
    base_lo = to_double(strip->lo);
    base_hi = to_double(strip->hi);
  } else if (const auto* half = std::get_if<HalfPlane>(&base)) {
    if (!options.clip) throw Error(Errc::unbounded_viewport, "half-plane base needs a clip height");
    base_lo = to_double(half->lo);
    base_hi = to_double(*options.clip);
    if (!(base_hi > base_lo)) throw Error(Errc::unbounded_viewport, "clip height must lie above the half-plane edge");
  } else {
    const auto& vs = std::get<ConvexPolygon>(base).vertices;
    base_lo = base_hi = to_double(vs.front().x2);
    for (const auto& v : vs) {
      add_x(to_double(v.x1));
      base_lo = std::min(base_lo, to_double(v.x2));
      base_hi = std::max(base_hi, to_double(v.x2));
    }
  }
  for (const auto& o : domain.obstacles()) {
    const auto [lo, hi] = obstacle_x_extent(o);
    add_x(to_double(lo));
    add_x(to_double(hi));
  }
  for (const auto& ov : overlays) {
    if (const auto* w = std::get_if<WitnessLineOverlay>(&ov)) {
      add_x(static_cast<double>(-w->k));
      add_x(static_cast<double>(w->k));
    } else if (const auto* f = std::get_if<FootprintOverlay>(&ov)) {
      for (const auto& [x, y] : ellipse_points(re_footprint(f->map))) add_x(x);
    } else {
      add_x(to_double(std::get<PointOverlay>(ov).a.x1));
    }
  }
  if (!have_x) add_x(0.0);
  vp.y0 = base_lo;
  vp.y1 = base_hi;
  // Strips and half-planes extend sideways: show at least the height in width.
  if (!std::holds_alternative<ConvexPolygon>(base)) {
    const double mid = 0.5 * (vp.x0 + vp.x1);
    const double half = std::max(0.5 * (vp.x1 - vp.x0), 0.5 * (base_hi - base_lo));
    vp.x0 = mid - half;
    vp.x1 = mid + half;
  }
  const double pad_x = 0.1 * (vp.x1 - vp.x0), pad_y = 0.1 * (vp.y1 - vp.y0);
  Viewport view{vp.x0 - pad_x, vp.x1 + pad_x, vp.y0 - pad_y, vp.y1 + pad_y};
  const double stroke = 0.004 * std::max(view.x1 - view.x0, view.y1 - view.y0);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(view.x0) << " " << fmt(-view.y1) << " "
      << fmt(view.x1 - view.x0) << " " << fmt(view.y1 - view.y0) << "\">\n";
  out << "<title>" << domain.name() << "</title>\n";
  out << "<g stroke-width=\"" << fmt(stroke) << "\">\n";

  // Base.
  if (const auto* poly = std::get_if<ConvexPolygon>(&base)) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : poly->vertices) pts.emplace_back(to_double(v.x1), to_double(v.x2));
    out << "<path class=\"base\" fill=\"#e8eef8\" stroke=\"#5070a0\" d=\"" << polyline_path(pts, true) << "\"/>\n";
  } else {
    const double x0 = view.x0, x1 = view.x1;
    out << "<path class=\"base\" fill=\"#e8eef8\" stroke=\"none\" d=\""
        << polyline_path({{x0, base_lo}, {x1, base_lo}, {x1, base_hi}, {x0, base_hi}}, true) << "\"/>\n";
    out << "<path class=\"base-edge\" fill=\"none\" stroke=\"#5070a0\" d=\"" << polyline_path({{x0, base_lo}, {x1, base_lo}}, false)
        << "\"/>\n";
    if (std::holds_alternative<Strip>(base))
      out << "<path class=\"base-edge\" fill=\"none\" stroke=\"#5070a0\" d=\""
          << polyline_path({{x0, base_hi}, {x1, base_hi}}, false) << "\"/>\n";
  }

  // Obstacles, already in canonical order.
  for (const auto& o : domain.obstacles()) {
    if (const auto* slit = std::get_if<VerticalSlit>(&o)) {
      const double x = to_double(slit->x1);
      out << "<path class=\"slit\" fill=\"none\" stroke=\"#202020\" d=\""
          << polyline_path({{x, to_double(slit->lo)}, {x, to_double(slit->hi)}}, false) << "\"/>\n";
    } else if (const auto* poly = std::get_if<Polygon>(&o)) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& v : poly->vertices) pts.emplace_back(to_double(v.x1), to_double(v.x2));
      out << "<path class=\"obstacle\" fill=\"#808080\" stroke=\"#202020\" d=\"" << polyline_path(pts, true) << "\"/>\n";
    } else {
      const auto& bump = std::get<Bump>(o);
      const double line = bump.side == BumpSide::top
                              ? to_double(std::holds_alternative<Strip>(base) ? std::get<Strip>(base).hi : Rational(0))
                              : to_double(std::holds_alternative<Strip>(base) ? std::get<Strip>(base).lo
                                                                              : std::get<HalfPlane>(base).lo);
      const double sign = bump.side == BumpSide::top ? -1.0 : 1.0;
      const double x0 = to_double(bump.x0), w = to_double(bump.w);
      std::vector<std::pair<double, double>> pts;
      for (int i = 0; i <= 200; ++i) {
        const double x = x0 - w + 2.0 * w * i / 200.0;
        pts.emplace_back(x, line + sign * bump_height(bump, x));
      }
      out << "<path class=\"bump\" fill=\"#808080\" stroke=\"#202020\" d=\"" << polyline_path(pts, true) << "\"/>\n";
    }
  }

  // Overlays, sorted by their text so the order of the list does not matter.
  std::vector<std::string> items;
  for (const auto& ov : overlays) {
    std::ostringstream s;
    if (const auto* w = std::get_if<WitnessLineOverlay>(&ov)) {
      const double k = static_cast<double>(w->k), c = to_double(w->c), d = to_double(w->d);
      s << "<path class=\"witness\" data-label=\"Gamma_" << w->k << "\" fill=\"none\" stroke=\"#c03020\" d=\""
        << polyline_path({{-k, -c * k + d}, {k, c * k + d}}, false) << "\"><title>Gamma_" << w->k << "</title></path>\n";
    } else if (const auto* f = std::get_if<FootprintOverlay>(&ov)) {
      s << "<path class=\"footprint\" fill=\"none\" stroke=\"#208040\" d=\""
        << polyline_path(ellipse_points(re_footprint(f->map)), true) << "\"/>\n";
    } else {
      const auto& a = std::get<PointOverlay>(ov).a;
      s << "<circle class=\"point\" fill=\"#c03020\" cx=\"" << fmt(to_double(a.x1)) << "\" cy=\"" << fmt(-to_double(a.x2))
        << "\" r=\"" << fmt(2.0 * stroke) << "\"/>\n";
    }
    items.push_back(s.str());
  }
  std::sort(items.begin(), items.end());
  for (const auto& item : items) out << item;

  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace tubehyp
