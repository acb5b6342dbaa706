#include "tubehyp/certificate.hpp"

#include "tubehyp/dsl.hpp"
#include "tubehyp/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace tubehyp {

Ellipse2 re_footprint(const HoloAffineMap& f)
{
  // Re(alpha z) = alpha.re x - alpha.im y for z = x + iy.
  return {{f.p.re, f.q.re}, {f.alpha.re, f.beta.re}, {-f.alpha.im, -f.beta.im}};
}

Rational derivative_norm_sq(const HoloAffineMap& f)
{
  return f.alpha.re * f.alpha.re + f.alpha.im * f.alpha.im + f.beta.re * f.beta.re + f.beta.im * f.beta.im;
}

double derivative_norm(const HoloAffineMap& f) { return std::sqrt(to_double(derivative_norm_sq(f))); }

HoloAffineMap map_from_witness(const AffineWitness& w)
{
  if (w.k < 1) throw Error(Errc::invalid_witness, "witness scale must be positive");
  const Rational k(w.k);
  if (k * abs_of(w.c) + abs_of(Rational(w.d - w.a.x2)) > 1 / k)
    throw Error(Errc::invalid_witness, "witness violates k|c| + |d - a2| <= 1/k", w.k);
  HoloAffineMap f;
  f.p = {w.a.x1, 0};
  f.alpha = {k / 2, 0};
  f.q = {w.c * w.a.x1 + w.d, 0};
  f.beta = {w.c * k / 2, 0};
  return f;
}

HoloAffineMap example1_map(long k)
{
  if (k < 1) throw Error(Errc::invalid_argument, "scale k must be positive");
  HoloAffineMap f;
  f.p = {0, 0};
  f.alpha = {k, 0};
  f.q = {1, 0};
  f.beta = {ratio(1, k), 0};
  return f;
}

namespace {

long containment_threshold(const Point2& a, long smallest_k)
{
  const Rational c = ceil_of(2 * abs_of(a.x1));
  return std::max(c.get_num().get_si(), smallest_k);
}

}  // namespace

Certificate build_certificate(const Domain& domain, const Point2& a, const CertificateSource& source)
{
  Certificate cert{domain, a, {}, 1};
  if (const auto* list = std::get_if<WitnessListSource>(&source)) {
    if (list->witnesses.empty()) throw Error(Errc::empty_source, "witness list is empty");
    for (const auto& w : list->witnesses) {
      if (!(w.a == a)) throw Error(Errc::witness_invalid, "witness base point differs from the certificate's", w.k);
      const auto verdict = verify_affine_witness(domain, w);
      if (!verdict.valid())
        throw Error(Errc::witness_invalid, "witness at k = " + std::to_string(w.k) + ": " + verdict.detail, w.k);
      cert.entries.push_back({w.k, map_from_witness(w)});
    }
  } else {
    const auto& range = std::get<Example1Source>(source).range;
    if (range.lo < 1 || range.hi < range.lo) throw Error(Errc::empty_source, "empty scale range");
    for (long k = range.lo; k <= range.hi; ++k) cert.entries.push_back({k, example1_map(k)});
  }

  std::sort(cert.entries.begin(), cert.entries.end(),
            [](const CertificateEntry& x, const CertificateEntry& y) { return x.k < y.k; });
  for (std::size_t i = 1; i < cert.entries.size(); ++i)
    if (cert.entries[i].k == cert.entries[i - 1].k)
      throw Error(Errc::invalid_argument, "duplicate scale k = " + std::to_string(cert.entries[i].k), cert.entries[i].k);

  cert.k_min_containment = containment_threshold(a, cert.entries.front().k);
  for (const auto& e : cert.entries) {
    if (e.k < cert.k_min_containment) continue;
    if (!ellipse_in_domain(domain, re_footprint(e.map)))
      throw Error(Errc::containment_fails, "disk footprint leaves the domain at k = " + std::to_string(e.k), e.k);
  }
  return cert;
}

const char* certificate_failure_name(CertificateFailure f)
{
  switch (f) {
    case CertificateFailure::none: return "none";
    case CertificateFailure::too_few_entries: return "too_few_entries";
    case CertificateFailure::not_increasing: return "not_increasing";
    case CertificateFailure::containment_violation: return "containment_violation";
    case CertificateFailure::proximity_violation: return "proximity_violation";
    case CertificateFailure::norm_too_small: return "norm_too_small";
    case CertificateFailure::slope_too_small: return "slope_too_small";
  }
  return "unknown";
}

namespace {

CertificateVerdict failure(CertificateFailure f, long k, std::string detail)
{
  CertificateVerdict v;
  v.failure = f;
  v.k = k;
  v.detail = std::move(detail);
  return v;
}

double least_squares_slope(const std::vector<CertificateEntry>& entries)
{
  double mean_k = 0.0, mean_n = 0.0;
  for (const auto& e : entries) {
    mean_k += static_cast<double>(e.k);
    mean_n += derivative_norm(e.map);
  }
  mean_k /= static_cast<double>(entries.size());
  mean_n /= static_cast<double>(entries.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& e : entries) {
    const double dk = static_cast<double>(e.k) - mean_k;
    sxy += dk * (derivative_norm(e.map) - mean_n);
    sxx += dk * dk;
  }
  return sxy / sxx;
}

}  // namespace

CertificateVerdict verify_certificate(const Domain& domain, const Certificate& cert)
{
  const auto& entries = cert.entries;
  if (entries.size() < 2)
    return failure(CertificateFailure::too_few_entries, entries.empty() ? 0 : entries.front().k,
                   "a growth rate needs at least two entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].k < 1 || (i > 0 && entries[i].k <= entries[i - 1].k))
      return failure(CertificateFailure::not_increasing, entries[i].k, "scales must be positive and strictly increasing");
  }

  for (const auto& e : entries) {
    if (e.k < cert.k_min_containment) continue;
    const Rational k(e.k);
    if (!ellipse_in_domain(domain, re_footprint(e.map)))
      return failure(CertificateFailure::containment_violation, e.k,
                     "disk footprint leaves the domain at k = " + std::to_string(e.k));
    // |Re f(0) - a| <= |a1| / k^2 + 1/k, compared squared.
    const Rational dx = e.map.p.re - cert.a.x1;
    const Rational dy = e.map.q.re - cert.a.x2;
    const Rational tol = abs_of(cert.a.x1) / (k * k) + 1 / k;
    if (dx * dx + dy * dy > tol * tol)
      return failure(CertificateFailure::proximity_violation, e.k,
                     "disk center is farther than |a1|/k^2 + 1/k from the base point");
    if (derivative_norm_sq(e.map) < k * k / 4)
      return failure(CertificateFailure::norm_too_small, e.k, "||df(0)|| is below k/2");
  }

  const double slope = least_squares_slope(entries);
  if (!(slope >= kMinGrowthSlope)) {
    auto v = failure(CertificateFailure::slope_too_small, entries.back().k, "growth slope below 1/2");
    v.growth_slope = slope;
    return v;
  }
  CertificateVerdict v;
  v.growth_slope = slope;
  return v;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

Rational rational_field(const json& obj, const char* key)
{
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw Error(Errc::invalid_argument, std::string("certificate field '") + key + "' must be a rational string");
  try {
    return parse_rational(obj.at(key).get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::invalid_argument, std::string("certificate field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string certificate_to_json(const Certificate& cert)
{
  json doc;
  doc["domain"] = serialize_domain(cert.domain);
  doc["a"] = json::array({to_string(cert.a.x1), to_string(cert.a.x2)});
  doc["k_min_containment"] = cert.k_min_containment;
  json entries = json::array();
  for (const auto& e : cert.entries) {
    // Imaginary parts of p and q do not affect membership in the tube.
    entries.push_back({{"k", e.k},
                       {"p_re", to_string(e.map.p.re)},
                       {"alpha_re", to_string(e.map.alpha.re)},
                       {"alpha_im", to_string(e.map.alpha.im)},
                       {"q_re", to_string(e.map.q.re)},
                       {"beta_re", to_string(e.map.beta.re)},
                       {"beta_im", to_string(e.map.beta.im)}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_argument, std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::invalid_argument, "certificate must be a JSON object");
  if (!doc.contains("domain") || !doc["domain"].is_string())
    throw Error(Errc::invalid_argument, "certificate field 'domain' must be DSL text");
  Domain domain = parse_domain({doc["domain"].get<std::string>(), "<certificate>"});

  const json& a = doc.value("a", json());
  if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
    throw Error(Errc::invalid_argument, "certificate field 'a' must be two rational strings");
  json pair{{"x", a[0]}, {"y", a[1]}};
  Point2 point{rational_field(pair, "x"), rational_field(pair, "y")};

  if (!doc.contains("k_min_containment") || !doc["k_min_containment"].is_number_integer())
    throw Error(Errc::invalid_argument, "certificate field 'k_min_containment' must be an integer");
  const long k_min = doc["k_min_containment"].get<long>();

  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw Error(Errc::invalid_argument, "certificate field 'entries' must be an array");
  std::vector<CertificateEntry> entries;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("k") || !e["k"].is_number_integer())
      throw Error(Errc::invalid_argument, "certificate entry needs an integer 'k'");
    CertificateEntry entry;
    entry.k = e["k"].get<long>();
    entry.map.p = {rational_field(e, "p_re"), 0};
    entry.map.alpha = {rational_field(e, "alpha_re"), rational_field(e, "alpha_im")};
    entry.map.q = {rational_field(e, "q_re"), 0};
    entry.map.beta = {rational_field(e, "beta_re"), rational_field(e, "beta_im")};
    entries.push_back(std::move(entry));
  }
  return Certificate{std::move(domain), std::move(point), std::move(entries), k_min};
}

}  // namespace tubehyp
