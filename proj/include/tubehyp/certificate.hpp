#pragma once

// Affine holomorphic disks f(z) = (p + alpha z, q + beta z) into a tube T_D and
// finite certificates of non-hyperbolicity built from them.
//
// A disk lies in T_D iff the real part of its image lies in D; for an affine
// map that real part is an ellipse (possibly degenerate), see re_footprint.

#include "tubehyp/geometry.hpp"
#include "tubehyp/witness.hpp"

#include <string>
#include <variant>
#include <vector>

namespace tubehyp {

struct Complex {
  Rational re;
  Rational im;

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

struct HoloAffineMap {
  Complex p;
  Complex alpha;
  Complex q;
  Complex beta;

  friend bool operator==(const HoloAffineMap&, const HoloAffineMap&) = default;
};

/// Re f(Delta): center (p.re, q.re), u = (alpha.re, beta.re), v = (-alpha.im, -beta.im).
Ellipse2 re_footprint(const HoloAffineMap& f);

/// |alpha|^2 + |beta|^2, exact.
Rational derivative_norm_sq(const HoloAffineMap& f);
/// ||df(0)|| = sqrt(|alpha|^2 + |beta|^2).
double derivative_norm(const HoloAffineMap& f);

/// z -> (a1 + k z / 2, c (a1 + k z / 2) + d). Checks the witness bound only;
/// containment is a property of the domain and is checked by certificates.
/// Throws Error(invalid_witness).
HoloAffineMap map_from_witness(const AffineWitness& w);

/// z -> (k z, z / k + 1), centered at (0, 1).
HoloAffineMap example1_map(long k);

struct CertificateEntry {
  long k = 0;
  HoloAffineMap map;

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct Certificate {
  Domain domain;
  Point2 a;
  std::vector<CertificateEntry> entries;
  long k_min_containment = 1;
};

struct KRange {
  long lo = 1;
  long hi = 1;
};

struct WitnessListSource {
  std::vector<AffineWitness> witnesses;
};

struct Example1Source {
  KRange range;
};

using CertificateSource = std::variant<WitnessListSource, Example1Source>;

/// Assembles and checks a certificate. Throws Error with codes empty_source,
/// witness_invalid(k) or containment_fails(k).
Certificate build_certificate(const Domain& domain, const Point2& a, const CertificateSource& source);

enum class CertificateFailure {
  none,
  too_few_entries,
  not_increasing,
  containment_violation,
  proximity_violation,
  norm_too_small,
  slope_too_small,
};

const char* certificate_failure_name(CertificateFailure f);

struct CertificateVerdict {
  CertificateFailure failure = CertificateFailure::none;
  long k = 0;  // offending entry, when there is one
  double growth_slope = 0.0;
  std::string detail;

  bool valid() const noexcept { return failure == CertificateFailure::none; }
};

/// Minimum least-squares slope of ||df(0)|| against k.
inline constexpr double kMinGrowthSlope = 0.5 - 1e-6;

/// Total: every failure is reported in the verdict.
CertificateVerdict verify_certificate(const Domain& domain, const Certificate& cert);

/// Canonical JSON with rationals as exact strings.
std::string certificate_to_json(const Certificate& cert);
/// Throws Error(invalid_argument) or ParseError on malformed input.
Certificate certificate_from_json(const std::string& text);

}  // namespace tubehyp
