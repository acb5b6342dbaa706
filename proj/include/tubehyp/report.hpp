#pragma once

// JSON reports and SVG figures.
//
// Reports are canonical: object keys sorted, rationals as exact "p/q"
// strings, floats in shortest round-trip form, infinity as the string "inf".

#include "tubehyp/certificate.hpp"
#include "tubehyp/probe.hpp"
#include "tubehyp/witness.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tubehyp {

inline constexpr const char* kToolVersion = "tubehyp 0.1.0";

struct ReportEnvelope {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string domain_canonical;
  nlohmann::json payload;  // null when empty
  int exit_code_hint = 0;
};

std::string report_json(const ReportEnvelope& envelope);

nlohmann::json to_json(const Point2& p);
nlohmann::json to_json(const IntervalSet& set);
nlohmann::json to_json(const LoebReport& report);
nlohmann::json to_json(const AffineWitness& w);
nlohmann::json to_json(const WitnessVerdict& v);
nlohmann::json to_json(const HoloAffineMap& f);
nlohmann::json to_json(const CertificateVerdict& v);
nlohmann::json to_json(const ProbeReport& report);

const char* loeb_verdict_name(LoebVerdict v);
const char* probe_verdict_name(ProbeVerdict v);
const char* witness_failure_name(WitnessFailure f);

// ---------------------------------------------------------------------------
// SVG

/// Graph of t -> c t + d over [-k, k], labeled Gamma_k.
struct WitnessLineOverlay {
  long k = 1;
  Rational c;
  Rational d;
};

struct FootprintOverlay {
  HoloAffineMap map;
};

struct PointOverlay {
  Point2 a;
};

using Overlay = std::variant<WitnessLineOverlay, FootprintOverlay, PointOverlay>;

struct RenderOptions {
  /// Upper edge of the viewport for half-plane bases.
  std::optional<Rational> clip;
};

/// Deterministic SVG. Throws Error(unbounded_viewport) for a half-plane base
/// without a clip height.
std::string render_svg(const Domain& domain, const std::vector<Overlay>& overlays, const RenderOptions& options = {});

}  // namespace tubehyp
