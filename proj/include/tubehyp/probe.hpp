#pragma once

// Numerical probing of the infinitesimal Kobayashi metric of a tube with
// affine holomorphic disks f(z) = (a1 + alpha z, a2 + beta z).
//
// Every reported map is feasible: its footprint is re-checked with
// ellipse_in_domain on the exact rational values of its coefficients. The
// optimizer itself is a plain derivative-free coordinate pattern search, so
// the norms are lower bounds for the true supremum over affine disks.

#include "tubehyp/certificate.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tubehyp {

inline constexpr std::uint64_t kDefaultProbeSeed = 0x7475626568797031ULL;

struct ProbeConfig {
  int multistarts = 64;
  int pattern_steps = 200;
  double shrink = 0.5;
  std::uint64_t seed = kDefaultProbeSeed;
  std::vector<long> scale_list;
  /// Radius of the disk around a in which f(0) may be moved (0 = exactly at a).
  double neighborhood_radius = 0.0;
};

/// Throws Error(bad_params) when the configuration is unusable.
void validate(const ProbeConfig& cfg);

struct ProbeResult {
  HoloAffineMap map;
  double norm = 0.0;
};

/// Best affine disk centered at a (or within neighborhood_radius of it) whose
/// footprint lies in D and has x1-halfwidth |alpha| <= extent. Throws
/// Error(point_not_in_domain). `extra_seeds` are added to the start set.
ProbeResult maximize_derivative_at(const Domain& domain, const Point2& a, double extent, const ProbeConfig& cfg,
                                   const std::vector<HoloAffineMap>& extra_seeds = {});

struct ProbeRecord {
  long k = 0;
  HoloAffineMap best_map;
  double best_norm = 0.0;
};

enum class ProbeVerdict { no_obstruction_found, unbounded_growth_evidence };

/// Least-squares slope of best_norm against k required for growth evidence.
inline constexpr double kGrowthEvidenceSlope = 0.25;

struct ProbeReport {
  Point2 a;
  std::vector<ProbeRecord> records;
  /// Largest norm found; nothing (infinite) when growth evidence was found.
  std::optional<double> bound_estimate_M;
  ProbeVerdict verdict = ProbeVerdict::no_obstruction_found;
  double slope = 0.0;
};

/// One maximization per scale with extent k; each scale is seeded with the
/// previous scale's best map. Throws Error(point_not_in_domain, bad_params).
ProbeReport probe_scales(const Domain& domain, const Point2& a, const ProbeConfig& cfg);

/// |v| / N where N is the largest ||df(0)|| found among feasible affine disks
/// with df(0) parallel to v and f(0) = a, with the footprint half-length
/// capped by max(scale_list). An upper bound on the infinitesimal metric.
/// Throws Error(zero_vector, point_not_in_domain).
double kobayashi_upper_bound(const Domain& domain, const Point2& a, const Vec2& v, const ProbeConfig& cfg);

}  // namespace tubehyp
